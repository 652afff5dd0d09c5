//! ψ and ψ^(n) for `x > 0`.
//!
//! The argument is pushed up with the functional equation
//! `ψ^(n)(x+1) = ψ^(n)(x) + (−1)^n n!/x^{n+1}` until it clears
//! [`shift_threshold`], the Bernoulli asymptotic series is summed there, and
//! the accumulated shift terms are taken back off.

use core::ops::{Add, Neg, Sub};

use crate::constants::{ConstantTable, MAX_BERNOULLI_INDEX};
use crate::{Error, Result};

/// Highest supported derivative order.
pub const MAX_ORDER: u32 = 40;

/// Asymptotic terms summed at most.
const MAX_ASYMPTOTIC_TERMS: u32 = 20;

const EPS: f64 = f64::EPSILON;

/// Derivative order `n` of `ψ^(n)`; `n = 0` is ψ itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct PolygammaOrder(u32);

impl PolygammaOrder {
    pub const DIGAMMA: PolygammaOrder = PolygammaOrder(0);

    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order: n,
                max: MAX_ORDER,
            });
        }
        Ok(PolygammaOrder(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u32> for PolygammaOrder {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Self::new(n)
    }
}

/// A value together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalResult {
    pub value: f64,
    pub abs_error_estimate: f64,
}

impl EvalResult {
    pub fn new(value: f64, abs_error_estimate: f64) -> Self {
        debug_assert!(abs_error_estimate >= 0.0);
        EvalResult {
            value,
            abs_error_estimate,
        }
    }

    /// A value known to the last bit.
    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// Multiply by an exactly representable constant.
    pub fn scale(self, c: f64) -> Self {
        let value = self.value * c;
        Self::new(
            value,
            self.abs_error_estimate * c.abs() + 0.5 * EPS * value.abs(),
        )
    }

    /// Whether `other` lies within the combined error bars.
    pub fn agrees_with(&self, other: &EvalResult) -> bool {
        (self.value - other.value).abs() <= self.abs_error_estimate + other.abs_error_estimate
    }
}

impl Add for EvalResult {
    type Output = EvalResult;

    fn add(self, rhs: EvalResult) -> EvalResult {
        let value = self.value + rhs.value;
        EvalResult::new(
            value,
            self.abs_error_estimate + rhs.abs_error_estimate + 0.5 * EPS * value.abs(),
        )
    }
}

impl Sub for EvalResult {
    type Output = EvalResult;

    fn sub(self, rhs: EvalResult) -> EvalResult {
        self + (-rhs)
    }
}

impl Neg for EvalResult {
    type Output = EvalResult;

    fn neg(self) -> EvalResult {
        EvalResult::new(-self.value, self.abs_error_estimate)
    }
}

/// Argument beyond which the asymptotic series is used directly.
pub fn shift_threshold(n: PolygammaOrder) -> f64 {
    let n = n.get() as f64;
    if n + 8.0 > 10.0 {
        n + 8.0
    } else {
        10.0
    }
}

/// `n!` as a float; exact up to `22!`.
pub fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(x))
    }
}

/// `n!/x^{n+1}`, switching to log space when `x^{n+1}` alone would leave the
/// binary64 range.
pub fn factorial_over_power(n: u32, x: f64) -> Result<f64> {
    check_argument(x)?;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: n,
            max: MAX_ORDER,
        });
    }
    let exponent = (n + 1) as f64;
    let log_power = exponent * libm::log(x);
    let value = if log_power.abs() < 700.0 {
        factorial(n) / libm::pow(x, exponent)
    } else {
        libm::exp(libm::log(factorial(n)) - log_power)
    };
    if value.is_infinite() {
        return Err(Error::Overflow);
    }
    Ok(value)
}

/// ψ^(n)(x).
pub fn polygamma(n: PolygammaOrder, x: f64) -> Result<EvalResult> {
    check_argument(x)?;
    let order = n.get();
    let threshold = shift_threshold(n);

    // Shift terms n!/(x+j)^{n+1}, all positive. Summed from the largest
    // argument down so the small terms accumulate first.
    let steps = if x < threshold {
        libm::ceil(threshold - x) as u32
    } else {
        0
    };
    // ψ^(n)(x) = ψ^(n)(y) − (−1)^n Σ n!/(x+j)^{n+1}, accumulated with
    // compensation so the result is good to about an ulp.
    let y = x + steps as f64;
    let mut acc = Neumaier::default();
    let asym_error = asymptotic(order, y, &mut acc);
    let sign = if order.is_multiple_of(2) { -1.0 } else { 1.0 };
    let mut shift_sum = 0.0;
    for j in (0..steps).rev() {
        let term = factorial_over_power(order, x + j as f64)?;
        shift_sum += term;
        acc.add(sign * term);
    }
    let value = acc.total();
    if !value.is_finite() {
        return Err(Error::Overflow);
    }
    // Each shift term carries a few ulps from pow and the division.
    let shift_error = (order as f64 + 4.0) * EPS * shift_sum;
    let error = asym_error + shift_error + EPS * value.abs();
    Ok(EvalResult::new(value, error))
}

/// Neumaier's compensated sum.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, t: f64) {
        let s = self.sum + t;
        self.compensation += if self.sum.abs() >= t.abs() {
            (self.sum - s) + t
        } else {
            (t - s) + self.sum
        };
        self.sum = s;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// ψ(x).
pub fn digamma(x: f64) -> Result<EvalResult> {
    polygamma(PolygammaOrder::DIGAMMA, x)
}

/// Asymptotic expansion at large `y`:
///
/// ```text
/// ψ(y)     ~ ln y − 1/(2y) − Σ_j B_{2j}/(2j y^{2j})
/// ψ^(n)(y) ~ (−1)^{n+1} [ (n−1)!/y^n + n!/(2y^{n+1}) + Σ_j B_{2j} (2j+n−1)!/((2j)! y^{2j+n}) ]
/// ```
///
/// The inner sum stops before its terms start growing or after
/// `MAX_ASYMPTOTIC_TERMS`; the first omitted term is the truncation error.
/// Pushes the pieces of the expansion into `acc` and returns their error.
fn asymptotic(order: u32, y: f64, acc: &mut Neumaier) -> f64 {
    let table = ConstantTable::get();
    let n = order as f64;
    let inv_y = 1.0 / y;
    let inv_y2 = inv_y * inv_y;

    // (2j+n−1)!/(2j)! starting at j = 1, and y^{−(2j+n)}.
    let mut coeff = factorial(order + 1) / 2.0;
    let mut power = libm::pow(y, -(n + 2.0));
    let mut series = 0.0;
    let mut series_abs = 0.0;
    let mut prev = f64::INFINITY;
    let mut omitted = 0.0;
    let max_terms = MAX_ASYMPTOTIC_TERMS.min(MAX_BERNOULLI_INDEX);
    for j in 1..=max_terms + 1 {
        let b = table
            .bernoulli_even(j)
            .expect("asymptotic series stays within the Bernoulli table");
        let term = b * coeff * power;
        if j > max_terms || term.abs() > prev {
            omitted = term.abs();
            break;
        }
        series += term;
        series_abs += term.abs();
        prev = term.abs();
        if term == 0.0 {
            break;
        }
        let j2 = 2.0 * j as f64;
        coeff *= (j2 + n) * (j2 + n + 1.0) / ((j2 + 1.0) * (j2 + 2.0));
        power *= inv_y2;
    }

    let magnitude = if order == 0 {
        let log_y = libm::log(y);
        let half = 0.5 * inv_y;
        acc.add(log_y);
        acc.add(-half);
        acc.add(-series);
        log_y.abs() + half + series_abs
    } else {
        let lead = factorial(order - 1) * libm::pow(y, -n);
        let second = 0.5 * factorial(order) * libm::pow(y, -(n + 1.0));
        let sign = if order % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * lead);
        acc.add(sign * second);
        acc.add(sign * series);
        lead + second + series_abs
    };
    omitted + 4.0 * EPS * magnitude
}
