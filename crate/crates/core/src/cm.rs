//! The exponential ratio `q_{α,β}`, the shifted polygamma difference
//!
//! ```text
//! f_{a,k}(x) = ψ^(k)(x+a) − ψ^(k)(x) − a·k!/x^{k+1}
//! ```
//!
//! (called `h_{a,k}` for odd `k`), its closed-form derivatives, and grid
//! certification of complete monotonicity: `(−1)^n f^{(n)} > 0` for even `k`
//! and `(−1)^n (−h)^{(n)} > 0` for odd `k`.
//!
//! Both signed derivatives equal a Laplace-type integral with a positive
//! bracket; [`crate::oracle::shift_integral`] evaluates those directly. For
//! odd `k` the combined bracket is `a + (1−e^{−at})/(1−e^{−t})`, which agrees
//! with the three separate integrals it is assembled from
//! ([`crate::oracle::odd_shift_three_integrals`]).

use alloc::vec::Vec;

use crate::polygamma::{factorial_over_power, polygamma, EvalResult, PolygammaOrder, MAX_ORDER};
use crate::{Error, GridSpec, Result};

/// Values within this multiple of their error bar are reported as
/// indeterminate rather than as a sign.
pub const INDETERMINATE_FACTOR: f64 = 1e3;

/// Default highest derivative order scanned.
pub const DEFAULT_MAX_ORDER: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Parity {
    Even,
    Odd,
}

/// `a ∈ (0, 1)` and the polygamma order `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ShiftParams {
    a: f64,
    k: u32,
    parity: Parity,
}

impl ShiftParams {
    pub fn new(a: f64, k: u32) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::ShiftOutOfRange(a));
        }
        PolygammaOrder::new(k)?;
        let parity = if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        };
        Ok(ShiftParams { a, k, parity })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_even(&self) -> bool {
        self.parity == Parity::Even
    }
}

/// `(α, β)` with `α ≠ β` and `(α, β) ∉ {(0, 1), (1, 0)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioParams {
    alpha: f64,
    beta: f64,
}

impl RatioParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let degenerate = (alpha == 0.0 && beta == 1.0) || (alpha == 1.0 && beta == 0.0);
        if !(alpha.is_finite() && beta.is_finite()) || alpha == beta || degenerate {
            return Err(Error::InvalidRatioParams { alpha, beta });
        }
        Ok(RatioParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// `q_{α,β}(t) = (e^{−αt} − e^{−βt})/(1 − e^{−t})`, equal to `β − α` at `t = 0`.
pub fn q_ratio(p: &RatioParams, t: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::NegativeT(t));
    }
    let (alpha, beta) = (p.alpha, p.beta);
    if t < 1e-4 {
        let (a2, b2) = (alpha * alpha, beta * beta);
        let num = (beta - alpha)
            + (a2 - b2) * t / 2.0
            + (b2 * beta - a2 * alpha) * t * t / 6.0
            + (a2 * a2 - b2 * b2) * t * t * t / 24.0;
        let den = 1.0 - t / 2.0 + t * t / 6.0 - t * t * t / 24.0;
        return Ok(num / den);
    }
    // e^{−αt} − e^{−βt} = −e^{−αt}·expm1(−(β−α)t)
    let num = -libm::exp(-alpha * t) * libm::expm1(-(beta - alpha) * t);
    Ok(num / -libm::expm1(-t))
}

/// Necessary and sufficient condition for `q_{α,β}` to be increasing on
/// `(0, ∞)`: `(β−α)(1−α−β) ≥ 0` and `(β−α)(|α−β|−α−β) ≥ 0`.
pub fn lemma21_condition(p: &RatioParams) -> bool {
    let (alpha, beta) = (p.alpha, p.beta);
    let d = beta - alpha;
    d * (1.0 - alpha - beta) >= 0.0 && d * ((alpha - beta).abs() - alpha - beta) >= 0.0
}

/// `(1 − e^{−at})/(1 − e^{−t})`, which lies strictly between `a` and 1.
pub fn lemma22_ratio(a: f64, t: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::ShiftOutOfRange(a));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::NonPositiveArgument(t));
    }
    q_ratio(
        &RatioParams {
            alpha: 0.0,
            beta: a,
        },
        t,
    )
}

fn order(m: u32) -> Result<PolygammaOrder> {
    PolygammaOrder::new(m)
}

/// `ψ^(k+n)(x+a) − ψ^(k+n)(x) − (−1)^n a (k+n)!/x^{k+n+1}`, the exact n-th
/// derivative of the shifted difference.
pub fn shift_derivative(p: &ShiftParams, n: u32, x: f64) -> Result<EvalResult> {
    let m = p.k + n;
    if m > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: m,
            max: MAX_ORDER,
        });
    }
    let shifted = polygamma(order(m)?, x + p.a)?;
    let base = polygamma(order(m)?, x)?;
    let fop = factorial_over_power(m, x)?;
    let power = EvalResult::new(fop, (m + 4) as f64 * f64::EPSILON * fop).scale(p.a);
    let correction = if n.is_multiple_of(2) { power } else { -power };
    let arg_error = argument_rounding(m, x + p.a, shifted.value);
    let r = shifted - base - correction;
    Ok(EvalResult::new(r.value, r.abs_error_estimate + arg_error))
}

/// Error in `ψ^(m)(y)` caused by `y` itself being rounded, given the computed
/// value: `y|ψ^(m+1)(y)| <= (m+1)|ψ^(m)(y)|` for `m >= 1`, `<= 1 + 1/y` for `m = 0`.
pub(crate) fn argument_rounding(m: u32, y: f64, psi: f64) -> f64 {
    let sensitivity = if m == 0 {
        1.0 + 1.0 / y
    } else {
        (m + 1) as f64 * psi.abs()
    };
    0.5 * f64::EPSILON * sensitivity
}

/// `f_{a,k}(x)` for even `k`.
pub fn f_shift(p: &ShiftParams, x: f64) -> Result<EvalResult> {
    if !p.is_even() {
        return Err(Error::ParityMismatch { k: p.k });
    }
    shift_derivative(p, 0, x)
}

/// `h_{a,k}(x)` for odd `k`; always negative.
pub fn h_shift(p: &ShiftParams, x: f64) -> Result<EvalResult> {
    if p.is_even() {
        return Err(Error::ParityMismatch { k: p.k });
    }
    shift_derivative(p, 0, x)
}

/// The quantity that complete monotonicity makes positive: `(−1)^n f^{(n)}`
/// for even `k`, `(−1)^n (−h)^{(n)}` for odd `k`.
pub fn signed_derivative(p: &ShiftParams, n: u32, x: f64) -> Result<EvalResult> {
    let d = shift_derivative(p, n, x)?;
    let flip = (n % 2 == 1) ^ !p.is_even();
    Ok(if flip { -d } else { d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum PointStatus {
    /// Positive by more than `INDETERMINATE_FACTOR` error bars.
    Certified,
    /// Too close to zero to resolve in binary64.
    Indeterminate,
    /// Negative by more than `INDETERMINATE_FACTOR` error bars.
    Violation,
}

pub fn classify(r: &EvalResult) -> PointStatus {
    let guard = INDETERMINATE_FACTOR * r.abs_error_estimate;
    if r.value.abs() < guard || r.value == 0.0 {
        PointStatus::Indeterminate
    } else if r.value > 0.0 {
        PointStatus::Certified
    } else {
        PointStatus::Violation
    }
}

/// Derivative order and abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanPoint {
    pub n: u32,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CMScanReport {
    pub params: ShiftParams,
    pub derivative_orders: Vec<u32>,
    pub grid: GridSpec,
    /// Minimum over the points whose sign could be resolved.
    pub min_signed_value: f64,
    pub witness_point: ScanPoint,
    pub witness_error: f64,
    pub evaluated_points: usize,
    pub indeterminate_points: usize,
    pub violations: usize,
    pub passed: bool,
}

/// Evaluate the signed derivative for every `n <= max_order` and every grid
/// abscissa. Passes when no point is a violation, at least one point is
/// resolved, and the smallest resolved value is positive. Ties for the
/// minimum go to the lexicographically first `(n, x)`.
pub fn cm_scan(p: &ShiftParams, max_order: u32, grid: &GridSpec) -> Result<CMScanReport> {
    grid.validate()?;
    if p.k + max_order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order: p.k + max_order,
            max: MAX_ORDER,
        });
    }
    let xs = grid.points();
    let mut min_value = f64::INFINITY;
    let mut witness = ScanPoint { n: 0, x: xs[0] };
    let mut witness_error = 0.0;
    let (mut indeterminate, mut violations, mut evaluated) = (0, 0, 0);
    for n in 0..=max_order {
        for &x in &xs {
            let r = signed_derivative(p, n, x).map_err(|e| Error::ScanPoint {
                n,
                x,
                reason: alloc::boxed::Box::new(e),
            })?;
            evaluated += 1;
            match classify(&r) {
                PointStatus::Indeterminate => {
                    indeterminate += 1;
                    continue;
                }
                PointStatus::Violation => violations += 1,
                PointStatus::Certified => {}
            }
            if r.value < min_value {
                min_value = r.value;
                witness = ScanPoint { n, x };
                witness_error = r.abs_error_estimate;
            }
        }
    }
    let resolved = evaluated > indeterminate;
    let passed = resolved && violations == 0 && min_value > witness_error;
    Ok(CMScanReport {
        params: *p,
        derivative_orders: (0..=max_order).collect(),
        grid: *grid,
        min_signed_value: if resolved { min_value } else { f64::NAN },
        witness_point: witness,
        witness_error,
        evaluated_points: evaluated,
        indeterminate_points: indeterminate,
        violations,
        passed,
    })
}
