//! Two-sided bounds on `ψ^(k)(x+a) − ψ^(k)(x)` for `x > 1`.
//!
//! Monotonicity of the shifted difference pins it between its value at
//! `x = 1` and its limit 0 as `x → ∞`:
//!
//! ```text
//! even k:  a k!/x^{k+1} < ψ^(k)(x+a) − ψ^(k)(x) < ψ^(k)(a) − ψ^(k)(1) + k!(a/x^{k+1} + 1/a^{k+1} − a)
//! odd k:   ψ^(k)(a) − ψ^(k)(1) + k!(a/x^{k+1} − 1/a^{k+1} − a) < ψ^(k)(x+a) − ψ^(k)(x) < a k!/x^{k+1}
//! ```
//!
//! With `a = 1/2` the endpoint constants reduce to `3/2 − 2 ln 2` (k = 0),
//! `15 − 12ζ(3)` (k = 2), `π²/3 − 9/2` (k = 1) and `14π⁴/15 − 99` (k = 3).

use alloc::vec::Vec;

use crate::cm::{argument_rounding, ShiftParams};
use crate::polygamma::{factorial, factorial_over_power, polygamma, EvalResult, PolygammaOrder};
use crate::{Error, GridSpec, Result};

const EPS: f64 = f64::EPSILON;

/// The bound triple at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundCheck {
    pub x: f64,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    /// Error bars of `middle − lower` and `upper − middle`.
    pub lower_margin_error: f64,
    pub upper_margin_error: f64,
    pub passed: bool,
}

impl BoundCheck {
    /// Both margins clear `factor` times the evaluation error.
    pub fn clears(&self, factor: f64) -> bool {
        self.lower_margin > factor * self.lower_margin_error
            && self.upper_margin > factor * self.upper_margin_error
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundTable {
    pub params: ShiftParams,
    pub checks: Vec<BoundCheck>,
}

impl BoundTable {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

fn psi(k: u32, y: f64) -> Result<EvalResult> {
    let r = polygamma(PolygammaOrder::new(k)?, y)?;
    Ok(EvalResult::new(
        r.value,
        r.abs_error_estimate + argument_rounding(k, y, r.value),
    ))
}

fn approx_power(k: u32, x: f64) -> Result<EvalResult> {
    let v = factorial_over_power(k, x)?;
    Ok(EvalResult::new(v, (k + 4) as f64 * EPS * v))
}

/// The shifted difference at `x = 1`, i.e. `ψ^(k)(a+1) − ψ^(k)(1) − a·k!`.
///
/// Also evaluated through the functional equation as
/// `ψ^(k)(a) − ψ^(k)(1) ± k!/a^{k+1} − a·k!` (`+` for even `k`); the two must
/// agree within their combined error bars or an [`Error::EndpointMismatch`]
/// is returned. The first form is returned since it avoids cancelling the
/// pole term of `ψ^(k)(a)`.
pub fn endpoint_constants(p: &ShiftParams) -> Result<EvalResult> {
    let (direct, expanded) = endpoint_forms(p)?;
    let allowed = direct.abs_error_estimate + expanded.abs_error_estimate;
    if (direct.value - expanded.value).abs() > allowed {
        return Err(Error::EndpointMismatch {
            direct: direct.value,
            expanded: expanded.value,
            allowed,
        });
    }
    Ok(direct)
}

/// Both endpoint computations, `(direct, expanded)`.
pub fn endpoint_forms(p: &ShiftParams) -> Result<(EvalResult, EvalResult)> {
    let (a, k) = (p.a(), p.k());
    let kf = EvalResult::exact(factorial(k)).scale(a);
    let at_one = psi(k, 1.0)?;
    let direct = psi(k, a + 1.0)? - at_one - kf;
    let pole = approx_power(k, a)?;
    let pole = if p.is_even() { pole } else { -pole };
    let expanded = psi(k, a)? - at_one + pole - kf;
    Ok((direct, expanded))
}

fn check_domain(x: f64) -> Result<()> {
    // Exactly x > 1; x = 1 is only reachable through endpoint_constants.
    if x.is_finite() && x > 1.0 {
        Ok(())
    } else {
        Err(Error::OutsideBoundDomain(x))
    }
}

fn check_at(p: &ShiftParams, x: f64, endpoint: &EvalResult) -> Result<BoundCheck> {
    check_domain(x)?;
    let k = p.k();
    let middle = psi(k, x + p.a())? - psi(k, x)?;
    let power = approx_power(k, x)?.scale(p.a());
    let (lower, upper) = if p.is_even() {
        (power, *endpoint + power)
    } else {
        (*endpoint + power, power)
    };
    let lower_margin = middle.value - lower.value;
    let upper_margin = upper.value - middle.value;
    Ok(BoundCheck {
        x,
        lower: lower.value,
        middle: middle.value,
        upper: upper.value,
        lower_margin,
        upper_margin,
        lower_margin_error: lower.abs_error_estimate + middle.abs_error_estimate,
        upper_margin_error: upper.abs_error_estimate + middle.abs_error_estimate,
        passed: lower_margin > 0.0 && upper_margin > 0.0,
    })
}

/// Even-`k` bounds at `x > 1`.
pub fn even_k_bounds(p: &ShiftParams, x: f64) -> Result<BoundCheck> {
    if !p.is_even() {
        return Err(Error::ParityMismatch { k: p.k() });
    }
    check_domain(x)?;
    check_at(p, x, &endpoint_constants(p)?)
}

/// Odd-`k` bounds at `x > 1`.
pub fn odd_k_bounds(p: &ShiftParams, x: f64) -> Result<BoundCheck> {
    if p.is_even() {
        return Err(Error::ParityMismatch { k: p.k() });
    }
    check_domain(x)?;
    check_at(p, x, &endpoint_constants(p)?)
}

/// Bounds at every grid point, in grid order. Requires `grid.lo > 1`.
pub fn bound_table(p: &ShiftParams, grid: &GridSpec) -> Result<BoundTable> {
    grid.validate()?;
    check_domain(grid.lo)?;
    let endpoint = endpoint_constants(p)?;
    let checks = grid
        .points()
        .into_iter()
        .map(|x| check_at(p, x, &endpoint))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { params: *p, checks })
}
