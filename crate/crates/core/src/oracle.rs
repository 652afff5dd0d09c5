//! Slow reference evaluators built directly on the series and integral
//! representations of ψ^(n). Nothing here calls into [`crate::polygamma()`],
//! so agreement between the two is meaningful.
//!
//! Integrals over `(0, ∞)` are truncated at a cutoff `T` with an explicit,
//! closed-form bound on the discarded tail, then integrated with adaptive
//! Gauss–Kronrod (7/15) bisection.

use alloc::vec::Vec;

use crate::cm::ShiftParams;
use crate::constants::EULER_GAMMA;
use crate::polygamma::Neumaier;
use crate::{Error, EvalResult, Result};

const EPS: f64 = f64::EPSILON;

/// Settings for the truncated quadrature of `∫₀^∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Truncation point `T`. `None` picks one whose tail is below `1e-18`
    /// of the integral's scale.
    pub upper_cutoff: Option<f64>,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            upper_cutoff: None,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            rel_tol,
            ..Self::default()
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(1e-14..=1e-6).contains(&self.rel_tol) {
            return Err(Error::InvalidTolerance(self.rel_tol));
        }
        if let Some(t) = self.upper_cutoff {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::NonPositiveArgument(t));
            }
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidGrid("max_subdivisions must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailRule {
    /// Add `∫_K^∞ f + f(K)/2`; error `|f'(K−1)|/12` (convex, decreasing terms).
    IntegralComparison,
    /// Add `∫_K^∞ f`; error `f(K)`.
    NextTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesSpec {
    pub max_terms: usize,
    pub tail_rule: TailRule,
}

impl Default for SeriesSpec {
    fn default() -> Self {
        SeriesSpec {
            max_terms: 2_000_000,
            tail_rule: TailRule::IntegralComparison,
        }
    }
}

/// Breakdown of a truncated quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub value: f64,
    pub quadrature_error: f64,
    pub tail_bound: f64,
    pub upper_cutoff: f64,
    pub subdivisions: usize,
}

impl From<IntegralResult> for EvalResult {
    fn from(r: IntegralResult) -> EvalResult {
        EvalResult::new(r.value, r.quadrature_error + r.tail_bound)
    }
}

// ---------------------------------------------------------------------------
// Adaptive Gauss–Kronrod

// Node tables quoted to the published digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    kronrod: f64,
    error: f64,
    abs_integral: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_integral = WGK[7] * fc.abs();
    for i in 0..7 {
        let dx = half * XGK[i];
        let (f1, f2) = (f(centre - dx), f(centre + dx));
        kronrod += WGK[i] * (f1 + f2);
        abs_integral += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    Panel {
        lo,
        hi,
        kronrod: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
        abs_integral: abs_integral * half.abs(),
    }
}

/// Adaptive bisection of the panel with the largest error estimate until the
/// summed Kronrod-minus-Gauss differences fall below `rel_tol · |I|`.
///
/// Returns `(value, error, subdivisions)`. The error includes a rounding
/// allowance proportional to `∫|f|`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<(f64, f64, usize)> {
    let mut panels: Vec<Panel> = alloc::vec![gk15(&f, lo, hi)];
    let mut subdivisions = 0;
    loop {
        let total: f64 = panels.iter().map(|p| p.kronrod).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        let abs_total: f64 = panels.iter().map(|p| p.abs_integral).sum();
        // Panels whose width has collapsed to rounding cannot be refined.
        let rounding = 50.0 * EPS * abs_total;
        if error <= rel_tol * total.abs() || error <= rounding || error < f64::MIN_POSITIVE {
            return Ok((total, error + rounding, subdivisions));
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::QuadratureDidNotConverge {
                subdivisions,
                estimate: total,
                error,
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, p)| {
                if p.error > be {
                    (i, p.error)
                } else {
                    (bi, be)
                }
            });
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.lo + p.hi);
        panels.push(gk15(&f, p.lo, mid));
        panels.push(gk15(&f, mid, p.hi));
        subdivisions += 1;
    }
}

// ---------------------------------------------------------------------------
// Integrand pieces

/// `t/(1 − e^{−t})`, with its Taylor polynomial below `1e-3`.
pub fn bose_factor(t: f64) -> f64 {
    if t < 1e-3 {
        let t2 = t * t;
        1.0 + t / 2.0 + t2 / 12.0 - t2 * t2 / 720.0
    } else {
        t / -libm::expm1(-t)
    }
}

/// `(1 − e^{−at}) − a(1 − e^{−t}) = Σ_{j≥2} (−1)^j a(1 − a^{j−1}) t^j/j!`.
///
/// The two halves agree to first order in `t`, so below `t = 1` the series is
/// summed instead of subtracting.
fn even_numerator(a: f64, t: f64) -> f64 {
    if t >= 1.0 {
        return -libm::expm1(-a * t) + a * libm::expm1(-t);
    }
    let mut sum = 0.0;
    let mut t_pow = t; // t^j / j!
    let mut a_pow = 1.0; // a^{j−1}
    for j in 2..40 {
        t_pow *= t / j as f64;
        a_pow *= a;
        let term = a * (1.0 - a_pow) * t_pow;
        let signed = if j % 2 == 0 { term } else { -term };
        sum += signed;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `t^m`, with `0^0 = 1`.
fn powi(t: f64, m: u32) -> f64 {
    if m == 0 {
        1.0
    } else {
        libm::pow(t, m as f64)
    }
}

/// `P(Poisson(u) <= n) = e^{−u} Σ_{j<=n} u^j/j!`, i.e. `Γ(n+1, u)/n!`.
fn poisson_cdf(n: u32, u: f64) -> f64 {
    let mut term = libm::exp(-u);
    let mut sum = term;
    for j in 1..=n {
        term *= u / j as f64;
        sum += term;
    }
    sum
}

/// Bound on `∫_T^∞ t^m e^{−xt}/(1 − e^{−t}) dt`, relative to `m!/x^{m+1}`.
fn relative_tail(m: u32, x: f64, t: f64) -> f64 {
    poisson_cdf(m, x * t) / -libm::expm1(-t)
}

fn factorial(n: u32) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Doubles `T` from `30/x` until `tail(T) < 1e-18`.
fn auto_cutoff(x: f64, tail: impl Fn(f64) -> f64) -> f64 {
    let mut t = 30.0 / x;
    for _ in 0..64 {
        if tail(t) < 1e-18 {
            break;
        }
        t *= 2.0;
    }
    t
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(x))
    }
}

/// `∫₀^T weight(t) · t^m e^{−xt}/(1 − e^{−t}) dt` with the tail beyond `T`
/// bounded by `sup|weight| · Γ(m+1, xT)/x^{m+1}/(1 − e^{−T})`.
fn weighted_bose_integral(
    m: u32,
    x: f64,
    weight: impl Fn(f64) -> f64,
    weight_bound: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    spec.validate()?;
    check_x(x)?;
    let scale = factorial(m) / libm::pow(x, (m + 1) as f64);
    let cutoff = spec
        .upper_cutoff
        .unwrap_or_else(|| auto_cutoff(x, |t| relative_tail(m, x, t)));
    let integrand = |t: f64| {
        let base = if m == 0 {
            libm::exp(-x * t) * bose_factor(t) / t
        } else {
            powi(t, m - 1) * libm::exp(-x * t) * bose_factor(t)
        };
        weight(t) * base
    };
    let (value, quadrature_error, subdivisions) =
        integrate(integrand, 0.0, cutoff, spec.rel_tol, spec.max_subdivisions)?;
    Ok(IntegralResult {
        value,
        quadrature_error,
        tail_bound: weight_bound * scale * relative_tail(m, x, cutoff),
        upper_cutoff: cutoff,
        subdivisions,
    })
}

// ---------------------------------------------------------------------------
// Polygamma representations

/// `(−1)^{n+1} n! Σ_{k≥0} (k+x)^{−(n+1)}` for `n >= 1`.
pub fn polygamma_series(n: u32, x: f64, spec: &SeriesSpec) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::SeriesOrderZero);
    }
    check_x(x)?;
    let p = (n + 1) as f64;
    let term = |k: f64| libm::pow(k + x, -p);
    // |f'(u)| = (n+1)(u+x)^{−(n+2)}, ∫_K^∞ f = (K+x)^{−n}/n
    let derivative = |k: f64| p * libm::pow(k + x, -(p + 1.0));
    let integral = |k: f64| libm::pow(k + x, -(n as f64)) / n as f64;
    let (sum, error) = sum_with_tail(term, derivative, integral, spec);
    let factor = factorial(n);
    let signed = if n % 2 == 1 { factor } else { -factor };
    let value = signed * sum;
    Ok(EvalResult::new(
        value,
        factor * error + 2.0 * EPS * value.abs(),
    ))
}

/// `−γ − 1/x + Σ_{k≥1} x/(k(k+x))`.
pub fn digamma_series(x: f64, spec: &SeriesSpec) -> Result<EvalResult> {
    check_x(x)?;
    // Index shifted so the series starts at k = 1.
    let term = |k: f64| x / ((k + 1.0) * (k + 1.0 + x));
    let derivative = |k: f64| {
        let u = k + 1.0;
        x * (2.0 * u + x) / (u * u * (u + x) * (u + x))
    };
    let integral = |k: f64| libm::log1p(x / (k + 1.0));
    let (sum, error) = sum_with_tail(term, derivative, integral, spec);
    let value = -EULER_GAMMA - 1.0 / x + sum;
    let magnitude = EULER_GAMMA + 1.0 / x + sum;
    Ok(EvalResult::new(value, error + 2.0 * EPS * magnitude))
}

/// Sums `term(k)` for `k = 0..K` (compensated) and adds the tail according to
/// `spec.tail_rule`, where `K` is the first index whose tail error drops below
/// `1e-17` of the partial sum, or `max_terms`.
fn sum_with_tail(
    term: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
    integral: impl Fn(f64) -> f64,
    spec: &SeriesSpec,
) -> (f64, f64) {
    let tail_error = |k: usize| -> f64 {
        let kf = k as f64;
        match spec.tail_rule {
            TailRule::IntegralComparison => derivative(kf - 1.0) / 12.0,
            TailRule::NextTerm => term(kf),
        }
    };
    let mut acc = Neumaier::default();
    let mut k = 0usize;
    while k < spec.max_terms.max(1) {
        acc.add(term(k as f64));
        k += 1;
        if tail_error(k) < 1e-17 * acc.total().abs() {
            break;
        }
    }
    let kf = k as f64;
    let tail = match spec.tail_rule {
        TailRule::IntegralComparison => integral(kf) + 0.5 * term(kf),
        TailRule::NextTerm => integral(kf),
    };
    acc.add(tail);
    let total = acc.total();
    (total, tail_error(k) + 4.0 * EPS * total.abs())
}

/// Integral representation of ψ^(n)(x).
pub fn polygamma_integral(n: u32, x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    polygamma_integral_detailed(n, x, spec).map(EvalResult::from)
}

/// As [`polygamma_integral`], reporting quadrature error and tail bound
/// separately. For `n = 0` the `−γ` offset is already included in `value`.
pub fn polygamma_integral_detailed(
    n: u32,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<IntegralResult> {
    spec.validate()?;
    check_x(x)?;
    if n == 0 {
        return digamma_integral(x, spec);
    }
    let mut r = weighted_bose_integral(n, x, |_| 1.0, 1.0, spec)?;
    if n.is_multiple_of(2) {
        r.value = -r.value;
    }
    Ok(r)
}

/// `−γ + ∫₀^∞ (e^{−t} − e^{−xt})/(1 − e^{−t}) dt`.
fn digamma_integral(x: f64, spec: &QuadratureSpec) -> Result<IntegralResult> {
    // e^{−t} − e^{−xt} = −e^{−t}·expm1(−(x−1)t), divided by 1 − e^{−t}.
    let integrand = |t: f64| -libm::exp(-t) * libm::expm1(-(x - 1.0) * t) / t * bose_factor(t);
    // ∫_T^∞ |·| <= (e^{−T} + e^{−xT}/x)/(1 − e^{−T})
    let tail = |t: f64| (libm::exp(-t) + libm::exp(-x * t) / x) / -libm::expm1(-t);
    let cutoff = spec.upper_cutoff.unwrap_or_else(|| {
        let start = if x < 1.0 { 30.0 / x } else { 30.0 };
        let mut t = start;
        while tail(t) >= 1e-18 {
            t *= 2.0;
        }
        t
    });
    let (value, quadrature_error, subdivisions) = if x == 1.0 {
        (0.0, 0.0, 0)
    } else {
        integrate(integrand, 0.0, cutoff, spec.rel_tol, spec.max_subdivisions)?
    };
    Ok(IntegralResult {
        value: value - EULER_GAMMA,
        quadrature_error: quadrature_error + EPS,
        tail_bound: if x == 1.0 { 0.0 } else { tail(cutoff) },
        upper_cutoff: cutoff,
        subdivisions,
    })
}

/// `∫₀^∞ t^n e^{−xt} dt`, which should reproduce `n!/x^{n+1}`.
pub fn power_integral(n: u32, x: f64, spec: &QuadratureSpec) -> Result<EvalResult> {
    spec.validate()?;
    check_x(x)?;
    let scale = factorial(n) / libm::pow(x, (n + 1) as f64);
    let tail = |t: f64| poisson_cdf(n, x * t);
    let cutoff = spec.upper_cutoff.unwrap_or_else(|| auto_cutoff(x, tail));
    let (value, error, _) = integrate(
        |t| powi(t, n) * libm::exp(-x * t),
        0.0,
        cutoff,
        spec.rel_tol,
        spec.max_subdivisions,
    )?;
    Ok(EvalResult::new(value, error + scale * tail(cutoff)))
}

// ---------------------------------------------------------------------------
// Integrals from the complete-monotonicity arguments

/// The signed n-th derivative of the shifted difference as a single integral:
///
/// ```text
/// even k:  (−1)^n f^{(n)}(x)    = ∫₀^∞ [ (1−e^{−at})/(1−e^{−t}) − a ] t^{k+n} e^{−xt} dt
/// odd k:   (−1)^n (−h)^{(n)}(x) = ∫₀^∞ [ a + (1−e^{−at})/(1−e^{−t}) ] t^{k+n} e^{−xt} dt
/// ```
pub fn shift_integral(
    p: &ShiftParams,
    n: u32,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    let a = p.a();
    let m = p.k() + n;
    let even = p.is_even();
    // Integrate bracket · (1 − e^{−t}) against t^m e^{−xt}/(1 − e^{−t}) so the
    // shared tail bound applies; the weight is bounded by 1 + a.
    let weight = move |t: f64| {
        if even {
            even_numerator(a, t)
        } else {
            -libm::expm1(-a * t) - a * libm::expm1(-t)
        }
    };
    weighted_bose_integral(m, x, weight, 1.0 + a, spec).map(EvalResult::from)
}

/// The odd-k derivative assembled from the three separate integrals
///
/// ```text
/// a ∫ t^m e^{−xt} dt + ∫ t^m e^{−xt}/(1−e^{−t}) dt − ∫ t^m e^{−xt} e^{−at}/(1−e^{−t}) dt
/// ```
///
/// with `m = k + n`. Used to confirm the combined bracket in
/// [`shift_integral`] term by term.
pub fn odd_shift_three_integrals(
    p: &ShiftParams,
    n: u32,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<EvalResult> {
    let a = p.a();
    let m = p.k() + n;
    let plain = power_integral(m, x, spec)?.scale(a);
    let bose: EvalResult = weighted_bose_integral(m, x, |_| 1.0, 1.0, spec)?.into();
    let shifted: EvalResult = weighted_bose_integral(m, x + a, |_| 1.0, 1.0, spec)?.into();
    Ok(plain + bose - shifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::zeta_int;
    use core::f64::consts::{LN_2, PI};

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn series_reference_values() {
        let s = SeriesSpec::default();
        let z2 = zeta_int(2).unwrap();
        let r = polygamma_series(1, 1.0, &s).unwrap();
        assert!(
            (r.value - z2).abs() <= r.abs_error_estimate + 1e-15,
            "{r:?}"
        );
        let r = polygamma_series(2, 1.0, &s).unwrap();
        assert!((r.value + 2.0 * zeta_int(3).unwrap()).abs() < 1e-14);
        let r = polygamma_series(1, 2.0, &s).unwrap();
        assert!((r.value - (z2 - 1.0)).abs() < 1e-14);
        assert!((r.value - 0.644_934_066_8).abs() < 1e-10);
        assert_eq!(polygamma_series(0, 1.0, &s), Err(Error::SeriesOrderZero));
        assert!(polygamma_series(1, 0.0, &s).is_err());
    }

    #[test]
    fn digamma_series_reference_values() {
        let s = SeriesSpec::default();
        let r = digamma_series(1.0, &s).unwrap();
        assert!((r.value + EULER_GAMMA).abs() < 1e-14, "{r:?}");
        let r = digamma_series(2.0, &s).unwrap();
        assert!((r.value - (1.0 - EULER_GAMMA)).abs() < 1e-14);
        let r = digamma_series(0.5, &s).unwrap();
        assert!((r.value - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-13);
        let engine = crate::digamma(0.5).unwrap();
        assert!(r.agrees_with(&engine));
    }

    #[test]
    fn next_term_rule_brackets_the_truth() {
        let s = SeriesSpec {
            max_terms: 1000,
            tail_rule: TailRule::NextTerm,
        };
        let r = polygamma_series(1, 1.0, &s).unwrap();
        let z2 = zeta_int(2).unwrap();
        assert!((r.value - z2).abs() <= r.abs_error_estimate);
        assert!(r.abs_error_estimate > 1e-7);
    }

    #[test]
    fn integral_reference_values() {
        let r = polygamma_integral(1, 1.0, &quad()).unwrap();
        assert!((r.value - PI * PI / 6.0).abs() < 1e-12 * r.value, "{r:?}");
        let r = polygamma_integral(0, 1.0, &quad()).unwrap();
        assert_eq!(r.value, -EULER_GAMMA);
        let r = polygamma_integral(3, 0.5, &quad()).unwrap();
        // Independent series: 6 Σ (k + 1/2)^{−4}.
        let mut s = 0.0;
        for k in (0..200_000).rev() {
            s += libm::pow(k as f64 + 0.5, -4.0);
        }
        let k = 200_000.0 + 0.5;
        s += 1.0 / (3.0 * k * k * k) + 0.5 / (k * k * k * k);
        let expected = 6.0 * s;
        assert!((expected - 97.409_091_034).abs() < 1e-8);
        assert!(
            (r.value - expected).abs() < 1e-10 * expected,
            "{r:?} vs {expected}"
        );
    }

    #[test]
    fn power_integral_matches_closed_form() {
        assert!((power_integral(0, 1.0, &quad()).unwrap().value - 1.0).abs() < 1e-12);
        assert!((power_integral(2, 1.0, &quad()).unwrap().value - 2.0).abs() < 2e-12);
        assert!((power_integral(4, 2.0, &quad()).unwrap().value - 0.75).abs() < 1e-12);
        for n in 0..=10 {
            for x in [0.5, 1.0, 2.0, 10.0] {
                let q = power_integral(n, x, &quad()).unwrap();
                let closed = crate::factorial_over_power(n, x).unwrap();
                assert!(((q.value - closed) / closed).abs() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn doubling_cutoff_stays_within_tail_bound() {
        for n in [0u32, 1, 4, 8] {
            for x in [0.2, 1.5, 20.0] {
                let base = polygamma_integral_detailed(n, x, &quad()).unwrap();
                let doubled = QuadratureSpec {
                    upper_cutoff: Some(2.0 * base.upper_cutoff),
                    ..quad()
                };
                let wide = polygamma_integral_detailed(n, x, &doubled).unwrap();
                let change = (wide.value - base.value).abs();
                let allowed = base.tail_bound + base.quadrature_error + wide.quadrature_error;
                assert!(change <= allowed, "n={n} x={x}: {change} > {allowed}");
                // The tail itself is negligible next to the target tolerance.
                assert!(base.tail_bound <= 1e-12 * base.value.abs().max(1.0));
            }
        }
    }

    #[test]
    fn truncating_early_is_reported_in_the_tail() {
        let short = QuadratureSpec {
            upper_cutoff: Some(5.0),
            ..quad()
        };
        let r = polygamma_integral_detailed(1, 1.0, &short).unwrap();
        let truth = PI * PI / 6.0;
        assert!((r.value - truth).abs() > 1e-3);
        assert!((r.value - truth).abs() <= r.tail_bound + r.quadrature_error);
    }

    #[test]
    fn quadrature_budget_exhaustion_is_an_error() {
        let tight = QuadratureSpec {
            max_subdivisions: 1,
            ..quad()
        };
        assert!(matches!(
            polygamma_integral(6, 0.1, &tight),
            Err(Error::QuadratureDidNotConverge { .. })
        ));
    }

    #[test]
    fn tolerance_validation() {
        assert!(QuadratureSpec::with_rel_tol(1e-15).is_err());
        assert!(QuadratureSpec::with_rel_tol(1e-5).is_err());
        assert!(QuadratureSpec::with_rel_tol(1e-10).is_ok());
    }

    #[test]
    fn even_numerator_branches_agree() {
        for a in [0.1, 0.5, 0.9] {
            let t = 0.999;
            let direct = -libm::expm1(-a * t) + a * libm::expm1(-t);
            let series = even_numerator(a, t);
            assert!((series - direct).abs() < 1e-14 * direct, "a={a}");
            let small = even_numerator(a, 1e-6);
            let leading = a * (1.0 - a) * 1e-12 / 2.0;
            assert!(((small - leading) / leading).abs() < 1e-5);
        }
    }

    #[test]
    fn bose_factor_is_continuous_at_branch() {
        let below = bose_factor(1e-3 * (1.0 - 1e-12));
        let above = bose_factor(1e-3);
        assert!((below - above).abs() < 1e-15);
    }
}
