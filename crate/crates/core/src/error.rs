use thiserror::Error;

/// Everything that can go wrong while evaluating or certifying.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument must be finite and strictly positive, got {0}")]
    NonPositiveArgument(f64),
    #[error("polygamma order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: u32, max: u32 },
    #[error("zeta(s) is only provided for integer s >= 2, got {0}")]
    ZetaDomain(u32),
    #[error("Bernoulli index m must lie in [1, 30], got {0}")]
    BernoulliIndex(u32),
    #[error("shift parameter a must lie strictly inside (0, 1), got {0}")]
    ShiftOutOfRange(f64),
    #[error("k = {k} has the wrong parity for this operation")]
    ParityMismatch { k: u32 },
    #[error("invalid ratio parameters (alpha = {alpha}, beta = {beta})")]
    InvalidRatioParams { alpha: f64, beta: f64 },
    #[error("t must be nonnegative and finite, got {0}")]
    NegativeT(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("x = {0} lies outside the corollary domain x > 1")]
    OutsideBoundDomain(f64),
    #[error("result overflowed binary64 range")]
    Overflow,
    #[error("invalid tolerance {0}; expected a value in [1e-14, 1e-6]")]
    InvalidTolerance(f64),
    #[error("series order n must be at least 1 (use the digamma series for n = 0)")]
    SeriesOrderZero,
    #[error("quadrature did not reach tolerance within {subdivisions} subdivisions (estimate {estimate:e}, error {error:e})")]
    QuadratureDidNotConverge {
        subdivisions: usize,
        estimate: f64,
        error: f64,
    },
    #[error("the two endpoint forms disagree: {direct} vs {expanded} (allowed {allowed:e})")]
    EndpointMismatch {
        direct: f64,
        expanded: f64,
        allowed: f64,
    },
    #[error("evaluation failed at derivative order {n}, x = {x}: {reason}")]
    ScanPoint {
        n: u32,
        x: f64,
        reason: alloc::boxed::Box<Error>,
    },
}
