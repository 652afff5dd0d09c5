//! Polygamma functions on the positive real axis and numerical certification
//! of complete-monotonicity and two-sided bounds for the shifted differences
//!
//! ```text
//! f_{a,k}(x) = ψ^(k)(x+a) − ψ^(k)(x) − a·k!/x^{k+1},   0 < a < 1.
//! ```
//!
//! For even `k` the difference is strictly completely monotonic on `(0, ∞)`;
//! for odd `k` its negation is. [`cm::cm_scan`] checks the sign pattern of the
//! closed-form derivatives on a grid, and [`bounds`] tabulates the resulting
//! inequalities on `(1, ∞)`.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use polycm_core::polygamma::{polygamma, PolygammaOrder};
//!
//! let trigamma_one = polygamma(PolygammaOrder::new(1).unwrap(), 1.0).unwrap();
//! let pi = core::f64::consts::PI;
//! assert!((trigamma_one.value - pi * pi / 6.0).abs() < 1e-14);
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod cm;
pub mod constants;
mod error;
pub mod grid;
pub mod oracle;
pub mod polygamma;

pub use error::Error;
pub use grid::{GridSpec, Spacing};
pub use polygamma::{digamma, factorial_over_power, polygamma, EvalResult, PolygammaOrder};

/// Convenience alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
