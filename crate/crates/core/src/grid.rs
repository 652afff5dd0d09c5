//! One-dimensional evaluation grids for scans and tables.

use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Spacing {
    Linear,
    Logarithmic,
}

/// `points` abscissae spanning `[lo, hi]`, both endpoints included exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize, spacing: Spacing) -> Result<Self> {
        let grid = GridSpec {
            lo,
            hi,
            points,
            spacing,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn logarithmic(lo: f64, hi: f64, points: usize) -> Result<Self> {
        Self::new(lo, hi, points, Spacing::Logarithmic)
    }

    pub fn linear(lo: f64, hi: f64, points: usize) -> Result<Self> {
        Self::new(lo, hi, points, Spacing::Linear)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) {
            return Err(Error::InvalidGrid("endpoints must be finite"));
        }
        if self.lo <= 0.0 {
            return Err(Error::InvalidGrid("lo must be positive"));
        }
        if self.hi <= self.lo {
            return Err(Error::InvalidGrid("hi must exceed lo"));
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid("at least two points are required"));
        }
        Ok(())
    }

    /// Generated abscissae, strictly increasing.
    pub fn points(&self) -> Vec<f64> {
        let last = self.points - 1;
        let mut out: Vec<f64> = (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.lo;
                }
                if i == last {
                    return self.hi;
                }
                let frac = i as f64 / last as f64;
                match self.spacing {
                    Spacing::Linear => self.lo + (self.hi - self.lo) * frac,
                    Spacing::Logarithmic => {
                        let (l, h) = (libm::log(self.lo), libm::log(self.hi));
                        libm::exp(l + (h - l) * frac)
                    }
                }
            })
            .collect();
        // Rounding can only collide neighbours on absurdly fine grids.
        out.dedup();
        out
    }
}
