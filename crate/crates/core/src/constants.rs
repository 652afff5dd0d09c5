//! Mathematical constants, even-index Bernoulli numbers and ζ at integers.
//!
//! The table is built once on first use and never mutated afterwards, so the
//! shared reference returned by [`ConstantTable::get`] can be read from any
//! number of threads.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use once_cell::race::OnceBox;

use crate::{Error, Result};

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Largest `m` for which [`bernoulli_even`] returns `B_{2m}`.
pub const MAX_BERNOULLI_INDEX: u32 = 30;

/// ζ(s) is cached for `2 <= s <= MAX_CACHED_ZETA`. Beyond that 1 + 2^{-s}
/// rounds to 1 in binary64.
pub const MAX_CACHED_ZETA: u32 = 52;

// Terms summed explicitly before the Euler–Maclaurin tail takes over.
const ZETA_DIRECT_TERMS: u32 = 10;

/// Immutable table of constants shared by every module.
#[derive(Debug)]
pub struct ConstantTable {
    pub gamma_euler: f64,
    pub pi: f64,
    pub ln2: f64,
    zeta_cache: BTreeMap<u32, f64>,
    /// Keyed by the Bernoulli index `2m`.
    bernoulli_cache: BTreeMap<u32, f64>,
}

static TABLE: OnceBox<ConstantTable> = OnceBox::new();

impl ConstantTable {
    /// The process-wide table.
    pub fn get() -> &'static ConstantTable {
        TABLE.get_or_init(|| Box::new(ConstantTable::build()))
    }

    fn build() -> Self {
        let exact = bernoulli_rationals(2 * MAX_BERNOULLI_INDEX as usize);
        let bernoulli_cache: BTreeMap<u32, f64> = (1..=MAX_BERNOULLI_INDEX)
            .map(|m| {
                let b = exact[2 * m as usize]
                    .to_f64()
                    .expect("Bernoulli numbers up to B_60 fit in binary64");
                (2 * m, b)
            })
            .collect();

        let pi = core::f64::consts::PI;
        let mut zeta_cache = BTreeMap::new();
        for s in 2..=MAX_CACHED_ZETA {
            let value = match s {
                2 => pi * pi / 6.0,
                4 => {
                    let p2 = pi * pi;
                    p2 * p2 / 90.0
                }
                _ => zeta_euler_maclaurin(s, &bernoulli_cache),
            };
            zeta_cache.insert(s, value);
        }

        ConstantTable {
            gamma_euler: EULER_GAMMA,
            pi,
            ln2: core::f64::consts::LN_2,
            zeta_cache,
            bernoulli_cache,
        }
    }

    /// `B_{2m}` for `1 <= m <= 30`.
    pub fn bernoulli_even(&self, m: u32) -> Result<f64> {
        if !(1..=MAX_BERNOULLI_INDEX).contains(&m) {
            return Err(Error::BernoulliIndex(m));
        }
        Ok(self.bernoulli_cache[&(2 * m)])
    }

    /// ζ(s) for integer `s >= 2`.
    pub fn zeta_int(&self, s: u32) -> Result<f64> {
        if s < 2 {
            return Err(Error::ZetaDomain(s));
        }
        Ok(match self.zeta_cache.get(&s) {
            Some(&v) => v,
            None => zeta_euler_maclaurin(s, &self.bernoulli_cache),
        })
    }

    /// Cached `(s, ζ(s))` pairs in increasing `s`.
    pub fn zeta_entries(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.zeta_cache.iter().map(|(&s, &v)| (s, v))
    }
}

/// ζ(s) for integer `s >= 2`.
pub fn zeta_int(s: u32) -> Result<f64> {
    ConstantTable::get().zeta_int(s)
}

/// Even-index Bernoulli number `B_{2m}`, `1 <= m <= 30`.
pub fn bernoulli_even(m: u32) -> Result<f64> {
    ConstantTable::get().bernoulli_even(m)
}

/// Exact `B_0..=B_max` from `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, with `B_1 = −1/2`.
fn bernoulli_rationals(max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max + 1);
    b.push(BigRational::from_integer(BigInt::from(1)));
    // Row m+1 of Pascal's triangle, rebuilt incrementally.
    let mut row: Vec<BigInt> = alloc::vec![BigInt::from(1), BigInt::from(1)];
    for m in 1..=max {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::from(1));
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::from(1));
        row = next;
        // row now holds C(m+1, j).
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += BigRational::from_integer(row[j].clone()) * bj;
            }
        }
        let bm = -acc / BigRational::from_integer(BigInt::from(m as u64 + 1));
        b.push(bm);
    }
    b
}

/// Partial sum up to `N − 1` plus the Euler–Maclaurin tail at `N`, stopping
/// once the next correction drops below `1e-16` of the running total.
fn zeta_euler_maclaurin(s: u32, bernoulli: &BTreeMap<u32, f64>) -> f64 {
    let sf = s as f64;
    let n = ZETA_DIRECT_TERMS as f64;
    // Smallest terms first.
    let mut sum = 0.0;
    for k in (2..ZETA_DIRECT_TERMS).rev() {
        sum += libm::pow(k as f64, -sf);
    }
    sum += 1.0;
    let n_pow = libm::pow(n, -sf);
    let mut tail = n * n_pow / (sf - 1.0) + 0.5 * n_pow;

    // term_j = B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = sf; // s(s+1)…(s+2j−2)
    let mut factorial = 2.0; // (2j)!
    let mut power = n_pow / n; // N^{−s−2j+1}
    for j in 1..=MAX_BERNOULLI_INDEX {
        let term = bernoulli[&(2 * j)] / factorial * rising * power;
        tail += term;
        if term.abs() < 1e-16 * (sum + tail) {
            break;
        }
        let j2 = 2.0 * j as f64;
        rising *= (sf + j2 - 1.0) * (sf + j2);
        factorial *= (j2 + 1.0) * (j2 + 2.0);
        power /= n * n;
    }
    sum + tail
}
