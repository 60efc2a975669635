//! Discrepancy of rectangles in the inner-product matrix.
//!
//! Rows and columns are indexed by words of length `h`; entry `(x, y)` is
//! `x ⊙ y mod 2`. With `n = 2h`, the discrepancy of `A × B` is
//! `2^-n · |#1 − #0|` over the entries of the rectangle.

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::word::{pack_bits, Budget, Word};

/// Largest supported half length.
pub const MAX_HALF_LEN: usize = 13;

/// `#1 − #0` over `A × B`, with words given bit-packed.
pub fn ip_imbalance(a: &[u64], b: &[u64]) -> i64 {
    let ones: u64 = a.iter().map(|&x| b.iter().filter(|&&y| (x & y).count_ones() & 1 == 1).count() as u64).sum();
    let total = (a.len() * b.len()) as i64;
    2 * ones as i64 - total
}

fn pack_set(half_len: usize, set: &[Word]) -> Result<Vec<u64>> {
    set.iter()
        .map(|w| {
            if w.len() != half_len || w.iter().any(|s| s.0 > 1) {
                Err(Error::InvalidArgument(format!("rectangle side contains a word outside {{0,1}}^{half_len}")))
            } else {
                Ok(pack_bits(w))
            }
        })
        .collect()
}

/// Exact `Disc(A × B)`.
pub fn ip_discrepancy(half_len: usize, a: &[Word], b: &[Word], budget: Budget) -> Result<Ratio> {
    if half_len > MAX_HALF_LEN {
        return Err(Error::InvalidArgument(format!("half length {half_len} exceeds {MAX_HALF_LEN}")));
    }
    budget.check((a.len() as u64).saturating_mul(b.len() as u64))?;
    let (pa, pb) = (pack_set(half_len, a)?, pack_set(half_len, b)?);
    Ok(disc_of(half_len, ip_imbalance(&pa, &pb)))
}

fn disc_of(half_len: usize, imbalance: i64) -> Ratio {
    Ratio::new(BigInt::from(imbalance.unsigned_abs()), BigInt::from(1u8) << (2 * half_len))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyTrial {
    pub size_a: usize,
    pub size_b: usize,
    pub imbalance: i64,
    pub disc: Ratio,
    /// `Disc² / (2^(-3n/2)·|A||B|)`; the bound holds iff this is ≤ 1.
    /// Zero for degenerate rectangles.
    pub squared_bound_ratio: Ratio,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub half_len: usize,
    pub n: usize,
    pub seed: u64,
    pub trials: Vec<DiscrepancyTrial>,
    pub max_disc: Option<Ratio>,
    pub max_squared_bound_ratio: Option<Ratio>,
    /// `sqrt` of the above, presentation only.
    pub max_bound_ratio: Option<f64>,
    pub within_bound: bool,
}

/// Checks `Disc(A × B) ≤ 2^(-3n/4)·√(|A||B|)`, i.e.
/// `(#1 − #0)² ≤ 2^(n/2)·|A||B|`, for one rectangle.
pub fn within_bound(half_len: usize, size_a: usize, size_b: usize, imbalance: i64) -> bool {
    let lhs = BigUint::from(imbalance.unsigned_abs()).pow(2);
    let rhs = (BigUint::from(size_a) * size_b) << half_len;
    lhs <= rhs
}

fn trial(half_len: usize, a: &[u64], b: &[u64]) -> DiscrepancyTrial {
    let imbalance = ip_imbalance(a, b);
    let denom = (BigUint::from(a.len()) * b.len()) << half_len;
    let squared_bound_ratio = if a.is_empty() || b.is_empty() {
        Ratio::zero()
    } else {
        Ratio::from_counts(&BigUint::from(imbalance.unsigned_abs()).pow(2), &denom)
    };
    DiscrepancyTrial { size_a: a.len(), size_b: b.len(), imbalance, disc: disc_of(half_len, imbalance), squared_bound_ratio }
}

/// Samples `trials` rectangles with each side a uniformly random subset of
/// `{0,1}^h`, drawn from ChaCha8 seeded with `seed`.
pub fn discrepancy_bound_check(half_len: usize, trials: usize, seed: u64) -> Result<DiscrepancyReport> {
    if half_len > MAX_HALF_LEN {
        return Err(Error::InvalidArgument(format!("half length {half_len} exceeds {MAX_HALF_LEN}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = 1u64 << half_len;
    let sample = |rng: &mut ChaCha8Rng| (0..side).filter(|_| rng.gen::<bool>()).collect::<Vec<u64>>();
    let mut results = Vec::with_capacity(trials);
    for _ in 0..trials {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        results.push(trial(half_len, &a, &b));
    }
    let max_disc = results.iter().map(|t| t.disc.clone()).max();
    let max_sq = results.iter().map(|t| t.squared_bound_ratio.clone()).max();
    let within = results.iter().all(|t| within_bound(half_len, t.size_a, t.size_b, t.imbalance));
    Ok(DiscrepancyReport {
        half_len,
        n: 2 * half_len,
        seed,
        max_bound_ratio: max_sq.as_ref().map(|r| r.to_f64().sqrt()),
        trials: results,
        max_disc,
        max_squared_bound_ratio: max_sq,
        within_bound: within,
    })
}

/// Discrepancy of the full `Σ^h × Σ^h` rectangle.
pub fn full_rectangle_discrepancy(half_len: usize) -> Ratio {
    let all: Vec<u64> = (0..1u64 << half_len).collect();
    disc_of(half_len, ip_imbalance(&all, &all))
}
