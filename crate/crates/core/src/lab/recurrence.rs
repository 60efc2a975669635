//! Prefix-window counting: the `a`/`S`/`T` recurrence system.
//!
//! For an odd window width `m = 2·m0 + 1`, a binary word `v` satisfies the
//! centered windows if `#0(pref_j(v)) ∈ D_j = [⌈j/2⌉ − m0, ⌈j/2⌉ + m0]` for
//! every `j ∈ [m−1, |v|]`. Shorter prefixes are unconstrained.
//! `a[k][i]` counts such words of length `i` with
//! `#0(v) = ⌈i/2⌉ + m0 + 1 − k`, and `S[i] = Σ_k a[k][i]`.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::word::{pack_bits, Budget};

/// Counts are exact in `u128` up to this length.
pub const MAX_INDEX: usize = 126;

fn half_up(i: usize) -> i64 {
    i.div_ceil(2) as i64
}

fn check_m(m: usize) -> Result<usize> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("window width must be odd and at least 3, got {m}")));
    }
    Ok(m / 2)
}

/// Window `D_j` as an inclusive `#0` range (may stick out of `[0, j]`).
pub fn centered_window(m: usize, j: usize) -> (i64, i64) {
    let m0 = (m / 2) as i64;
    (half_up(j) - m0, half_up(j) + m0)
}

/// `δ_j = 2^(2j+1) − 1`.
pub fn delta(j: u32) -> u128 {
    (1u128 << (2 * j + 1)) - 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceTable {
    pub m: usize,
    /// Index of `rows[0]`; always `m − 1` for computed tables.
    pub first: usize,
    /// `rows[i - first][k - 1] = a[k][i]`.
    pub rows: Vec<Vec<u128>>,
    pub sums: Vec<u128>,
}

impl RecurrenceTable {
    pub fn last(&self) -> usize {
        self.first + self.rows.len() - 1
    }

    /// `a[k][i]` with `k` one-based; zero outside `[1, m]`.
    pub fn a(&self, k: i64, i: usize) -> u128 {
        if k < 1 || k > self.m as i64 {
            return 0;
        }
        self.rows[i - self.first][k as usize - 1]
    }

    pub fn s(&self, i: usize) -> u128 {
        self.sums[i - self.first]
    }

    fn push(&mut self, row: Vec<u128>) {
        self.sums.push(row.iter().sum());
        self.rows.push(row);
    }
}

/// Brute-force `(a[1][i], …, a[m][i])` over all of `{0,1}^i`.
pub fn a_brute(m: usize, i: usize, budget: Budget) -> Result<Vec<u128>> {
    let m0 = check_m(m)? as i64;
    budget.check_words(2, i)?;
    let windows: Vec<(i64, i64)> = (0..=i).map(|j| centered_window(m, j)).collect();
    let top = half_up(i) + m0 + 1;
    let counts = crate::word::par_fold(
        2,
        i,
        || vec![0u128; m],
        |mut acc, w| {
            let mut zeros = 0i64;
            for (j, s) in w.iter().enumerate() {
                zeros += (s.0 == 0) as i64;
                let len = j + 1;
                if len + 1 >= m {
                    let (lo, hi) = windows[len];
                    if zeros < lo || zeros > hi {
                        return acc;
                    }
                }
            }
            if i + 1 < m {
                // window conditions start at m−1; words this short only fix #0
                let (lo, hi) = windows[i];
                if zeros < lo || zeros > hi {
                    return acc;
                }
            }
            acc[(top - zeros) as usize - 1] += 1;
            acc
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    );
    Ok(counts)
}

/// One length step. `even` is the parity of the current index.
fn step(row: &[u128], even: bool) -> Vec<u128> {
    let m = row.len();
    (0..m)
        .map(|k| {
            if even {
                row[k] + if k > 0 { row[k - 1] } else { 0 }
            } else {
                row[k] + row.get(k + 1).copied().unwrap_or(0)
            }
        })
        .collect()
}

/// Two steps from an odd index: first, middle and last rules.
fn odd_to_odd(row: &[u128]) -> Vec<u128> {
    let m = row.len();
    let mut next = vec![0u128; m];
    next[0] = row[0] + row[1];
    for k in 1..m - 1 {
        next[k] = row[k - 1] + 2 * row[k] + row[k + 1];
    }
    next[m - 1] = row[m - 2] + 2 * row[m - 1];
    next
}

/// Table of `a[k][i]` for `i ∈ [m−1, i_max]`. The base row comes from
/// [`a_brute`]; odd rows after the first odd one use the two-step rule and
/// even rows the one-step rule.
pub fn a_table(m: usize, i_max: usize) -> Result<RecurrenceTable> {
    check_m(m)?;
    if i_max < m - 1 || i_max > MAX_INDEX {
        return Err(Error::InvalidArgument(format!("table end {i_max} outside [{}, {MAX_INDEX}]", m - 1)));
    }
    let base = a_brute(m, m - 1, Budget(u64::MAX))?;
    let mut t = RecurrenceTable { m, first: m - 1, rows: Vec::new(), sums: Vec::new() };
    t.push(base);
    for i in m..=i_max {
        let row = if i % 2 == 1 && i >= m + 2 {
            odd_to_odd(&t.rows[i - 2 - t.first])
        } else {
            step(&t.rows[i - 1 - t.first], (i - 1) % 2 == 0)
        };
        t.push(row);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    pub m: usize,
    /// `e^slope` of the least-squares line through `(i, ln S[i])`.
    pub estimate: f64,
    pub slope: f64,
    pub points: Vec<usize>,
    /// `γ = 1/(1/δ + 1)` with `δ = δ_{m0−1}`.
    pub gamma: Ratio,
    /// Per-step rate implied by `S[2i+1] ≤ (3+γ)·S[2i−1]`.
    pub sqrt_three_plus_gamma: f64,
    pub below_two: bool,
}

pub fn gamma(m: usize) -> Result<Ratio> {
    let m0 = check_m(m)?;
    let d = delta(m0 as u32 - 1);
    Ok(Ratio::new(d, d + 1))
}

/// Fits the growth rate of `S` over the upper half of the table.
pub fn growth_fit(t: &RecurrenceTable) -> Result<GrowthFit> {
    let mid = (t.first + t.last()).div_ceil(2);
    let points: Vec<usize> = (mid..=t.last()).filter(|&i| t.s(i) > 0).collect();
    if points.len() < 2 {
        return Err(Error::InvalidArgument("growth fit needs at least two nonzero sums".into()));
    }
    let xs: Vec<f64> = points.iter().map(|&i| i as f64).collect();
    let ys: Vec<f64> = points.iter().map(|&i| (t.s(i) as f64).ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let estimate = slope.exp();
    let g = gamma(t.m)?;
    Ok(GrowthFit {
        m: t.m,
        estimate,
        slope,
        points,
        sqrt_three_plus_gamma: (3.0 + g.to_f64()).sqrt(),
        gamma: g,
        below_two: estimate < 2.0,
    })
}

/// Checks `Σ_{k=m0+1−j}^{m0+1+j} a[k][2i+1] ≤ δ_j·(a[m0−j][2i+1] + a[m0+j+2][2i+1])`
/// for every `i` and `j` in the given ranges.
pub fn delta_check(
    m: usize,
    i_range: std::ops::RangeInclusive<usize>,
    j_range: std::ops::RangeInclusive<usize>,
) -> Result<bool> {
    let m0 = check_m(m)?;
    if *j_range.end() + 1 > m0 {
        return Err(Error::InvalidArgument(format!("j = {} outside [0, {}]", j_range.end(), m0 - 1)));
    }
    if i_range.is_empty() || j_range.is_empty() {
        return Ok(true);
    }
    if 2 * i_range.start() + 1 < m - 1 {
        return Err(Error::InvalidArgument(format!("index {} precedes the table start {}", 2 * i_range.start() + 1, m - 1)));
    }
    let t = a_table(m, 2 * i_range.end() + 1)?;
    let m0 = m0 as i64;
    Ok(i_range.clone().all(|i| {
        let row = 2 * i + 1;
        j_range.clone().all(|j| {
            let j = j as i64;
            let lhs: u128 = (m0 + 1 - j..=m0 + 1 + j).map(|k| t.a(k, row)).sum();
            lhs <= delta(j as u32) * (t.a(m0 - j, row) + t.a(m0 + j + 2, row))
        })
    }))
}

/// Checks `S[2i+1] ≤ (3+γ)·S[2i−1]` exactly over every odd pair in the table.
pub fn sum_recurrence_check(t: &RecurrenceTable) -> Result<bool> {
    let m0 = check_m(t.m)?;
    let d = BigUint::from(delta(m0 as u32 - 1));
    // (3+γ) = (3 + 4δ)/(1 + δ)
    let num = BigUint::from(3u8) + &d * 4u8;
    let den = BigUint::from(1u8) + &d;
    let first_odd = t.first + t.first.is_multiple_of(2) as usize;
    Ok((first_odd + 2..=t.last())
        .step_by(2)
        .all(|i| BigUint::from(t.s(i)) * &den <= BigUint::from(t.s(i - 2)) * &num))
}

/// Sets `E_i ⊆ [0, i]` with `|E_i| = m` for `i ∈ [m−1, m−1+len)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MIndexSeries {
    m: usize,
    sets: Vec<Vec<u64>>,
}

impl MIndexSeries {
    pub fn new(m: usize, sets: Vec<Vec<u64>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("window width must be positive".into()));
        }
        for (off, e) in sets.iter().enumerate() {
            let i = (m - 1 + off) as u64;
            let mut sorted = e.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != m || sorted.iter().any(|&x| x > i) {
                return Err(Error::InvalidArgument(format!("E_{i} must hold {m} distinct values in [0, {i}]")));
            }
        }
        let sets = sets
            .into_iter()
            .map(|mut e| {
                e.sort_unstable();
                e
            })
            .collect();
        Ok(Self { m, sets })
    }

    /// The centered series `D_{m−1}, …, D_n`, clipped into `[0, i]` by
    /// sliding the window when it sticks out.
    pub fn centered(m: usize, n: usize) -> Result<Self> {
        Self::shifted(m, n, 0)
    }

    /// The centered series moved up by `offset` (then clipped into `[0, i]`).
    pub fn shifted(m: usize, n: usize, offset: i64) -> Result<Self> {
        check_m(m)?;
        let sets = (m - 1..=n)
            .map(|i| {
                let (lo, _) = centered_window(m, i);
                let lo = (lo + offset).clamp(0, (i + 1 - m) as i64) as u64;
                (lo..lo + m as u64).collect()
            })
            .collect();
        Self::new(m, sets)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Last index covered.
    pub fn end(&self) -> usize {
        self.m - 1 + self.sets.len() - 1
    }

    pub fn set(&self, i: usize) -> &[u64] {
        &self.sets[i + 1 - self.m]
    }

    pub fn sets(&self) -> &[Vec<u64>] {
        &self.sets
    }

    /// Membership of `w` (as `#0` after each prefix) in `T_{E,n}`.
    pub fn admits(&self, zeros_after: impl Fn(usize) -> u64, n: usize) -> bool {
        (self.m - 1..=n).all(|i| self.set(i).binary_search(&zeros_after(i)).is_ok())
    }
}

/// `|T_{E,n}| = |{w ∈ {0,1}^n : #0(pref_i(w)) ∈ E_i for all i ∈ [m−1, n]}|`.
pub fn t_count(e: &MIndexSeries, n: usize) -> Result<u128> {
    if n + 1 < e.m() || n > e.end() || n > MAX_INDEX {
        return Err(Error::InvalidArgument(format!("length {n} outside the series range [{}, {}]", e.m() - 1, e.end())));
    }
    let mut dp = vec![0u128; n + 2];
    dp[0] = 1;
    for len in 1..=n {
        for z in (0..=len).rev() {
            dp[z] += if z > 0 { dp[z - 1] } else { 0 };
        }
        if len + 1 >= e.m() {
            let allowed = e.set(len);
            for (z, c) in dp.iter_mut().enumerate().take(len + 1) {
                if allowed.binary_search(&(z as u64)).is_err() {
                    *c = 0;
                }
            }
        }
    }
    Ok(dp.iter().sum())
}

/// Brute-force `t_count`.
pub fn t_brute(e: &MIndexSeries, n: usize, budget: Budget) -> Result<u128> {
    budget.check_words(2, n)?;
    let count = crate::word::par_count(2, n, |w| {
        let bitsv = pack_bits(w);
        e.admits(|i| i as u64 - (bitsv >> (n - i)).count_ones() as u64, n)
    });
    Ok(count as u128)
}

/// `t_count(E, n) ≤ S[n]` with `S` from the centered table.
pub fn max_choice_check(e: &MIndexSeries, n: usize) -> Result<bool> {
    let t = a_table(e.m(), n)?;
    Ok(t_count(e, n)? <= t.s(n))
}
