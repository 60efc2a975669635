//! The one-bit-stretch generator `G` and its range census.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::languages::{inner_product, LanguageId};
use crate::ratio::Ratio;
use crate::word::{unpack_bits, Alphabet, Budget, Symbol, Word};

/// Largest seed length handled by the exhaustive routines.
pub const MAX_SEED_LEN: usize = 24;

fn flip(s: Symbol) -> Symbol {
    Symbol(1 - s.0)
}

/// `G(w)`, computed on words.
///
/// For odd `|w| = 2k+1` write `w = b·z·y` with `|z| = |y| = k`:
/// * `z^R ⊙ y` odd: `b z y b̄`;
/// * even and `b = 1`: `1 z y 1`;
/// * even, `b = 0` and `z ≠ 0^k`: `0 z ỹ 0`, where `ỹ` flips `y_i` for the
///   least `i` with `z_{k−i+1} = 1`;
/// * even, `b = 0` and `z = 0^k`: `1 z y 1`.
///
/// For even `|w|`, `G(a·w') = a·G(w')`.
pub fn g_generate(w: &[Symbol]) -> Result<Word> {
    Alphabet::binary().validate(w)?;
    if w.is_empty() {
        return Err(Error::Domain("G is undefined on the empty word".into()));
    }
    if w.len().is_multiple_of(2) {
        let mut out = vec![w[0]];
        out.extend(g_generate(&w[1..])?);
        return Ok(out);
    }
    let k = w.len() / 2;
    let (b, z, y) = (w[0], &w[1..=k], &w[k + 1..]);
    let zr: Word = z.iter().rev().copied().collect();
    let odd = inner_product(&zr, y)? == 1;
    let mut out = Vec::with_capacity(w.len() + 1);
    let (first, middle_y, last): (Symbol, Word, Symbol) = if odd {
        (b, y.to_vec(), flip(b))
    } else if b == Symbol::ONE {
        (Symbol::ONE, y.to_vec(), Symbol::ONE)
    } else if let Some(i) = zr.iter().position(|&s| s == Symbol::ONE) {
        let mut yt = y.to_vec();
        yt[i] = flip(yt[i]);
        (Symbol::ZERO, yt, Symbol::ZERO)
    } else {
        (Symbol::ONE, y.to_vec(), Symbol::ONE)
    };
    out.push(first);
    out.extend_from_slice(z);
    out.extend(middle_y);
    out.push(last);
    Ok(out)
}

fn reverse_bits(x: u64, k: usize) -> u64 {
    if k == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - k)
    }
}

/// `G` on a bit-packed seed of length `n ≥ 1` (first symbol in the most
/// significant position); the result has `n + 1` bits.
pub fn g_packed(x: u64, n: usize) -> u64 {
    debug_assert!((1..64).contains(&n));
    if n.is_multiple_of(2) {
        let a = x >> (n - 1);
        return (a << n) | g_packed(x & ((1 << (n - 1)) - 1), n - 1);
    }
    let k = n / 2;
    let mask = (1u64 << k) - 1;
    let b = x >> (2 * k);
    let z = (x >> k) & mask;
    let y = x & mask;
    let zr = reverse_bits(z, k);
    let (first, y, last) = if (zr & y).count_ones() % 2 == 1 {
        (b, y, 1 - b)
    } else if b == 1 || zr == 0 {
        (1, y, 1)
    } else {
        // z^R_1 sits in bit k-1, so the least index is the highest set bit
        (0, y ^ (1 << (63 - zr.leading_zeros())), 0)
    };
    (first << (2 * k + 1)) | (z << (k + 1)) | (y << 1) | last
}

/// `2^n − 2^⌈(n−1)/2⌉`.
pub fn expected_range_size(n: usize) -> BigUint {
    (BigUint::from(1u8) << n) - (BigUint::from(1u8) << (n - 1).div_ceil(2))
}

fn check_seed_len(n: usize, budget: Budget) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("G is undefined on the empty word".into()));
    }
    if n > MAX_SEED_LEN {
        return Err(Error::InvalidArgument(format!("seed length {n} exceeds {MAX_SEED_LEN}")));
    }
    budget.check_words(2, n)?;
    Ok(())
}

/// Number of seeds mapping to each packed output of length `n + 1`.
pub fn preimage_counts(n: usize, budget: Budget) -> Result<Vec<u8>> {
    check_seed_len(n, budget)?;
    let mut counts = vec![0u8; 1 << (n + 1)];
    for x in 0..1u64 << n {
        counts[g_packed(x, n) as usize] += 1;
    }
    Ok(counts)
}

/// Image of `Σ^n` under `G`, sorted.
pub fn g_range(n: usize, budget: Budget) -> Result<Vec<Word>> {
    let counts = preimage_counts(n, budget)?;
    let mut out = Vec::new();
    let mut w = Word::new();
    for (v, &c) in counts.iter().enumerate() {
        if c > 0 {
            unpack_bits(v as u64, n + 1, &mut w);
            out.push(w.clone());
        }
    }
    Ok(out)
}

/// Preimage size ↦ number of range points with that many preimages.
pub fn g_preimage_census(n: usize, budget: Budget) -> Result<BTreeMap<u64, u64>> {
    let counts = preimage_counts(n, budget)?;
    let mut hist = BTreeMap::new();
    for &c in counts.iter().filter(|&&c| c > 0) {
        *hist.entry(c as u64).or_insert(0) += 1;
    }
    Ok(hist)
}

/// True iff `G(Σ^n) = IP_* ∩ Σ^(n+1)`.
pub fn g_range_equals_ip(n: usize, budget: Budget) -> Result<bool> {
    let counts = preimage_counts(n, budget)?;
    let ip = LanguageId::IpStar.oracle();
    let mut w = Word::new();
    Ok(counts.iter().enumerate().all(|(v, &c)| {
        unpack_bits(v as u64, n + 1, &mut w);
        (c > 0) == ip.is_member(&w)
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorRow {
    pub n: usize,
    #[serde(serialize_with = "crate::ratio::serialize_biguint")]
    pub range_size: BigUint,
    /// `1 − |range| / 2^n`.
    pub tau: Ratio,
    pub preimage_histogram: BTreeMap<u64, u64>,
    pub range_equals_ip: bool,
    pub matches_expected_size: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorReport {
    pub rows: Vec<GeneratorRow>,
}

impl GeneratorReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.range_equals_ip && r.matches_expected_size)
    }
}

pub fn generator_report(range: RangeInclusive<usize>, budget: Budget) -> Result<GeneratorReport> {
    let mut rows = Vec::new();
    for n in range {
        let hist = g_preimage_census(n, budget)?;
        let range_size = BigUint::from(hist.values().sum::<u64>());
        let space = BigUint::from(1u8) << n;
        let tau = Ratio::from_counts(&(&space - &range_size), &space);
        rows.push(GeneratorRow {
            n,
            matches_expected_size: range_size == expected_range_size(n),
            range_size,
            tau,
            preimage_histogram: hist,
            range_equals_ip: g_range_equals_ip(n, budget)?,
        });
    }
    Ok(GeneratorReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{bits, pack_bits, show_bits};

    fn g(s: &str) -> String {
        show_bits(&g_generate(&bits(s)).unwrap())
    }

    #[test]
    fn hand_traces() {
        assert_eq!(g("110"), "1101");
        assert_eq!(g("011"), "0111");
        assert_eq!(g("000"), "1001");
        assert_eq!(g("1"), "11");
        assert_eq!(g("0"), "11");
        // case (3a): z = 10, z^R = 01, least i is 2, so y_2 flips
        assert_eq!(g("01000"), "010010");
        assert!(g_generate(&[]).is_err());
        assert!(g_generate(&[Symbol(2)]).is_err());
    }

    #[test]
    fn packed_matches_words() {
        for n in 1..=12 {
            let mut w = Word::new();
            for x in 0..1u64 << n {
                unpack_bits(x, n, &mut w);
                let out = g_generate(&w).unwrap();
                assert_eq!(out.len(), n + 1);
                assert_eq!(pack_bits(&out), g_packed(x, n), "{}", show_bits(&w));
            }
        }
    }

    #[test]
    fn leading_bit_recursion() {
        let mut w = Word::new();
        for n in (2..=12).step_by(2) {
            for x in 0..1u64 << n {
                unpack_bits(x, n, &mut w);
                let out = g_generate(&w).unwrap();
                assert_eq!(out[0], w[0]);
                assert_eq!(out[1..], g_generate(&w[1..]).unwrap()[..]);
            }
        }
    }

    #[test]
    fn small_ranges() {
        assert_eq!(g_range(1, Budget::default()).unwrap(), vec![bits("11")]);
        assert_eq!(g_range(2, Budget::default()).unwrap().len(), 2);
        assert_eq!(g_range(3, Budget::default()).unwrap().len(), 6);
        assert_eq!(g_preimage_census(1, Budget::default()).unwrap(), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn census_shape() {
        for n in 1..=16 {
            let hist = g_preimage_census(n, Budget::default()).unwrap();
            let mass: u64 = hist.iter().map(|(s, c)| s * c).sum();
            assert_eq!(mass, 1 << n);
            assert!(hist.keys().all(|&s| s == 1 || s == 2));
            if n % 2 == 1 {
                let k = (n - 1) / 2;
                assert_eq!(hist.get(&2).copied().unwrap_or(0), 1 << k);
            }
            assert!(g_range_equals_ip(n, Budget::default()).unwrap(), "n={n}");
        }
    }

    #[test]
    fn report_rows() {
        let r = generator_report(1..=8, Budget::default()).unwrap();
        assert!(r.all_hold());
        assert_eq!(r.rows[2].tau, Ratio::new(1, 4));
        assert!(generator_report(0..=0, Budget::default()).is_err());
    }
}
