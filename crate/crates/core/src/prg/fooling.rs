//! Distinguishing advantage of automata against `G`.

use std::ops::RangeInclusive;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::automata::{AdvisedDfa, Dfa};
use crate::error::{Error, Result};
use crate::probe::enum_dfas;
use crate::ratio::Ratio;
use crate::word::{unpack_bits, Alphabet, Budget, Symbol, Word};

use super::generator::preimage_counts;

/// Seeds are always enumerated; longer seeds are refused.
pub const MAX_FOOL_SEED_LEN: usize = 20;

#[derive(Clone, Debug)]
pub enum Distinguisher {
    Dfa(Dfa),
    Advised(AdvisedDfa),
}

impl Distinguisher {
    /// Stable textual id: the transition table and final states.
    pub fn id(&self) -> String {
        match self {
            Distinguisher::Dfa(d) => dfa_id(d),
            Distinguisher::Advised(a) => format!("advised:{}", dfa_id(a.base())),
        }
    }

    fn alphabet(&self) -> &Alphabet {
        match self {
            Distinguisher::Dfa(d) => d.alphabet(),
            Distinguisher::Advised(a) => a.input_alphabet(),
        }
    }
}

pub fn dfa_id(d: &Dfa) -> String {
    let rows: Vec<String> = d.table().iter().map(|r| r.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")).collect();
    let finals: Vec<String> = d.finals().map(|q| q.to_string()).collect();
    format!("[{}]/{{{}}}", rows.join(";"), finals.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoolingRow {
    pub n: usize,
    pub prob_on_range: Ratio,
    pub prob_on_uniform: Ratio,
    pub ell: Ratio,
}

impl FoolingRow {
    fn new(n: usize, on_range: &BigUint, on_uniform: &BigUint) -> Self {
        let prob_on_range = Ratio::from_counts(on_range, &(BigUint::from(1u8) << n));
        let prob_on_uniform = Ratio::from_counts(on_uniform, &(BigUint::from(1u8) << (n + 1)));
        let ell = Ratio(&prob_on_range.0 - &prob_on_uniform.0).abs();
        FoolingRow { n, prob_on_range, prob_on_uniform, ell }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoolingReport {
    pub distinguisher: String,
    pub rows: Vec<FoolingRow>,
}

/// Sorted range points of `G` on `Σ^n` with their preimage counts.
pub struct WeightedRange {
    n: usize,
    points: Vec<(u64, u8)>,
}

impl WeightedRange {
    pub fn new(n: usize, budget: Budget) -> Result<Self> {
        if n > MAX_FOOL_SEED_LEN {
            return Err(Error::InvalidArgument(format!("seed length {n} exceeds {MAX_FOOL_SEED_LEN}; sampling is not offered")));
        }
        let counts = preimage_counts(n, budget)?;
        let points = counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(v, &c)| (v as u64, c)).collect();
        Ok(Self { n, points })
    }

    /// Number of seeds `x` with `G(x)` accepted by `d`. Consecutive points
    /// share prefixes, so states are kept per depth and only the differing
    /// suffix is re-run.
    pub fn accepted_seeds(&self, d: &Dfa) -> u64 {
        let len = self.n + 1;
        let mut states = vec![d.start(); len + 1];
        let mut prev: Option<u64> = None;
        let mut total = 0u64;
        for &(v, c) in &self.points {
            let from = match prev {
                // index of the first differing symbol
                Some(p) => (p ^ v).leading_zeros() as usize - (64 - len),
                None => 0,
            };
            for i in from..len {
                let s = Symbol(((v >> (len - 1 - i)) & 1) as u8);
                states[i + 1] = d.step(states[i], s);
            }
            if d.is_final(states[len]) {
                total += c as u64;
            }
            prev = Some(v);
        }
        total
    }

    fn accepted_seeds_advised(&self, a: &AdvisedDfa) -> Result<u64> {
        let h = a.advice_word(self.n + 1)?;
        let mut w = Word::new();
        Ok(self
            .points
            .iter()
            .filter(|&&(v, _)| {
                unpack_bits(v, self.n + 1, &mut w);
                a.accepts_with(&w, &h)
            })
            .map(|&(_, c)| c as u64)
            .sum())
    }
}

fn check_binary(d: &Distinguisher) -> Result<()> {
    if d.alphabet().len() != 2 {
        return Err(Error::AlphabetMismatch { left: d.alphabet().to_string(), right: Alphabet::binary().to_string() });
    }
    Ok(())
}

fn row_for(d: &Distinguisher, range: &WeightedRange, budget: Budget) -> Result<FoolingRow> {
    let n = range.n;
    let (on_range, on_uniform) = match d {
        Distinguisher::Dfa(d) => (range.accepted_seeds(d), d.count(n + 1)),
        Distinguisher::Advised(a) => {
            budget.check_words(2, n + 1)?;
            let h = a.advice_word(n + 1)?;
            let uniform = crate::word::par_count(2, n + 1, |w| a.accepts_with(w, &h));
            (range.accepted_seeds_advised(a)?, BigUint::from(uniform))
        }
    };
    Ok(FoolingRow::new(n, &BigUint::from(on_range), &on_uniform))
}

/// `|Prob_x[A(G(x))] − Prob_y[A(y)]|` over `x ∈ Σ^n`, `y ∈ Σ^(n+1)`.
pub fn fool_stat(d: &Distinguisher, n: usize, budget: Budget) -> Result<FoolingRow> {
    check_binary(d)?;
    row_for(d, &WeightedRange::new(n, budget)?, budget)
}

pub fn fooling_report(d: &Distinguisher, range: RangeInclusive<usize>, budget: Budget) -> Result<FoolingReport> {
    check_binary(d)?;
    let rows = range.map(|n| row_for(d, &WeightedRange::new(n, budget)?, budget)).collect::<Result<_>>()?;
    Ok(FoolingReport { distinguisher: d.id(), rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteMax {
    pub n: usize,
    pub ell: Ratio,
    pub distinguisher: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoolSuiteReport {
    pub max_states: usize,
    pub distinguishers: usize,
    pub per_n_max: Vec<SuiteMax>,
    pub reports: Vec<FoolingReport>,
}

/// `fool_stat` for every canonical binary DFA with at most `max_states`
/// states, over every seed length in `range`.
pub fn fool_suite(max_states: usize, range: RangeInclusive<usize>, budget: Budget) -> Result<FoolSuiteReport> {
    let dfas = enum_dfas(max_states, &Alphabet::binary(), budget)?;
    let ranges: Vec<WeightedRange> = range.clone().map(|n| WeightedRange::new(n, budget)).collect::<Result<_>>()?;
    let reports: Vec<FoolingReport> = dfas
        .par_iter()
        .map(|d| {
            let rows = ranges.iter().map(|r| FoolingRow::new(r.n, &BigUint::from(r.accepted_seeds(d)), &d.count(r.n + 1))).collect();
            FoolingReport { distinguisher: dfa_id(d), rows }
        })
        .collect();
    let per_n_max = ranges
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let best = reports.iter().max_by(|a, b| a.rows[i].ell.cmp(&b.rows[i].ell));
            SuiteMax {
                n: r.n,
                ell: best.map_or_else(Ratio::zero, |b| b.rows[i].ell.clone()),
                distinguisher: best.map(|b| b.distinguisher.clone()).unwrap_or_default(),
            }
        })
        .collect();
    Ok(FoolSuiteReport { max_states, distinguishers: dfas.len(), per_n_max, reports })
}

/// `ℓ ≤ c·2^(−n/4)`, checked exactly as `ℓ^4·2^n ≤ c^4`.
pub fn within_decay(ell: &Ratio, n: usize, c: u64) -> bool {
    let num = ell.numer().magnitude().pow(4) << n;
    let den = ell.denom().magnitude().pow(4) * BigUint::from(c).pow(4);
    num <= den
}
