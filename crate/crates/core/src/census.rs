//! Exact censuses over `Σ^n`: densities, agreement and balance statistics,
//! p-density checks and Myhill–Nerode class counts.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::languages::{equal_star_density, pal_sharp_density, LanguageId, LanguageOracle};
use crate::ratio::{serialize_biguint, Ratio};
use crate::word::{all_words, par_count, par_fold, word_count, Budget, Symbol};

/// How a density was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumeration,
    DfaDp,
    ClosedForm,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "enum" | "enumeration" => Ok(Method::Enumeration),
            "dfa" | "dfa-dp" => Ok(Method::DfaDp),
            "closed" | "closed-form" => Ok(Method::ClosedForm),
            _ => Err(Error::InvalidArgument(format!("unknown census method '{s}'"))),
        }
    }
}

/// `|Σ|^n` as a big integer.
pub fn sigma_n(size: usize, n: usize) -> BigUint {
    BigUint::from(size).pow(n as u32)
}

/// Known closed forms for `dense(L)(n)`.
pub fn closed_form_density(id: LanguageId, n: usize) -> Option<BigUint> {
    match id {
        LanguageId::EqualStar => Some(equal_star_density(n as u64)),
        LanguageId::PalSharp => Some(pal_sharp_density(n as u64)),
        LanguageId::SigmaStar => Some(sigma_n(2, n)),
        LanguageId::Empty => Some(BigUint::zero()),
        _ => None,
    }
}

/// `dense(L)(n) = |L ∩ Σ^n|` by exhaustive enumeration.
pub fn density(lang: &LanguageOracle, n: usize, budget: Budget) -> Result<BigUint> {
    let size = lang.alphabet().len();
    budget.check_words(size, n)?;
    Ok(BigUint::from(par_count(size, n, |w| lang.is_member(w))))
}

/// Joint membership table over `Σ^n`: `cells[l][a]` counts words with
/// `w ∈ L` equal to `l` and `w ∈ A` equal to `a`.
pub fn pair_census(l: &LanguageOracle, a: &LanguageOracle, n: usize, budget: Budget) -> Result<[[u64; 2]; 2]> {
    l.same_alphabet(a)?;
    let size = l.alphabet().len();
    budget.check_words(size, n)?;
    Ok(par_fold(
        size,
        n,
        || [[0u64; 2]; 2],
        |mut c, w| {
            c[l.is_member(w) as usize][a.is_member(w) as usize] += 1;
            c
        },
        |mut x, y| {
            for i in 0..2 {
                for j in 0..2 {
                    x[i][j] += y[i][j];
                }
            }
            x
        },
    ))
}

fn total(cells: &[[u64; 2]; 2]) -> u64 {
    cells.iter().flatten().sum()
}

/// `ℓ(n) = |dense(L△A)(n)/|Σ^n| − 1/2|`.
pub fn agreement(l: &LanguageOracle, a: &LanguageOracle, n: usize, budget: Budget) -> Result<Ratio> {
    let c = pair_census(l, a, n, budget)?;
    Ok(Ratio::new(c[1][0] + c[0][1], total(&c)).deviation_from_half())
}

/// `ℓ'(n) = |dense(L∩A)(n)/dense(A)(n) − 1/2|`. Undefined when
/// `dense(A)(n) = 0`.
pub fn conditional_balance(l: &LanguageOracle, a: &LanguageOracle, n: usize, budget: Budget) -> Result<Ratio> {
    let c = pair_census(l, a, n, budget)?;
    let in_a = c[1][1] + c[0][1];
    if in_a == 0 {
        return Err(Error::UndefinedRatio { n });
    }
    Ok(Ratio::new(c[1][1], in_a).deviation_from_half())
}

/// `ℓ''(n) = |dense(L∩A)(n) − dense(L̄∩A)(n)| / |Σ^n|`.
pub fn signed_balance(l: &LanguageOracle, a: &LanguageOracle, n: usize, budget: Budget) -> Result<Ratio> {
    let c = pair_census(l, a, n, budget)?;
    let diff = BigInt::from(c[1][1]) - BigInt::from(c[0][1]);
    Ok(Ratio::new(diff, total(&c)).abs())
}

/// `δ(n) = dense(A△B)(n)/|Σ^n|`.
pub fn almost_equal_gap(a: &LanguageOracle, b: &LanguageOracle, n: usize, budget: Budget) -> Result<Ratio> {
    let c = pair_census(a, b, n, budget)?;
    Ok(Ratio::new(c[1][0] + c[0][1], total(&c)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PDenseReport {
    pub degree: u32,
    pub holds: bool,
    /// Length with the smallest `dense(L)(n)·n^d / |Σ|^n`.
    pub worst_n: usize,
    pub worst_ratio: Ratio,
    pub rows: Vec<CensusRow>,
}

/// Checks `dense(L)(n) ≥ |Σ|^n / n^d` for every `n` in `range`.
pub fn pdense_check(lang: &LanguageOracle, d: u32, range: RangeInclusive<usize>, budget: Budget) -> Result<PDenseReport> {
    if range.is_empty() {
        return Err(Error::InvalidArgument("empty length range".into()));
    }
    let size = lang.alphabet().len();
    let mut worst: Option<(usize, Ratio)> = None;
    let mut rows = Vec::new();
    for n in range {
        let count = density(lang, n, budget)?;
        let space = sigma_n(size, n);
        let scaled = Ratio::from_counts(&(&count * BigUint::from(n).pow(d)), &space);
        if worst.as_ref().is_none_or(|(_, r)| scaled < *r) {
            worst = Some((n, scaled));
        }
        rows.push(CensusRow::new(n, count, &space));
    }
    let (worst_n, worst_ratio) = worst.expect("nonempty range");
    Ok(PDenseReport { degree: d, holds: worst_ratio >= Ratio::new(1, 1), worst_n, worst_ratio, rows })
}

/// Number of classes of `Σ^n` under "agree on every extension of length
/// at most `t`". A lower bound for the Nerode index restricted to `Σ^n`,
/// nondecreasing in `t`.
pub fn nerode_lower_bound(lang: &LanguageOracle, n: usize, t: usize, budget: Budget) -> Result<u64> {
    let size = lang.alphabet().len();
    let prefixes = word_count(size, n).ok_or(Error::BudgetExceeded { required: u64::MAX, budget: budget.0 })?;
    let extensions: u64 = (0..=t).map(|i| word_count(size, i).unwrap_or(u64::MAX)).fold(0u64, u64::saturating_add);
    budget.check(prefixes.saturating_mul(extensions))?;
    let suffixes: Vec<Vec<Symbol>> = (0..=t).flat_map(|i| all_words(size, i)).collect();
    let mut signatures: Vec<Vec<u64>> = all_words(size, n)
        .into_par_iter()
        .map(|x| {
            let mut sig = vec![0u64; suffixes.len().div_ceil(64)];
            let mut buf = x.clone();
            for (i, z) in suffixes.iter().enumerate() {
                buf.truncate(n);
                buf.extend_from_slice(z);
                if lang.is_member(&buf) {
                    sig[i / 64] |= 1 << (i % 64);
                }
            }
            sig
        })
        .collect();
    signatures.par_sort_unstable();
    signatures.dedup();
    Ok(signatures.len() as u64)
}

/// One census line. `count` is the primary count for the row's statistic;
/// `ratio` is `count / |Σ|^n` for densities and the statistic itself
/// otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    pub ratio: Ratio,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_biguint")]
    pub enumeration: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_biguint")]
    pub closed_form: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_biguint")]
    pub dfa_dp: Option<BigUint>,
}

fn serialize_opt_biguint<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_biguint(v, s),
        None => s.serialize_none(),
    }
}

impl CensusRow {
    pub fn new(n: usize, count: BigUint, space: &BigUint) -> Self {
        let ratio = Ratio::from_counts(&count, space);
        Self { n, count, ratio, enumeration: None, closed_form: None, dfa_dp: None }
    }

    pub fn statistic(n: usize, count: BigUint, ratio: Ratio) -> Self {
        Self { n, count, ratio, enumeration: None, closed_form: None, dfa_dp: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub statistic: String,
    pub languages: Vec<String>,
    pub alphabet_size: usize,
    pub method: Method,
    pub rows: Vec<CensusRow>,
}

/// Density table over `range`.
///
/// With `Method::Enumeration` every row is enumerated, and a known closed
/// form or DFA count is recorded alongside. `Method::ClosedForm` and
/// `Method::DfaDp` use the fast path and also enumerate whenever that fits
/// in the budget. Any disagreement between two methods is an error.
pub fn density_report(lang: &LanguageOracle, range: RangeInclusive<usize>, method: Method, budget: Budget) -> Result<CensusReport> {
    let size = lang.alphabet().len();
    let id = lang.name().parse::<LanguageId>().ok().filter(|id| id.alphabet() == *lang.alphabet());
    match method {
        Method::ClosedForm if id.and_then(|id| closed_form_density(id, 0)).is_none() => {
            return Err(Error::Unsupported(format!("no closed form for '{}'", lang.name())));
        }
        Method::DfaDp if lang.dfa().is_none() => {
            return Err(Error::Unsupported(format!("'{}' is not given by a DFA", lang.name())));
        }
        _ => {}
    }
    let dp = lang.dfa().map(|d| d.counts_up_to(*range.end()));
    let mut rows = Vec::new();
    for n in range {
        let closed = id.and_then(|id| closed_form_density(id, n));
        let dfa = dp.as_ref().map(|c| c[n].clone());
        let enumerated = match method {
            Method::Enumeration => Some(density(lang, n, budget)?),
            _ => match density(lang, n, budget) {
                Ok(c) => Some(c),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => return Err(e),
            },
        };
        let candidates = [("enumeration", &enumerated), ("closed form", &closed), ("dfa", &dfa)];
        let known: Vec<(&str, &BigUint)> = candidates.iter().filter_map(|(k, v)| v.as_ref().map(|v| (*k, v))).collect();
        if let Some((k0, v0)) = known.first() {
            if let Some((k1, v1)) = known.iter().find(|(_, v)| v != v0) {
                return Err(Error::CheckFailed {
                    what: format!("density census of {} at n = {n}", lang.name()),
                    detail: format!("{k0} gives {v0}, {k1} gives {v1}"),
                });
            }
        }
        let count = match method {
            Method::Enumeration => enumerated.clone(),
            Method::ClosedForm => closed.clone(),
            Method::DfaDp => dfa.clone(),
        }
        .expect("method availability checked above");
        let mut row = CensusRow::new(n, count, &sigma_n(size, n));
        row.enumeration = enumerated;
        row.closed_form = closed;
        row.dfa_dp = dfa;
        rows.push(row);
    }
    Ok(CensusReport {
        statistic: "density".into(),
        languages: vec![lang.name().into()],
        alphabet_size: size,
        method,
        rows,
    })
}

/// The pairwise statistics, by CLI name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairStatistic {
    Agreement,
    Conditional,
    Signed,
    Gap,
}

/// Per-length table of one pairwise statistic.
pub fn pair_report(
    stat: PairStatistic,
    l: &LanguageOracle,
    a: &LanguageOracle,
    range: RangeInclusive<usize>,
    budget: Budget,
) -> Result<CensusReport> {
    let mut rows = Vec::new();
    for n in range {
        let c = pair_census(l, a, n, budget)?;
        let space = BigUint::from(total(&c));
        let (count, ratio) = match stat {
            PairStatistic::Agreement => {
                let sym = c[1][0] + c[0][1];
                (sym, Ratio::new(sym, total(&c)).deviation_from_half())
            }
            PairStatistic::Conditional => {
                let in_a = c[1][1] + c[0][1];
                if in_a == 0 {
                    return Err(Error::UndefinedRatio { n });
                }
                (c[1][1], Ratio::new(c[1][1], in_a).deviation_from_half())
            }
            PairStatistic::Signed => {
                let diff = c[1][1].abs_diff(c[0][1]);
                (diff, Ratio::from_counts(&BigUint::from(diff), &space))
            }
            PairStatistic::Gap => {
                let sym = c[1][0] + c[0][1];
                (sym, Ratio::from_counts(&BigUint::from(sym), &space))
            }
        };
        rows.push(CensusRow::statistic(n, BigUint::from(count), ratio));
    }
    let name = match stat {
        PairStatistic::Agreement => "agreement",
        PairStatistic::Conditional => "conditional-balance",
        PairStatistic::Signed => "signed-balance",
        PairStatistic::Gap => "almost-equal-gap",
    };
    Ok(CensusReport {
        statistic: name.into(),
        languages: vec![l.name().into(), a.name().into()],
        alphabet_size: l.alphabet().len(),
        method: Method::Enumeration,
        rows,
    })
}
