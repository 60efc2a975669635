//! Empirical immunity probing: enumerate small DFAs, look for infinite
//! regular subsets of a target language up to a length horizon, and apply
//! pumping decompositions.
//!
//! A survivor is evidence that the target is not immune at the horizon. An
//! empty survivor list is not a proof of immunity.

use rayon::prelude::*;
use serde::Serialize;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::languages::LanguageOracle;
use crate::word::{Alphabet, Budget, Symbol, Word};

/// Every complete DFA with at most `max_states` states over `alphabet`
/// whose states are all reachable and numbered in BFS order. Isomorphic
/// copies are skipped; language-equivalent machines of different shape are
/// not.
pub fn enum_dfas(max_states: usize, alphabet: &Alphabet, budget: Budget) -> Result<Vec<Dfa>> {
    let k = alphabet.len();
    let mut required = 0u64;
    for s in 1..=max_states {
        let tables = (s as u64).checked_pow((s * k) as u32).and_then(|t| t.checked_mul(1 << s));
        required = required.saturating_add(tables.unwrap_or(u64::MAX));
    }
    budget.check(required)?;
    let mut out = Vec::new();
    for s in 1..=max_states {
        let cells = s * k;
        let mut delta = vec![0usize; cells];
        loop {
            if is_bfs_canonical(&delta, s, k) {
                for mask in 0..1u32 << s {
                    let finals = (0..s).map(|q| mask >> q & 1 == 1).collect();
                    out.push(Dfa::from_raw(alphabet.clone(), delta.clone(), 0, finals));
                }
            }
            // odometer over transition tables
            let mut i = cells;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                delta[i] += 1;
                if delta[i] < s {
                    break;
                }
                delta[i] = 0;
            }
            if delta.iter().all(|&t| t == 0) {
                break;
            }
        }
    }
    Ok(out)
}

/// Reading the table row by row from state 0, each new state must appear
/// as the next unused number, and every state must appear.
fn is_bfs_canonical(delta: &[usize], states: usize, k: usize) -> bool {
    let mut next = 1;
    for q in 0..states {
        if q >= next {
            return false;
        }
        for &t in &delta[q * k..(q + 1) * k] {
            if t > next {
                return false;
            }
            if t == next {
                next += 1;
            }
        }
    }
    next == states
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum SubsetOutcome {
    /// Every accepted word up to the horizon lies in the target.
    Subset { checked: u64 },
    Counterexample { word: Word },
    /// The cap on accepted words was reached first.
    Inconclusive { checked: u64 },
}

/// Checks `L(d) ∩ Σ^{≤horizon} ⊆ L`, visiting accepted words in
/// length-lexicographic order and stopping at the first counterexample or
/// after `cap` words.
pub fn subset_witness(d: &Dfa, lang: &LanguageOracle, horizon: usize, cap: u64) -> Result<SubsetOutcome> {
    if d.alphabet() != lang.alphabet() {
        return Err(Error::AlphabetMismatch { left: d.alphabet().to_string(), right: lang.alphabet().to_string() });
    }
    let mut checked = 0u64;
    let mut outcome = None;
    d.visit_accepted(horizon, |w| {
        if checked == cap {
            outcome = Some(SubsetOutcome::Inconclusive { checked });
            return false;
        }
        checked += 1;
        if !lang.is_member(w) {
            outcome = Some(SubsetOutcome::Counterexample { word: w.to_vec() });
            return false;
        }
        true
    });
    Ok(outcome.unwrap_or(SubsetOutcome::Subset { checked }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Infinite-language DFA that passed the horizon check.
    Survivor(Dfa),
    Refuted(Word),
    Inconclusive(u64),
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub language: String,
    pub max_states: usize,
    pub horizon: usize,
    pub cap: u64,
    /// DFAs enumerated.
    pub checked: usize,
    /// Of those, how many have an infinite language.
    pub infinite: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub survivors: Vec<Dfa>,
}

/// All canonical DFAs with at most `max_states` states whose language is
/// infinite and passes [`subset_witness`] at `horizon`. Survivors come back
/// in enumeration order regardless of the worker count.
pub fn immunity_probe(
    lang: &LanguageOracle,
    max_states: usize,
    horizon: usize,
    cap: u64,
    budget: Budget,
) -> Result<ProbeReport> {
    let machines = enum_dfas(max_states, lang.alphabet(), budget)?;
    let verdicts: Vec<Option<ProbeVerdict>> = machines
        .par_iter()
        .map(|d| {
            if !d.is_infinite() {
                return Ok(None);
            }
            Ok(Some(match subset_witness(d, lang, horizon, cap)? {
                SubsetOutcome::Subset { .. } => ProbeVerdict::Survivor(d.clone()),
                SubsetOutcome::Counterexample { word } => ProbeVerdict::Refuted(word),
                SubsetOutcome::Inconclusive { checked } => ProbeVerdict::Inconclusive(checked),
            }))
        })
        .collect::<Result<_>>()?;
    let mut report = ProbeReport {
        language: lang.name().into(),
        max_states,
        horizon,
        cap,
        checked: machines.len(),
        infinite: 0,
        refuted: 0,
        inconclusive: 0,
        survivors: Vec::new(),
    };
    for v in verdicts.into_iter().flatten() {
        report.infinite += 1;
        match v {
            ProbeVerdict::Survivor(d) => report.survivors.push(d),
            ProbeVerdict::Refuted(_) => report.refuted += 1,
            ProbeVerdict::Inconclusive(_) => report.inconclusive += 1,
        }
    }
    Ok(report)
}

/// `w = x y z` with `|xy| ≤ m`, `|y| ≥ 1`, and `x y^i z ∈ L(d)` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PumpDecomposition {
    pub x: Word,
    pub y: Word,
    pub z: Word,
}

impl PumpDecomposition {
    pub fn pump(&self, i: usize) -> Word {
        let mut w = self.x.clone();
        for _ in 0..i {
            w.extend_from_slice(&self.y);
        }
        w.extend_from_slice(&self.z);
        w
    }
}

/// Splits at the first repeated state among the first `m+1` states of the
/// accepting run, `m` being the state count.
pub fn pump_decompose(d: &Dfa, w: &[Symbol]) -> Result<PumpDecomposition> {
    d.alphabet().validate(w)?;
    let m = d.state_count();
    if w.len() < m {
        return Err(Error::Domain(format!("word of length {} is shorter than the {m} states", w.len())));
    }
    if !d.accepts(w) {
        return Err(Error::Domain("word is not accepted".into()));
    }
    let mut first_seen = vec![usize::MAX; m];
    let mut q = d.start();
    for j in 0..=m {
        if first_seen[q] != usize::MAX {
            let i = first_seen[q];
            return Ok(PumpDecomposition { x: w[..i].to_vec(), y: w[i..j].to_vec(), z: w[j..].to_vec() });
        }
        first_seen[q] = j;
        if j < m {
            q = d.step(q, w[j]);
        }
    }
    unreachable!("m+1 states among m must repeat")
}

/// First `i ∈ [0, i_max]` with `x y^i z ∉ L`, together with that word.
pub fn pump_refute(d: &Dfa, lang: &LanguageOracle, w: &[Symbol], i_max: usize) -> Result<Option<(usize, Word)>> {
    let p = pump_decompose(d, w)?;
    Ok((0..=i_max).map(|i| (i, p.pump(i))).find(|(_, v)| !lang.is_member(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::oracle;
    use crate::word::{all_words, bits};

    fn alt01() -> Dfa {
        Dfa::new(Alphabet::binary(), vec![vec![1, 2], vec![2, 0], vec![2, 2]], 0, [0]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        let b = Budget::default();
        assert_eq!(enum_dfas(1, &Alphabet::binary(), b).unwrap().len(), 2);
        // 2-state binary tables in BFS form: state 0 must reach 1 by its
        // first edge to a new state: 12 tables, times 4 final sets.
        assert_eq!(enum_dfas(2, &Alphabet::binary(), b).unwrap().len(), 2 + 12 * 4);
        for d in enum_dfas(3, &Alphabet::binary(), b).unwrap() {
            assert!(d.is_canonical());
        }
    }

    #[test]
    fn enumeration_covers_all_shapes() {
        // Every 2-state DFA canonicalizes into the stream.
        let stream = enum_dfas(2, &Alphabet::binary(), Budget::default()).unwrap();
        for code in 0..16usize {
            for mask in 0..4usize {
                let table = (0..2).map(|q| (0..2).map(|a| code >> (2 * q + a) & 1).collect()).collect();
                let d = Dfa::new(Alphabet::binary(), table, 0, (0..2).filter(|q| mask >> q & 1 == 1)).unwrap();
                assert!(stream.contains(&d.canonical()));
            }
        }
    }

    #[test]
    fn alternating_machine_needs_three_states() {
        let b = Budget::default();
        let target = alt01().minimize();
        assert!(!enum_dfas(2, &Alphabet::binary(), b).unwrap().iter().any(|d| d.equivalent(&target)));
        assert!(enum_dfas(3, &Alphabet::binary(), b).unwrap().iter().any(|d| d.equivalent(&target)));
    }

    #[test]
    fn subset_examples() {
        let eq = oracle("equal").unwrap();
        assert_eq!(subset_witness(&alt01(), &eq, 14, 1_000_000).unwrap(), SubsetOutcome::Subset { checked: 8 });
        match subset_witness(&Dfa::universal(Alphabet::binary()), &oracle("l-eq").unwrap(), 4, 1000).unwrap() {
            SubsetOutcome::Counterexample { word } => assert!(word.len() <= 1),
            other => panic!("{other:?}"),
        }
        let none = Dfa::empty(Alphabet::binary());
        assert!(matches!(subset_witness(&none, &eq, 10, 10).unwrap(), SubsetOutcome::Subset { .. }));
        let sigma = Dfa::universal(Alphabet::binary());
        let all = crate::languages::LanguageOracle::universal(Alphabet::binary());
        assert_eq!(subset_witness(&sigma, &all, 10, 5).unwrap(), SubsetOutcome::Inconclusive { checked: 5 });
    }

    #[test]
    fn probe_of_universal_language_keeps_infinite_machines() {
        let all = crate::languages::LanguageOracle::universal(Alphabet::binary());
        let r = immunity_probe(&all, 1, 8, 1_000_000, Budget::default()).unwrap();
        assert_eq!(r.survivors, vec![Dfa::universal(Alphabet::binary())]);
    }

    #[test]
    fn pumping_examples() {
        let p = pump_decompose(&alt01(), &bits("0101")).unwrap();
        assert_eq!(p, PumpDecomposition { x: vec![], y: bits("01"), z: bits("01") });
        for i in 0..=5 {
            assert!(alt01().accepts(&p.pump(i)));
        }
        let one = pump_decompose(&Dfa::universal(Alphabet::binary()), &bits("1")).unwrap();
        assert_eq!(one, PumpDecomposition { x: vec![], y: bits("1"), z: vec![] });
        assert!(pump_decompose(&alt01(), &bits("01")).is_err());
        assert!(pump_decompose(&alt01(), &bits("0110")).is_err());
    }

    #[test]
    fn pumping_invariants() {
        for d in enum_dfas(3, &Alphabet::binary(), Budget::default()).unwrap() {
            for w in all_words(2, 5).iter().filter(|w| d.accepts(w)) {
                let p = pump_decompose(&d, w).unwrap();
                assert!(p.x.len() + p.y.len() <= d.state_count());
                assert!(!p.y.is_empty());
                assert_eq!(p.pump(1), *w);
                assert!((0..=5).all(|i| d.accepts(&p.pump(i))));
            }
        }
    }

    #[test]
    fn refutation_examples() {
        let marked = Alphabet::marked();
        let pal = oracle("pal-sharp").unwrap();
        // {0,1}* # {0,1}*
        let d = Dfa::new(marked.clone(), vec![vec![0, 0, 1], vec![1, 1, 2], vec![2, 2, 2]], 0, [1]).unwrap();
        let w = marked.parse("01#10").unwrap();
        let (i, v) = pump_refute(&d, &pal, &w, 2).unwrap().unwrap();
        assert_ne!(i, 1);
        assert!(!pal.is_member(&v));
        assert!(!pal.is_member(&pump_decompose(&d, &w).unwrap().pump(2)));
        assert_eq!(pump_refute(&alt01(), &oracle("equal").unwrap(), &bits("010101"), 8).unwrap(), None);
    }
}
