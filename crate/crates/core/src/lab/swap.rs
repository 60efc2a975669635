//! Swapping-property partitions of advised-regular slices.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::automata::AdvisedDfa;
use crate::error::{Error, Result};
use crate::word::{for_each_word, Budget, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapBlock {
    /// Base-DFA state reached after the split point.
    pub state: usize,
    pub words: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwapPartition {
    pub n: usize,
    pub split: usize,
    pub blocks: Vec<SwapBlock>,
}

impl SwapPartition {
    pub fn word_count(&self) -> usize {
        self.blocks.iter().map(|b| b.words.len()).sum()
    }
}

/// Partitions the accepted words of length `n` by the base-DFA state
/// reached after the first `split` track symbols.
pub fn swap_partition(a: &AdvisedDfa, n: usize, split: usize, budget: Budget) -> Result<SwapPartition> {
    if split > n {
        return Err(Error::InvalidArgument(format!("split point {split} exceeds length {n}")));
    }
    budget.check_words(a.input_alphabet().len(), n)?;
    let h = a.advice_word(n)?;
    let mut blocks: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for_each_word(a.input_alphabet().len(), n, |w| {
        if a.accepts_with(w, &h) {
            blocks.entry(a.state_after(w, &h, split)).or_default().push(w.to_vec());
        }
    });
    Ok(SwapPartition {
        n,
        split,
        blocks: blocks.into_iter().map(|(state, words)| SwapBlock { state, words }).collect(),
    })
}

/// True iff every block is closed under exchanging suffixes at the split
/// point. A block `B` is closed exactly when it is the full rectangle
/// `prefixes(B) × suffixes(B)`, which is what is checked.
pub fn swap_verify(p: &SwapPartition) -> bool {
    p.blocks.iter().all(|b| {
        let words: BTreeSet<&[_]> = b.words.iter().map(Vec::as_slice).collect();
        let prefixes: BTreeSet<_> = words.iter().map(|w| &w[..p.split]).collect();
        let suffixes: BTreeSet<_> = words.iter().map(|w| &w[p.split..]).collect();
        words.len() == prefixes.len() * suffixes.len()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::{advised_model, LanguageId};
    use crate::word::Symbol;

    /// Direct definition: every pair swaps into the same block.
    fn swap_verify_pairwise(p: &SwapPartition) -> bool {
        p.blocks.iter().all(|b| {
            let set: BTreeSet<&Word> = b.words.iter().collect();
            b.words.iter().all(|x| {
                b.words.iter().all(|y| {
                    let xy: Word = x[..p.split].iter().chain(&y[p.split..]).copied().collect();
                    let yx: Word = y[..p.split].iter().chain(&x[p.split..]).copied().collect();
                    set.contains(&xy) && set.contains(&yx)
                })
            })
        })
    }

    #[test]
    fn lkeq_single_word_block() {
        let m = advised_model(LanguageId::Lkeq(3)).unwrap();
        let p = swap_partition(&m, 6, 3, Budget::default()).unwrap();
        assert_eq!(p.blocks.len(), 1);
        let sigma = m.input_alphabet();
        assert_eq!(p.blocks[0].words, vec![sigma.parse("aabbcc").unwrap()]);
        assert!(swap_verify(&p));
    }

    #[test]
    fn leven_partitions_are_closed_and_cover() {
        let m = advised_model(LanguageId::LEven).unwrap();
        let oracle = LanguageId::LEven.oracle();
        for n in 0..=10 {
            for split in 0..=n {
                let p = swap_partition(&m, n, split, Budget::default()).unwrap();
                assert!(p.blocks.len() <= m.base().state_count());
                let all: BTreeSet<&Word> = p.blocks.iter().flat_map(|b| &b.words).collect();
                assert_eq!(all.len(), p.word_count(), "blocks overlap");
                let expected = crate::census::density(&oracle, n, Budget::default()).unwrap();
                assert_eq!(num_bigint::BigUint::from(all.len()), expected);
                assert!(swap_verify(&p));
                assert!(swap_verify_pairwise(&p));
            }
        }
    }

    #[test]
    fn merged_blocks_fail() {
        let w = |s: &str| s.chars().map(|c| Symbol(c as u8 - b'0')).collect::<Word>();
        let merged = SwapPartition { n: 2, split: 1, blocks: vec![SwapBlock { state: 0, words: vec![w("00"), w("11")] }] };
        assert!(!swap_verify(&merged));
        assert!(!swap_verify_pairwise(&merged));
        let singletons = SwapPartition {
            n: 2,
            split: 1,
            blocks: vec![SwapBlock { state: 0, words: vec![w("00")] }, SwapBlock { state: 1, words: vec![w("11")] }],
        };
        assert!(swap_verify(&singletons));
    }

    #[test]
    fn split_beyond_length_rejected() {
        let m = advised_model(LanguageId::LEven).unwrap();
        assert!(swap_partition(&m, 3, 4, Budget::default()).is_err());
    }
}
