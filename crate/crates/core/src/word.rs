//! Symbols, alphabets, words, and exhaustive enumeration of `Σ^n`.
//!
//! Words are plain `Vec<Symbol>`; every symbol is an index into the
//! [`Alphabet`] it was parsed with. Enumeration visits `Σ^n` in lexicographic
//! order of symbol codes, which for the binary alphabet is the numeric order
//! of the bit-packed word with the first symbol as the most significant bit.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A symbol: an index into an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol(pub u8);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);
    pub const ONE: Symbol = Symbol(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite word. The empty vector is the empty word.
pub type Word = Vec<Symbol>;

/// An ordered set of printable symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::InvalidArgument("alphabet must not be empty".into()));
        }
        if symbols.len() > u8::MAX as usize {
            return Err(Error::InvalidArgument("alphabet too large".into()));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::InvalidArgument(format!("duplicate symbol '{c}'")));
            }
        }
        Ok(Self { symbols })
    }

    /// `{0, 1}`.
    pub fn binary() -> Self {
        Self { symbols: vec!['0', '1'] }
    }

    /// `{0, 1, #}`, the alphabet of the marked languages.
    pub fn marked() -> Self {
        Self { symbols: vec!['0', '1', '#'] }
    }

    /// The first `k` lowercase letters `a, b, c, …`.
    pub fn letters(k: usize) -> Result<Self> {
        if k == 0 || k > 26 {
            return Err(Error::InvalidArgument(format!("letter alphabet size {k} not in 1..=26")));
        }
        Ok(Self { symbols: (0..k as u8).map(|i| (b'a' + i) as char).collect() })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn chars(&self) -> &[char] {
        &self.symbols
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.symbols[s.index()]
    }

    pub fn symbol(&self, c: char) -> Option<Symbol> {
        self.symbols.iter().position(|&d| d == c).map(|i| Symbol(i as u8))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| Symbol(i as u8))
    }

    /// Parses a word written with this alphabet's characters. `""` and `"λ"`
    /// both denote the empty word.
    pub fn parse(&self, text: &str) -> Result<Word> {
        if text == "λ" {
            return Ok(Vec::new());
        }
        text.chars()
            .map(|c| self.symbol(c).ok_or(Error::ForeignSymbol(c)))
            .collect()
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        w.iter().map(|&s| self.char_of(s)).collect()
    }

    /// Checks that every symbol of `w` belongs to this alphabet.
    pub fn validate(&self, w: &[Symbol]) -> Result<()> {
        match w.iter().find(|s| s.index() >= self.len()) {
            Some(s) => Err(Error::SymbolOutOfRange { code: s.0, size: self.len() }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Parses a word over `{0,1}` into symbols. Panics on any other character;
/// intended for literals in tests and examples.
pub fn bits(text: &str) -> Word {
    Alphabet::binary().parse(text).expect("binary literal")
}

/// Renders a binary word as a string of `0`/`1`.
pub fn show_bits(w: &[Symbol]) -> String {
    Alphabet::binary().render(w)
}

/// Packs a binary word into an integer, first symbol most significant.
pub fn pack_bits(w: &[Symbol]) -> u64 {
    debug_assert!(w.len() <= 64);
    w.iter().fold(0u64, |acc, s| (acc << 1) | s.0 as u64)
}

/// Inverse of [`pack_bits`] for a word of length `n`.
pub fn unpack_bits(value: u64, n: usize, out: &mut Word) {
    out.clear();
    out.extend((0..n).rev().map(|i| Symbol(((value >> i) & 1) as u8)));
}

/// `size^n`, or `None` on overflow.
pub fn word_count(size: usize, n: usize) -> Option<u64> {
    (size as u64).checked_pow(n as u32)
}

/// Enumeration budget: the maximum number of word evaluations an exhaustive
/// procedure may perform before refusing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 26);

    pub fn check(self, required: u64) -> Result<()> {
        if required > self.0 {
            Err(Error::BudgetExceeded { required, budget: self.0 })
        } else {
            Ok(())
        }
    }

    /// Checks `size^n` words against the budget and returns that count.
    pub fn check_words(self, size: usize, n: usize) -> Result<u64> {
        let total = word_count(size, n).ok_or(Error::BudgetExceeded { required: u64::MAX, budget: self.0 })?;
        self.check(total)?;
        Ok(total)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Advances `w` to its lexicographic successor in `Σ^{|w|}`; returns `false`
/// after the last word (and leaves `w` as all-zero).
pub fn next_word(w: &mut [Symbol], size: usize) -> bool {
    for s in w.iter_mut().rev() {
        if s.index() + 1 < size {
            s.0 += 1;
            return true;
        }
        s.0 = 0;
    }
    false
}

/// Calls `f` on every word of `Σ^n` in lexicographic order.
pub fn for_each_word(size: usize, n: usize, mut f: impl FnMut(&[Symbol])) {
    let mut w = vec![Symbol(0); n];
    loop {
        f(&w);
        if !next_word(&mut w, size) {
            break;
        }
    }
}

/// Collects `Σ^n` in lexicographic order.
pub fn all_words(size: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_word(size, n, |w| out.push(w.to_vec()));
    out
}

/// Parallel fold over `Σ^n`.
///
/// The words are chunked by a fixed-length prefix; each chunk is folded
/// sequentially and chunk results are combined with `reduce`. With an
/// associative, commutative `reduce` the result does not depend on the worker
/// count.
pub fn par_fold<A, I, F, R>(size: usize, n: usize, identity: I, fold: F, reduce: R) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(A, &[Symbol]) -> A + Sync + Send,
    R: Fn(A, A) -> A + Sync + Send,
{
    // ~2^12 chunks keeps scheduling overhead negligible.
    let mut prefix_len = 0;
    while prefix_len < n && word_count(size, prefix_len + 1).is_some_and(|c| c <= 4096) {
        prefix_len += 1;
    }
    let chunks = word_count(size, prefix_len).unwrap_or(1);
    (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut w = vec![Symbol(0); n];
            let mut rest = chunk;
            for i in (0..prefix_len).rev() {
                w[i] = Symbol((rest % size as u64) as u8);
                rest /= size as u64;
            }
            let mut acc = identity();
            loop {
                acc = fold(acc, &w);
                if !next_word(&mut w[prefix_len..], size) {
                    break;
                }
            }
            acc
        })
        .reduce(&identity, &reduce)
}

/// Number of words in `Σ^n` satisfying `pred`, computed in parallel.
pub fn par_count(size: usize, n: usize, pred: impl Fn(&[Symbol]) -> bool + Sync + Send) -> u64 {
    par_fold(size, n, || 0u64, |acc, w| acc + pred(w) as u64, |a, b| a + b)
}
