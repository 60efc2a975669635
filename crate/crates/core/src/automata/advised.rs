//! DFAs with length-indexed advice.
//!
//! The base DFA reads the track word `[x over h(|x|)]`. Track symbol
//! `[σ over τ]` has index `σ·|Γ| + τ` where `Γ` is the advice alphabet.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Advice: either a named procedure of `n` or an explicit per-length table.
#[derive(Clone)]
pub enum Advice {
    Procedure { name: String, f: Arc<dyn Fn(usize) -> Word + Send + Sync> },
    Table(BTreeMap<usize, Word>),
}

impl Advice {
    pub fn procedure(name: impl Into<String>, f: impl Fn(usize) -> Word + Send + Sync + 'static) -> Self {
        Advice::Procedure { name: name.into(), f: Arc::new(f) }
    }

    pub fn get(&self, n: usize) -> Result<Word> {
        match self {
            Advice::Procedure { f, .. } => Ok(f(n)),
            Advice::Table(t) => t.get(&n).cloned().ok_or(Error::MissingAdvice(n)),
        }
    }
}

impl fmt::Debug for Advice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Advice::Procedure { name, .. } => f.debug_struct("Procedure").field("name", name).finish(),
            Advice::Table(t) => f.debug_tuple("Table").field(t).finish(),
        }
    }
}

/// Track alphabet for `input × advice`. Characters are drawn from the
/// private-use area; they only matter for diagnostics.
pub fn track_alphabet(input: &Alphabet, advice: &Alphabet) -> Alphabet {
    let size = input.len() * advice.len();
    Alphabet::new((0..size as u32).map(|i| char::from_u32(0xE000 + i).expect("private-use char")))
        .expect("track alphabet sizes stay below 256")
}

#[derive(Clone, Debug)]
pub struct AdvisedDfa {
    input: Alphabet,
    advice_alphabet: Alphabet,
    base: Dfa,
    advice: Advice,
}

impl AdvisedDfa {
    pub fn new(input: Alphabet, advice_alphabet: Alphabet, base: Dfa, advice: Advice) -> Result<Self> {
        let expected = input.len() * advice_alphabet.len();
        if base.alphabet().len() != expected {
            return Err(Error::MalformedAutomaton(format!(
                "base DFA has {} symbols, track alphabet needs {expected}",
                base.alphabet().len()
            )));
        }
        Ok(Self { input, advice_alphabet, base, advice })
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn advice_alphabet(&self) -> &Alphabet {
        &self.advice_alphabet
    }

    pub fn base(&self) -> &Dfa {
        &self.base
    }

    pub fn advice(&self) -> &Advice {
        &self.advice
    }

    pub fn track(&self, a: Symbol, h: Symbol) -> Symbol {
        Symbol((a.index() * self.advice_alphabet.len() + h.index()) as u8)
    }

    /// Advice word for length `n`, checked for length and alphabet.
    pub fn advice_word(&self, n: usize) -> Result<Word> {
        let h = self.advice.get(n)?;
        if h.len() != n {
            return Err(Error::AdviceLength { n, got: h.len() });
        }
        self.advice_alphabet.validate(&h)?;
        Ok(h)
    }

    /// Base-DFA state after reading the first `prefix` track symbols of
    /// `[w over h]`.
    pub fn state_after(&self, w: &[Symbol], h: &[Symbol], prefix: usize) -> usize {
        w[..prefix].iter().zip(h).fold(self.base.start(), |q, (&a, &b)| self.base.step(q, self.track(a, b)))
    }

    /// Runs with a precomputed advice word; no validation.
    #[inline]
    pub fn accepts_with(&self, w: &[Symbol], h: &[Symbol]) -> bool {
        self.base.is_final(self.state_after(w, h, w.len()))
    }

    pub fn run(&self, w: &[Symbol]) -> Result<bool> {
        self.input.validate(w)?;
        let h = self.advice_word(w.len())?;
        Ok(self.accepts_with(w, &h))
    }
}
