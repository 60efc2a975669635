//! Automata, language oracles, exact censuses and a pseudorandom generator
//! for experiments on immunity and pseudorandomness of regular and
//! context-free languages.
//!
//! Everything here is exact: counts are big integers, statistics are
//! rationals, and every "probability" is a census over all of `Σ^n`.

pub mod automata;
pub mod census;
pub mod error;
pub mod file;
pub mod lab;
pub mod languages;
pub mod prg;
pub mod probe;
pub mod ratio;
pub mod word;

pub use automata::{Advice, AdvisedDfa, Dfa, Pda, ThreeVal, Transition};
pub use error::{Error, Result};
pub use languages::{LanguageId, LanguageOracle};
pub use ratio::Ratio;
pub use word::{Alphabet, Budget, Symbol, Word};
