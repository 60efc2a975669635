mod advised;
mod dfa;
mod pda;

pub use advised::{track_alphabet, Advice, AdvisedDfa};
pub use dfa::Dfa;
pub use pda::{Pda, ThreeVal, Transition, DEFAULT_CONFIG_BUDGET};
