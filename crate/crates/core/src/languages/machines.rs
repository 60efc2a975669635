//! Pushdown automata for the context-free members of the zoo.

use crate::automata::{Pda, Transition};
use crate::word::{Alphabet, Symbol};

const Z: Symbol = Symbol(0);

/// Stack alphabet `{Z, 0, 1}`; input bit `c` is stored as stack symbol `c+1`.
pub(crate) fn bit_stack() -> Alphabet {
    Alphabet::new(['Z', '0', '1']).expect("static alphabet")
}

pub(crate) fn stored(c: u8) -> Symbol {
    Symbol(c + 1)
}

/// `{0^n 1^n}`: push each 0, guess the switch, pop on each 1, accept when
/// the initial symbol is exposed again.
pub fn leq_pda() -> Pda {
    const PUSH: usize = 0;
    const POP: usize = 1;
    const ACCEPT: usize = 2;
    let x = stored(0);
    let mut t = vec![
        Transition::new(PUSH, Some(Symbol::ZERO), Z, PUSH, vec![x, Z]),
        Transition::new(PUSH, Some(Symbol::ZERO), x, PUSH, vec![x, x]),
        Transition::new(POP, Some(Symbol::ONE), x, POP, vec![]),
        Transition::new(POP, None, Z, ACCEPT, vec![Z]),
    ];
    for top in [Z, x] {
        t.push(Transition::new(PUSH, None, top, POP, vec![top]));
    }
    Pda::new(Alphabet::binary(), bit_stack(), 3, PUSH, Z, [ACCEPT], t).expect("static construction")
}

/// `IP_*`: optionally skip one leading bit, push `u`, guess the midpoint,
/// then pop while reading `v`, tracking the parity of `u^R ⊙ v` in the
/// state. Accepts at the bottom of the stack with odd parity.
pub fn ip_star_pda() -> Pda {
    const SKIP: usize = 0;
    const PUSH: usize = 1;
    // POP + parity
    const POP: usize = 2;
    const ACCEPT: usize = 4;
    let mut t = Vec::new();
    t.push(Transition::new(SKIP, None, Z, PUSH, vec![Z]));
    for c in 0..2u8 {
        t.push(Transition::new(SKIP, Some(Symbol(c)), Z, PUSH, vec![Z]));
    }
    for top in [Z, stored(0), stored(1)] {
        for c in 0..2u8 {
            t.push(Transition::new(PUSH, Some(Symbol(c)), top, PUSH, vec![stored(c), top]));
        }
        t.push(Transition::new(PUSH, None, top, POP, vec![top]));
    }
    for parity in 0..2usize {
        for s in 0..2u8 {
            for c in 0..2u8 {
                let next = parity ^ (s & c) as usize;
                t.push(Transition::new(POP + parity, Some(Symbol(c)), stored(s), POP + next, vec![]));
            }
        }
    }
    t.push(Transition::new(POP + 1, None, Z, ACCEPT, vec![Z]));
    Pda::new(Alphabet::binary(), bit_stack(), 5, SKIP, Z, [ACCEPT], t).expect("static construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::ThreeVal;
    use crate::languages::LanguageId;
    use crate::word::{all_words, bits};

    #[test]
    fn ip_star_pda_example() {
        assert!(ip_star_pda().accepts(&bits("0110")).unwrap());
        assert!(!ip_star_pda().accepts(&bits("0101")).unwrap());
    }

    #[test]
    fn pdas_agree_with_oracles() {
        let cases = [(leq_pda(), LanguageId::Leq.oracle()), (ip_star_pda(), LanguageId::IpStar.oracle())];
        for (p, o) in &cases {
            for n in 0..=10 {
                for w in all_words(2, n) {
                    assert_eq!(p.accepts(&w).unwrap(), o.is_member(&w), "{} on {}", o.name(), crate::word::show_bits(&w));
                }
            }
        }
    }

    #[test]
    fn leq_bounded_examples() {
        let p = leq_pda();
        assert_eq!(p.bounded(&bits("0011"), 1).unwrap(), ThreeVal::Undefined);
        assert_eq!(p.bounded(&bits("0011"), 4 + 1).unwrap(), ThreeVal::One);
    }
}
