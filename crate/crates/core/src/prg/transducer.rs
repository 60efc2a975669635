//! `G` as a nondeterministic pushdown transducer.
//!
//! The machine optionally copies one leading bit (even lengths), then reads
//! `b`, guesses which case of `G` applies and writes the first output bit
//! accordingly. It pushes `z` while copying it, guesses the midpoint, and
//! pops while reading `y`, tracking the parity of `z^R ⊙ y` and (in the
//! flipping case) whether the flip has happened. Exposing the bottom marker
//! verifies `|z| = |y|` and emits the last bit; wrong guesses die there.

use crate::automata::{Pda, Transition};
use crate::languages::machines::{bit_stack, stored};
use crate::word::{Alphabet, Symbol};

const Z: Symbol = Symbol(0);
const INIT: usize = 0;
const ODD: usize = 1;
const FINAL: usize = 2;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Case {
    /// Odd product, with the first bit `b`.
    Odd(u8),
    /// Even product, `b = 1`.
    EvenOne,
    /// Even product, `b = 0`, flip a bit of `y`.
    Flip,
    /// Even product, `z = 0^k`.
    ZeroZ,
}

const CASES: [Case; 5] = [Case::Odd(0), Case::Odd(1), Case::EvenOne, Case::Flip, Case::ZeroZ];

struct Layout;

impl Layout {
    fn push(c: usize) -> usize {
        3 + c
    }

    /// Pop state for case `c`, parity `p`, flip flag `f`.
    fn pop(c: usize, p: u8, f: u8) -> usize {
        8 + c * 4 + p as usize * 2 + f as usize
    }

    const STATES: usize = 8 + 5 * 4;
}

fn bit(c: u8) -> Symbol {
    Symbol(c)
}

/// A transducer whose only accepting path on `w ≠ λ` writes `G(w)`.
pub fn g_transducer() -> Pda {
    let mut t = Vec::new();
    // even length: copy the first bit
    for a in 0..2 {
        t.push(Transition::new(INIT, Some(bit(a)), Z, ODD, vec![Z]).with_output(vec![bit(a)]));
    }
    t.push(Transition::new(INIT, None, Z, ODD, vec![Z]));

    for (c, case) in CASES.iter().enumerate() {
        let (b, first) = match *case {
            Case::Odd(b) => (b, b),
            Case::EvenOne => (1, 1),
            Case::Flip => (0, 0),
            Case::ZeroZ => (0, 1),
        };
        t.push(Transition::new(ODD, Some(bit(b)), Z, Layout::push(c), vec![Z]).with_output(vec![bit(first)]));

        let z_bits: &[u8] = if *case == Case::ZeroZ { &[0] } else { &[0, 1] };
        for top in [Z, stored(0), stored(1)] {
            for &s in z_bits {
                t.push(
                    Transition::new(Layout::push(c), Some(bit(s)), top, Layout::push(c), vec![stored(s), top])
                        .with_output(vec![bit(s)]),
                );
            }
            t.push(Transition::new(Layout::push(c), None, top, Layout::pop(c, 0, 0), vec![top]));
        }

        let flags: &[u8] = if *case == Case::Flip { &[0, 1] } else { &[0] };
        for p in 0..2u8 {
            for &f in flags {
                let from = Layout::pop(c, p, f);
                for zt in 0..2u8 {
                    for y in 0..2u8 {
                        let flip_now = *case == Case::Flip && f == 0 && zt == 1;
                        let out = if flip_now { 1 - y } else { y };
                        let nf = f | flip_now as u8;
                        let to = Layout::pop(c, p ^ (zt & y), nf);
                        t.push(
                            Transition::new(from, Some(bit(y)), stored(zt), to, vec![]).with_output(vec![bit(out)]),
                        );
                    }
                }
                let last = match *case {
                    Case::Odd(b) if p == 1 => Some(1 - b),
                    Case::EvenOne | Case::ZeroZ if p == 0 => Some(1),
                    Case::Flip if p == 0 && f == 1 => Some(0),
                    _ => None,
                };
                if let Some(last) = last {
                    t.push(Transition::new(from, None, Z, FINAL, vec![Z]).with_output(vec![bit(last)]));
                }
            }
        }
    }
    Pda::new(Alphabet::binary(), bit_stack(), Layout::STATES, INIT, Z, [FINAL], t).expect("static construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prg::g_generate;
    use crate::word::{bits, unpack_bits, Word};

    #[test]
    fn single_output_equal_to_g() {
        let p = g_transducer();
        assert!(p.is_transducer());
        let mut w = Word::new();
        for n in 1..=8 {
            for x in 0..1u64 << n {
                unpack_bits(x, n, &mut w);
                let outs = p.transducer_outputs(&w, n + 1).unwrap();
                assert_eq!(outs.into_iter().collect::<Vec<_>>(), vec![g_generate(&w).unwrap()]);
            }
        }
    }

    #[test]
    fn empty_input_has_no_output() {
        assert!(g_transducer().transducer_outputs(&[], 1).unwrap().is_empty());
        assert!(!g_transducer().accepts(&bits("")).unwrap());
    }
}
