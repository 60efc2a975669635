//! Complete deterministic finite automata.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// A complete DFA. The transition table is dense: every state has exactly one
/// successor per symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    // delta[q * k + a]
    delta: Vec<usize>,
    start: usize,
    finals: Vec<bool>,
}

impl Dfa {
    /// Builds a DFA from a `[state][symbol]` table.
    pub fn new(
        alphabet: Alphabet,
        table: Vec<Vec<usize>>,
        start: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let k = alphabet.len();
        let states = table.len();
        if states == 0 {
            return Err(Error::MalformedAutomaton("a DFA needs at least one state".into()));
        }
        if start >= states {
            return Err(Error::MalformedAutomaton(format!("start state {start} out of range")));
        }
        let mut delta = Vec::with_capacity(states * k);
        for (q, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(Error::MalformedAutomaton(format!(
                    "state {q} has {} transitions, alphabet has {k} symbols",
                    row.len()
                )));
            }
            for &t in row {
                if t >= states {
                    return Err(Error::MalformedAutomaton(format!("transition from {q} to missing state {t}")));
                }
            }
            delta.extend_from_slice(row);
        }
        let mut fin = vec![false; states];
        for f in finals {
            if f >= states {
                return Err(Error::MalformedAutomaton(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        Ok(Self { alphabet, delta, start, finals: fin })
    }

    /// Builds a DFA from a successor function. `step` must return states
    /// below `states`.
    pub fn from_fn(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        is_final: impl Fn(usize) -> bool,
        step: impl Fn(usize, Symbol) -> usize,
    ) -> Result<Self> {
        let table = (0..states).map(|q| alphabet.symbols().map(|a| step(q, a)).collect()).collect();
        Self::new(alphabet, table, start, (0..states).filter(|&q| is_final(q)))
    }

    pub(crate) fn from_raw(alphabet: Alphabet, delta: Vec<usize>, start: usize, finals: Vec<bool>) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.len());
        Self { alphabet, delta, start, finals }
    }

    /// Accepts every word.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Self { alphabet, delta: vec![0; k], start: 0, finals: vec![true] }
    }

    /// Accepts nothing.
    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Self { alphabet, delta: vec![0; k], start: 0, finals: vec![false] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.finals.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    #[inline]
    pub fn step(&self, q: usize, a: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + a.index()]
    }

    /// The `[state][symbol]` table.
    pub fn table(&self) -> Vec<Vec<usize>> {
        self.delta.chunks(self.alphabet.len()).map(<[usize]>::to_vec).collect()
    }

    /// State reached from `q` after reading `w`. Symbols are not validated.
    #[inline]
    pub fn walk(&self, q: usize, w: &[Symbol]) -> usize {
        w.iter().fold(q, |q, &a| self.step(q, a))
    }

    /// Membership without alphabet validation; for hot loops over words
    /// already known to be well formed.
    #[inline]
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.finals[self.walk(self.start, w)]
    }

    /// Membership with alphabet validation.
    pub fn run(&self, w: &[Symbol]) -> Result<bool> {
        self.alphabet.validate(w)?;
        Ok(self.accepts(w))
    }

    /// `|L ∩ Σ^n|`, exact.
    pub fn count(&self, n: usize) -> BigUint {
        self.counts_up_to(n).pop().unwrap_or_default()
    }

    /// `|L ∩ Σ^i|` for `i = 0..=n`.
    pub fn counts_up_to(&self, n: usize) -> Vec<BigUint> {
        // ways[q] = number of words of the current length leading from q to a final state
        let states = self.state_count();
        let mut ways: Vec<BigUint> = self.finals.iter().map(|&f| BigUint::from(f as u8)).collect();
        let mut out = vec![ways[self.start].clone()];
        for _ in 0..n {
            let next: Vec<BigUint> = (0..states)
                .map(|q| {
                    self.alphabet.symbols().fold(BigUint::zero(), |acc, a| acc + &ways[self.step(q, a)])
                })
                .collect();
            ways = next;
            out.push(ways[self.start].clone());
        }
        out
    }

    /// Same as [`Dfa::counts_up_to`] but in `u128`, for alphabets and lengths
    /// where it cannot overflow (`|Σ|^n < 2^128`).
    pub fn counts_up_to_u128(&self, n: usize) -> Vec<u128> {
        let states = self.state_count();
        let mut ways: Vec<u128> = self.finals.iter().map(|&f| f as u128).collect();
        let mut out = vec![ways[self.start]];
        let mut next = vec![0u128; states];
        for _ in 0..n {
            for (q, slot) in next.iter_mut().enumerate() {
                *slot = self.alphabet.symbols().map(|a| ways[self.step(q, a)]).sum();
            }
            std::mem::swap(&mut ways, &mut next);
            out.push(ways[self.start]);
        }
        out
    }

    /// States reachable from the start state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for a in self.alphabet.symbols() {
                let t = self.step(q, a);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let states = self.state_count();
        let mut preds = vec![Vec::new(); states];
        for q in 0..states {
            for a in self.alphabet.symbols() {
                preds[self.step(q, a)].push(q);
            }
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<usize> = self.finals().collect();
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// `L(d)` is infinite iff a cycle lies among states that are both
    /// reachable and co-reachable.
    pub fn is_infinite(&self) -> bool {
        let reach = self.reachable();
        let co = self.coreachable();
        let useful: Vec<bool> = reach.iter().zip(&co).map(|(a, b)| *a && *b).collect();
        // Iterative DFS with colors: 0 unvisited, 1 on stack, 2 done.
        let states = self.state_count();
        let mut color = vec![0u8; states];
        for root in 0..states {
            if !useful[root] || color[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            color[root] = 1;
            while let Some(&mut (q, ref mut next)) = stack.last_mut() {
                if *next == self.alphabet.len() {
                    color[q] = 2;
                    stack.pop();
                    continue;
                }
                let t = self.step(q, Symbol(*next as u8));
                *next += 1;
                if !useful[t] {
                    continue;
                }
                match color[t] {
                    0 => {
                        color[t] = 1;
                        stack.push((t, 0));
                    }
                    1 => return true,
                    _ => {}
                }
            }
        }
        false
    }

    pub fn is_empty_language(&self) -> bool {
        !self.reachable().iter().zip(&self.finals).any(|(r, f)| *r && *f)
    }

    /// Drops unreachable states and renumbers the rest in breadth-first
    /// order from the start state, visiting symbols in alphabet order.
    pub fn canonical(&self) -> Dfa {
        let states = self.state_count();
        let k = self.alphabet.len();
        let mut order = Vec::with_capacity(states);
        let mut index = vec![usize::MAX; states];
        let mut queue = VecDeque::from([self.start]);
        index[self.start] = 0;
        order.push(self.start);
        while let Some(q) = queue.pop_front() {
            for a in self.alphabet.symbols() {
                let t = self.step(q, a);
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &q in &order {
            delta.extend(self.alphabet.symbols().map(|a| index[self.step(q, a)]));
        }
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa::from_raw(self.alphabet.clone(), delta, 0, finals)
    }

    /// True if the DFA is already in canonical form (all states reachable,
    /// numbered in BFS order).
    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Minimal equivalent DFA, canonically numbered. Uses Moore partition
    /// refinement on the reachable part.
    pub fn minimize(&self) -> Dfa {
        let d = self.canonical();
        let states = d.state_count();
        let k = d.alphabet.len();
        let mut class: Vec<usize> = d.finals.iter().map(|&f| f as usize).collect();
        let mut class_count = if class.iter().all(|&c| c == class[0]) { 1 } else { 2 };
        if class_count == 1 {
            class.iter_mut().for_each(|c| *c = 0);
        }
        loop {
            let mut signatures: Vec<(Vec<usize>, usize)> = Vec::new();
            let mut next = vec![0; states];
            for q in 0..states {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend(d.alphabet.symbols().map(|a| class[d.step(q, a)]));
                next[q] = match signatures.iter().find(|(s, _)| *s == sig) {
                    Some(&(_, id)) => id,
                    None => {
                        let id = signatures.len();
                        signatures.push((sig, id));
                        id
                    }
                };
            }
            let refined = signatures.len();
            class = next;
            if refined == class_count {
                break;
            }
            class_count = refined;
        }
        let mut delta = vec![0; class_count * k];
        let mut finals = vec![false; class_count];
        for q in 0..states {
            let c = class[q];
            finals[c] = d.finals[q];
            for a in d.alphabet.symbols() {
                delta[c * k + a.index()] = class[d.step(q, a)];
            }
        }
        Dfa::from_raw(d.alphabet.clone(), delta, class[d.start], finals).canonical()
    }

    /// Language equivalence via minimal forms.
    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.minimize() == other.minimize()
    }

    /// Reachable product automaton accepting `{w : op(w ∈ L(a), w ∈ L(b))}`.
    pub fn product(a: &Dfa, b: &Dfa, op: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        if a.alphabet != b.alphabet {
            return Err(Error::AlphabetMismatch { left: a.alphabet.to_string(), right: b.alphabet.to_string() });
        }
        let k = a.alphabet.len();
        let nb = b.state_count();
        let mut index = vec![usize::MAX; a.state_count() * nb];
        let mut pairs = vec![(a.start, b.start)];
        index[a.start * nb + b.start] = 0;
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for s in a.alphabet.symbols() {
                let (p2, q2) = (a.step(p, s), b.step(q, s));
                let slot = &mut index[p2 * nb + q2];
                if *slot == usize::MAX {
                    *slot = pairs.len();
                    pairs.push((p2, q2));
                }
                delta.push(*slot);
            }
            i += 1;
        }
        debug_assert_eq!(delta.len(), pairs.len() * k);
        let finals = pairs.iter().map(|&(p, q)| op(a.finals[p], b.finals[q])).collect();
        Ok(Dfa::from_raw(a.alphabet.clone(), delta, 0, finals))
    }

    pub fn complement(&self) -> Dfa {
        let mut d = self.clone();
        d.finals.iter_mut().for_each(|f| *f = !*f);
        d
    }

    /// `live[len][q]`: some word of length exactly `len` leads from `q` to a
    /// final state.
    fn live_table(&self, max_len: usize) -> Vec<Vec<bool>> {
        let mut live = vec![self.finals.clone()];
        for len in 1..=max_len {
            let prev = &live[len - 1];
            let row = (0..self.state_count())
                .map(|q| self.alphabet.symbols().any(|a| prev[self.step(q, a)]))
                .collect();
            live.push(row);
        }
        live
    }

    /// Visits accepted words in length-lexicographic order up to length
    /// `max_len`. The visitor returns `false` to stop early; the return value
    /// is `false` iff the visit was stopped.
    pub fn visit_accepted(&self, max_len: usize, mut visit: impl FnMut(&[Symbol]) -> bool) -> bool {
        let live = self.live_table(max_len);
        let mut w: Word = Vec::with_capacity(max_len);
        for len in 0..=max_len {
            if !live[len][self.start] {
                continue;
            }
            if !self.visit_len(&live, self.start, len, &mut w, &mut visit) {
                return false;
            }
        }
        true
    }

    fn visit_len(
        &self,
        live: &[Vec<bool>],
        q: usize,
        remaining: usize,
        w: &mut Word,
        visit: &mut impl FnMut(&[Symbol]) -> bool,
    ) -> bool {
        if remaining == 0 {
            return visit(w);
        }
        for a in self.alphabet.symbols() {
            let t = self.step(q, a);
            if live[remaining - 1][t] {
                w.push(a);
                let go_on = self.visit_len(live, t, remaining - 1, w, visit);
                w.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{all_words, bits};

    pub(crate) fn alt01() -> Dfa {
        // (01)*: 0 --0--> 1 --1--> 0, everything else to dead state 2
        Dfa::new(Alphabet::binary(), vec![vec![1, 2], vec![2, 0], vec![2, 2]], 0, [0]).unwrap()
    }

    #[test]
    fn runs_alternating_language() {
        let d = alt01();
        assert!(d.run(&bits("0101")).unwrap());
        assert!(!d.run(&bits("011")).unwrap());
        assert!(d.run(&[]).unwrap());
        assert!(d.run(&[Symbol(2)]).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(Dfa::universal(Alphabet::binary()).count(10), BigUint::from(1024u32));
        assert_eq!(alt01().count(6), BigUint::from(1u32));
        assert_eq!(alt01().count(5), BigUint::zero());
        let c = alt01().counts_up_to_u128(6);
        assert_eq!(c, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn infiniteness() {
        assert!(alt01().is_infinite());
        // {λ, 0}
        let finite = Dfa::new(Alphabet::binary(), vec![vec![1, 2], vec![2, 2], vec![2, 2]], 0, [0, 1]).unwrap();
        assert!(!finite.is_infinite());
        // cycle on state 2 is unreachable; reachable part accepts only λ
        let unreachable_cycle =
            Dfa::new(Alphabet::binary(), vec![vec![1, 1], vec![1, 1], vec![2, 2]], 0, [0, 2]).unwrap();
        assert!(!unreachable_cycle.is_infinite());
        assert!(Dfa::universal(Alphabet::binary()).is_infinite());
        assert!(!Dfa::empty(Alphabet::binary()).is_infinite());
    }

    #[test]
    fn minimize_merges_duplicate_state() {
        let parity = Dfa::new(Alphabet::binary(), vec![vec![0, 1], vec![1, 0]], 0, [0]).unwrap();
        assert_eq!(parity.minimize(), parity);
        // state 2 duplicates state 0
        let dup = Dfa::new(Alphabet::binary(), vec![vec![2, 1], vec![1, 0], vec![2, 1]], 0, [0, 2]).unwrap();
        let m = dup.minimize();
        assert_eq!(m.state_count(), dup.state_count() - 1);
        for n in 0..=12 {
            for w in all_words(2, n) {
                assert_eq!(m.accepts(&w), dup.accepts(&w));
            }
        }
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn product_and_complement() {
        let a = alt01();
        let none = Dfa::product(&a, &a.complement(), |x, y| x && y).unwrap();
        assert!((0..=10).all(|n| none.count(n).is_zero()));
        let ten = Dfa::new(Alphabet::binary(), vec![vec![2, 1], vec![0, 2], vec![2, 2]], 0, [0]).unwrap();
        let either = Dfa::product(&a, &ten, |x, y| x || y).unwrap();
        assert!(either.accepts(&bits("0101")));
        assert!(either.accepts(&bits("1010")));
        assert!(!either.accepts(&bits("0110")));
        let ternary = Dfa::universal(Alphabet::marked());
        assert!(Dfa::product(&a, &ternary, |x, _| x).is_err());
    }

    #[test]
    fn canonical_renumbers_and_prunes() {
        let d = Dfa::new(Alphabet::binary(), vec![vec![0, 0], vec![2, 0], vec![1, 1]], 1, [0]).unwrap();
        let c = d.canonical();
        assert_eq!(c.start(), 0);
        assert_eq!(c.table(), vec![vec![1, 2], vec![0, 0], vec![2, 2]]);
        assert!(c.is_canonical());
        let pruned = Dfa::new(Alphabet::binary(), vec![vec![0, 0], vec![1, 1]], 0, [1]).unwrap().canonical();
        assert_eq!(pruned.state_count(), 1);
    }

    #[test]
    fn visit_accepted_is_length_lex() {
        let d = Dfa::universal(Alphabet::binary());
        let mut seen = Vec::new();
        d.visit_accepted(2, |w| {
            seen.push(w.to_vec());
            true
        });
        let expected: Vec<Word> = (0..=2).flat_map(|n| all_words(2, n)).collect();
        assert_eq!(seen, expected);
        let mut count = 0;
        assert!(!alt01().visit_accepted(20, |_| {
            count += 1;
            count < 3
        }));
        assert_eq!(count, 3);
    }
}
