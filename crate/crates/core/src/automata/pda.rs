//! Nondeterministic pushdown automata with final-state acceptance and
//! optional output actions.
//!
//! Acceptance is decided by a memoized search over configurations
//! `(input position, state, stack)`. The stack height (counting the initial
//! symbol) is capped at `c·(|w|+1)` where `c` is the largest net push of any
//! declared transition, at least 1. ε-cycles terminate because a
//! configuration is never expanded twice.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Verdict under a stack-height bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ThreeVal {
    /// Some accepting path stays within the bound.
    One,
    /// Every path stays within the bound and none accepts.
    Zero,
    /// No accepting path within the bound, and some path exceeds it.
    Undefined,
}

/// One move. `push` replaces the popped top; `push[0]` becomes the new top,
/// so `push = [top]` leaves the stack unchanged and `push = []` pops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub from: usize,
    pub read: Option<Symbol>,
    pub top: Symbol,
    pub to: usize,
    pub push: Vec<Symbol>,
    /// Written to the output tape when the move is taken.
    pub out: Word,
}

impl Transition {
    pub fn new(from: usize, read: Option<Symbol>, top: Symbol, to: usize, push: Vec<Symbol>) -> Self {
        Self { from, read, top, to, push, out: Vec::new() }
    }

    pub fn with_output(mut self, out: Word) -> Self {
        self.out = out;
        self
    }
}

#[derive(Clone, Debug)]
pub struct Pda {
    input: Alphabet,
    stack: Alphabet,
    declared_states: usize,
    start: usize,
    initial: Symbol,
    finals: Vec<bool>,
    declared: Vec<Transition>,
    // Normalized moves, indexed by state * |Γ| + top.
    moves: Vec<Vec<Transition>>,
    total_states: usize,
    push_factor: usize,
}

/// Configuration budget for transducer searches.
pub const DEFAULT_CONFIG_BUDGET: u64 = 1 << 22;

type Config = (usize, usize, Vec<u8>);

impl Pda {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        input: Alphabet,
        stack: Alphabet,
        states: usize,
        start: usize,
        initial: Symbol,
        finals: impl IntoIterator<Item = usize>,
        transitions: Vec<Transition>,
    ) -> Result<Self> {
        if states == 0 || start >= states {
            return Err(Error::MalformedAutomaton(format!("start state {start} out of range for {states} states")));
        }
        if initial.index() >= stack.len() {
            return Err(Error::MalformedAutomaton("initial stack symbol outside stack alphabet".into()));
        }
        let mut fin = vec![false; states];
        for f in finals {
            if f >= states {
                return Err(Error::MalformedAutomaton(format!("final state {f} out of range")));
            }
            fin[f] = true;
        }
        for (i, t) in transitions.iter().enumerate() {
            if t.from >= states || t.to >= states {
                return Err(Error::MalformedAutomaton(format!("transition {i} references a missing state")));
            }
            if t.read.is_some_and(|a| a.index() >= input.len()) {
                return Err(Error::MalformedAutomaton(format!("transition {i} reads a foreign symbol")));
            }
            if t.top.index() >= stack.len() || t.push.iter().any(|g| g.index() >= stack.len()) {
                return Err(Error::MalformedAutomaton(format!("transition {i} uses a foreign stack symbol")));
            }
            input
                .validate(&t.out)
                .map_err(|_| Error::MalformedAutomaton(format!("transition {i} writes a foreign symbol")))?;
        }
        let push_factor = transitions.iter().map(|t| t.push.len().saturating_sub(1)).max().unwrap_or(0).max(1);

        // Split pushes longer than two into chains through fresh states.
        let mut normalized = Vec::with_capacity(transitions.len());
        let mut total_states = states;
        for t in &transitions {
            let r = t.push.len();
            if r <= 2 {
                normalized.push(t.clone());
                continue;
            }
            let g = &t.push;
            // First step lays down g[r-1] with g[r-2] above it, each later
            // step replaces the top g[j] by g[j-1] g[j].
            let mut from = t.from;
            let mut read = t.read;
            let mut top = t.top;
            let mut out = t.out.clone();
            for j in (1..r).rev() {
                let to = if j == 1 { t.to } else { total_states };
                if j != 1 {
                    total_states += 1;
                }
                normalized.push(Transition { from, read, top, to, push: vec![g[j - 1], g[j]], out });
                from = to;
                read = None;
                top = g[j - 1];
                out = Vec::new();
            }
        }
        fin.resize(total_states, false);
        let gamma = stack.len();
        let mut moves = vec![Vec::new(); total_states * gamma];
        for t in normalized {
            moves[t.from * gamma + t.top.index()].push(t);
        }
        Ok(Self {
            input,
            stack,
            declared_states: states,
            start,
            initial,
            finals: fin,
            declared: transitions,
            moves,
            total_states,
            push_factor,
        })
    }

    /// A stack-inert PDA recognizing `L(d)`.
    pub fn from_dfa(d: &Dfa) -> Self {
        let stack = Alphabet::new(['Z']).expect("static alphabet");
        let z = Symbol(0);
        let transitions = (0..d.state_count())
            .flat_map(|q| d.alphabet().symbols().map(move |a| (q, a)))
            .map(|(q, a)| Transition::new(q, Some(a), z, d.step(q, a), vec![z]))
            .collect();
        Self::new(d.alphabet().clone(), stack, d.state_count(), d.start(), z, d.finals(), transitions)
            .expect("a DFA yields a well-formed PDA")
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &Alphabet {
        &self.stack
    }

    /// Declared states; normalization may add more internally.
    pub fn state_count(&self) -> usize {
        self.declared_states
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn initial_stack(&self) -> Symbol {
        self.initial
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals[..self.declared_states].iter().enumerate().filter(|(_, &f)| f).map(|(q, _)| q)
    }

    /// Transitions as declared, before push normalization.
    pub fn transitions(&self) -> &[Transition] {
        &self.declared
    }

    pub fn is_transducer(&self) -> bool {
        self.declared.iter().any(|t| !t.out.is_empty())
    }

    /// Number of states after normalization.
    pub fn normalized_state_count(&self) -> usize {
        self.total_states
    }

    /// Stack cap used by [`Pda::accepts`] for an input of length `n`.
    pub fn stack_cap(&self, n: usize) -> usize {
        self.push_factor * (n + 1)
    }

    fn moves_for(&self, state: usize, top: u8) -> &[Transition] {
        &self.moves[state * self.stack.len() + top as usize]
    }

    fn successors<'a>(&'a self, w: &'a [Symbol], pos: usize, state: usize, stack: &'a [u8]) -> impl Iterator<Item = (usize, &'a Transition)> + 'a {
        let top = stack.last().copied();
        top.into_iter().flat_map(move |top| {
            self.moves_for(state, top).iter().filter_map(move |t| match t.read {
                None => Some((pos, t)),
                Some(a) if pos < w.len() && w[pos] == a => Some((pos + 1, t)),
                Some(_) => None,
            })
        })
    }

    fn apply(stack: &[u8], t: &Transition) -> Vec<u8> {
        let mut next = stack[..stack.len() - 1].to_vec();
        next.extend(t.push.iter().rev().map(|g| g.0));
        next
    }

    /// Explores configurations with stack height ≤ `cap`. Returns
    /// `(accepted, overflowed)`; stops early on acceptance.
    fn explore(&self, w: &[Symbol], cap: usize) -> (bool, bool) {
        if cap == 0 {
            return (false, true);
        }
        let init: Config = (0, self.start, vec![self.initial.0]);
        let mut seen: HashSet<Config> = HashSet::new();
        let mut todo = vec![init.clone()];
        seen.insert(init);
        let mut overflow = false;
        while let Some((pos, state, stack)) = todo.pop() {
            if pos == w.len() && self.finals[state] {
                return (true, overflow);
            }
            for (npos, t) in self.successors(w, pos, state, &stack) {
                let next = Self::apply(&stack, t);
                if next.len() > cap {
                    overflow = true;
                    continue;
                }
                let c = (npos, t.to, next);
                if !seen.contains(&c) {
                    seen.insert(c.clone());
                    todo.push(c);
                }
            }
        }
        (false, overflow)
    }

    /// Membership by final state.
    pub fn accepts(&self, w: &[Symbol]) -> Result<bool> {
        self.input.validate(w)?;
        Ok(self.explore(w, self.stack_cap(w.len())).0)
    }

    /// Three-valued verdict with the stack height capped at `k`.
    pub fn bounded(&self, w: &[Symbol], k: usize) -> Result<ThreeVal> {
        self.input.validate(w)?;
        Ok(match self.explore(w, k) {
            (true, _) => ThreeVal::One,
            (false, true) => ThreeVal::Undefined,
            (false, false) => ThreeVal::Zero,
        })
    }

    /// All outputs written along accepting paths, restricted to outputs of
    /// length ≤ `max_out_len`.
    pub fn transducer_outputs(&self, w: &[Symbol], max_out_len: usize) -> Result<BTreeSet<Word>> {
        self.transducer_outputs_with_budget(w, max_out_len, DEFAULT_CONFIG_BUDGET)
    }

    /// As [`Pda::transducer_outputs`], failing with
    /// [`Error::BudgetExceeded`] once more than `budget` configurations
    /// have been expanded.
    pub fn transducer_outputs_with_budget(
        &self,
        w: &[Symbol],
        max_out_len: usize,
        budget: u64,
    ) -> Result<BTreeSet<Word>> {
        self.input.validate(w)?;
        let cap = self.stack_cap(w.len());
        type OutConfig = (usize, usize, Vec<u8>, Vec<u8>);
        let init: OutConfig = (0, self.start, vec![self.initial.0], Vec::new());
        let mut seen: HashSet<OutConfig> = HashSet::new();
        let mut todo = vec![init.clone()];
        seen.insert(init);
        let mut outputs = BTreeSet::new();
        let mut expanded = 0u64;
        while let Some((pos, state, stack, out)) = todo.pop() {
            expanded += 1;
            if expanded > budget {
                return Err(Error::BudgetExceeded { required: expanded, budget });
            }
            if pos == w.len() && self.finals[state] {
                outputs.insert(out.iter().map(|&b| Symbol(b)).collect());
            }
            for (npos, t) in self.successors(w, pos, state, &stack) {
                if out.len() + t.out.len() > max_out_len {
                    continue;
                }
                let next = Self::apply(&stack, t);
                if next.len() > cap {
                    continue;
                }
                let mut nout = out.clone();
                nout.extend(t.out.iter().map(|s| s.0));
                let c = (npos, t.to, next, nout);
                if !seen.contains(&c) {
                    seen.insert(c.clone());
                    todo.push(c);
                }
            }
        }
        Ok(outputs)
    }
}
