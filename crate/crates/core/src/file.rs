//! JSON automaton files.
//!
//! ```json
//! {"type": "dfa", "alphabet": ["0", "1"], "states": 2, "start": 0,
//!  "finals": [1], "transitions": [[0, 1], [0, 1]]}
//! ```
//!
//! PDAs add `stack_alphabet` and `initial_stack`, with transitions given as
//! records `{from, read, top, to, push, out}` (`read: null` for ε, `push`
//! a string over the stack alphabet, `out` optional). Advised DFAs add
//! `advice_alphabet` and `advice` (`{"named": "l-keq:3"}` or
//! `{"table": {"3": "abc"}}`); their dense table is indexed by track
//! symbol `σ·|Γ| + τ`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::automata::{track_alphabet, Advice, AdvisedDfa, Dfa, Pda, Transition};
use crate::error::{Error, Result};
use crate::languages::{advice, LanguageId};
use crate::word::{Alphabet, Symbol, Word};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Document {
    Dfa {
        alphabet: Vec<String>,
        states: usize,
        start: usize,
        finals: Vec<usize>,
        transitions: Vec<Vec<usize>>,
    },
    Pda {
        alphabet: Vec<String>,
        stack_alphabet: Vec<String>,
        initial_stack: String,
        states: usize,
        start: usize,
        finals: Vec<usize>,
        transitions: Vec<PdaMove>,
    },
    Advised {
        alphabet: Vec<String>,
        advice_alphabet: Vec<String>,
        advice: AdviceSpec,
        states: usize,
        start: usize,
        finals: Vec<usize>,
        transitions: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PdaMove {
    from: usize,
    read: Option<String>,
    top: String,
    to: usize,
    push: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    out: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AdviceSpec {
    Named(String),
    // string keys: integer map keys do not survive the tagged-enum buffering
    Table(BTreeMap<String, String>),
}

/// A loaded automaton of any supported kind.
#[derive(Clone, Debug)]
pub enum Automaton {
    Dfa(Dfa),
    Pda(Pda),
    Advised(AdvisedDfa),
}

impl Automaton {
    pub fn kind(&self) -> &'static str {
        match self {
            Automaton::Dfa(_) => "dfa",
            Automaton::Pda(_) => "pda",
            Automaton::Advised(_) => "advised",
        }
    }
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedAutomaton(msg.into())
}

fn alphabet(chars: &[String]) -> Result<Alphabet> {
    let cs = chars
        .iter()
        .map(|s| {
            let mut it = s.chars();
            match (it.next(), it.next()) {
                (Some(c), None) => Ok(c),
                _ => Err(malformed(format!("alphabet entry {s:?} is not a single character"))),
            }
        })
        .collect::<Result<Vec<char>>>()?;
    Alphabet::new(cs)
}

fn chars(a: &Alphabet) -> Vec<String> {
    a.chars().iter().map(|c| c.to_string()).collect()
}

fn single(a: &Alphabet, s: &str) -> Result<Symbol> {
    match a.parse(s)?.as_slice() {
        [x] => Ok(*x),
        _ => Err(malformed(format!("{s:?} is not a single symbol"))),
    }
}

fn check_shape(states: usize, width: usize, table: &[Vec<usize>]) -> Result<()> {
    if table.len() != states {
        return Err(malformed(format!("{} transition rows for {states} states", table.len())));
    }
    if let Some(q) = table.iter().position(|r| r.len() != width) {
        return Err(malformed(format!("row {q} has {} entries, expected {width}", table[q].len())));
    }
    Ok(())
}

fn named_advice(name: &str) -> Result<Advice> {
    let id: LanguageId = name.parse()?;
    advice(id, 1)?;
    Ok(Advice::procedure(name, move |n| advice(id, n).expect("checked at load")))
}

fn build(doc: Document) -> Result<Automaton> {
    match doc {
        Document::Dfa { alphabet: a, states, start, finals, transitions } => {
            let a = alphabet(&a)?;
            check_shape(states, a.len(), &transitions)?;
            Ok(Automaton::Dfa(Dfa::new(a, transitions, start, finals)?))
        }
        Document::Pda { alphabet: a, stack_alphabet, initial_stack, states, start, finals, transitions } => {
            let input = alphabet(&a)?;
            let stack = alphabet(&stack_alphabet)?;
            let initial = single(&stack, &initial_stack)?;
            let moves = transitions
                .iter()
                .map(|t| {
                    let read = t.read.as_deref().map(|r| single(&input, r)).transpose()?;
                    let out: Word = t.out.as_deref().map(|o| input.parse(o)).transpose()?.unwrap_or_default();
                    Ok(Transition::new(t.from, read, single(&stack, &t.top)?, t.to, stack.parse(&t.push)?).with_output(out))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Automaton::Pda(Pda::new(input, stack, states, start, initial, finals, moves)?))
        }
        Document::Advised { alphabet: a, advice_alphabet, advice: spec, states, start, finals, transitions } => {
            let input = alphabet(&a)?;
            let adv = alphabet(&advice_alphabet)?;
            let track = track_alphabet(&input, &adv);
            check_shape(states, track.len(), &transitions)?;
            let base = Dfa::new(track, transitions, start, finals)?;
            let advice = match spec {
                AdviceSpec::Named(name) => named_advice(&name)?,
                AdviceSpec::Table(t) => {
                    let parse_len = |n: &str| n.parse::<usize>().map_err(|_| malformed(format!("advice length {n:?}")));
                    Advice::Table(t.iter().map(|(n, h)| Ok((parse_len(n)?, adv.parse(h)?))).collect::<Result<_>>()?)
                }
            };
            Ok(Automaton::Advised(AdvisedDfa::new(input, adv, base, advice)?))
        }
    }
}

pub fn from_json(text: &str) -> Result<Automaton> {
    let doc: Document = serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
    build(doc)
}

pub fn load(path: impl AsRef<Path>) -> Result<Automaton> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    from_json(&text)
}

fn document(a: &Automaton) -> Document {
    match a {
        Automaton::Dfa(d) => Document::Dfa {
            alphabet: chars(d.alphabet()),
            states: d.state_count(),
            start: d.start(),
            finals: d.finals().collect(),
            transitions: d.table(),
        },
        Automaton::Pda(p) => {
            let (input, stack) = (p.input_alphabet(), p.stack_alphabet());
            Document::Pda {
                alphabet: chars(input),
                stack_alphabet: chars(stack),
                initial_stack: stack.char_of(p.initial_stack()).to_string(),
                states: p.state_count(),
                start: p.start(),
                finals: p.finals().collect(),
                transitions: p
                    .transitions()
                    .iter()
                    .map(|t| PdaMove {
                        from: t.from,
                        read: t.read.map(|r| input.char_of(r).to_string()),
                        top: stack.char_of(t.top).to_string(),
                        to: t.to,
                        push: stack.render(&t.push),
                        out: (!t.out.is_empty()).then(|| input.render(&t.out)),
                    })
                    .collect(),
            }
        }
        Automaton::Advised(m) => Document::Advised {
            alphabet: chars(m.input_alphabet()),
            advice_alphabet: chars(m.advice_alphabet()),
            advice: match m.advice() {
                Advice::Procedure { name, .. } => AdviceSpec::Named(name.clone()),
                Advice::Table(t) => {
                    AdviceSpec::Table(t.iter().map(|(n, h)| (n.to_string(), m.advice_alphabet().render(h))).collect())
                }
            },
            states: m.base().state_count(),
            start: m.base().start(),
            finals: m.base().finals().collect(),
            transitions: m.base().table(),
        },
    }
}

pub fn to_value(a: &Automaton) -> serde_json::Value {
    serde_json::to_value(document(a)).expect("documents always serialize")
}

pub fn to_json(a: &Automaton) -> String {
    serde_json::to_string_pretty(&document(a)).expect("documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::languages::{advised_model, leq_pda};
    use crate::word::{all_words, bits};

    #[test]
    fn dfa_round_trip() {
        let text = r#"{"type": "dfa", "alphabet": ["0", "1"], "states": 2, "start": 0,
                       "finals": [1], "transitions": [[0, 1], [0, 1]]}"#;
        let Automaton::Dfa(d) = from_json(text).unwrap() else { panic!("kind") };
        assert!(d.accepts(&bits("001")) && !d.accepts(&bits("10")));
        let Automaton::Dfa(e) = from_json(&to_json(&Automaton::Dfa(d.clone()))).unwrap() else { panic!("kind") };
        assert_eq!(d, e);
    }

    #[test]
    fn pda_round_trip() {
        let p = leq_pda();
        let Automaton::Pda(q) = from_json(&to_json(&Automaton::Pda(p.clone()))).unwrap() else { panic!("kind") };
        for n in 0..=8 {
            for w in all_words(2, n) {
                assert_eq!(p.accepts(&w).unwrap(), q.accepts(&w).unwrap());
            }
        }
        let text = r#"{"type": "pda", "alphabet": ["0","1"], "stack_alphabet": ["Z"], "initial_stack": "Z",
            "states": 1, "start": 0, "finals": [0],
            "transitions": [{"from": 0, "read": "1", "top": "Z", "to": 0, "push": "Z", "out": "0"},
                            {"from": 0, "read": "0", "top": "Z", "to": 0, "push": "Z", "out": "1"}]}"#;
        let Automaton::Pda(flip) = from_json(text).unwrap() else { panic!("kind") };
        assert_eq!(flip.transducer_outputs(&bits("101"), 3).unwrap().into_iter().next().unwrap(), bits("010"));
    }

    #[test]
    fn advised_round_trip() {
        for id in [LanguageId::Lkeq(3), LanguageId::LEven] {
            let m = advised_model(id).unwrap();
            let Automaton::Advised(r) = from_json(&to_json(&Automaton::Advised(m.clone()))).unwrap() else {
                panic!("kind")
            };
            for n in 0..=6 {
                for w in all_words(m.input_alphabet().len(), n) {
                    assert_eq!(m.run(&w).unwrap(), r.run(&w).unwrap());
                }
            }
        }
    }

    #[test]
    fn advice_table() {
        let text = r#"{"type": "advised", "alphabet": ["0","1"], "advice_alphabet": ["0","1"],
            "advice": {"table": {"2": "10"}}, "states": 1, "start": 0, "finals": [0],
            "transitions": [[0,0,0,0]]}"#;
        let Automaton::Advised(m) = from_json(text).unwrap() else { panic!("kind") };
        assert!(m.run(&bits("01")).unwrap());
        assert!(matches!(m.run(&bits("0")), Err(Error::MissingAdvice(1))));
    }

    #[test]
    fn malformed_inputs() {
        for text in [
            "{",
            r#"{"type": "nfa"}"#,
            r#"{"type": "dfa", "alphabet": ["01"], "states": 1, "start": 0, "finals": [], "transitions": [[0]]}"#,
            r#"{"type": "dfa", "alphabet": ["0"], "states": 2, "start": 0, "finals": [], "transitions": [[0]]}"#,
            r#"{"type": "dfa", "alphabet": ["0"], "states": 1, "start": 0, "finals": [], "transitions": [[3]]}"#,
            r#"{"type": "advised", "alphabet": ["0","1"], "advice_alphabet": ["0","1"], "advice": {"named": "pal"},
                "states": 1, "start": 0, "finals": [0], "transitions": [[0,0,0,0]]}"#,
        ] {
            assert!(from_json(text).is_err(), "{text}");
        }
    }
}
