//! Cross-checks between independent implementations.

use cflrand::languages::{advice, advised_model, autoreduce, ip_star_pda, leq_pda};
use cflrand::lab::recurrence::{a_table, delta_check};
use cflrand::prg::{g_generate, g_transducer};
use cflrand::word::{all_words, for_each_word, unpack_bits};
use cflrand::{file, LanguageId, Word};

#[test]
fn transducer_reproduces_generator() {
    let p = g_transducer();
    let mut w = Word::new();
    for n in 1..=12 {
        for x in 0..1u64 << n {
            unpack_bits(x, n, &mut w);
            let outs: Vec<Word> = p.transducer_outputs(&w, n + 1).unwrap().into_iter().collect();
            assert_eq!(outs, vec![g_generate(&w).unwrap()], "seed {x:0n$b}");
        }
    }
}

#[test]
fn transducer_survives_a_file_round_trip() {
    let p = g_transducer();
    let file::Automaton::Pda(q) = file::from_json(&file::to_json(&file::Automaton::Pda(p))).unwrap() else {
        panic!("kind")
    };
    for n in 1..=7 {
        for w in all_words(2, n) {
            assert_eq!(q.transducer_outputs(&w, n + 1).unwrap().into_iter().next(), Some(g_generate(&w).unwrap()));
        }
    }
}

#[test]
fn advised_models_match_oracles() {
    for id in [LanguageId::Lkeq(3), LanguageId::Lkeq(4), LanguageId::L3eq, LanguageId::LEven, LanguageId::LOdd] {
        let m = advised_model(id).unwrap();
        let oracle = id.oracle();
        let size = m.input_alphabet().len();
        let max = if size > 2 { 8 } else { 14 };
        for n in 0..=max {
            assert_eq!(advice(id, n).unwrap().len(), n);
            for_each_word(size, n, |w| assert_eq!(m.run(w).unwrap(), oracle.is_member(w), "{id} on {w:?}"));
        }
    }
}

#[test]
fn pdas_match_oracles() {
    for (p, id) in [(leq_pda(), LanguageId::Leq), (ip_star_pda(), LanguageId::IpStar)] {
        let oracle = id.oracle();
        for n in 0..=12 {
            for_each_word(2, n, |w| assert_eq!(p.accepts(w).unwrap(), oracle.is_member(w), "{id}"));
        }
    }
}

#[test]
fn autoreductions_preserve_membership() {
    for id in [LanguageId::Equal, LanguageId::Pal, LanguageId::IpStar] {
        let lang = id.oracle();
        for n in 0..=12 {
            for_each_word(2, n, |x| {
                let fx = autoreduce(id, x).unwrap();
                assert!(fx.len() > x.len());
                assert_eq!(lang.is_member(x), lang.is_member(&fx), "{id}");
            });
        }
    }
    assert!(autoreduce(LanguageId::Leq, &[]).is_err());
}

#[test]
fn window_counts_bounded_by_delta_weights() {
    // wider i ranges than the acceptance suite
    assert!(delta_check(9, 4..=50, 0..=3).unwrap());
    assert!(delta_check(11, 5..=50, 0..=4).unwrap());
    let t = a_table(9, 80).unwrap();
    assert!(cflrand::lab::sum_recurrence_check(&t).unwrap());
}
