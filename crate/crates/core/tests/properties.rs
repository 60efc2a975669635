use proptest::prelude::*;

use cflrand::census::{agreement, almost_equal_gap, conditional_balance, density, nerode_lower_bound, signed_balance};
use cflrand::languages::{ip_star_pda, leq_pda};
use cflrand::prg::{g_generate, g_packed};
use cflrand::word::{all_words, pack_bits, Budget};
use cflrand::{Alphabet, Dfa, Error, LanguageId, LanguageOracle, Ratio, Symbol, ThreeVal, Word};

fn dfa_strategy(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|s| {
        (proptest::collection::vec(proptest::collection::vec(0..s, 2), s), proptest::collection::vec(any::<bool>(), s))
            .prop_map(move |(table, fin)| {
                let finals: Vec<usize> = (0..s).filter(|&q| fin[q]).collect();
                Dfa::new(Alphabet::binary(), table, 0, finals).unwrap()
            })
    })
}

fn bits_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec((0u8..2).prop_map(Symbol), 0..=max_len)
}

fn binary_language() -> impl Strategy<Value = LanguageOracle> {
    prop_oneof![
        Just(LanguageId::Equal),
        Just(LanguageId::EqualStar),
        Just(LanguageId::Leq),
        Just(LanguageId::Pal),
        Just(LanguageId::LCenter),
        Just(LanguageId::LEven),
        Just(LanguageId::IpStar),
        Just(LanguageId::SigmaStar),
        Just(LanguageId::Empty),
    ]
    .prop_map(LanguageId::oracle)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dfa_count_matches_enumeration(d in dfa_strategy(4), n in 0usize..=10) {
        let brute = all_words(2, n).iter().filter(|w| d.accepts(w)).count();
        prop_assert_eq!(d.count(n), num_bigint::BigUint::from(brute));
    }

    #[test]
    fn minimize_preserves_language(d in dfa_strategy(5)) {
        let m = d.minimize();
        prop_assert!(m.state_count() <= d.state_count());
        prop_assert_eq!(m.minimize(), m.clone());
        for n in 0..=8 {
            for w in all_words(2, n) {
                prop_assert_eq!(d.accepts(&w), m.accepts(&w));
            }
        }
    }

    #[test]
    fn bounded_verdicts_stabilize(w in bits_strategy(10), k in 0usize..8, extra in 0usize..8) {
        for p in [leq_pda(), ip_star_pda()] {
            let low = p.bounded(&w, k).unwrap();
            let high = p.bounded(&w, k + extra).unwrap();
            if low == ThreeVal::One {
                prop_assert_eq!(high, ThreeVal::One);
            }
            if low == ThreeVal::Zero {
                prop_assert_eq!(high, ThreeVal::Zero);
            }
            prop_assert_eq!(p.bounded(&w, p.stack_cap(w.len())).unwrap() == ThreeVal::One, p.accepts(&w).unwrap());
        }
    }

    #[test]
    fn complement_densities_sum(lang in binary_language(), n in 0usize..=10) {
        let b = Budget::default();
        let total = density(&lang, n, b).unwrap() + density(&lang.complement(), n, b).unwrap();
        prop_assert_eq!(total, num_bigint::BigUint::from(1u32 << n));
    }

    #[test]
    fn statistics_stay_in_range(l in binary_language(), a in binary_language(), n in 0usize..=9) {
        let b = Budget::default();
        let half = Ratio::half();
        prop_assert!(agreement(&l, &a, n, b).unwrap() <= half);
        prop_assert!(signed_balance(&l, &a, n, b).unwrap() <= Ratio::new(1, 1));
        let gap = almost_equal_gap(&l, &a, n, b).unwrap();
        prop_assert!(gap >= Ratio::zero() && gap <= Ratio::new(1, 1));
        match conditional_balance(&l, &a, n, b) {
            Ok(r) => prop_assert!(r <= half),
            Err(Error::UndefinedRatio { .. }) => prop_assert_eq!(density(&a, n, b).unwrap(), 0u8.into()),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn nerode_monotone_in_t(lang in binary_language(), n in 0usize..=6, t in 0usize..=5) {
        let b = Budget::default();
        let lo = nerode_lower_bound(&lang, n, t, b).unwrap();
        let hi = nerode_lower_bound(&lang, n, t + 1, b).unwrap();
        prop_assert!(lo <= hi);
        prop_assert!(hi <= 1 << n);
    }

    #[test]
    fn generator_stretches_into_ip_star(w in bits_strategy(40).prop_filter("nonempty", |w| !w.is_empty())) {
        let out = g_generate(&w).unwrap();
        prop_assert_eq!(out.len(), w.len() + 1);
        prop_assert!(LanguageId::IpStar.oracle().is_member(&out));
        if w.len() < 63 {
            prop_assert_eq!(pack_bits(&out), g_packed(pack_bits(&w), w.len()));
        }
    }

    #[test]
    fn dfa_oracle_density_uses_dp(d in dfa_strategy(3), n in 0usize..=12) {
        let lang = LanguageOracle::from_dfa("random", d.clone());
        prop_assert_eq!(density(&lang, n, Budget::default()).unwrap(), d.count(n));
    }
}
