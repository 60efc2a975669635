//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;

use cflrand::census::{density, nerode_lower_bound, pdense_check};
use cflrand::lab::recurrence::{a_brute, a_table, delta_check, growth_fit};
use cflrand::lab::{discrepancy, discrepancy_bound_check, swap_partition, swap_verify};
use cflrand::languages::{
    advised_model, autoreduce, binomial, ceil_loglog_is_odd, inner_product, is_even_length, length_class,
    BoundaryConvention, LengthClass,
};
use cflrand::prg::fooling::within_decay;
use cflrand::prg::{fool_suite, g_preimage_census, g_range, g_range_equals_ip};
use cflrand::probe::{enum_dfas, immunity_probe};
use cflrand::word::{all_words, bits, for_each_word};
use cflrand::{Alphabet, Budget, LanguageId, LanguageOracle, Ratio};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn budget() -> Budget {
    Budget(1 << 28)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_range_identity() -> Outcome {
    let ip = LanguageId::IpStar.oracle();
    for n in 1..=16 {
        let range = g_range(n, budget()).map_err(err)?;
        let mut expected = Vec::new();
        for_each_word(2, n + 1, |w| {
            if ip.is_member(w) {
                expected.push(w.to_vec());
            }
        });
        ensure(range == expected, || format!("n={n}: range differs from IP* ({} vs {})", range.len(), expected.len()))?;
        ensure(g_range_equals_ip(n, budget()).map_err(err)?, || format!("n={n}: g_range_equals_ip disagrees"))?;
    }
    Ok("n in [1,16]".into())
}

fn c2_almost_one_to_one() -> Outcome {
    for n in 1..=19usize {
        let hist = g_preimage_census(n, budget()).map_err(err)?;
        let size: u64 = hist.values().sum();
        if n % 2 == 1 {
            let expected_size = (1u64 << n) - (1 << ((n - 1) / 2));
            ensure(size == expected_size, || format!("n={n}: range size {size}, expected {expected_size}"))?;
            let expected: std::collections::BTreeMap<u64, u64> = if n == 1 {
                [(2, 1)].into()
            } else {
                [(1, (1u64 << n) - (1 << n.div_ceil(2))), (2, 1 << ((n - 1) / 2))].into()
            };
            ensure(hist == expected, || format!("n={n}: histogram {hist:?}, expected {expected:?}"))?;
        } else {
            let expected_size = (1u64 << n) - (1 << (n / 2));
            ensure(size == expected_size, || format!("n={n}: range size {size}, expected {expected_size}"))?;
        }
    }
    Ok("n in [1,19]".into())
}

fn c3_fooling_decay() -> Outcome {
    let suite = fool_suite(3, 8..=18, budget()).map_err(err)?;
    let mut worst: Option<(f64, usize, String)> = None;
    for r in &suite.reports {
        for row in &r.rows {
            ensure(within_decay(&row.ell, row.n, 8), || {
                format!("{} at n={}: ell = {} exceeds 8*2^(-n/4)", r.distinguisher, row.n, row.ell.exact())
            })?;
            let slack = row.ell.to_f64() / (8.0 * 2f64.powf(-(row.n as f64) / 4.0));
            if worst.as_ref().is_none_or(|w| slack > w.0) {
                worst = Some((slack, row.n, r.distinguisher.clone()));
            }
        }
    }
    let (slack, n, id) = worst.unwrap_or_default();
    Ok(format!("{} DFAs, n in [8,18]; tightest ell/bound = {slack:.4} at n={n} ({id})", suite.distinguishers))
}

fn c4_equal_star_density() -> Outcome {
    let lang = LanguageId::EqualStar.oracle();
    for n in 0..=21u64 {
        let got = density(&lang, n as usize, budget()).map_err(err)?;
        let expected =
            if n % 2 == 0 { binomial(n, n / 2) } else { BigUint::from(2u8) * binomial(n - 1, (n - 1) / 2) };
        ensure(got == expected, || format!("n={n}: enumeration {got}, closed form {expected}"))?;
    }
    let r = pdense_check(&lang, 1, 4..=20, budget()).map_err(err)?;
    ensure(r.holds, || format!("p-density fails at n={}", r.worst_n))?;
    Ok(format!("n in [0,21]; p-dense d=1 on [4,20], worst ratio {}", r.worst_ratio.decimal()))
}

fn c5_lcenter_pdense() -> Outcome {
    let lang = LanguageId::LCenter.oracle();
    let mut failures = Vec::new();
    for n in 5..=22usize {
        let got = density(&lang, n, budget()).map_err(err)?;
        // dense ≥ 2^n / n^2
        if got * BigUint::from(n * n) < BigUint::from(1u8) << n {
            failures.push(n);
        }
    }
    ensure(failures.is_empty(), || format!("density below 2^n/n^2 at n = {failures:?}"))?;
    Ok("n in [5,22]".into())
}

fn c6_immunity_probes() -> Outcome {
    let cap = 1 << 16;
    let mut notes = Vec::new();
    for id in [LanguageId::PalSharp, LanguageId::DupSharp] {
        let r = immunity_probe(&id.oracle(), 3, 16, cap, budget()).map_err(err)?;
        ensure(r.survivors.is_empty(), || format!("{id}: {} survivors", r.survivors.len()))?;
        notes.push(format!("{id}: {} DFAs, {} infinite, 0 survivors", r.checked, r.infinite));
    }
    let r = immunity_probe(&LanguageId::Equal.oracle(), 3, 16, cap, budget()).map_err(err)?;
    let hit = r.survivors.iter().find(|d| {
        (0..=7).all(|j| {
            let w = bits(&"01".repeat(j));
            d.accepts(&w)
        })
    });
    ensure(hit.is_some(), || format!("equal: none of {} survivors contains (01)^j for j<=7", r.survivors.len()))?;
    notes.push(format!("equal: {} survivors, (01)* among them", r.survivors.len()));
    Ok(notes.join("; "))
}

fn c7_recurrence() -> Outcome {
    let t5 = a_table(5, 25).map_err(err)?;
    ensure(t5.rows[6 - t5.first] == vec![6, 15, 20, 15, 5], || format!("m=5, i=6: {:?}", t5.rows[6 - t5.first]))?;
    for m in [3usize, 5, 7] {
        let t = a_table(m, 15).map_err(err)?;
        for i in (m - 1..=15).filter(|i| i % 2 == 1) {
            let brute = a_brute(m, i, budget()).map_err(err)?;
            ensure(t.rows[i - t.first] == brute, || format!("m={m}, i={i}: table differs from brute force"))?;
        }
    }
    let fit = growth_fit(&t5).map_err(err)?;
    ensure(fit.estimate < 2.0, || format!("growth estimate {}", fit.estimate))?;
    for (m, js) in [(3usize, 0..=0usize), (5, 0..=1), (7, 0..=2)] {
        ensure(delta_check(m, 3..=20, js.clone()).map_err(err)?, || format!("delta check fails for m={m}"))?;
    }
    Ok(format!("growth estimate {:.4} (sqrt(3+gamma) = {:.4})", fit.estimate, fit.sqrt_three_plus_gamma))
}

fn c8_discrepancy() -> Outcome {
    let mut notes = Vec::new();
    for (half, seed) in [(4usize, 8u64), (5, 10), (6, 12)] {
        let r = discrepancy_bound_check(half, 1000, seed).map_err(err)?;
        ensure(r.within_bound, || format!("n={}: a sampled rectangle exceeds the bound", 2 * half))?;
        let words = all_words(2, half);
        let mut diff = 0i64;
        for x in &words {
            for y in &words {
                diff += if inner_product(x, y).map_err(err)? == 1 { 1 } else { -1 };
            }
        }
        let brute = Ratio::new(diff.abs(), 1i64 << (2 * half));
        let full = discrepancy::full_rectangle_discrepancy(half);
        ensure(full == brute, || format!("n={}: full rectangle {} vs brute {}", 2 * half, full.exact(), brute.exact()))?;
        notes.push(format!("n={}: max ratio {:.4}", 2 * half, r.max_bound_ratio.unwrap_or(0.0)));
    }
    Ok(notes.join(", "))
}

fn c9_swapping() -> Outcome {
    for id in [LanguageId::Lkeq(3), LanguageId::LEven] {
        let m = advised_model(id).map_err(err)?;
        for n in 0..=12 {
            for split in 0..=n {
                let p = swap_partition(&m, n, split, budget()).map_err(err)?;
                ensure(swap_verify(&p), || format!("{id}: n={n}, split={split} not closed"))?;
            }
        }
    }
    Ok("l-keq:3 and l-even, n <= 12, all split points".into())
}

fn c10_autoreductions() -> Outcome {
    for id in [LanguageId::Equal, LanguageId::Pal, LanguageId::IpStar] {
        let lang = id.oracle();
        for n in 0..=14 {
            let mut bad = None;
            for_each_word(2, n, |x| {
                if bad.is_none() {
                    let fx = autoreduce(id, x).expect("binary input");
                    if lang.is_member(x) != lang.is_member(&fx) {
                        bad = Some(x.to_vec());
                    }
                }
            });
            ensure(bad.is_none(), || format!("{id}: reduction breaks at {:?}", bad))?;
        }
    }
    Ok("equal, pal, ip-star, |x| <= 14".into())
}

fn c11_nerode() -> Outcome {
    let equal = LanguageId::Equal.oracle();
    for n in 2..=12 {
        let got = nerode_lower_bound(&equal, n, n, budget()).map_err(err)?;
        ensure(got == n as u64 + 1, || format!("equal, n={n}: {got} classes"))?;
    }
    let dfas = enum_dfas(3, &Alphabet::binary(), budget()).map_err(err)?;
    for d in &dfas {
        let min = d.minimize();
        let s = min.state_count() as u64;
        let lang = LanguageOracle::from_dfa("dfa", min);
        for n in 0..=6 {
            let got = nerode_lower_bound(&lang, n, 4, budget()).map_err(err)?;
            ensure(got <= s, || format!("{s}-state DFA: {got} classes at n={n}"))?;
        }
    }
    Ok(format!("equal n in [2,12]; {} DFAs bounded by their minimal size", dfas.len()))
}

fn c12_partition() -> Outcome {
    let conv = BoundaryConvention::default();
    let (even, odd) = (LanguageId::LEven.oracle(), LanguageId::LOdd.oracle());
    for n in 0..=1u64 << 20 {
        let class = length_class(n);
        if n >= 3 {
            // odd ⌈log log n⌉ is the even window
            let expected = if ceil_loglog_is_odd(n) { LengthClass::Even } else { LengthClass::Odd };
            ensure(class == expected, || format!("n={n}: window lookup and log-log computation disagree"))?;
        }
        let e = is_even_length(n, conv);
        let o = match class {
            LengthClass::Even => false,
            LengthClass::Odd => true,
            LengthClass::Boundary => conv == BoundaryConvention::Odd,
        };
        ensure(e != o, || format!("n={n}: covered {} times", e as u8 + o as u8))?;
        if n <= 1 << 12 {
            let w = vec![cflrand::Symbol::ZERO; n as usize];
            ensure(even.is_member(&w) == e && odd.is_member(&w) == o, || format!("n={n}: oracles disagree"))?;
        }
    }
    Ok("[0, 2^20]".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("range identity", c1_range_identity),
        ("almost one-to-one", c2_almost_one_to_one),
        ("fooling decay", c3_fooling_decay),
        ("equal-star density", c4_equal_star_density),
        ("lcenter p-density", c5_lcenter_pdense),
        ("immunity probes", c6_immunity_probes),
        ("recurrence fidelity", c7_recurrence),
        ("discrepancy", c8_discrepancy),
        ("swapping property", c9_swapping),
        ("autoreductions", c10_autoreductions),
        ("nerode counts", c11_nerode),
        ("length partition", c12_partition),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
