use std::path::Path;

use cflrand::census::{density_report, nerode_lower_bound, pair_report, CensusReport, Method, PairStatistic};
use cflrand::file::{self, Automaton};
use cflrand::lab::recurrence::{a_brute, a_table, delta_check, growth_fit, sum_recurrence_check};
use cflrand::lab::{discrepancy_bound_check, swap_partition, swap_verify};
use cflrand::languages::{advised_model, oracle};
use cflrand::prg::fooling::{dfa_id, fooling_report};
use cflrand::prg::{fool_suite, g_generate, generator_report, Distinguisher, FoolingReport};
use cflrand::probe::{immunity_probe, pump_decompose, pump_refute};
use cflrand::{Alphabet, AdvisedDfa, Budget, LanguageId, LanguageOracle, Ratio};
use serde::Serialize;
use serde_json::json;

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{ratio_cells, Output, Table};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(|| "automaton".into(), |s| s.to_string_lossy().into_owned())
}

fn automaton_oracle(path: &Path) -> CliResult<LanguageOracle> {
    let name = name_of(path);
    Ok(match file::load(path)? {
        Automaton::Dfa(d) => LanguageOracle::from_dfa(name, d),
        Automaton::Pda(p) => {
            let alphabet = p.input_alphabet().clone();
            LanguageOracle::new(name, alphabet, move |w| p.accepts(w).unwrap_or(false))
        }
        Automaton::Advised(a) => {
            let alphabet = a.input_alphabet().clone();
            LanguageOracle::new(name, alphabet, move |w| a.run(w).unwrap_or(false))
        }
    })
}

/// A language id, or a path to an automaton file.
fn resolve(spec: &str) -> CliResult<LanguageOracle> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        automaton_oracle(path)
    } else {
        Ok(oracle(spec)?)
    }
}

fn target_oracle(t: &Target) -> CliResult<LanguageOracle> {
    match (&t.language, &t.automaton) {
        (Some(l), None) => Ok(oracle(l)?),
        (None, Some(p)) => automaton_oracle(p),
        _ => Err(usage("give exactly one of --language or --automaton")),
    }
}

fn census_output(report: CensusReport) -> CliResult<Output> {
    let mut table = Table::new(&["n", "count", "ratio_num", "ratio_den"]);
    for r in &report.rows {
        let [num, den] = ratio_cells(&r.ratio);
        table.push(vec![r.n.to_string(), r.count.to_string(), num, den]);
    }
    Output::new(&report, table)
}

pub fn density(a: &DensityArgs, budget: Budget) -> CliResult<Output> {
    let lang = target_oracle(&a.target)?;
    let method: Method = a.method.parse()?;
    census_output(density_report(&lang, a.n.clone(), method, budget)?)
}

pub fn agree(a: &PairArgs, budget: Budget) -> CliResult<Output> {
    let (l, other) = (resolve(&a.language)?, resolve(&a.against)?);
    l.same_alphabet(&other)?;
    let stat = if a.gap { PairStatistic::Gap } else { PairStatistic::Agreement };
    census_output(pair_report(stat, &l, &other, a.n.clone(), budget)?)
}

pub fn balance(a: &BalanceArgs, budget: Budget) -> CliResult<Output> {
    let (l, other) = (resolve(&a.language)?, resolve(&a.against)?);
    l.same_alphabet(&other)?;
    let stat = match a.kind {
        BalanceKind::Conditional => PairStatistic::Conditional,
        BalanceKind::Signed => PairStatistic::Signed,
    };
    census_output(pair_report(stat, &l, &other, a.n.clone(), budget)?)
}

pub fn probe(a: &ProbeArgs, budget: Budget) -> CliResult<Output> {
    let lang = resolve(&a.language)?;
    let r = immunity_probe(&lang, a.max_states, a.horizon, a.cap, budget)?;
    let mut table = Table::new(&["index", "states", "dfa"]);
    for (i, d) in r.survivors.iter().enumerate() {
        table.push(vec![i.to_string(), d.state_count().to_string(), dfa_id(d)]);
    }
    let survivors: Vec<_> = r.survivors.iter().map(|d| file::to_value(&Automaton::Dfa(d.clone()))).collect();
    let doc = json!({
        "language": r.language,
        "max_states": r.max_states,
        "horizon": r.horizon,
        "cap": r.cap,
        "checked": r.checked,
        "infinite": r.infinite,
        "refuted": r.refuted,
        "inconclusive": r.inconclusive,
        "survivors": survivors,
    });
    Output::new(&doc, table)
}

pub fn pump(a: &PumpArgs) -> CliResult<Output> {
    let Automaton::Dfa(d) = file::load(&a.automaton)? else {
        return Err(usage("pump needs a DFA automaton file"));
    };
    let sigma = d.alphabet().clone();
    let w = sigma.parse(&a.word)?;
    let p = pump_decompose(&d, &w)?;
    let lang = a.language.as_deref().map(resolve).transpose()?;
    if let Some(l) = &lang {
        LanguageOracle::from_dfa("automaton", d.clone()).same_alphabet(l)?;
    }
    let mut table = Table::new(&["i", "word", "in_dfa", "in_language"]);
    let mut pumped = Vec::new();
    for i in 0..=a.i_max {
        let v = p.pump(i);
        let in_lang = lang.as_ref().map(|l| l.is_member(&v));
        table.push(vec![
            i.to_string(),
            sigma.render(&v),
            d.accepts(&v).to_string(),
            in_lang.map_or_else(String::new, |b| b.to_string()),
        ]);
        pumped.push(json!({"i": i, "word": sigma.render(&v), "in_dfa": d.accepts(&v), "in_language": in_lang}));
    }
    let refutation = match &lang {
        Some(l) => pump_refute(&d, l, &w, a.i_max)?.map(|(i, v)| json!({"i": i, "word": sigma.render(&v)})),
        None => None,
    };
    let doc = json!({
        "word": sigma.render(&w),
        "x": sigma.render(&p.x),
        "y": sigma.render(&p.y),
        "z": sigma.render(&p.z),
        "pumped": pumped,
        "refutation": refutation,
    });
    Output::new(&doc, table)
}

pub fn nerode(a: &NerodeArgs, budget: Budget) -> CliResult<Output> {
    let lang = target_oracle(&a.target)?;
    let mut table = Table::new(&["n", "t", "classes"]);
    let mut rows = Vec::new();
    for n in a.n.clone() {
        let t = a.t.unwrap_or(n);
        let classes = nerode_lower_bound(&lang, n, t, budget)?;
        table.push(vec![n.to_string(), t.to_string(), classes.to_string()]);
        rows.push(json!({"n": n, "t": t, "classes": classes}));
    }
    Output::new(&json!({"language": lang.name(), "rows": rows}), table)
}

fn advised_target(t: &Target) -> CliResult<AdvisedDfa> {
    match (&t.language, &t.automaton) {
        (Some(l), None) => Ok(advised_model(l.parse::<LanguageId>()?)?),
        (None, Some(p)) => match file::load(p)? {
            Automaton::Advised(a) => Ok(a),
            other => Err(usage(format!("swap needs an advised automaton, got a {}", other.kind()))),
        },
        _ => Err(usage("give exactly one of --language or --automaton")),
    }
}

pub fn swap(a: &SwapArgs, budget: Budget) -> CliResult<Output> {
    let m = advised_target(&a.target)?;
    let splits = match a.split {
        Some(s) => s..=s,
        None => 0..=a.n,
    };
    let sigma = m.input_alphabet().clone();
    let mut table = Table::new(&["split", "state", "block_size", "closed"]);
    let mut partitions = Vec::new();
    let mut all_closed = true;
    for split in splits {
        let p = swap_partition(&m, a.n, split, budget)?;
        let closed = swap_verify(&p);
        all_closed &= closed;
        let blocks: Vec<_> = p
            .blocks
            .iter()
            .map(|b| {
                table.push(vec![split.to_string(), b.state.to_string(), b.words.len().to_string(), closed.to_string()]);
                json!({"state": b.state, "words": b.words.iter().map(|w| sigma.render(w)).collect::<Vec<_>>()})
            })
            .collect();
        partitions.push(json!({"split": split, "closed": closed, "blocks": blocks}));
    }
    let doc = json!({"n": a.n, "base_states": m.base().state_count(), "all_closed": all_closed, "partitions": partitions});
    Ok(Output::new(&doc, table)?.check(all_closed, || "a swap block is not closed under exchanging suffixes".into()))
}

pub fn disc(a: &DiscArgs) -> CliResult<Output> {
    let r = discrepancy_bound_check(a.half_len, a.trials, a.seed)?;
    let mut table = Table::new(&[
        "trial",
        "size_a",
        "size_b",
        "imbalance",
        "disc_num",
        "disc_den",
        "squared_bound_ratio_num",
        "squared_bound_ratio_den",
    ]);
    for (i, t) in r.trials.iter().enumerate() {
        let [dn, dd] = ratio_cells(&t.disc);
        let [sn, sd] = ratio_cells(&t.squared_bound_ratio);
        table.push(vec![i.to_string(), t.size_a.to_string(), t.size_b.to_string(), t.imbalance.to_string(), dn, dd, sn, sd]);
    }
    let ok = r.within_bound;
    Ok(Output::new(&r, table)?.check(ok, || "a rectangle exceeds the discrepancy bound".into()))
}

/// Brute-force comparison stops here; `a_brute` enumerates `2^i` words.
const BRUTE_LIMIT: usize = 20;

pub fn recur(a: &RecurArgs, budget: Budget) -> CliResult<Output> {
    let checks: Vec<&str> = a.check.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if let Some(bad) = checks.iter().find(|c| !matches!(**c, "brute" | "delta" | "growth" | "sums")) {
        return Err(usage(format!("unknown check '{bad}'")));
    }
    let t = a_table(a.m, a.imax)?;
    let m0 = a.m / 2;
    let mut table = Table::new(&[]);
    table.header = std::iter::once("i".to_string())
        .chain((1..=a.m).map(|k| format!("a{k}")))
        .chain(std::iter::once("s".to_string()))
        .collect();
    for (off, row) in t.rows.iter().enumerate() {
        let i = t.first + off;
        table.push(std::iter::once(i.to_string()).chain(row.iter().map(u128::to_string)).chain([t.s(i).to_string()]).collect());
    }
    let mut results = serde_json::Map::new();
    let mut failed = Vec::new();
    for c in &checks {
        let (value, ok) = match *c {
            "brute" => {
                let upto = a.imax.min(BRUTE_LIMIT);
                let mut ok = true;
                for i in t.first..=upto {
                    ok &= a_brute(a.m, i, budget)? == t.rows[i - t.first];
                }
                (json!({"passed": ok, "checked_up_to": upto}), ok)
            }
            "delta" => {
                let i_hi = (a.imax.saturating_sub(1)) / 2;
                let ok = i_hi < m0 || delta_check(a.m, m0..=i_hi, 0..=m0 - 1)?;
                (json!({"passed": ok, "i": [m0, i_hi], "j": [0, m0 - 1]}), ok)
            }
            "growth" => {
                let fit = growth_fit(&t)?;
                let ok = fit.below_two;
                (serde_json::to_value(&fit)?, ok)
            }
            _ => {
                let ok = sum_recurrence_check(&t)?;
                (json!({"passed": ok}), ok)
            }
        };
        if !ok {
            failed.push(c.to_string());
        }
        results.insert(c.to_string(), value);
    }
    let doc = json!({"table": t, "checks": results});
    let msg = failed.join(", ");
    Ok(Output::new(&doc, table)?.check(failed.is_empty(), || format!("recurrence checks failed: {msg}")))
}

pub fn prg(a: &PrgArgs, budget: Budget) -> CliResult<Output> {
    match &a.command {
        PrgCommand::Gen { bits } => {
            let sigma = Alphabet::binary();
            let seed = sigma.parse(bits)?;
            let out = sigma.render(&g_generate(&seed)?);
            let mut table = Table::new(&["seed", "output"]);
            table.push(vec![bits.clone(), out.clone()]);
            Output::new(&json!({"seed": bits, "output": out}), table)
        }
        PrgCommand::Verify { n_max } => {
            if *n_max == 0 {
                return Err(usage("--n-max must be at least 1"));
            }
            let r = generator_report(1..=*n_max, budget)?;
            let mut table = Table::new(&["n", "range_size", "tau_num", "tau_den", "single", "double", "range_equals_ip"]);
            for row in &r.rows {
                let [tn, td] = ratio_cells(&row.tau);
                let h = |k| row.preimage_histogram.get(&k).copied().unwrap_or(0).to_string();
                table.push(vec![row.n.to_string(), row.range_size.to_string(), tn, td, h(1), h(2), row.range_equals_ip.to_string()]);
            }
            let ok = r.all_hold();
            Ok(Output::new(&r, table)?.check(ok, || "range identity or almost-1-1 census failed".into()))
        }
        PrgCommand::Fool { max_states, n, automaton } => {
            let reports: Vec<FoolingReport> = match automaton {
                Some(p) => {
                    let d = match file::load(p)? {
                        Automaton::Dfa(d) => Distinguisher::Dfa(d),
                        Automaton::Advised(a) => Distinguisher::Advised(a),
                        Automaton::Pda(_) => return Err(usage("distinguishers must be DFAs or advised DFAs")),
                    };
                    vec![fooling_report(&d, n.clone(), budget)?]
                }
                None => fool_suite(*max_states, n.clone(), budget)?.reports,
            };
            fool_output(*max_states, automaton.is_some(), reports)
        }
    }
}

#[derive(Serialize)]
struct FoolSummary {
    n: usize,
    max_ell: Ratio,
    distinguisher: String,
}

fn fool_output(max_states: usize, single: bool, reports: Vec<FoolingReport>) -> CliResult<Output> {
    let mut table =
        Table::new(&["distinguisher", "n", "on_range_num", "on_range_den", "on_uniform_num", "on_uniform_den", "ell_num", "ell_den"]);
    for r in &reports {
        for row in &r.rows {
            let [a, b] = ratio_cells(&row.prob_on_range);
            let [c, d] = ratio_cells(&row.prob_on_uniform);
            let [e, f] = ratio_cells(&row.ell);
            table.push(vec![r.distinguisher.clone(), row.n.to_string(), a, b, c, d, e, f]);
        }
    }
    let rows = reports.first().map_or(0, |r| r.rows.len());
    let per_n_max: Vec<FoolSummary> = (0..rows)
        .filter_map(|i| {
            let best = reports.iter().max_by(|a, b| a.rows[i].ell.cmp(&b.rows[i].ell))?;
            Some(FoolSummary { n: best.rows[i].n, max_ell: best.rows[i].ell.clone(), distinguisher: best.distinguisher.clone() })
        })
        .collect();
    let doc = json!({
        "max_states": if single { None } else { Some(max_states) },
        "distinguishers": reports.len(),
        "per_n_max": per_n_max,
        "reports": reports,
    });
    Output::new(&doc, table)
}
