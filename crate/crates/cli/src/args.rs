use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact experiments on immunity and pseudorandomness of regular and
/// context-free languages.
#[derive(Debug, Parser)]
#[command(name = "cflrand", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads (defaults to the available parallelism). Results do
    /// not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density census dense(L)(n) = |L ∩ Σ^n| by enumeration, DFA dynamic
    /// programming or closed form.
    Density(DensityArgs),
    /// Pseudorandomness statistic ℓ(n) = |dense(L△A)(n)/|Σ^n| − 1/2|, or
    /// the almost-equal gap δ(n) = dense(L△A)(n)/|Σ^n| with --gap.
    Agree(PairArgs),
    /// Balance of L inside A: the conditional statistic ℓ'(n) or the signed
    /// statistic ℓ''(n).
    Balance(BalanceArgs),
    /// Immunity probe: searches small canonical DFAs for an infinite
    /// regular subset of L up to a length horizon.
    Probe(ProbeArgs),
    /// Pumping-lemma decomposition w = xyz in a DFA, and a pumped word
    /// x y^i z that leaves the target language.
    Pump(PumpArgs),
    /// Myhill–Nerode class count of Σ^n under extensions of length ≤ t.
    Nerode(NerodeArgs),
    /// Swapping-property partition of an advised-regular slice by the
    /// state after the split point.
    Swap(SwapArgs),
    /// Discrepancy of random rectangles in the inner-product matrix.
    Disc(DiscArgs),
    /// The a/S/T prefix-window recurrences: table, brute-force check,
    /// δ_j inequalities and growth rate.
    Recur(RecurArgs),
    /// The one-bit-stretch pseudorandom generator G.
    Prg(PrgArgs),
}

/// Length range such as `4..12` (inclusive), `4..=12` or `7`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid length '{t}'"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (num(lo)?, num(hi.strip_prefix('=').unwrap_or(hi))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range '{s}'"));
    }
    Ok(lo..=hi)
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Language id, e.g. equal-star, pal-sharp, l-keq:3.
    #[arg(long)]
    pub language: Option<String>,
    /// Automaton JSON file (dfa, pda or advised).
    #[arg(long)]
    pub automaton: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[command(flatten)]
    pub target: Target,
    /// Lengths.
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    /// Census backend: enum, dfa or closed.
    #[arg(long, default_value = "enum")]
    pub method: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// The language L.
    #[arg(long)]
    pub language: String,
    /// The language A compared against (id or automaton file).
    #[arg(long)]
    pub against: String,
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    /// Report δ(n) instead of ℓ(n).
    #[arg(long)]
    pub gap: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BalanceKind {
    Conditional,
    Signed,
}

#[derive(Debug, Args)]
pub struct BalanceArgs {
    #[arg(long)]
    pub language: String,
    #[arg(long)]
    pub against: String,
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value_t = BalanceKind::Conditional)]
    pub kind: BalanceKind,
}

#[derive(Debug, Args)]
pub struct ProbeArgs {
    #[arg(long)]
    pub language: String,
    #[arg(long, default_value_t = 3)]
    pub max_states: usize,
    #[arg(long, default_value_t = 16)]
    pub horizon: usize,
    /// Accepted words inspected per DFA before giving up.
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: u64,
}

#[derive(Debug, Args)]
pub struct PumpArgs {
    /// DFA JSON file.
    #[arg(long)]
    pub automaton: PathBuf,
    /// Target language; a pumped word outside it refutes L(dfa) ⊆ L.
    #[arg(long)]
    pub language: Option<String>,
    /// Word to decompose.
    #[arg(long)]
    pub word: String,
    #[arg(long, default_value_t = 3)]
    pub i_max: usize,
}

#[derive(Debug, Args)]
pub struct NerodeArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    /// Extension length bound (defaults to n).
    #[arg(long)]
    pub t: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    #[command(flatten)]
    pub target: Target,
    #[arg(long)]
    pub n: usize,
    /// Split point; all split points when omitted.
    #[arg(long)]
    pub split: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DiscArgs {
    #[arg(long)]
    pub half_len: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct RecurArgs {
    /// Odd window width.
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub imax: usize,
    /// Comma-separated subset of brute, delta, growth, sums.
    #[arg(long, default_value = "brute,delta,growth,sums")]
    pub check: String,
}

#[derive(Debug, Args)]
pub struct PrgArgs {
    #[command(subcommand)]
    pub command: PrgCommand,
}

#[derive(Debug, Subcommand)]
pub enum PrgCommand {
    /// Apply G to a seed.
    Gen {
        /// Seed over {0,1}.
        bits: String,
    },
    /// Range identity G(Σ^n) = IP_* ∩ Σ^(n+1) and the almost-1-1 census.
    Verify {
        #[arg(long, default_value_t = 16)]
        n_max: usize,
    },
    /// Fooling statistic ℓ_B(n) of small DFAs (or one automaton) against G.
    Fool {
        #[arg(long, default_value_t = 3)]
        max_states: usize,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Use this DFA or advised DFA instead of the enumerated suite.
        #[arg(long)]
        automaton: Option<PathBuf>,
    },
}
