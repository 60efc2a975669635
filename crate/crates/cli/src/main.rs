use std::process::ExitCode;

use clap::Parser;
use cflrand::Budget;

mod args;
mod commands;
mod error;
mod output;

use args::{Cli, Command};
use error::{CliError, CliResult};

/// Enumeration budget from `CFLRAND_BUDGET`, else the library default.
fn budget() -> CliResult<Budget> {
    match std::env::var("CFLRAND_BUDGET") {
        Err(_) => Ok(Budget::DEFAULT),
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) if b > 0 => Ok(Budget(b)),
            _ => Err(CliError::Usage(format!("CFLRAND_BUDGET must be a positive integer, got '{v}'"))),
        },
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))?;
    }
    let budget = budget()?;
    let out = match &cli.command {
        Command::Density(a) => commands::density(a, budget)?,
        Command::Agree(a) => commands::agree(a, budget)?,
        Command::Balance(a) => commands::balance(a, budget)?,
        Command::Probe(a) => commands::probe(a, budget)?,
        Command::Pump(a) => commands::pump(a)?,
        Command::Nerode(a) => commands::nerode(a, budget)?,
        Command::Swap(a) => commands::swap(a, budget)?,
        Command::Disc(a) => commands::disc(a)?,
        Command::Recur(a) => commands::recur(a, budget)?,
        Command::Prg(a) => commands::prg(a, budget)?,
    };
    output::emit(&out, cli.format, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
