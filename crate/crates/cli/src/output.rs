use std::io::Write;
use std::path::Path;

use cflrand::Ratio;
use serde::Serialize;

use crate::args::Format;
use crate::error::{CliError, CliResult};

/// Tabular view of a report for CSV output.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// A finished command: the JSON document, its CSV table, and the failure
/// message of any check the command asserts.
pub struct Output {
    pub json: serde_json::Value,
    pub table: Table,
    pub failed_check: Option<String>,
}

impl Output {
    pub fn new(report: &impl Serialize, table: Table) -> CliResult<Self> {
        Ok(Self { json: serde_json::to_value(report)?, table, failed_check: None })
    }

    pub fn check(mut self, ok: bool, what: impl FnOnce() -> String) -> Self {
        if !ok && self.failed_check.is_none() {
            self.failed_check = Some(what());
        }
        self
    }
}

/// `[numerator, denominator]` cells.
pub fn ratio_cells(r: &Ratio) -> [String; 2] {
    [r.numer().to_string(), r.denom().to_string()]
}

pub fn render(out: &Output, format: Format) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => {
            let mut bytes = serde_json::to_vec_pretty(&out.json)?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.table.header)?;
            for row in &out.table.rows {
                w.write_record(row)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}

pub fn emit(out: &Output, format: Format, path: Option<&Path>) -> CliResult<()> {
    let bytes = render(out, format)?;
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
        }
    }
    match &out.failed_check {
        Some(msg) => Err(CliError::Check(msg.clone())),
        None => Ok(()),
    }
}
