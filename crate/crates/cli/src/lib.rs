//! Batch front end for `hquad-core`: verify, sweep and compare bounds over
//! parameter grids, and run the identity and Hadamard corpora.
//!
//! Exit codes: [`EXIT_SOUND`] when every row holds, [`EXIT_VIOLATION`] when a
//! bound fails or a declared class is rejected by sampling, [`EXIT_CONFIG`]
//! for bad arguments and I/O errors, [`EXIT_ORACLE`] when the integrator
//! could not settle a row.

pub mod args;
pub mod commands;
pub mod grid;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::Parser;

pub use args::Cli;
use args::{Command, Format};
use table::Table;

pub const EXIT_SOUND: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ORACLE: i32 = 3;

/// Slack applied to every `lhs <= rhs` comparison: `1e-9 (1 + rhs)`.
pub const SOUNDNESS_SLACK: f64 = 1e-9;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl From<hquad_core::Error> for CliError {
    fn from(e: hquad_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

/// Worst status seen across a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Sound,
    Inconclusive,
    Violation,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Sound => EXIT_SOUND,
            Outcome::Violation => EXIT_VIOLATION,
            Outcome::Inconclusive => EXIT_ORACLE,
        }
    }
}

/// A finished report: the table plus the outcome it implies.
#[derive(Debug)]
pub struct Report {
    pub table: Table,
    pub outcome: Outcome,
    /// Human-readable description of the first failing row.
    pub first_failure: Option<String>,
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_SOUND };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

/// Runs a parsed command, writing its report to `--out` or stdout.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let (report, output) = match &cli.command {
        Command::Verify(a) => (commands::verify(a)?, &a.output),
        Command::Sweep(a) => (commands::sweep(a)?, &a.output),
        Command::Compare(a) => (commands::compare(a)?, &a.output),
        Command::Identity(a) => (commands::identity(a)?, &a.output),
        Command::Hadamard(a) => (commands::hadamard(a)?, &a.output),
    };
    emit(&report.table, output.format, output.out.as_deref())?;
    if let Some(msg) = &report.first_failure {
        eprintln!("{msg}");
    }
    Ok(report.outcome)
}

fn emit(table: &Table, format: Format, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            table.write(format, &mut w)?;
            w.flush()?;
        }
        None => table.write(format, io::stdout().lock())?,
    }
    Ok(())
}
