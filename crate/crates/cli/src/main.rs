//! `cyclic-cubic`: field catalogs, one-level density tables, verification
//! reports and character-sum tables.
//!
//! Exit codes: 0 success, 1 usage, 2 assertion failure, 3 I/O.

mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, RunConfig};

/// Failure classes, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Assertion(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Assertion(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Assertion(m) | CliError::Io(m) => m,
        }
    }
}

impl From<cyclic_cubic::Error> for CliError {
    fn from(e: cyclic_cubic::Error) -> Self {
        use cyclic_cubic::Error as E;
        match e {
            E::EmptyFamily(_) | E::InvalidArgument(_) | E::InvalidBeta(_) | E::NotPrime(_) | E::RamifiedPrime | E::Parse { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Assertion(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = RunConfig::try_from(cli).and_then(|cfg| commands::run(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
