//! Command line front end for `cycles-core`: JSON cycle documents,
//! invariant evaluation, figure construction with SVG output and the
//! seeded verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 domain or precondition error.

pub mod args;
pub mod commands;
pub mod document;
pub mod svg;
pub mod verify;

use cycles_core::Tolerance;

pub use args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Write { .. } => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<cycles_core::Error> for CliError {
    fn from(e: cycles_core::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Text for standard output and whether the command succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            success: true,
        }
    }
}

pub fn tolerance(cli: &Cli) -> Result<Tolerance, CliError> {
    match cli.eps {
        None => Ok(Tolerance::DEFAULT),
        Some(eps) => {
            Tolerance::uniform(eps).map_err(|e| CliError::Parse(format!("--eps {eps}: {e}")))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = tolerance(cli)?;
    commands::dispatch(&cli.command, cli.json, tol)
}
