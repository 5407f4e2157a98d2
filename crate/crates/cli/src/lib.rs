//! Instance I/O, solver dispatch, oracle cross-checks and benchmarks for the
//! `capdp` binary.

pub mod bench;
pub mod generate;
pub mod instance;
pub mod report;
pub mod run;

use std::fmt;

pub use instance::{parse_instance, Instance, Kind, ParseError};
pub use report::RunReport;
pub use run::{run, RunOptions};

/// Failure of a CLI operation, carrying its process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Io(String),
    Parse(ParseError),
    Validation(String),
    /// A solver disagreed with its oracle or could not certify its answer.
    Disagreement(String),
    Guard(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io(_) | CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::Disagreement(_) => 3,
            CliError::Guard(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Validation(m) => write!(f, "invalid instance: {m}"),
            CliError::Disagreement(m) => write!(f, "check failed: {m}"),
            CliError::Guard(m) => write!(f, "guard: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<capdp::Error> for CliError {
    fn from(e: capdp::Error) -> Self {
        use capdp::Error as E;
        match e {
            E::GuardViolation(_) | E::ScaleLimit(_) => CliError::Guard(e.to_string()),
            E::ConcavityViolation(_) => CliError::Disagreement(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}
