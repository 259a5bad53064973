//! CLI error classes, one per exit code.

use thiserror::Error;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for configuration errors (also used by argument parsing).
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for computation-cap rejections.
pub const EXIT_CAP: i32 = 3;
/// Exit code for input parse errors.
pub const EXIT_PARSE: i32 = 4;
/// Exit code for i/o failures.
pub const EXIT_IO: i32 = 5;

/// Error classes surfaced by the CLI, each mapping to a distinct exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("computation cap: {0}")]
    Cap(String),
    #[error("input parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// The process exit code for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<darboux::Error> for CliError {
    fn from(e: darboux::Error) -> Self {
        use darboux::Error::*;
        match e {
            ModuliCapExceeded { .. } | FockDimensionCap { .. } => CliError::Cap(e.to_string()),
            PathParse { .. } | PathTooShort { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}
