//! Command-line error type and its mapping onto process exit codes.

use std::fmt;

/// Exit code for command-line usage problems: bad flags, bad config keys,
/// unknown model ids.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for data problems: unreadable or invalid input files, and
/// errors propagated from the pipeline.
pub const EXIT_DATA: i32 = 2;
/// Exit code for validation failures: oracle mismatches and attribution
/// audits that do not reconcile.
pub const EXIT_VALIDATION: i32 = 3;

/// A command failure, split by exit code class.
#[derive(Debug)]
pub enum CliError {
    /// The invocation itself was wrong.
    Usage(String),
    /// An input could not be read or processed.
    Data(String),
    /// A cross-check on produced results failed.
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Data(_) => EXIT_DATA,
            CliError::Validation(_) => EXIT_VALIDATION,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message)
            | CliError::Data(message)
            | CliError::Validation(message) => f.write_str(message),
        }
    }
}

impl std::error::Error for CliError {}

impl From<orbitlink::Error> for CliError {
    fn from(err: orbitlink::Error) -> CliError {
        match err {
            orbitlink::Error::Config(message) => CliError::Usage(message),
            other => CliError::Data(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> CliError {
        CliError::Data(format!("io error: {err}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> CliError {
        CliError::Data(format!("json error: {err}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
