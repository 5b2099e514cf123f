//! Error type shared by every subcommand, with a stable mapping to process
//! exit codes and a machine-readable stderr line.

use std::fmt;

/// Exit code for invalid arguments, configs, or parameter combinations.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code for numeric failures (ill-conditioned metric, missing root, ...).
pub const EXIT_NUMERIC: i32 = 3;
/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 4;

/// A failed run. Every error is reported to stderr as one JSON line
/// `{"error": "<kind>", "message": "..."}` and maps to a fixed exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad input: arguments, config file contents, or their combination.
    Validation(String),
    /// The computation itself failed or a sought feature does not exist.
    Numeric(String),
    /// Reading or writing a file failed.
    Io(String),
}

impl CliError {
    /// Stable kind tag used in the stderr JSON line.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Validation(_) => "validation",
            CliError::Numeric(_) => "numeric",
            CliError::Io(_) => "io",
        }
    }

    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Numeric(_) => EXIT_NUMERIC,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numeric(m) | CliError::Io(m) => m,
        }
    }

    /// The single-line JSON report written to stderr.
    pub fn json_line(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.message() }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind(), self.message())
    }
}

impl std::error::Error for CliError {}

impl From<entdyn::Error> for CliError {
    fn from(e: entdyn::Error) -> Self {
        match e {
            entdyn::Error::Validation(m) => CliError::Validation(m),
            entdyn::Error::Numeric(m) => CliError::Numeric(m),
            // A root or feature that provably does not exist is a numeric
            // outcome of the run, not a usage error.
            entdyn::Error::NotFound(m) => CliError::Numeric(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
