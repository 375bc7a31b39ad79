//! CLI failure modes, one per exit code. Exit 0 is success; clap-level
//! argument errors also map to 1 in main.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Exit 1: arguments or config file are malformed.
    Usage(String),
    /// Exit 2: arguments parse but describe an invalid computation.
    Validation(String),
    /// Exit 3: a verification suite ran and some checks failed.
    Verification(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Validation(msg) => write!(f, "{msg}"),
            CliError::Verification(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl From<relbound_core::Error> for CliError {
    fn from(e: relbound_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
