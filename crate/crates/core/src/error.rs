use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller broke an operation's precondition (length mismatch, slot count out of range, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An invalid benchmark or run configuration, detected before any work is done.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Brute-force enumeration was asked for an instance that is too large.
    #[error("enumeration of 2^{n} strings exceeds the budget of 2^{max}")]
    EnumerationBudget { n: usize, max: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: line {line}: {message}")]
    MalformedRow {
        path: PathBuf,
        line: u64,
        message: String,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the CLI: 1 for configuration problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::MalformedRow { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
