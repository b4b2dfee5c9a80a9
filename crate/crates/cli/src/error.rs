use std::path::Path;

use thiserror::Error;

use crate::document::ParseError;

/// Process exit codes.
pub mod exit {
    pub const SYMMETRIC: u8 = 0;
    pub const ASYMMETRIC: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const DISAGREEMENT: u8 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{file}: {error}")]
    Parse { file: String, error: ParseError },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Numeric(#[from] specsym_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    /// Every error is a usage, input or numeric failure; route
    /// disagreement is a report, not an error.
    pub fn exit_code(&self) -> u8 {
        exit::USAGE
    }
}
