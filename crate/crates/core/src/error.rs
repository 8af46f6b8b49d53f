//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

use crate::quad::QuadError;

pub type Result<T> = std::result::Result<T, HypError>;

#[derive(Debug, Error)]
pub enum HypError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Quadrature(#[from] QuadError),

    #[error("root bracketing failed: {0}")]
    Bracket(String),

    #[error("degenerate parametrization: {0}")]
    Degenerate(String),

    #[error("invalid resolution: {0}")]
    Resolution(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV error on {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl HypError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        HypError::Domain(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HypError::Io {
            path: path.into(),
            source,
        }
    }
}
