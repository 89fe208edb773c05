//! Crate-wide error type.
//!
//! Variants are grouped by how callers recover: `Data` for malformed or
//! missing inputs, `Config` for invalid requests, `Numeric` for shape
//! mismatches and non-finite values. The CLI maps these onto exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input data (dataset records, model files, feature files).
    #[error("data: {0}")]
    Data(String),

    /// Invalid configuration or usage.
    #[error("config: {0}")]
    Config(String),

    /// Shape mismatches, NaN/Inf values, divergence.
    #[error("numeric: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
