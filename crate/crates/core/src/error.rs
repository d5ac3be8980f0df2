//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Malformed input data (dataset records, corpus files, checkpoints).
    #[error("data error{}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Data { msg: String, line: Option<usize> },

    /// Bad run configuration (unknown keys, missing paths, invalid values).
    #[error("config error: {0}")]
    Config(String),

    /// Tensor shape disagreement; always a caller bug or a corrupt file.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Non-finite values reached the optimizer.
    #[error("numeric failure in layer `{layer}`: {msg}")]
    Numeric { layer: String, msg: String },

    /// A review with no tokens left after preprocessing cannot be explained.
    #[error("cannot explain: {0}")]
    CannotExplain(String),

    /// Unpenalized surrogate fit on a singular system.
    #[error("rank-deficient surrogate system: {0}")]
    RankDeficient(String),
}

impl Error {
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data { msg: msg.into(), line: None }
    }

    pub fn data_at(line: usize, msg: impl Into<String>) -> Self {
        Error::Data { msg: msg.into(), line: Some(line) }
    }
}
