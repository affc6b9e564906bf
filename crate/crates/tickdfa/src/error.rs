use thiserror::Error;

/// Errors shared by every stage of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("ordering violation at line {line}: {message}")]
    Ordering { line: usize, message: String },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("box size {s} outside valid range [{min}, {max}]")]
    BoxSize { s: usize, min: usize, max: usize },

    #[error("{context}: need at least {needed} points, got {got}")]
    TooFewPoints {
        needed: usize,
        got: usize,
        context: &'static str,
    },

    #[error("duration falls in bin {bin}, which has no defined intraday mean")]
    UndefinedBin { bin: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("numerically singular least-squares fit")]
    SingularFit,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }
}
