use std::path::PathBuf;

use thiserror::Error;

use crate::enumerate::Checkpoint;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid order {0}")]
    InvalidOrder(usize),

    #[error("malformed square: {0}")]
    MalformedSquare(String),

    #[error("unsupported order {order} for {what}")]
    UnsupportedOrder { order: usize, what: &'static str },

    #[error("unsupported family/order pair: {family} of order {order}")]
    UnsupportedFamily { family: String, order: usize },

    #[error("malformed pattern: {0}")]
    MalformedPattern(String),

    #[error("mixed orders in input: expected {expected}, found {found}")]
    MixedOrder { expected: usize, found: usize },

    #[error("search budget exhausted after {count} squares; resume from the checkpoint")]
    PartialResult { count: u64, checkpoint: Box<Checkpoint> },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("eigen solver did not converge: off-diagonal norm {off_norm:e} after {sweeps} sweeps")]
    NoConvergence { off_norm: f64, sweeps: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("degenerate labels: {0}")]
    DegenerateLabels(String),

    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    #[error("{path}:{line}: {msg}")]
    Parse { path: PathBuf, line: usize, msg: String },

    #[error("{path}: integrity error: {msg}")]
    Integrity { path: PathBuf, msg: String },

    #[error("{path}: format mismatch: {rejected} of {total} lines rejected")]
    FormatMismatch { path: PathBuf, rejected: usize, total: usize },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
