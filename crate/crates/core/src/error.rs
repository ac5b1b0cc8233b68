use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("malformed graph: {0}")]
    MalformedGraph(String),

    #[error("{0} is not a prime (only prime orders are supported)")]
    NotPrime(u64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("no girth-6 graph found for L={l}, r={r} within {iters} restarts")]
    SearchExhausted { l: usize, r: usize, iters: usize },

    #[error("invalid base graph: {0}")]
    InvalidGraph(String),

    #[error("parity-check matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("locality must be at least 1")]
    InvalidR,

    #[error("operation requires t={expected}, code has t={actual}")]
    WrongT { expected: usize, actual: usize },

    #[error("enumeration needs {required} patterns, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("row {row} has weight {weight} > r+1 = {limit}")]
    RowTooHeavy { row: usize, weight: usize, limit: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("content hash mismatch: file says {stored}, rebuilt code has {computed}")]
    HashMismatch { stored: String, computed: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
