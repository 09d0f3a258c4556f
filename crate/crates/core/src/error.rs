use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{value} is outside the supported domain [1, 2^62]")]
    Domain { value: u128 },

    #[error("arithmetic overflow while computing {what} for n = {n}")]
    Overflow { what: &'static str, n: u64 },

    #[error("invalid range [{lo}, {hi}): {reason}")]
    InvalidRange { lo: u64, hi: u64, reason: &'static str },

    #[error("range of {requested} numbers exceeds the budget of {budget}")]
    BudgetExceeded { requested: u64, budget: u64 },

    #[error("segment of {requested} numbers exceeds the configured segment size {limit}")]
    SegmentTooLarge { requested: u64, limit: u64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("corrupt checkpoint {path}: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },

    #[error("checkpoint {path} belongs to a different scan: {reason}")]
    CheckpointMismatch { path: PathBuf, reason: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
