use thiserror::Error;

use crate::census::TriadType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("record {index}: {reason}")]
    MalformedRecord { index: usize, reason: String },

    #[error("line {line}: {reason}")]
    MalformedLine { line: u64, reason: String },

    #[error("record {index}: expected a {expected} payload")]
    PayloadKind { index: usize, expected: &'static str },

    #[error("record {index}: rating {rating} outside 1..=5")]
    RatingOutOfRange { index: usize, rating: i64 },

    #[error("record {index}: policy `{policy}` requires a timestamp")]
    MissingTimestamp { index: usize, policy: &'static str },

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("triad nodes must be distinct")]
    DuplicateNodes,

    #[error("triad has type {actual}, expected {expected}")]
    TypeMismatch { expected: TriadType, actual: TriadType },

    #[error("triad type {0} carries no transitive semicycles")]
    NotTransitive(TriadType),

    #[error("balances mix triad types {first} and {other}")]
    MixedTypes { first: TriadType, other: TriadType },

    #[error("graph has {nodes} nodes, above the oracle cap of {cap}")]
    OracleCap { nodes: usize, cap: usize },

    #[error("unknown aggregation policy `{0}` (expected mean, first or last)")]
    UnknownPolicy(String),

    #[error("thread pool: {0}")]
    ThreadPool(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
