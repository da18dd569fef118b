use thiserror::Error;

use crate::ElementSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid JSON covering: {0}")]
    Json(String),

    #[error("universe has {0} elements; at most 64 are supported")]
    UniverseTooLarge(usize),

    #[error("elements not covered by any block: {}", .0.join(", "))]
    Uncovered(Vec<String>),

    #[error("blocks {0} and {1} overlap; not a partition")]
    NotAPartition(usize, usize),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("set {0:?} is not a flat of this lattice")]
    NotAFlat(ElementSet),

    #[error("{what}: limit of {limit} exceeded ({reached} reached)")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("{0} is not a matroid closure operator for this covering")]
    NotAClosureOperator(&'static str),

    #[error("block index {index} out of range for {blocks} blocks")]
    NoSuchBlock { index: usize, blocks: usize },

    #[error("invalid set system: {0}")]
    InvalidSystem(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
