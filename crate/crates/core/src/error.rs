use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("position {pos} out of range for a word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },

    #[error("invalid range [{a}, {b}] for a word of length {len}")]
    InvalidRange { a: usize, b: usize, len: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid ordered multiset partition: {0}")]
    InvalidPartition(String),

    #[error("star at position {0} is not a descent")]
    StarNotDescent(usize),

    #[error("invalid insertion arguments: {0}")]
    InvalidInsertionArgs(String),

    #[error("label {label} exceeds the current cap {cap}")]
    LabelOutOfRange { label: usize, cap: usize },

    #[error("content mismatch: {0}")]
    ContentMismatch(String),

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("polynomial is not symmetric in the x variables")]
    NotSymmetric,

    #[error("schur reconstruction left a nonzero residue")]
    SchurResidue,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}

pub type Result<T> = std::result::Result<T, Error>;
