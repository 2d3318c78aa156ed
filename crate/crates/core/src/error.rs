use thiserror::Error;

/// Domain errors raised by the library. Every variant corresponds to a
/// violated precondition; none of them are transient.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("height {height} is outside 1..={dim}")]
    HeightOutOfRange { height: usize, dim: usize },

    #[error("type vectors disagree: sum(p) = {p_sum}, sum(r) = {r_sum}")]
    UnbalancedType { p_sum: usize, r_sum: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("not a permutation of 1..={dim}: {images:?}")]
    InvalidPermutation { dim: usize, images: Vec<usize> },

    #[error("{word} is not an ordered sequence")]
    NotOrdered { word: String },

    #[error("{word} is not a path sequence with respect to {sigma}")]
    NotPathSequence { word: String, sigma: String },

    #[error("{word} is not a q-sequence with respect to {sigma}")]
    NotQSequence { word: String, sigma: String },

    #[error("minor removes {rows} rows but {cols} columns")]
    MinorShape { rows: usize, cols: usize },

    #[error("index {index} is outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("denominator has zero constant term; no power series expansion at the origin")]
    ZeroConstantTerm,

    #[error("entries of d must sum to zero, got {0}")]
    NonzeroDeltaSum(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
