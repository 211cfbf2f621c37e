use thiserror::Error;

/// Errors produced by the tropical and tree-space routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{0} is not a pair count m(m-1)/2 for any m >= 3")]
    NotTriangular(usize),

    #[error("leaf count {m} is out of range ({min}..={max})")]
    LeafCountOutOfRange { m: usize, min: usize, max: usize },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("three-point condition violated by {violation:e} (tolerance {tol:e})")]
    NotUltrametric { violation: f64, tol: f64 },

    #[error("entry {index} is not positive ({value})")]
    NonPositive { index: usize, value: f64 },

    #[error("need at least s observations (n = {n}, s = {s})")]
    InsufficientSample { n: usize, s: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
