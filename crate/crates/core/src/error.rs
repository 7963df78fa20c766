use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("arity mismatch: expected {expected} vectors, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },

    #[error("metric is not symmetric: |M[{i}][{j}] - M[{j}][{i}]| = {gap:e}")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("metric is not positive definite: leading minor {order} is not positive")]
    NotPositiveDefinite { order: usize },

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("frame is linearly dependent: rank {rank} < {arity}")]
    DependentFrame { rank: usize, arity: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("class level m={m} out of range 1..={n}")]
    ClassOutOfRange { n: usize, m: usize },

    #[error("coefficients must be indexed by {expected:?}, got {actual:?}")]
    CoefficientMismatch {
        expected: Vec<usize>,
        actual: Vec<usize>,
    },

    #[error("invalid selection: {0}")]
    InvalidSelection(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("sequence index {k} outside the defined range")]
    SequenceIndex { k: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search size guard exceeded: n={n} > {limit}")]
    SizeGuard { n: usize, limit: usize },

    #[error("trace format: {0}")]
    Trace(String),
}
