use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight {0:?} is not nonincreasing")]
    NotDominant(Vec<i64>),

    #[error("partition has a negative part: {0:?}")]
    NegativePart(Vec<i64>),

    #[error("weight has rank {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },

    #[error("invalid Grassmannian Gr({k}, {n}): need 1 <= k < n")]
    InvalidGrassmannian { k: usize, n: usize },

    #[error("context mismatch: Gr({0}, {1}) vs Gr({2}, {3})")]
    ContextMismatch(usize, usize, usize, usize),

    #[error("diagram {diagram} does not fit in the {rows} x {cols} box")]
    OutsideBox { diagram: String, rows: usize, cols: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Hom(j_*F, pi^*E) is not supported")]
    UnsupportedDirection,

    #[error("Gram matrix is not unitriangular: {0}")]
    NotUnitriangular(String),

    #[error("K-class has length {found}, expected {expected}")]
    KClassLength { expected: usize, found: usize },

    #[error("cache I/O error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
