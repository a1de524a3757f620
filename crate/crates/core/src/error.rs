use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QsymError {
    #[error("set {set} is not a subset of [{bound}]")]
    NotASubset { set: String, bound: usize },
    #[error("invalid composition {0:?}: parts must be positive")]
    InvalidComposition(Vec<u32>),
    #[error("invalid permutation {0:?}: not a rearrangement of 1..n")]
    InvalidPermutation(Vec<u32>),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("hypotheses violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QsymError>;
