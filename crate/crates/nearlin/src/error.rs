use crate::limit::DivergenceSignal;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("exponent {re}{im:+}i has vanishing real part")]
    DegenerateExponent { re: f64, im: f64 },

    #[error("line exponent must be real and non-conjugating")]
    NonRealLine,

    #[error("empty input")]
    Empty,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("norm undefined for p = {p}")]
    UnsupportedExponent { p: f64 },

    #[error("direction {theta} is not admissible (cos must stay away from 0)")]
    InvalidDirection { theta: f64 },

    #[error("square root of non-positive line element {value}")]
    NegativeRoot { value: f64 },

    #[error("vector {index} is linearly dependent on its predecessors")]
    RankDeficient { index: usize },

    #[error("family is not normalized: |sum w e^(i phi)| = {modulus}")]
    Normalization { modulus: f64 },

    #[error("limit sum diverges (r = {}, theta = {})", .0.r, .0.theta)]
    Divergent(DivergenceSignal),

    #[error("invalid sampling: {0}")]
    Sampling(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
