use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit count {0} out of range (0..=7)")]
    QubitCount(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid qubit positions: {0}")]
    InvalidPositions(String),

    #[error("operators do not commute: {0} and {1}")]
    NonCommuting(String, String),

    #[error("context is not closed: product is {0}")]
    NotClosed(String),

    #[error("not a Fano plane: {0}")]
    NotAFanoPlane(String),

    #[error("not a spread: {0}")]
    NotASpread(String),

    #[error("unknown identifier `{0}`")]
    Unknown(String),

    #[error("secret is not normalized")]
    Unnormalized,

    #[error("system too large for exact search ({points} points, {contexts} contexts)")]
    TooLarge { points: usize, contexts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
