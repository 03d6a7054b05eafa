use thiserror::Error;

use crate::octonion::BasisTag;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("basis mismatch: {0:?} vs {1:?}")]
    BasisMismatch(BasisTag, BasisTag),
    #[error("unsupported basis conversion {0:?} -> {1:?} for this scalar model")]
    UnsupportedConversion(BasisTag, BasisTag),
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is not null (q = {0})")]
    NotNull(f64),
    #[error("invalid Stiefel triple: {0}")]
    InvalidTriple(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("linear solver breakdown at row {0}")]
    LinearSolve(usize),
    #[error("Newton did not converge in {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64, history: Vec<f64> },
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
