use thiserror::Error;

use crate::decomposition::DecompositionError;
use crate::graph::GraphError;

/// Errors surfaced by solvers, the Cut&Count driver and the oracles.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("weight universe is empty")]
    EmptyUniverse,
    #[error("at least one repetition is required")]
    ZeroRepetitions,
    #[error("instance exceeds oracle limit: {0}")]
    OracleLimit(String),
    #[error("decomposition does not fit the instance: {0}")]
    Decomposition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<DecompositionError> for SolveError {
    fn from(e: DecompositionError) -> Self {
        SolveError::Decomposition(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SolveError>;
