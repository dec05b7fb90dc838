use thiserror::Error;

use crate::decomposition::FidViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}; only simple graphs are supported")]
    SelfLoop(usize),

    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("block {0} is empty")]
    EmptyBlock(usize),

    #[error("not a fully interconnected decomposition: {0}")]
    NotFid(FidViolation),

    #[error("vertices {0} and {1} are not adjacent, so the set is not a clique")]
    NotClique(usize, usize),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("graph has no dominating vertex")]
    NoDominatingVertex,

    #[error("{0}")]
    InvalidArgument(String),
}
