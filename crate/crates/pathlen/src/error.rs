//! Error type shared across the crate.
//!
//! Vertex indices in error messages are 1-based, matching the external
//! edge-list convention.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {v}")]
    SelfLoop { v: usize },

    #[error("vertex index {v} out of range 1..={n}")]
    IndexOutOfRange { v: usize, n: usize },

    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },

    #[error("edge ({i}, {j}) listed with zero weight")]
    ZeroWeight { i: usize, j: usize },

    #[error("negative weight {w} on edge ({i}, {j}); pass allow-negative to accept it")]
    NegativeWeight { i: usize, j: usize, w: f64 },

    #[error("weight on edge ({i}, {j}) is not finite")]
    NonFiniteWeight { i: usize, j: usize },

    #[error("graph declared undirected but weights differ at ({i}, {j})")]
    AsymmetricUndirected { i: usize, j: usize },

    #[error("graph has no edges")]
    NoEdges,

    #[error("level K={k} out of range 1..={max}")]
    InvalidK { k: usize, max: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("negative cycle detected at level {level}; shortest paths are undefined")]
    NegativeCycle { level: usize },

    #[error("zero off-diagonal path length at ({i}, {j}); cannot take reciprocals")]
    ZeroPathLength { i: usize, j: usize },

    #[error("shortest-path counting requires an unweighted graph")]
    WeightedCount,

    #[error("vertices must be distinct")]
    SameVertex,

    #[error("edge ({h1}, {h2}) does not exist")]
    NoSuchEdge { h1: usize, h2: usize },

    #[error("vertex {h1} has no outgoing edge; no proposal possible from it")]
    NoOutgoingEdge { h1: usize },

    #[error("perturbation factor {0} out of range (0, 1]")]
    InvalidFactor(f64),

    #[error("asymmetric perturbation requested on an undirected graph")]
    AsymmetricPerturbation,

    #[error("reciprocal path length matrix is reducible")]
    Reducible,

    #[error(
        "power iteration did not converge within {max_iter} iterations (residual {residual:.3e})"
    )]
    NoConvergence { max_iter: usize, residual: f64 },

    #[error("computed Perron vector is not entrywise positive")]
    NotPositive,

    #[error("Harary index requires an undirected graph")]
    DirectedHarary,
}

impl Error {
    /// True for errors caused by bad input (files, arguments, graph data)
    /// as opposed to numerical or structural failures during analysis.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NegativeCycle { .. }
                | Error::ZeroPathLength { .. }
                | Error::NoOutgoingEdge { .. }
                | Error::Reducible
                | Error::NoConvergence { .. }
                | Error::NotPositive
                | Error::DimensionMismatch(_)
        )
    }
}
