use thiserror::Error;

use crate::exact_geom::Degeneracy;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("placement is not in general position: {0}")]
    GeneralPosition(Degeneracy),

    #[error("{0}")]
    Usage(String),

    #[error("construction failed for {family}: {reason}")]
    Construction { family: String, reason: String },

    #[error("cycles do not cover every edge exactly twice")]
    NotDoubleCover,

    #[error("convex enumeration refused: {vertices} vertices exceeds the cap of {cap} (use sampled or anneal mode)")]
    CapExceeded { vertices: usize, cap: usize },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
