use std::path::PathBuf;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("edge probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),

    #[error("no path from {from} to {to}")]
    NoPath { from: VertexId, to: VertexId },

    #[error("graph is disconnected")]
    DisconnectedGraph,

    #[error("paired walk from {u} and {v} exceeded {cap} steps on {attempts} attempts")]
    WalkCap {
        u: VertexId,
        v: VertexId,
        cap: usize,
        attempts: u32,
    },

    #[error("greedy traversal from {start} exceeded {max_hops} hops")]
    TraversalCap { start: VertexId, max_hops: usize },

    #[error("{} exceeded {cap} steps", strategy.as_str())]
    StepCap {
        strategy: crate::baselines::Strategy,
        cap: usize,
    },

    #[error("alpha {alpha} out of range 1..={n}")]
    AlphaOutOfRange { alpha: usize, n: usize },

    #[error("reward model has no completed iterations")]
    EmptyModel,

    #[error("model does not match graph: {0}")]
    ModelMismatch(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("refusing to overwrite existing file {0} (pass --force)")]
    WouldClobber(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
