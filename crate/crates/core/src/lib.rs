//! Hotspot-learning navigation on undirected graphs.
//!
//! The crate learns which vertices act as "hotspots" by running paired random
//! walks until they meet, rewards the edges along the walks' loop-erased
//! paths, and then navigates between any two vertices by following the
//! learned rewards towards a hotspot and splicing in a precomputed
//! hotspot-to-hotspot shortest path.
//!
//! Modules:
//! - [`graph`]: graph type, generators, BFS, closeness ranking, edge-list IO
//! - [`learning`]: paired walks, reward model, hotspot table, knee selection
//! - [`navigation`]: greedy traversal and path concatenation
//! - [`baselines`]: 1-way walk, 2-way walk and degree-based navigation
//! - [`experiments`]: stretch, flag-curve, stability and center-strategic drivers

pub mod baselines;
pub mod error;
pub mod experiments;
pub mod graph;
pub mod learning;
pub mod navigation;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{CentralityRanking, Graph, Path, VertexId, WalkTrace};
pub use learning::{HotspotTable, LearnConfig, RewardModel};
pub use navigation::{NavMode, NavOutcome};
