//! Learning phase: paired random walks, vertex flags, edge rewards and the
//! hotspot lookup table.

mod document;
mod hotspot;
mod reward;
mod walk;

pub use document::ModelDocument;
pub use hotspot::{select_alpha, AlphaChoice, HotspotTable};
pub use reward::{
    learn, pair_schedule, run_iteration, IterationOutcome, LearnConfig, PairPlan, RewardModel,
};
pub use walk::{paired_walk, PairedWalk, WalkLimits};

pub use crate::graph::loop_erase;
