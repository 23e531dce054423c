use rand::Rng;
use rayon::prelude::*;

use super::walk::{paired_walk, WalkLimits};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};
use crate::seed;

/// Iterations evaluated in parallel before being merged in index order.
const MERGE_BLOCK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LearnConfig {
    pub limits: WalkLimits,
}

/// How learning iterations pick their `(u, v)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPlan {
    /// Every unordered distinct pair when there are at most
    /// `exhaustive_limit` of them, otherwise `samples_per_vertex * n` sampled pairs.
    Auto {
        exhaustive_limit: u64,
        samples_per_vertex: usize,
    },
    All,
    Sample(usize),
}

impl Default for PairPlan {
    fn default() -> Self {
        PairPlan::Auto {
            exhaustive_limit: 250_000,
            samples_per_vertex: 100,
        }
    }
}

/// Materializes a pair schedule for an `n`-vertex graph.
///
/// Exhaustive schedules list pairs `u < v` lexicographically; sampled ones
/// draw each pair uniformly and independently from distinct pairs.
pub fn pair_schedule(n: usize, plan: PairPlan, seed: u64) -> Vec<(VertexId, VertexId)> {
    let total = (n as u64) * (n as u64).saturating_sub(1) / 2;
    let sample = match plan {
        PairPlan::All => None,
        PairPlan::Sample(k) => Some(k),
        PairPlan::Auto {
            exhaustive_limit,
            samples_per_vertex,
        } => (total > exhaustive_limit).then_some(samples_per_vertex * n),
    };
    match sample {
        None => {
            let n = n as VertexId;
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect()
        }
        Some(_) if n < 2 => Vec::new(),
        Some(k) => {
            let mut rng = seed::stream(seed, "pairs", 0);
            (0..k)
                .map(|_| {
                    let u = rng.gen_range(0..n as VertexId);
                    let mut v = rng.gen_range(0..n as VertexId - 1);
                    if v >= u {
                        v += 1;
                    }
                    (u, v)
                })
                .collect()
        }
    }
}

/// What one learning iteration contributes.
#[derive(Debug, Clone)]
pub struct IterationOutcome {
    pub meet: VertexId,
    pub path_u: Path,
    pub path_v: Path,
}

impl IterationOutcome {
    /// Total edge reward this iteration adds: one per non-trivial path.
    pub fn reward_mass(&self) -> u32 {
        u32::from(!self.path_u.is_empty()) + u32::from(!self.path_v.is_empty())
    }
}

/// Runs learning iteration `index` on its own derived random stream.
pub fn run_iteration(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    master_seed: u64,
    index: u64,
    config: &LearnConfig,
) -> Result<IterationOutcome> {
    let mut rng = seed::stream(master_seed, "learn", index);
    let w = paired_walk(g, u, v, &mut rng, &config.limits)?;
    Ok(IterationOutcome {
        meet: w.meet,
        path_u: w.path_u,
        path_v: w.path_v,
    })
}

/// Vertex flags and directed edge rewards accumulated by learning.
///
/// Rewards are stored per directed edge slot of the graph they were learned
/// on; pairs that are not edges implicitly carry reward 0.
#[derive(Debug, Clone, PartialEq)]
pub struct RewardModel {
    flags: Vec<u64>,
    rewards: Vec<f64>,
    iterations: u64,
}

impl RewardModel {
    pub fn new(g: &Graph) -> Self {
        RewardModel {
            flags: vec![0; g.vertex_count()],
            rewards: vec![0.0; g.slot_count()],
            iterations: 0,
        }
    }

    pub(crate) fn from_parts(flags: Vec<u64>, rewards: Vec<f64>, iterations: u64) -> Self {
        RewardModel {
            flags,
            rewards,
            iterations,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.flags.len()
    }

    pub fn iterations(&self) -> u64 {
        self.iterations
    }

    pub fn flags(&self) -> &[u64] {
        &self.flags
    }

    pub fn flag(&self, v: VertexId) -> u64 {
        self.flags[v as usize]
    }

    /// Rewards of the edges leaving `a`, aligned with `g.neighbors(a)`.
    #[inline]
    pub fn rewards_from<'a>(&'a self, g: &Graph, a: VertexId) -> &'a [f64] {
        &self.rewards[g.slot_range(a)]
    }

    pub fn reward(&self, g: &Graph, a: VertexId, b: VertexId) -> f64 {
        g.edge_slot(a, b).map_or(0.0, |s| self.rewards[s])
    }

    pub fn total_reward(&self) -> f64 {
        self.rewards.iter().sum()
    }

    /// Nonzero directed rewards as `(a, b, R(a, b))`, sorted by `(a, b)`.
    pub fn edge_rewards<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = (VertexId, VertexId, f64)> + 'a {
        g.vertices().flat_map(move |a| {
            g.neighbors(a)
                .iter()
                .zip(self.rewards_from(g, a))
                .filter(|(_, &r)| r != 0.0)
                .map(move |(&b, &r)| (a, b, r))
        })
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.flags.len() != g.vertex_count() || self.rewards.len() != g.slot_count() {
            return Err(Error::ModelMismatch(format!(
                "model has {} vertices / {} edge slots, graph has {} / {}",
                self.flags.len(),
                self.rewards.len(),
                g.vertex_count(),
                g.slot_count()
            )));
        }
        Ok(())
    }

    /// Folds one iteration in: `flag(h) += 1`, and each edge of a path of
    /// length `l > 0` gains `1 / l` in the path's direction.
    pub fn record(&mut self, g: &Graph, outcome: &IterationOutcome) {
        self.flags[outcome.meet as usize] += 1;
        for path in [&outcome.path_u, &outcome.path_v] {
            if path.is_empty() {
                continue;
            }
            let share = 1.0 / path.len() as f64;
            for e in path.vertices().windows(2) {
                let slot = g.edge_slot(e[0], e[1]).expect("path edge exists in graph");
                self.rewards[slot] += share;
            }
        }
        self.iterations += 1;
    }

    /// Continues learning over `pairs`, numbering iterations from
    /// [`RewardModel::iterations`].
    ///
    /// Iterations run in parallel but are merged strictly in index order, so
    /// the result is identical for every thread count.
    pub fn extend(
        &mut self,
        g: &Graph,
        pairs: &[(VertexId, VertexId)],
        master_seed: u64,
        config: &LearnConfig,
    ) -> Result<()> {
        self.check_graph(g)?;
        for block in pairs.chunks(MERGE_BLOCK) {
            let base = self.iterations;
            let outcomes = block
                .par_iter()
                .enumerate()
                .map(|(i, &(u, v))| run_iteration(g, u, v, master_seed, base + i as u64, config))
                .collect::<Result<Vec<_>>>()?;
            for outcome in &outcomes {
                self.record(g, outcome);
            }
        }
        Ok(())
    }
}

/// Learns a fresh model from `pairs`.
pub fn learn(
    g: &Graph,
    pairs: &[(VertexId, VertexId)],
    master_seed: u64,
    config: &LearnConfig,
) -> Result<RewardModel> {
    let mut model = RewardModel::new(g);
    model.extend(g, pairs, master_seed, config)?;
    Ok(model)
}
