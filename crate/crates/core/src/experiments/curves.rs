use std::collections::BTreeSet;

use serde::Serialize;

use super::{learn_graph, mean, LearnSettings};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Descending flag values against hotspot index, plus the selected α.
#[derive(Debug, Clone, Serialize)]
pub struct FlagCurve {
    pub alpha: usize,
    pub iterations: u64,
    /// `flags[i]` belongs to the vertex at hotspot index `i + 1`.
    pub flags: Vec<u64>,
    pub ordering: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FlagRow {
    pub index: usize,
    pub flag: u64,
}

impl FlagCurve {
    pub fn rows(&self) -> Vec<FlagRow> {
        self.flags
            .iter()
            .enumerate()
            .map(|(i, &flag)| FlagRow { index: i + 1, flag })
            .collect()
    }
}

pub fn flag_curve_experiment(g: &Graph, settings: &LearnSettings, seed: u64) -> Result<FlagCurve> {
    let learned = learn_graph(g, settings, seed)?;
    let ordering = learned.table.ordering().to_vec();
    Ok(FlagCurve {
        alpha: learned.table.alpha(),
        iterations: learned.model.iterations(),
        flags: ordering.iter().map(|&v| learned.model.flag(v)).collect(),
        ordering,
    })
}

/// `|A ∩ B| / |A ∪ B|`, and 1 for two empty sets.
pub fn jaccard(a: &BTreeSet<VertexId>, b: &BTreeSet<VertexId>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 1.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Hotspot sets from repeated learning runs on one graph.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub seeds: Vec<u64>,
    pub alphas: Vec<usize>,
    /// Sorted hotspot ids per run.
    pub runs: Vec<Vec<VertexId>>,
    pub pairwise_jaccard: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StabilityRow {
    pub run_i: usize,
    pub run_j: usize,
    pub jaccard: f64,
}

impl StabilityReport {
    pub fn mean_off_diagonal(&self) -> f64 {
        let k = self.runs.len();
        mean((0..k).flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.pairwise_jaccard[i][j]))
    }

    /// Upper-triangle rows `i < j`.
    pub fn rows(&self) -> Vec<StabilityRow> {
        let k = self.runs.len();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| StabilityRow {
                run_i: i,
                run_j: j,
                jaccard: self.pairwise_jaccard[i][j],
            })
            .collect()
    }
}

/// One learning run per seed; compares the resulting top-α hotspot sets.
pub fn stability_experiment(
    g: &Graph,
    seeds: &[u64],
    settings: &LearnSettings,
) -> Result<StabilityReport> {
    if seeds.len() < 2 {
        return Err(Error::InvalidParameter(
            "stability needs at least two runs".into(),
        ));
    }
    let mut alphas = Vec::with_capacity(seeds.len());
    let mut sets = Vec::with_capacity(seeds.len());
    for &s in seeds {
        let learned = learn_graph(g, settings, s)?;
        alphas.push(learned.table.alpha());
        sets.push(learned.table.hotspots().iter().copied().collect::<BTreeSet<_>>());
    }
    let pairwise_jaccard = sets
        .iter()
        .map(|a| sets.iter().map(|b| jaccard(a, b)).collect())
        .collect();
    Ok(StabilityReport {
        seeds: seeds.to_vec(),
        alphas,
        runs: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
        pairwise_jaccard,
    })
}
