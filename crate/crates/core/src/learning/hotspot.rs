use std::collections::HashMap;

use rayon::prelude::*;

use super::reward::RewardModel;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path, ShortestPathTree, VertexId};

const KNEE_EPS: f64 = 1e-12;

/// Knee of a descending curve.
///
/// Both axes are scaled to `[0, 1]`; the knee is the point lying furthest
/// below the chord from the first to the last point. Returns the 1-based
/// index, smallest on ties, and 1 for flat or too-short curves.
pub fn select_alpha(curve: &[u64]) -> usize {
    let n = curve.len();
    if n < 3 {
        return 1;
    }
    let (hi, lo) = (curve[0] as f64, curve[n - 1] as f64);
    if hi <= lo {
        return 1;
    }
    let span = (n - 1) as f64;
    let mut best = (1, 0.0);
    for (i, &f) in curve.iter().enumerate() {
        let x = i as f64 / span;
        let y = (f as f64 - lo) / (hi - lo);
        // chord is x + y = 1; the constant 1/sqrt(2) does not affect argmax
        let below = 1.0 - x - y;
        if below > best.1 + KNEE_EPS {
            best = (i + 1, below);
        }
    }
    best.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AlphaChoice {
    /// Knee of the flag curve.
    #[default]
    Auto,
    Fixed(usize),
}

/// Flag ordering, the top-α hotspots and shortest paths between them.
#[derive(Debug, Clone)]
pub struct HotspotTable {
    ordering: Vec<VertexId>,
    alpha: usize,
    position: HashMap<VertexId, usize>,
    trees: Vec<ShortestPathTree>,
}

impl HotspotTable {
    /// Orders vertices by descending flag (ascending id on ties), picks α,
    /// and runs one BFS per hotspot for the lookup table.
    ///
    /// [`AlphaChoice::Auto`] takes the knee of the flag curve restricted to
    /// vertices with a nonzero flag.
    pub fn build(g: &Graph, model: &RewardModel, alpha: AlphaChoice) -> Result<Self> {
        model.check_graph(g)?;
        if model.iterations() == 0 {
            return Err(Error::EmptyModel);
        }
        let ordering = hotspot_ordering(model);
        let n = ordering.len();
        let alpha = match alpha {
            AlphaChoice::Fixed(a) => a,
            AlphaChoice::Auto => {
                // knee over vertices that were ever a meeting point
                let curve: Vec<u64> = ordering
                    .iter()
                    .map(|&v| model.flag(v))
                    .take_while(|&f| f > 0)
                    .collect();
                select_alpha(&curve)
            }
        };
        if alpha < 1 || alpha > n {
            return Err(Error::AlphaOutOfRange { alpha, n });
        }
        if !g.is_connected() {
            return Err(Error::DisconnectedGraph);
        }
        let trees = ordering[..alpha]
            .par_iter()
            .map(|&h| ShortestPathTree::new(g, h))
            .collect();
        let position = ordering[..alpha]
            .iter()
            .enumerate()
            .map(|(i, &h)| (h, i))
            .collect();
        Ok(HotspotTable {
            ordering,
            alpha,
            position,
            trees,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// All vertices by descending flag.
    pub fn ordering(&self) -> &[VertexId] {
        &self.ordering
    }

    pub fn hotspots(&self) -> &[VertexId] {
        &self.ordering[..self.alpha]
    }

    pub fn is_hotspot(&self, v: VertexId) -> bool {
        self.position.contains_key(&v)
    }

    /// 0-based index of `v` among the hotspots.
    pub fn hotspot_index(&self, v: VertexId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// Shortest path from hotspot `i` to hotspot `j` (0-based indices).
    pub fn lookup(&self, i: usize, j: usize) -> Path {
        self.trees[i]
            .path_to(self.ordering[j])
            .expect("hotspot table is built on a connected graph")
    }

    /// Shortest path between two hotspot vertices.
    pub fn lookup_between(&self, from: VertexId, to: VertexId) -> Option<Path> {
        Some(self.lookup(self.hotspot_index(from)?, self.hotspot_index(to)?))
    }

    /// `d(h_i, h_j)` from the stored trees.
    pub fn distance(&self, i: usize, j: usize) -> u32 {
        self.trees[i].distance(self.ordering[j])
    }
}

pub(crate) fn hotspot_ordering(model: &RewardModel) -> Vec<VertexId> {
    let mut order: Vec<VertexId> = (0..model.vertex_count() as VertexId).collect();
    order.sort_by(|&a, &b| model.flag(b).cmp(&model.flag(a)).then(a.cmp(&b)));
    order
}
