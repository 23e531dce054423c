use rayon::prelude::*;

use super::{bfs_distances, Graph, VertexId, INFINITY};
use crate::error::{Error, Result};

/// Closeness `1 / Σ_w d(v, w)` per vertex, and the induced rank
/// (1 = most central, ties by ascending id).
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityRanking {
    closeness: Vec<f64>,
    rank: Vec<u32>,
}

impl CentralityRanking {
    pub fn closeness(&self, v: VertexId) -> f64 {
        self.closeness[v as usize]
    }

    pub fn rank(&self, v: VertexId) -> u32 {
        self.rank[v as usize]
    }

    pub fn closeness_values(&self) -> &[f64] {
        &self.closeness
    }

    pub fn ranks(&self) -> &[u32] {
        &self.rank
    }

    /// Ranking from precomputed closeness values.
    pub fn from_values(closeness: Vec<f64>) -> Self {
        let mut order: Vec<usize> = (0..closeness.len()).collect();
        order.sort_by(|&a, &b| closeness[b].total_cmp(&closeness[a]).then(a.cmp(&b)));
        let mut rank = vec![0; closeness.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r as u32 + 1;
        }
        CentralityRanking { closeness, rank }
    }

    /// Vertices ordered from most to least central.
    pub fn by_rank(&self) -> Vec<VertexId> {
        let mut order = vec![0; self.rank.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            order[r as usize - 1] = v as VertexId;
        }
        order
    }
}

pub fn closeness_ranking(g: &Graph) -> Result<CentralityRanking> {
    let sums: Vec<Option<u64>> = (0..g.vertex_count() as VertexId)
        .into_par_iter()
        .map(|v| {
            bfs_distances(g, v).into_iter().try_fold(0u64, |acc, d| {
                (d != INFINITY).then(|| acc + u64::from(d))
            })
        })
        .collect();
    let closeness = sums
        .into_iter()
        .map(|s| match s {
            Some(0) => Ok(1.0), // single-vertex graph
            Some(s) => Ok(1.0 / s as f64),
            None => Err(Error::DisconnectedGraph),
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(CentralityRanking::from_values(closeness))
}
