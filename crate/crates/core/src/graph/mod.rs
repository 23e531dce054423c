//! Undirected simple graphs and the exact algorithms the rest of the crate
//! measures against.

mod centrality;
mod distance;
mod generate;
pub mod io;

pub use centrality::{closeness_ranking, CentralityRanking};
pub use distance::{
    bfs_distances, component_count, distance_matrix, largest_component, shortest_path,
    ShortestPathTree, INFINITY,
};
pub use generate::{gen_barabasi_albert, gen_erdos_renyi};

use crate::error::{Error, Result};

pub type VertexId = u32;

/// Immutable undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted ascending; every iteration order in the crate is
/// derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges (in either orientation)
    /// are collapsed; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        if n > VertexId::MAX as usize {
            return Err(Error::InvalidParameter(format!("n = {n} exceeds id space")));
        }
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(mut adj: Vec<Vec<VertexId>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        let mut targets = Vec::new();
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        Graph { offsets, targets }
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Number of directed edge slots (`2m`).
    pub fn slot_count(&self) -> usize {
        self.targets.len()
    }

    /// Range of directed edge slots leaving `v`, aligned with [`Graph::neighbors`].
    #[inline]
    pub fn slot_range(&self, v: VertexId) -> std::ops::Range<usize> {
        let v = v as usize;
        self.offsets[v]..self.offsets[v + 1]
    }

    /// Slot index of the directed edge `(u, v)`, if `{u, v}` is an edge.
    #[inline]
    pub fn edge_slot(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.neighbors(u)
            .binary_search(&v)
            .ok()
            .map(|i| self.offsets[u as usize] + i)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as VertexId
    }

    /// Undirected edges with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            })
        }
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || bfs_distances(self, 0).iter().all(|&d| d != INFINITY)
    }

    /// Induced subgraph on `keep` (in the given order), relabeled `0..keep.len()`.
    pub(crate) fn induced(&self, keep: &[VertexId]) -> Graph {
        let mut new_id = vec![VertexId::MAX; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v as usize] = i as VertexId;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.neighbors(v)
                    .iter()
                    .filter_map(|&w| {
                        let id = new_id[w as usize];
                        (id != VertexId::MAX).then_some(id)
                    })
                    .collect()
            })
            .collect();
        Self::from_adjacency(adj)
    }
}

/// A simple path: no repeated vertices, consecutive vertices adjacent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path(Vec<VertexId>);

impl Path {
    /// Wraps a vertex sequence without checking it; see [`Path::is_valid_in`].
    pub fn new_unchecked(vertices: Vec<VertexId>) -> Self {
        Path(vertices)
    }

    pub fn single(v: VertexId) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> VertexId {
        self.0[0]
    }

    pub fn last(&self) -> VertexId {
        *self.0.last().expect("path has at least one vertex")
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.0.len());
        self.0.iter().all(|v| seen.insert(*v))
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| (v as usize) < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && self.is_simple()
    }
}

/// A walk with repeats allowed; position `i` holds the vertex at step `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WalkTrace(Vec<VertexId>);

impl WalkTrace {
    pub fn new(vertices: Vec<VertexId>) -> Self {
        WalkTrace(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn push(&mut self, v: VertexId) {
        self.0.push(v);
    }

    /// Number of steps taken.
    pub fn steps(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Distinct vertices among positions `0..=i`.
    pub fn visited_prefix(&self, i: usize) -> std::collections::BTreeSet<VertexId> {
        self.0[..=i.min(self.0.len().saturating_sub(1))]
            .iter()
            .copied()
            .collect()
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| (v as usize) < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    /// Chronological loop-erasure; see [`loop_erase`].
    pub fn loop_erase(&self) -> Path {
        loop_erase(&self.0)
    }
}

/// Chronological loop-erasure of a non-empty walk.
///
/// Scans forward; whenever a vertex reappears, the cycle since its earlier
/// occurrence is cut out. The result is a simple path with the walk's
/// endpoints.
pub fn loop_erase(walk: &[VertexId]) -> Path {
    assert!(!walk.is_empty(), "loop_erase on empty walk");
    let mut eraser = LoopEraser::with_capacity(walk.len());
    for &v in walk {
        eraser.push(v);
    }
    eraser.finish()
}

/// Incremental loop-erasure, for walks too long to keep in memory.
#[derive(Debug, Default)]
pub struct LoopEraser {
    path: Vec<VertexId>,
    pos: std::collections::HashMap<VertexId, usize>,
}

impl LoopEraser {
    pub fn with_capacity(cap: usize) -> Self {
        LoopEraser {
            path: Vec::with_capacity(cap),
            pos: std::collections::HashMap::with_capacity(cap),
        }
    }

    pub fn push(&mut self, v: VertexId) {
        if let Some(&p) = self.pos.get(&v) {
            for erased in self.path.drain(p + 1..) {
                self.pos.remove(&erased);
            }
        } else {
            self.pos.insert(v, self.path.len());
            self.path.push(v);
        }
    }

    /// Current erased path length in edges.
    pub fn len(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    pub fn finish(self) -> Path {
        Path(self.path)
    }
}
