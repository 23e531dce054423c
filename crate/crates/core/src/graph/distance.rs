use std::collections::VecDeque;

use rayon::prelude::*;

use super::{Graph, Path, VertexId};
use crate::error::{Error, Result};

/// Distance sentinel for unreachable vertices.
pub const INFINITY: u32 = u32::MAX;

/// Hop distances from `src`; unreachable vertices get [`INFINITY`].
pub fn bfs_distances(g: &Graph, src: VertexId) -> Vec<u32> {
    let mut dist = vec![INFINITY; g.vertex_count()];
    let mut queue = VecDeque::with_capacity(g.vertex_count());
    dist[src as usize] = 0;
    queue.push_back(src);
    while let Some(v) = queue.pop_front() {
        let next = dist[v as usize] + 1;
        for &w in g.neighbors(v) {
            if dist[w as usize] == INFINITY {
                dist[w as usize] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop distances, one BFS per source, row-major `n × n`.
pub fn distance_matrix(g: &Graph) -> Vec<Vec<u32>> {
    (0..g.vertex_count() as VertexId)
        .into_par_iter()
        .map(|s| bfs_distances(g, s))
        .collect()
}

/// BFS tree rooted at `root` where each vertex's parent is its smallest-id
/// neighbor one level closer to the root.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    root: VertexId,
    dist: Vec<u32>,
    parent: Vec<VertexId>,
}

impl ShortestPathTree {
    pub fn new(g: &Graph, root: VertexId) -> Self {
        let dist = bfs_distances(g, root);
        let parent = g
            .vertices()
            .map(|v| {
                let d = dist[v as usize];
                if d == 0 || d == INFINITY {
                    return v;
                }
                *g.neighbors(v)
                    .iter()
                    .find(|&&w| dist[w as usize] == d - 1)
                    .expect("BFS level has a predecessor")
            })
            .collect();
        ShortestPathTree { root, dist, parent }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn distance(&self, v: VertexId) -> u32 {
        self.dist[v as usize]
    }

    /// Root-to-`target` path along the tree.
    pub fn path_to(&self, target: VertexId) -> Option<Path> {
        if self.dist[target as usize] == INFINITY {
            return None;
        }
        let mut vertices = Vec::with_capacity(self.dist[target as usize] as usize + 1);
        let mut v = target;
        vertices.push(v);
        while v != self.root {
            v = self.parent[v as usize];
            vertices.push(v);
        }
        vertices.reverse();
        Some(Path::new_unchecked(vertices))
    }
}

/// A shortest `s`–`t` path, chosen deterministically by smallest-parent
/// tie-breaking.
pub fn shortest_path(g: &Graph, s: VertexId, t: VertexId) -> Result<Path> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    ShortestPathTree::new(g, s)
        .path_to(t)
        .ok_or(Error::NoPath { from: s, to: t })
}

/// Induced subgraph on a largest component, relabeled `0..k` in ascending
/// original-id order, plus the old-to-new id map (`None` for dropped vertices).
///
/// Ties between equally large components go to the one containing the
/// smallest original id.
pub fn largest_component(g: &Graph) -> (Graph, Vec<Option<VertexId>>) {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for s in g.vertices() {
        if comp[s as usize] != usize::MAX {
            continue;
        }
        let c = sizes.len();
        let mut size = 0;
        comp[s as usize] = c;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(v) {
                if comp[w as usize] == usize::MAX {
                    comp[w as usize] = c;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
    }
    // components are numbered in order of their smallest member, so the
    // first maximum wins ties
    let best = sizes
        .iter()
        .enumerate()
        .fold((0, 0), |acc, (c, &s)| if s > acc.1 { (c, s) } else { acc })
        .0;
    let keep: Vec<VertexId> = g.vertices().filter(|&v| comp[v as usize] == best).collect();
    let mut map = vec![None; n];
    for (i, &v) in keep.iter().enumerate() {
        map[v as usize] = Some(i as VertexId);
    }
    (g.induced(&keep), map)
}

/// Number of connected components.
pub fn component_count(g: &Graph) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    let mut stack = Vec::new();
    for s in g.vertices() {
        if seen[s as usize] {
            continue;
        }
        count += 1;
        seen[s as usize] = true;
        stack.push(s);
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}
