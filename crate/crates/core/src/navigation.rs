//! Navigation phase: follow learned rewards to a hotspot from both ends and
//! splice the two traversals together through the hotspot lookup table.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{loop_erase, Graph, Path, VertexId, WalkTrace};
use crate::learning::{HotspotTable, RewardModel};

/// Result of one greedy traversal.
#[derive(Debug, Clone)]
pub struct Traversal {
    /// Loop-erased start-to-stop path.
    pub path: Path,
    /// Raw vertex sequence, revisits included.
    pub walk: WalkTrace,
}

impl Traversal {
    pub fn end(&self) -> VertexId {
        self.path.last()
    }
}

/// Greedy reward-following from `start` until `is_stop` holds or `target`
/// is reached.
///
/// At each vertex the walker takes the neighbor with the largest reward,
/// preferring unvisited neighbors and breaking ties by smallest id. When
/// every neighbor is visited it may revisit. If the best reward among the
/// candidates is zero, the highest-degree candidate is taken instead.
pub fn greedy_traverse<F>(
    g: &Graph,
    model: &RewardModel,
    start: VertexId,
    is_stop: F,
    target: Option<VertexId>,
    max_hops: usize,
) -> Result<Traversal>
where
    F: Fn(VertexId) -> bool,
{
    g.check_vertex(start)?;
    let done = |v: VertexId| is_stop(v) || target == Some(v);
    let mut walk = vec![start];
    let mut visited = HashSet::from([start]);
    let mut at = start;
    while !done(at) {
        if walk.len() > max_hops {
            return Err(Error::TraversalCap { start, max_hops });
        }
        at = next_hop(g, model, at, &visited).ok_or(Error::DisconnectedGraph)?;
        visited.insert(at);
        walk.push(at);
    }
    Ok(Traversal {
        path: loop_erase(&walk),
        walk: WalkTrace::new(walk),
    })
}

fn next_hop(
    g: &Graph,
    model: &RewardModel,
    at: VertexId,
    visited: &HashSet<VertexId>,
) -> Option<VertexId> {
    let nbrs = g.neighbors(at);
    let rewards = model.rewards_from(g, at);
    let fresh = nbrs.iter().any(|x| !visited.contains(x));
    let candidates = || {
        nbrs.iter()
            .zip(rewards)
            .filter(move |(x, _)| !fresh || !visited.contains(*x))
            .map(|(&x, &r)| (x, r))
    };
    // neighbors are sorted, so keeping the first strict maximum breaks ties by id
    let mut best: Option<(VertexId, f64)> = None;
    for (x, r) in candidates() {
        if best.is_none_or(|(_, br)| r > br) {
            best = Some((x, r));
        }
    }
    match best? {
        (x, r) if r > 0.0 => Some(x),
        _ => {
            let mut pick: Option<(VertexId, usize)> = None;
            for (x, _) in candidates() {
                let d = g.degree(x);
                if pick.is_none_or(|(_, bd)| d > bd) {
                    pick = Some((x, d));
                }
            }
            pick.map(|(x, _)| x)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NavMode {
    Trivial,
    DirectHit,
    HotspotConcatenation,
}

impl NavMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            NavMode::Trivial => "trivial",
            NavMode::DirectHit => "direct-hit",
            NavMode::HotspotConcatenation => "hotspot-concatenation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NavOutcome {
    pub path: Path,
    /// Vertices visited across both greedy traversals.
    pub hops_explored: usize,
    /// `(h_s, h_t)` when the lookup table was used.
    pub via: Option<(VertexId, VertexId)>,
    pub mode: NavMode,
}

/// Navigator over a learned model. Holds only borrowed, immutable state, so
/// one instance can serve many threads.
#[derive(Debug, Clone, Copy)]
pub struct Navigator<'a> {
    graph: &'a Graph,
    model: &'a RewardModel,
    table: &'a HotspotTable,
    max_hops: usize,
}

impl<'a> Navigator<'a> {
    pub fn new(graph: &'a Graph, model: &'a RewardModel, table: &'a HotspotTable) -> Self {
        Navigator {
            graph,
            model,
            table,
            max_hops: graph.vertex_count().max(1),
        }
    }

    pub fn with_max_hops(mut self, max_hops: usize) -> Self {
        self.max_hops = max_hops;
        self
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn navigate(&self, s: VertexId, t: VertexId) -> Result<NavOutcome> {
        let g = self.graph;
        g.check_vertex(s)?;
        g.check_vertex(t)?;
        if s == t {
            return Ok(NavOutcome {
                path: Path::single(s),
                hops_explored: 1,
                via: None,
                mode: NavMode::Trivial,
            });
        }
        let hot = |v| self.table.is_hotspot(v);

        let from_s = greedy_traverse(g, self.model, s, hot, Some(t), self.max_hops)?;
        let mut explored = from_s.walk.vertices().len();
        if from_s.end() == t {
            return Ok(NavOutcome {
                path: from_s.path,
                hops_explored: explored,
                via: None,
                mode: NavMode::DirectHit,
            });
        }

        let from_t = greedy_traverse(g, self.model, t, hot, Some(s), self.max_hops)?;
        explored += from_t.walk.vertices().len();
        if from_t.end() == s {
            return Ok(NavOutcome {
                path: from_t.path.reversed(),
                hops_explored: explored,
                via: None,
                mode: NavMode::DirectHit,
            });
        }

        let (hs, ht) = (from_s.end(), from_t.end());
        let middle = self
            .table
            .lookup_between(hs, ht)
            .expect("traversals stop at hotspots");
        let mut joined: Vec<VertexId> = from_s.path.into_vertices();
        joined.extend_from_slice(&middle.vertices()[1..]);
        joined.extend(from_t.path.vertices().iter().rev().skip(1));
        Ok(NavOutcome {
            path: loop_erase(&joined),
            hops_explored: explored,
            via: Some((hs, ht)),
            mode: NavMode::HotspotConcatenation,
        })
    }
}

/// One-shot form of [`Navigator::navigate`] with the default hop cap `n`.
pub fn pca_navigate(
    g: &Graph,
    model: &RewardModel,
    table: &HotspotTable,
    s: VertexId,
    t: VertexId,
) -> Result<NavOutcome> {
    Navigator::new(g, model, table).navigate(s, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bfs_distances, gen_barabasi_albert, largest_component};
    use crate::learning::{learn, pair_schedule, AlphaChoice, LearnConfig, PairPlan};

    fn model_with(g: &Graph, rewards: &[(VertexId, VertexId, f64)]) -> RewardModel {
        let mut slots = vec![0.0; g.slot_count()];
        for &(a, b, r) in rewards {
            slots[g.edge_slot(a, b).unwrap()] = r;
        }
        let mut flags = vec![0; g.vertex_count()];
        flags[0] = 1;
        RewardModel::from_parts(flags, slots, 1)
    }

    #[test]
    fn start_in_stop_set() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let m = RewardModel::new(&g);
        let tr = greedy_traverse(&g, &m, 1, |v| v == 1, None, 2).unwrap();
        assert_eq!(tr.path.vertices(), &[1]);
    }

    #[test]
    fn follows_highest_reward_edges() {
        // u=0 with neighbors u0..u4 = 1..=5; u1=2 has neighbors u10=6, u11=7
        let g = Graph::from_edges(
            8,
            [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (2, 6), (2, 7)],
        )
        .unwrap();
        let m = model_with(
            &g,
            &[
                (0, 1, 0.3),
                (0, 2, 0.9),
                (0, 3, 0.1),
                (0, 5, 0.5),
                (2, 6, 0.2),
                (2, 7, 0.8),
                (2, 0, 2.0), // visited; must not be taken while fresh neighbors exist
            ],
        );
        let tr = greedy_traverse(&g, &m, 0, |v| v == 7, None, 8).unwrap();
        assert_eq!(tr.path.vertices(), &[0, 2, 7]);
    }

    #[test]
    fn zero_reward_frontier_falls_back_to_degree() {
        // 0 -- 1, 0 -- 2, 2 -- 3: vertex 2 has the larger degree
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (2, 3)]).unwrap();
        let m = model_with(&g, &[]);
        let tr = greedy_traverse(&g, &m, 0, |v| v == 3, None, 4).unwrap();
        assert_eq!(tr.path.vertices(), &[0, 2, 3]);
    }

    #[test]
    fn revisits_when_cornered_and_caps() {
        // path 0-1-2 with reward pulling back to 1 from 2
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let m = model_with(&g, &[(0, 1, 1.0), (1, 2, 1.0), (2, 1, 1.0), (1, 0, 1.0)]);
        let err = greedy_traverse(&g, &m, 0, |_| false, None, 3).unwrap_err();
        assert!(matches!(err, Error::TraversalCap { start: 0, max_hops: 3 }));
        let tr = greedy_traverse(&g, &m, 0, |_| false, Some(2), 3).unwrap();
        assert_eq!(tr.path.vertices(), &[0, 1, 2]);
    }

    fn learned_ba(n: usize, seed: u64) -> (Graph, RewardModel, HotspotTable) {
        let (g, _) = largest_component(&gen_barabasi_albert(n, 4, seed).unwrap());
        let pairs = pair_schedule(g.vertex_count(), PairPlan::default(), seed);
        let m = learn(&g, &pairs, seed, &LearnConfig::default()).unwrap();
        let t = HotspotTable::build(&g, &m, AlphaChoice::Auto).unwrap();
        (g, m, t)
    }

    #[test]
    fn trivial_and_hotspot_pairs() {
        let (g, m, t) = learned_ba(60, 3);
        let out = pca_navigate(&g, &m, &t, 7, 7).unwrap();
        assert_eq!(out.path.vertices(), &[7]);
        assert_eq!(out.mode, NavMode::Trivial);

        let hs = t.hotspots();
        if hs.len() >= 2 {
            let (a, b) = (hs[0], hs[1]);
            let out = pca_navigate(&g, &m, &t, a, b).unwrap();
            assert_eq!(out.path.len() as u32, bfs_distances(&g, a)[b as usize]);
        }
    }

    #[test]
    fn traversals_reach_hotspots() {
        let (g, m, t) = learned_ba(200, 5);
        let n = g.vertex_count() as VertexId;
        let mut reached = 0;
        for i in 0..50u32 {
            let start = (i * 37 + 11) % n;
            if greedy_traverse(&g, &m, start, |v| t.is_hotspot(v), None, g.vertex_count()).is_ok() {
                reached += 1;
            }
        }
        assert!(reached >= 48, "reached {reached}/50");
    }

    #[test]
    fn all_pairs_valid_and_deterministic() {
        let (g, m, t) = learned_ba(120, 9);
        let nav = Navigator::new(&g, &m, &t);
        for s in g.vertices() {
            let d = bfs_distances(&g, s);
            for tt in g.vertices() {
                let out = nav.navigate(s, tt).unwrap();
                assert!(out.path.is_valid_in(&g));
                assert_eq!((out.path.first(), out.path.last()), (s, tt));
                assert!(out.path.len() as u32 >= d[tt as usize]);
                assert_eq!(out.via.is_some(), out.mode == NavMode::HotspotConcatenation);
                assert_eq!(out, nav.navigate(s, tt).unwrap());
            }
        }
    }
}
