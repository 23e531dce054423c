//! Comparison strategies: 1-way random walk, 2-way random walk, and
//! degree-based navigation.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{loop_erase, Graph, LoopEraser, VertexId};
use crate::learning::{paired_walk, WalkLimits};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    OneWay,
    TwoWay,
    Degree,
}

impl Strategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            Strategy::OneWay => "one-way",
            Strategy::TwoWay => "two-way",
            Strategy::Degree => "degree",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaselineOutcome {
    /// Loop-erased path length.
    pub path_length: usize,
    /// Steps taken before termination.
    pub raw_hops: usize,
    pub strategy: Strategy,
}

fn distinct(g: &Graph, s: VertexId, t: VertexId) -> Result<()> {
    g.check_vertex(s)?;
    g.check_vertex(t)?;
    if s == t {
        return Err(Error::InvalidParameter(format!("source and target are both {s}")));
    }
    if g.degree(s) == 0 {
        return Err(Error::DisconnectedGraph);
    }
    Ok(())
}

/// Default step cap for [`one_way_walk`]: `10⁴ · n`.
pub fn one_way_cap(g: &Graph) -> usize {
    10_000usize.saturating_mul(g.vertex_count())
}

/// Default step cap for [`degree_navigate`]: `n²`.
pub fn degree_cap(g: &Graph) -> usize {
    g.vertex_count().saturating_mul(g.vertex_count())
}

/// Uniform random walk from `s` until it hits `t`.
pub fn one_way_walk<R: Rng + ?Sized>(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    rng: &mut R,
    cap: usize,
) -> Result<BaselineOutcome> {
    distinct(g, s, t)?;
    let mut eraser = LoopEraser::default();
    eraser.push(s);
    let mut at = s;
    let mut hops = 0;
    while at != t {
        if hops == cap {
            return Err(Error::StepCap {
                strategy: Strategy::OneWay,
                cap,
            });
        }
        let nbrs = g.neighbors(at);
        at = nbrs[rng.gen_range(0..nbrs.len())];
        eraser.push(at);
        hops += 1;
    }
    Ok(BaselineOutcome {
        path_length: eraser.len(),
        raw_hops: hops,
        strategy: Strategy::OneWay,
    })
}

/// Paired walks from `s` and `t` until they meet; the two halves are joined
/// through the meeting vertex and loop-erased. `raw_hops` counts the steps
/// of both walks.
pub fn two_way_walk<R: Rng + ?Sized>(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    rng: &mut R,
) -> Result<BaselineOutcome> {
    distinct(g, s, t)?;
    let w = paired_walk(g, s, t, rng, &WalkLimits::default())?;
    let mut joined = w.path_u.vertices().to_vec();
    joined.extend(w.path_v.vertices().iter().rev().skip(1));
    Ok(BaselineOutcome {
        path_length: loop_erase(&joined).len(),
        raw_hops: 2 * w.steps(),
        strategy: Strategy::TwoWay,
    })
}

/// Passes the message to the highest-degree unvisited neighbor (smallest id
/// on ties); when every neighbor has been visited, to the highest-degree
/// neighbor overall. Stops on reaching `t`.
///
/// The walk is a function of the current vertex and the visited set, so
/// returning to a vertex before the visited set grows means it cycles
/// forever; that fails straight away with the error the cap would give.
pub fn degree_navigate(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    cap: usize,
) -> Result<BaselineOutcome> {
    distinct(g, s, t)?;
    let mut visited = HashSet::from([s]);
    let mut eraser = LoopEraser::default();
    eraser.push(s);
    let mut at = s;
    let mut hops = 0;
    let mut stalled = HashSet::from([s]);
    while at != t {
        if hops == cap {
            return Err(Error::StepCap {
                strategy: Strategy::Degree,
                cap,
            });
        }
        let nbrs = g.neighbors(at);
        let pick = |allow: &dyn Fn(VertexId) -> bool| {
            let mut best: Option<(VertexId, usize)> = None;
            for &x in nbrs.iter().filter(|&&x| allow(x)) {
                if best.is_none_or(|(_, d)| g.degree(x) > d) {
                    best = Some((x, g.degree(x)));
                }
            }
            best.map(|(x, _)| x)
        };
        at = pick(&|x| !visited.contains(&x))
            .or_else(|| pick(&|_| true))
            .expect("non-isolated vertex");
        if visited.insert(at) {
            stalled.clear();
            stalled.insert(at);
        } else if !stalled.insert(at) {
            return Err(Error::StepCap {
                strategy: Strategy::Degree,
                cap,
            });
        }
        eraser.push(at);
        hops += 1;
    }
    Ok(BaselineOutcome {
        path_length: eraser.len(),
        raw_hops: hops,
        strategy: Strategy::Degree,
    })
}
