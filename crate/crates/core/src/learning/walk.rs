use std::collections::HashMap;

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{loop_erase, Graph, Path, VertexId, WalkTrace};

/// Step cap and retry budget for paired walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkLimits {
    /// Cap on the lockstep index is `cap_factor * n`.
    pub cap_factor: usize,
    /// Extra attempts after the first capped walk.
    pub max_retries: u32,
}

impl Default for WalkLimits {
    fn default() -> Self {
        WalkLimits {
            cap_factor: 64,
            max_retries: 10,
        }
    }
}

impl WalkLimits {
    pub fn cap(&self, n: usize) -> usize {
        self.cap_factor.saturating_mul(n).max(1)
    }
}

/// Two random walks run in lockstep until their visited sets first meet.
#[derive(Debug, Clone)]
pub struct PairedWalk {
    /// The meeting vertex `h`.
    pub meet: VertexId,
    /// Loop-erased `u → h`.
    pub path_u: Path,
    /// Loop-erased `v → h`.
    pub path_v: Path,
    /// Raw walks up to (and including) the meeting step.
    pub walk_u: WalkTrace,
    pub walk_v: WalkTrace,
}

impl PairedWalk {
    /// Lockstep index at which the walks met.
    pub fn steps(&self) -> usize {
        self.walk_u.steps()
    }
}

/// Runs paired walks from `u` and `v`.
///
/// At each index `i ≥ 1` both walks take one uniform step, then the visited
/// sets `T(W_u, i)` and `T(W_v, i)` are intersected. At the first non-empty
/// intersection the smallest vertex id is the meeting vertex `h`; each path
/// is the loop-erasure of its walk truncated at the first visit to `h`.
///
/// An attempt that exceeds the step cap is discarded and retried with fresh
/// draws from `rng`, up to `limits.max_retries` times.
pub fn paired_walk<R: Rng + ?Sized>(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    rng: &mut R,
    limits: &WalkLimits,
) -> Result<PairedWalk> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::InvalidParameter(format!(
            "paired walk needs distinct endpoints, got {u} twice"
        )));
    }
    if g.degree(u) == 0 || g.degree(v) == 0 {
        return Err(Error::DisconnectedGraph);
    }
    let cap = limits.cap(g.vertex_count());
    for _ in 0..=limits.max_retries {
        if let Some(w) = attempt(g, u, v, rng, cap) {
            return Ok(w);
        }
    }
    Err(Error::WalkCap {
        u,
        v,
        cap,
        attempts: limits.max_retries + 1,
    })
}

fn attempt<R: Rng + ?Sized>(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    rng: &mut R,
    cap: usize,
) -> Option<PairedWalk> {
    let mut walk_u = vec![u];
    let mut walk_v = vec![v];
    // vertex -> index of first visit
    let mut first_u: HashMap<VertexId, usize> = HashMap::from([(u, 0)]);
    let mut first_v: HashMap<VertexId, usize> = HashMap::from([(v, 0)]);
    let (mut cu, mut cv) = (u, v);
    for i in 1..=cap {
        cu = step(g, cu, rng);
        cv = step(g, cv, rng);
        walk_u.push(cu);
        walk_v.push(cv);
        first_u.entry(cu).or_insert(i);
        first_v.entry(cv).or_insert(i);
        // The sets were disjoint at i - 1, so only this step's vertices can
        // be in the intersection.
        let meet = [(cu, &first_v), (cv, &first_u)]
            .into_iter()
            .filter(|(x, other)| other.contains_key(x))
            .map(|(x, _)| x)
            .min();
        if let Some(h) = meet {
            let path_u = loop_erase(&walk_u[..=first_u[&h]]);
            let path_v = loop_erase(&walk_v[..=first_v[&h]]);
            return Some(PairedWalk {
                meet: h,
                path_u,
                path_v,
                walk_u: WalkTrace::new(walk_u),
                walk_v: WalkTrace::new(walk_v),
            });
        }
    }
    None
}

#[inline]
fn step<R: Rng + ?Sized>(g: &Graph, at: VertexId, rng: &mut R) -> VertexId {
    let nbrs = g.neighbors(at);
    nbrs[rng.gen_range(0..nbrs.len())]
}
