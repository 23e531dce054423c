use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// G(n, p): every unordered pair is an edge independently with probability `p`.
///
/// Pairs are visited with geometric skips (Batagelj–Brandes), so sparse graphs
/// cost O(n + m) rather than O(n²).
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut edges = Vec::new();
    if p == 1.0 {
        for v in 1..n as VertexId {
            edges.extend((0..v).map(|w| (w, v)));
        }
    } else if p > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let log_q = (1.0 - p).ln();
        // row v, column w < v
        let (mut v, mut w): (i64, i64) = (1, -1);
        let n = n as i64;
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                edges.push((w as VertexId, v as VertexId));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Barabási–Albert preferential attachment.
///
/// Starts from the complete graph on `m + 1` vertices. Each later vertex
/// attaches to `m` distinct existing vertices drawn proportionally to their
/// current degree (duplicate draws are rejected and redrawn).
pub fn gen_barabasi_albert(n: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if n <= m {
        return Err(Error::InvalidParameter(format!(
            "n = {n} must exceed m = {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // each vertex appears once per incident edge
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * edges.capacity());
    for v in 1..=m as VertexId {
        for w in 0..v {
            edges.push((w, v));
            endpoints.push(w);
            endpoints.push(v);
        }
    }
    let mut chosen: Vec<VertexId> = Vec::with_capacity(m);
    for v in (m + 1) as VertexId..n as VertexId {
        chosen.clear();
        while chosen.len() < m {
            let t = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.push(t);
            endpoints.push(v);
        }
    }
    Graph::from_edges(n, edges)
}
