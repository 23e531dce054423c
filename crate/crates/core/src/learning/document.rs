use serde::{Deserialize, Serialize};

use super::hotspot::{hotspot_ordering, AlphaChoice, HotspotTable};
use super::reward::RewardModel;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const VERSION: u32 = 1;

/// On-disk form of a learned model and its hotspot selection.
///
/// Lookup paths are not stored; they are rebuilt from the graph on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDocument {
    pub version: u32,
    pub n: usize,
    pub iterations: u64,
    pub flags: Vec<u64>,
    pub edge_rewards: Vec<(VertexId, VertexId, f64)>,
    pub alpha: usize,
    pub hotspots: Vec<VertexId>,
    /// Master seed of the run that produced the model, if known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl ModelDocument {
    pub fn new(g: &Graph, model: &RewardModel, table: &HotspotTable) -> Self {
        ModelDocument {
            version: VERSION,
            n: model.vertex_count(),
            iterations: model.iterations(),
            flags: model.flags().to_vec(),
            edge_rewards: model.edge_rewards(g).collect(),
            alpha: table.alpha(),
            hotspots: table.hotspots().to_vec(),
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Validates against `g` and rebuilds the model and hotspot table.
    pub fn restore(&self, g: &Graph) -> Result<(RewardModel, HotspotTable)> {
        let mismatch = |m: String| Err(Error::ModelMismatch(m));
        if self.version != VERSION {
            return mismatch(format!("unsupported model version {}", self.version));
        }
        if self.n != g.vertex_count() || self.flags.len() != self.n {
            return mismatch(format!(
                "model is for {} vertices ({} flags), graph has {}",
                self.n,
                self.flags.len(),
                g.vertex_count()
            ));
        }
        if self.flags.iter().sum::<u64>() != self.iterations {
            return mismatch("flag total differs from iteration count".into());
        }
        let mut rewards = vec![0.0; g.slot_count()];
        for &(a, b, r) in &self.edge_rewards {
            let slot = ((a as usize) < self.n)
                .then(|| g.edge_slot(a, b))
                .flatten()
                .ok_or_else(|| Error::ModelMismatch(format!("reward on non-edge ({a}, {b})")))?;
            if !(r.is_finite() && r >= 0.0) {
                return mismatch(format!("invalid reward {r} on ({a}, {b})"));
            }
            rewards[slot] = r;
        }
        let model = RewardModel::from_parts(self.flags.clone(), rewards, self.iterations);
        let expected = &hotspot_ordering(&model)[..self.alpha.min(self.n)];
        if self.hotspots.len() != self.alpha || self.hotspots != expected {
            return mismatch("hotspot list is not the top-alpha flag ordering".into());
        }
        let table = HotspotTable::build(g, &model, AlphaChoice::Fixed(self.alpha))?;
        Ok((model, table))
    }
}
