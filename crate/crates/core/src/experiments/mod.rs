//! Experiment drivers and their reports.
//!
//! Every driver fans per-pair work out over rayon and reduces the results in
//! pair order, so reports are identical for any thread count.

mod center;
mod curves;
mod report;
mod stretch;

pub use center::{center_strategic_check, psi_experiment, PsiCurve, PsiPoint};
pub use curves::{flag_curve_experiment, jaccard, stability_experiment, FlagCurve, StabilityReport};
pub use report::{ensure_writable, write_csv, write_json};
pub use stretch::{degree_experiment, stretch_experiment, DegreeReport, StretchReport, StretchRow};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{gen_barabasi_albert, gen_erdos_renyi, largest_component, Graph, VertexId};
use crate::learning::{
    learn, pair_schedule, AlphaChoice, HotspotTable, LearnConfig, PairPlan, RewardModel,
};
use crate::seed;

/// Default cap on evaluated pairs per graph.
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    #[serde(rename = "er")]
    ErdosRenyi { p: f64 },
    #[serde(rename = "ba")]
    BarabasiAlbert { m: usize },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::ErdosRenyi { .. } => "er",
            Family::BarabasiAlbert { .. } => "ba",
        }
    }

    pub fn param(&self) -> f64 {
        match *self {
            Family::ErdosRenyi { p } => p,
            Family::BarabasiAlbert { m } => m as f64,
        }
    }

    /// Parses `er` or `ba` with the given parameter (`p` or `m`).
    pub fn parse(tag: &str, param: f64) -> Result<Self> {
        match tag {
            "er" => Ok(Family::ErdosRenyi { p: param }),
            "ba" if param >= 1.0 && param.fract() == 0.0 => Ok(Family::BarabasiAlbert {
                m: param as usize,
            }),
            "ba" => Err(Error::InvalidParameter(format!("BA needs integer m >= 1, got {param}"))),
            other => Err(Error::InvalidParameter(format!("unknown graph family `{other}`"))),
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph> {
        match *self {
            Family::ErdosRenyi { p } => gen_erdos_renyi(n, p, seed),
            Family::BarabasiAlbert { m } => gen_barabasi_albert(n, m, seed),
        }
    }
}

/// A generated graph, reduced to its largest component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GraphSpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GraphSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GraphSpec { family, n, seed }
    }

    /// Generates the graph and keeps its largest component. Graphs whose
    /// component has fewer than two vertices are rejected.
    pub fn build(&self) -> Result<Graph> {
        let (g, _) = largest_component(&self.family.generate(self.n, self.seed)?);
        if g.vertex_count() < 2 {
            return Err(Error::DisconnectedGraph);
        }
        Ok(g)
    }
}

/// Learning-phase settings shared by the drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LearnSettings {
    pub pairs: PairPlan,
    pub alpha: AlphaChoice,
    pub config: LearnConfig,
}

impl Serialize for LearnSettings {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LearnSettings", 4)?;
        st.serialize_field("pairs", &format!("{:?}", self.pairs))?;
        st.serialize_field(
            "alpha",
            &match self.alpha {
                AlphaChoice::Auto => "auto".to_string(),
                AlphaChoice::Fixed(a) => a.to_string(),
            },
        )?;
        st.serialize_field("walk_cap_factor", &self.config.limits.cap_factor)?;
        st.serialize_field("walk_retries", &self.config.limits.max_retries)?;
        st.end()
    }
}

/// Learned state for one graph.
#[derive(Debug, Clone)]
pub struct Learned {
    pub model: RewardModel,
    pub table: HotspotTable,
}

/// Runs the learning phase on `g` with streams derived from `seed`.
pub fn learn_graph(g: &Graph, settings: &LearnSettings, seed: u64) -> Result<Learned> {
    let pairs = pair_schedule(
        g.vertex_count(),
        settings.pairs,
        seed::derive(seed, "learn-pairs", 0),
    );
    let model = learn(g, &pairs, seed::derive(seed, "learn", 0), &settings.config)?;
    let table = HotspotTable::build(g, &model, settings.alpha)?;
    Ok(Learned { model, table })
}

/// Pairs to evaluate: every unordered pair if there are at most `budget`,
/// otherwise `budget` uniformly sampled distinct-endpoint pairs.
pub fn evaluation_pairs(n: usize, budget: usize, seed: u64) -> Vec<(VertexId, VertexId)> {
    let total = n * n.saturating_sub(1) / 2;
    let plan = if total <= budget {
        PairPlan::All
    } else {
        PairPlan::Sample(budget)
    };
    pair_schedule(n, plan, seed::derive(seed, "eval-pairs", 0))
}

/// Mean of a sequence, `NaN` when empty.
pub(crate) fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, count) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    if count == 0 {
        f64::NAN
    } else {
        sum / count as f64
    }
}
