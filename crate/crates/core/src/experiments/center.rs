use rayon::prelude::*;
use serde::Serialize;

use super::{evaluation_pairs, LearnSettings};
use crate::error::{Error, Result};
use crate::graph::{closeness_ranking, CentralityRanking, Graph, Path};
use crate::learning::{pair_schedule, HotspotTable, PairPlan, RewardModel};
use crate::navigation::Navigator;
use crate::seed;

/// Whether the closeness values along `path` rise to a single peak (or
/// plateau) and then fall: `c_1 ≤ … ≤ c_j ≥ … ≥ c_k` for some `j`.
pub fn center_strategic_check(path: &Path, ranking: &CentralityRanking) -> bool {
    let mut falling = false;
    for w in path.vertices().windows(2) {
        let (a, b) = (ranking.closeness(w[0]), ranking.closeness(w[1]));
        if b < a {
            falling = true;
        } else if b > a && falling {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct PsiPoint {
    /// Learning iterations completed.
    pub k: u64,
    pub psi: f64,
    /// Navigations evaluated (failures excluded).
    pub pairs: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PsiCurve {
    pub checkpoints: Vec<PsiPoint>,
    /// α selected at each checkpoint.
    pub alphas: Vec<usize>,
}

impl PsiCurve {
    /// Whether ψ never decreases across checkpoints. Reported, not enforced.
    pub fn is_monotone(&self) -> bool {
        self.checkpoints.windows(2).all(|w| w[1].psi >= w[0].psi)
    }
}

/// Fraction of center-strategic PCA paths as learning proceeds.
///
/// Learning runs once over uniformly sampled pairs; at each checkpoint `k`
/// the model after `k` iterations is frozen, the hotspot table rebuilt, and
/// every evaluation pair navigated.
pub fn psi_experiment(
    g: &Graph,
    checkpoints: &[u64],
    pair_budget: usize,
    settings: &LearnSettings,
    seed: u64,
) -> Result<PsiCurve> {
    let first = *checkpoints
        .first()
        .ok_or_else(|| Error::InvalidParameter("no checkpoints".into()))?;
    if first < 100 {
        return Err(Error::InvalidParameter(format!(
            "first checkpoint must be at least 100, got {first}"
        )));
    }
    if checkpoints.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "checkpoints must be strictly ascending".into(),
        ));
    }
    let k_max = *checkpoints.last().unwrap() as usize;
    let ranking = closeness_ranking(g)?;
    let schedule = pair_schedule(
        g.vertex_count(),
        PairPlan::Sample(k_max),
        seed::derive(seed, "learn-pairs", 0),
    );
    let eval = evaluation_pairs(g.vertex_count(), pair_budget, seed);
    let learn_seed = seed::derive(seed, "learn", 0);

    let mut model = RewardModel::new(g);
    let mut points = Vec::with_capacity(checkpoints.len());
    let mut alphas = Vec::with_capacity(checkpoints.len());
    for &k in checkpoints {
        let done = model.iterations() as usize;
        model.extend(g, &schedule[done..k as usize], learn_seed, &settings.config)?;
        let table = HotspotTable::build(g, &model, settings.alpha)?;
        let nav = Navigator::new(g, &model, &table);
        let outcomes: Vec<Option<bool>> = eval
            .par_iter()
            .map(|&(s, t)| {
                nav.navigate(s, t)
                    .ok()
                    .map(|o| center_strategic_check(&o.path, &ranking))
            })
            .collect();
        let ok: Vec<bool> = outcomes.iter().flatten().copied().collect();
        let strategic = ok.iter().filter(|&&b| b).count();
        points.push(PsiPoint {
            k,
            psi: if ok.is_empty() {
                0.0
            } else {
                strategic as f64 / ok.len() as f64
            },
            pairs: ok.len(),
            failures: outcomes.len() - ok.len(),
        });
        alphas.push(table.alpha());
        log::info!("psi k={k}: {:.3} (alpha {})", points.last().unwrap().psi, table.alpha());
    }
    Ok(PsiCurve {
        checkpoints: points,
        alphas,
    })
}
