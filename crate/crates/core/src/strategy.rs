//! The four ways of predicting a good cut for a third instance from two
//! earlier ones.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cut::Cut;
use crate::enumerate::{stoer_wagner_min_cut, EnumerationConfig};
use crate::error::{Error, Result};
use crate::graph::{cut_weight, Graph};
use crate::seed;
use crate::similarity::RhoSweep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Minimum cut of the edge-wise sum of the two inputs.
    Average,
    /// Random cut from the first non-empty intersection.
    FirstIntersection,
    /// Random cut from the intersection at ρ*.
    BestSimilarity,
    /// Minimum cut of the third graph itself.
    Optimum,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [
        Strategy::Average,
        Strategy::FirstIntersection,
        Strategy::BestSimilarity,
        Strategy::Optimum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Average => "average",
            Strategy::FirstIntersection => "first-intersection",
            Strategy::BestSimilarity => "best-similarity",
            Strategy::Optimum => "optimum",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown strategy {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyOutcome {
    pub strategy: Strategy,
    pub cut: Option<Cut>,
    pub weight_on_g3: Option<f64>,
    pub rho: Option<f64>,
    pub intersection_size: Option<usize>,
    pub u_sim: Option<f64>,
    /// Seed of the random pick from an intersection.
    pub pick_seed: Option<u64>,
    pub failure: Option<String>,
}

impl StrategyOutcome {
    fn chosen(strategy: Strategy, cut: Cut, g3: &Graph) -> Result<Self> {
        let weight = cut_weight(g3, &cut)?;
        Ok(Self {
            strategy,
            cut: Some(cut),
            weight_on_g3: Some(weight),
            rho: None,
            intersection_size: None,
            u_sim: None,
            pick_seed: None,
            failure: None,
        })
    }

    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }

    /// Turns a recorded failure into [`Error::StrategyFailed`].
    pub fn into_result(self) -> Result<Self> {
        match &self.failure {
            Some(reason) => Err(Error::StrategyFailed {
                strategy: self.strategy.to_string(),
                reason: reason.clone(),
            }),
            None => Ok(self),
        }
    }
}

fn check_sizes(graphs: &[&Graph]) -> Result<()> {
    let n = graphs[0].n();
    if graphs.iter().any(|g| g.n() != n) {
        return Err(Error::InvalidArgument("all graphs must have the same vertex count".into()));
    }
    Ok(())
}

fn pick(cuts: &[Cut], pick_seed: u64) -> Cut {
    let mut rng = seed::rng(pick_seed);
    cuts[rng.gen_range(0..cuts.len())].clone()
}

pub fn strategy_average(g1: &Graph, g2: &Graph, g3: &Graph) -> Result<StrategyOutcome> {
    check_sizes(&[g1, g2, g3])?;
    let summed = g1.sum(g2)?;
    StrategyOutcome::chosen(Strategy::Average, stoer_wagner_min_cut(&summed).cut, g3)
}

pub fn strategy_optimum(g3: &Graph) -> StrategyOutcome {
    StrategyOutcome::chosen(Strategy::Optimum, stoer_wagner_min_cut(g3).cut, g3)
        .expect("cut computed on the same graph")
}

/// FirstIntersection on an already computed sweep; failure is recorded in the
/// outcome rather than returned as an error.
pub fn first_intersection_from_sweep(sweep: &RhoSweep, g3: &Graph, pick_seed: u64) -> Result<StrategyOutcome> {
    let Some(row) = sweep.first_nonempty() else {
        return Ok(failed_outcome(
            Strategy::FirstIntersection,
            pick_seed,
            format!(
                "no common cut up to rho = {}",
                sweep.report().rho_max
            ),
        ));
    };
    let candidates = sweep.intersection_at(row.rho);
    let mut out = StrategyOutcome::chosen(Strategy::FirstIntersection, pick(&candidates, pick_seed), g3)?;
    out.rho = Some(row.rho);
    out.intersection_size = Some(candidates.len());
    out.u_sim = Some(row.u_sim);
    out.pick_seed = Some(pick_seed);
    Ok(out)
}

/// BestSimilarity on an already computed sweep.
pub fn best_similarity_from_sweep(sweep: &RhoSweep, g3: &Graph, pick_seed: u64) -> Result<StrategyOutcome> {
    let report = sweep.report();
    if report.star_intersection.is_empty() {
        let mut out = failed_outcome(
            Strategy::BestSimilarity,
            pick_seed,
            format!("empty intersection at rho* = {}", report.rho_star),
        );
        out.rho = Some(report.rho_star);
        out.u_sim = Some(report.max_u_sim);
        out.intersection_size = Some(0);
        return Ok(out);
    }
    let mut out = StrategyOutcome::chosen(
        Strategy::BestSimilarity,
        pick(&report.star_intersection, pick_seed),
        g3,
    )?;
    out.rho = Some(report.rho_star);
    out.intersection_size = Some(report.star_intersection.len());
    out.u_sim = Some(report.max_u_sim);
    out.pick_seed = Some(pick_seed);
    Ok(out)
}

fn failed_outcome(strategy: Strategy, pick_seed: u64, reason: String) -> StrategyOutcome {
    StrategyOutcome {
        strategy,
        cut: None,
        weight_on_g3: None,
        rho: None,
        intersection_size: None,
        u_sim: None,
        pick_seed: Some(pick_seed),
        failure: Some(reason),
    }
}

/// Smallest ρ with a non-empty intersection; a uniformly random common cut is
/// evaluated on `g3`. Fails if no common cut exists up to `rho_max`.
pub fn strategy_first_intersection(
    g1: &Graph,
    g2: &Graph,
    g3: &Graph,
    cfg: &EnumerationConfig,
    rho_max: f64,
    pick_seed: u64,
) -> Result<StrategyOutcome> {
    check_sizes(&[g1, g2, g3])?;
    let sweep = RhoSweep::compute(g1, g2, cfg, rho_max)?;
    first_intersection_from_sweep(&sweep, g3, pick_seed)?.into_result()
}

/// ρ* of the similarity sweep; a uniformly random cut of the ρ* intersection
/// is evaluated on `g3`. Fails if that intersection is empty.
pub fn strategy_best_similarity(
    g1: &Graph,
    g2: &Graph,
    g3: &Graph,
    cfg: &EnumerationConfig,
    rho_max: f64,
    pick_seed: u64,
) -> Result<StrategyOutcome> {
    check_sizes(&[g1, g2, g3])?;
    let sweep = RhoSweep::compute(g1, g2, cfg, rho_max)?;
    best_similarity_from_sweep(&sweep, g3, pick_seed)?.into_result()
}
