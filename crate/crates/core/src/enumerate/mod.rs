//! Enumeration of ρ-approximate cuts.
//!
//! [`approximation_set`] repeats the ρ-variant of recursive contraction and
//! unions what the runs find; [`brute_force_approximation_set`] walks the whole
//! cut space and serves as the reference for small graphs.

pub mod brute;
pub mod recursive;
mod stoer_wagner;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use brute::{all_cuts, brute_force_approximation_set, brute_force_approximation_set_with_limit};
pub use recursive::{contract, recursive_contract, Sampling};
pub use stoer_wagner::stoer_wagner_min_cut;

pub use crate::cut::WeightedCut;
use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

const RELATIVE_TOLERANCE: f64 = 1e-9;
const ABSOLUTE_TOLERANCE: f64 = 1e-12;

/// Largest weight admitted into a ρ-approximation set of a graph with
/// minimum cut `lambda`.
pub fn threshold(rho: f64, lambda: f64) -> f64 {
    rho * lambda * (1.0 + RELATIVE_TOLERANCE) + ABSOLUTE_TOLERANCE
}

pub fn within_threshold(weight: f64, rho: f64, lambda: f64) -> bool {
    weight <= threshold(rho, lambda)
}

pub(crate) fn check_rho(rho: f64) -> Result<()> {
    if rho.is_finite() && rho >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("rho must be a finite value >= 1, got {rho}")))
    }
}

/// All cuts of weight at most `rho * lambda`, sorted by canonical bit string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproximationSet {
    pub rho: f64,
    pub lambda: f64,
    pub members: Vec<WeightedCut>,
}

impl ApproximationSet {
    pub(crate) fn from_sorted(rho: f64, lambda: f64, members: Vec<WeightedCut>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0].cut < w[1].cut));
        Self { rho, lambda, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn cuts(&self) -> impl Iterator<Item = &Cut> {
        self.members.iter().map(|wc| &wc.cut)
    }

    pub fn contains(&self, cut: &Cut) -> bool {
        self.members.binary_search_by(|wc| wc.cut.cmp(cut)).is_ok()
    }

    /// The subset admitted at a smaller `rho`, keeping the same `lambda`.
    pub fn restrict(&self, rho: f64) -> ApproximationSet {
        let members = self
            .members
            .iter()
            .filter(|wc| within_threshold(wc.weight, rho, self.lambda))
            .cloned()
            .collect();
        ApproximationSet::from_sorted(rho, self.lambda, members)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub rho: f64,
    /// Fixed repetition count; `None` means `⌈log_factor · ln² n⌉`.
    pub repetitions: Option<usize>,
    pub log_factor: f64,
    pub master_seed: u64,
    pub weight_proportional_sampling: bool,
    /// Walk the whole cut space instead of sampling.
    pub exhaustive: bool,
    pub exhaustive_limit: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        Self {
            rho: 1.0,
            repetitions: None,
            log_factor: 10.0,
            master_seed: 0,
            weight_proportional_sampling: true,
            exhaustive: false,
            exhaustive_limit: brute::DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }
}

impl EnumerationConfig {
    pub fn with_rho(&self, rho: f64) -> Self {
        Self { rho, ..self.clone() }
    }

    pub fn with_seed(&self, master_seed: u64) -> Self {
        Self {
            master_seed,
            ..self.clone()
        }
    }

    pub fn repetitions_for(&self, n: usize) -> usize {
        match self.repetitions {
            Some(r) => r,
            None => {
                let ln = (n as f64).ln();
                ((self.log_factor * ln * ln).ceil() as usize).max(1)
            }
        }
    }

    pub fn sampling(&self) -> Sampling {
        if self.weight_proportional_sampling {
            Sampling::WeightProportional
        } else {
            Sampling::Uniform
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_rho(self.rho)?;
        if self.repetitions == Some(0) {
            return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
        }
        if !(self.log_factor.is_finite() && self.log_factor > 0.0) {
            return Err(Error::InvalidArgument("log factor must be positive".into()));
        }
        Ok(())
    }
}

/// Monte Carlo ρ-approximation set (or the exhaustive one when
/// `cfg.exhaustive` is set).
///
/// λ comes from Stoer–Wagner, so the threshold is exact even when the runs
/// miss the minimum cut; the Stoer–Wagner cut is always a member. Run `i`
/// uses seed `mix(master_seed, i)` and the union is order-independent.
pub fn approximation_set(g: &Graph, cfg: &EnumerationConfig) -> Result<ApproximationSet> {
    cfg.validate()?;
    if cfg.exhaustive {
        return brute_force_approximation_set_with_limit(g, cfg.rho, cfg.exhaustive_limit);
    }
    let min_cut = stoer_wagner_min_cut(g);
    let bound = threshold(cfg.rho, min_cut.weight);
    let sampling = cfg.sampling();
    let reps = cfg.repetitions_for(g.n());

    let runs: Vec<Vec<WeightedCut>> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let mut rng = seed::rng(seed::mix(cfg.master_seed, i as u64));
            recursive::recursive_contract_bounded(g, cfg.rho, bound, |w| w <= bound, sampling, &mut rng)
        })
        .collect();

    let mut union: BTreeMap<Cut, f64> = BTreeMap::new();
    union.insert(min_cut.cut.clone(), min_cut.weight);
    for wc in runs.into_iter().flatten() {
        union.entry(wc.cut).or_insert(wc.weight);
    }
    let lambda = union.values().copied().fold(min_cut.weight, f64::min);
    let members = union
        .into_iter()
        .filter(|(_, w)| within_threshold(*w, cfg.rho, lambda))
        .map(|(cut, weight)| WeightedCut { cut, weight })
        .collect();
    Ok(ApproximationSet::from_sorted(cfg.rho, lambda, members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::k3;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn k3_matches_brute_force() {
        let cfg = EnumerationConfig::default().with_rho(1.5);
        let mc = approximation_set(&k3(), &cfg).unwrap();
        assert_eq!(mc, brute_force_approximation_set(&k3(), 1.5).unwrap());
    }

    #[test]
    fn default_repetitions() {
        let cfg = EnumerationConfig::default();
        assert_eq!(cfg.repetitions_for(8), 44);
        assert_eq!(cfg.repetitions_for(15), 74);
        assert_eq!(cfg.repetitions_for(1), 1);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let g = k3();
        assert!(approximation_set(&g, &EnumerationConfig::default().with_rho(0.9)).is_err());
        let cfg = EnumerationConfig {
            repetitions: Some(0),
            ..Default::default()
        };
        assert!(approximation_set(&g, &cfg).is_err());
    }

    #[test]
    fn deterministic_for_fixed_config() {
        let mut gen = seed::rng(11);
        let g = Graph::from_fn(12, |_, _| gen.gen_range(1..=255) as f64).unwrap();
        let cfg = EnumerationConfig {
            rho: 1.5,
            master_seed: 99,
            ..Default::default()
        };
        assert_eq!(approximation_set(&g, &cfg).unwrap(), approximation_set(&g, &cfg).unwrap());
    }

    #[test]
    fn zero_minimum_cut() {
        // vertex 3 is isolated
        let g = Graph::from_edges(4, [(0, 1, 2.0), (0, 2, 2.0), (1, 2, 2.0)]).unwrap();
        let set = approximation_set(&g, &EnumerationConfig::default().with_rho(3.0)).unwrap();
        assert_eq!(set.lambda, 0.0);
        assert_eq!(set.members.iter().map(|wc| wc.cut.to_bits()).collect::<Vec<_>>(), ["0001"]);
    }

    #[test]
    fn uniform_sampling_still_finds_small_sets() {
        let cfg = EnumerationConfig {
            rho: 1.0,
            weight_proportional_sampling: false,
            ..Default::default()
        };
        let g = Graph::complete(8).unwrap();
        assert_eq!(approximation_set(&g, &cfg).unwrap(), brute_force_approximation_set(&g, 1.0).unwrap());
    }

    #[test]
    fn restrict_matches_direct_enumeration() {
        let mut gen = seed::rng(3);
        let g = Graph::from_fn(9, |_, _| gen.gen_range(1..=255) as f64).unwrap();
        let wide = brute_force_approximation_set(&g, 2.0).unwrap();
        for rho in [1.0, 1.2, 1.5, 2.0] {
            let narrow = brute_force_approximation_set(&g, rho).unwrap();
            assert_eq!(wide.restrict(rho).members, narrow.members);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn monte_carlo_is_sound_and_bounded(
            n in 3usize..10,
            rho in 1.0f64..2.5,
            ws in proptest::collection::vec(0u32..256, 45),
            master_seed in any::<u64>(),
        ) {
            let mut it = ws.into_iter();
            let g = Graph::from_fn(n, |_, _| it.next().unwrap() as f64).unwrap();
            let cfg = EnumerationConfig { rho, master_seed, repetitions: Some(8), ..Default::default() };
            let mc = approximation_set(&g, &cfg).unwrap();
            let exact = brute_force_approximation_set(&g, rho).unwrap();
            prop_assert_eq!(mc.lambda, exact.lambda);
            prop_assert!(!mc.is_empty());
            for wc in &mc.members {
                prop_assert!(exact.contains(&wc.cut));
                prop_assert_eq!(wc.weight, crate::graph::cut_weight(&g, &wc.cut).unwrap());
                prop_assert!(within_threshold(wc.weight, rho, mc.lambda));
            }
            let a1 = approximation_set(&g, &cfg.with_rho(1.0)).unwrap();
            prop_assert!(a1.len() <= n * (n - 1) / 2);
        }

        #[test]
        fn brute_force_sets_are_monotone_in_rho(
            n in 3usize..9,
            r1 in 1.0f64..3.0,
            dr in 0.0f64..2.0,
            ws in proptest::collection::vec(0u32..256, 36),
        ) {
            let mut it = ws.into_iter();
            let g = Graph::from_fn(n, |_, _| it.next().unwrap() as f64).unwrap();
            let small = brute_force_approximation_set(&g, r1).unwrap();
            let large = brute_force_approximation_set(&g, r1 + dr).unwrap();
            for c in small.cuts() {
                prop_assert!(large.contains(c));
            }
        }
    }
}
