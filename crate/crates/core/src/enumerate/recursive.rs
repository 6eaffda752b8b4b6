use std::collections::HashSet;

use rand::Rng;

use crate::contraction::ContractionState;
use crate::cut::{Cut, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{cut_weight, Graph};

use super::{check_rho, WeightedCut};

/// How `contract` picks the next edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    /// Probability proportional to the current merged weight.
    WeightProportional,
    /// Uniform over pairs of positive weight.
    Uniform,
}

/// Contracts random edges until `target` super-vertices remain.
///
/// Returns the number of contractions that had to pick an arbitrary pair
/// because every remaining weight was zero.
pub fn contract<R: Rng + ?Sized>(
    state: &mut ContractionState,
    target: usize,
    sampling: Sampling,
    rng: &mut R,
) -> Result<usize> {
    if target < 2 || target > state.count() {
        return Err(Error::InvalidArgument(format!(
            "contraction target {target} outside [2, {}]",
            state.count()
        )));
    }
    let mut degenerate = 0;
    while state.count() > target {
        let (u, v) = match pick_edge(state, sampling, rng) {
            Some(pair) => pair,
            None => {
                degenerate += 1;
                let t = state.count();
                let u = rng.gen_range(0..t);
                let mut v = rng.gen_range(0..t - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            }
        };
        state.contract_edge(u, v)?;
    }
    Ok(degenerate)
}

fn pick_edge<R: Rng + ?Sized>(
    state: &ContractionState,
    sampling: Sampling,
    rng: &mut R,
) -> Option<(usize, usize)> {
    let t = state.count();
    let pairs = || (0..t).flat_map(move |i| ((i + 1)..t).map(move |j| (i, j)));
    match sampling {
        Sampling::WeightProportional => {
            let total = state.total_weight();
            if total <= 0.0 {
                return None;
            }
            let target = rng.gen::<f64>() * total;
            let mut acc = 0.0;
            let mut last_positive = None;
            for (i, j) in pairs() {
                let w = state.weight(i, j);
                if w > 0.0 {
                    acc += w;
                    last_positive = Some((i, j));
                    if target < acc {
                        return last_positive;
                    }
                }
            }
            // rounding left `target` just above the running sum
            last_positive
        }
        Sampling::Uniform => {
            let positive = pairs().filter(|&(i, j)| state.weight(i, j) > 0.0).count();
            if positive == 0 {
                return None;
            }
            let pick = rng.gen_range(0..positive);
            pairs().filter(|&(i, j)| state.weight(i, j) > 0.0).nth(pick)
        }
    }
}

/// Super-vertex count at or below which the recursion evaluates every cut.
pub fn base_size(rho: f64) -> usize {
    (2 * rho.ceil() as usize).max(6)
}

/// Size after one reduction step, `⌈t / 2^(1/(2ρ)) + 1⌉`, forced to make
/// progress when the formula would not shrink the graph.
pub fn reduced_size(count: usize, rho: f64) -> usize {
    let factor = 2f64.powf(1.0 / (2.0 * rho));
    let target = (count as f64 / factor + 1.0).ceil() as usize;
    target.clamp(2, count - 1)
}

/// One run of the recursion tree. Every cut evaluated at a leaf is returned
/// with its weight recomputed on `g`, sorted by cut and deduplicated.
pub fn recursive_contract<R: Rng + ?Sized>(
    g: &Graph,
    rho: f64,
    sampling: Sampling,
    rng: &mut R,
) -> Result<Vec<WeightedCut>> {
    check_rho(rho)?;
    let sides = leaf_cuts(g, rho, None, sampling, rng);
    let mut out: Vec<WeightedCut> = sides
        .into_iter()
        .map(|cut| {
            let weight = cut_weight(g, &cut).expect("leaf cut built for this graph");
            WeightedCut { cut, weight }
        })
        .collect();
    out.sort_by(|a, b| a.cut.cmp(&b.cut));
    Ok(out)
}

/// Like [`recursive_contract`] but drops, at the leaves, cuts whose contracted
/// weight is clearly above `bound`, and keeps only true weights `<= keep`.
pub(crate) fn recursive_contract_bounded<R: Rng + ?Sized>(
    g: &Graph,
    rho: f64,
    bound: f64,
    keep: impl Fn(f64) -> bool,
    sampling: Sampling,
    rng: &mut R,
) -> Vec<WeightedCut> {
    let sides = leaf_cuts(g, rho, Some(bound), sampling, rng);
    sides
        .into_iter()
        .filter_map(|cut| {
            let weight = cut_weight(g, &cut).expect("leaf cut built for this graph");
            keep(weight).then_some(WeightedCut { cut, weight })
        })
        .collect()
}

fn leaf_cuts<R: Rng + ?Sized>(
    g: &Graph,
    rho: f64,
    bound: Option<f64>,
    sampling: Sampling,
    rng: &mut R,
) -> HashSet<Cut> {
    let mut found = HashSet::new();
    let walker = Walker {
        rho,
        base: base_size(rho),
        // contracted sums differ from direct sums only by rounding
        bound: bound.map(|b| b * (1.0 + 1e-6) + 1e-9),
        sampling,
    };
    walker.recurse(ContractionState::new(g), rng, &mut found);
    found
}

struct Walker {
    rho: f64,
    base: usize,
    bound: Option<f64>,
    sampling: Sampling,
}

impl Walker {
    fn recurse<R: Rng + ?Sized>(&self, state: ContractionState, rng: &mut R, found: &mut HashSet<Cut>) {
        if state.count() <= self.base {
            self.evaluate_leaf(&state, found);
            return;
        }
        let target = reduced_size(state.count(), self.rho);
        let mut first = state.clone();
        contract(&mut first, target, self.sampling, rng).expect("target within range");
        self.recurse(first, rng, found);
        let mut second = state;
        contract(&mut second, target, self.sampling, rng).expect("target within range");
        self.recurse(second, rng, found);
    }

    fn evaluate_leaf(&self, state: &ContractionState, found: &mut HashSet<Cut>) {
        let t = state.count();
        let n = state.n();
        // super-vertex 0 stays on the outer side; canonicalize fixes orientation
        for mask in 1u64..(1u64 << (t - 1)) {
            let inside = |i: usize| i > 0 && mask & (1 << (i - 1)) != 0;
            if let Some(bound) = self.bound {
                let mut w = 0.0;
                for i in 0..t {
                    for j in (i + 1)..t {
                        if inside(i) != inside(j) {
                            w += state.weight(i, j);
                        }
                    }
                }
                if w > bound {
                    continue;
                }
            }
            let mut side = VertexSet::empty(n);
            for i in 1..t {
                if inside(i) {
                    side.union_with(state.origin(i));
                }
            }
            found.insert(Cut::canonicalize(side).expect("proper subset of super-vertices"));
        }
    }
}
