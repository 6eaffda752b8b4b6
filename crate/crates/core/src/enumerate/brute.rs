use crate::cut::{Cut, VertexSet};
use crate::error::{Error, Result};
use crate::graph::{cut_weight, Graph};

use super::{within_threshold, ApproximationSet, WeightedCut};

/// Largest graph the exhaustive enumerator accepts by default.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 20;

/// Hard ceiling for exhaustive enumeration, whatever limit is configured.
const EXHAUSTIVE_CEILING: usize = 40;

/// All `2^(n-1) - 1` canonical cuts of `n` vertices, in ascending order.
pub fn all_cuts(n: usize) -> impl Iterator<Item = Cut> {
    assert!((2..=EXHAUSTIVE_CEILING).contains(&n), "exhaustive cut space too large");
    (1u64..(1u64 << (n - 1))).map(move |mask| {
        let mut side = VertexSet::empty(n);
        for i in 1..n {
            if mask & (1 << (n - 1 - i)) != 0 {
                side.insert(i);
            }
        }
        Cut::canonicalize(side).expect("mask is neither empty nor full")
    })
}

pub fn brute_force_approximation_set(g: &Graph, rho: f64) -> Result<ApproximationSet> {
    brute_force_approximation_set_with_limit(g, rho, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Exhaustive ρ-approximation set; refuses graphs above `limit` vertices.
pub fn brute_force_approximation_set_with_limit(
    g: &Graph,
    rho: f64,
    limit: usize,
) -> Result<ApproximationSet> {
    super::check_rho(rho)?;
    let n = g.n();
    if n > limit.min(EXHAUSTIVE_CEILING) {
        return Err(Error::ResourceLimit(format!(
            "exhaustive enumeration refused for n = {n} (limit {})",
            limit.min(EXHAUSTIVE_CEILING)
        )));
    }
    let all: Vec<WeightedCut> = all_cuts(n)
        .map(|cut| {
            let weight = cut_weight(g, &cut).expect("cut built for this graph");
            WeightedCut { cut, weight }
        })
        .collect();
    let lambda = all.iter().map(|wc| wc.weight).fold(f64::INFINITY, f64::min);
    let members = all
        .into_iter()
        .filter(|wc| within_threshold(wc.weight, rho, lambda))
        .collect();
    Ok(ApproximationSet::from_sorted(rho, lambda, members))
}
