use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cut::Cut;
use crate::enumerate::{approximation_set, ApproximationSet, EnumerationConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::combinatorics::{build_tables, CombinatoricsTables, EsVariant, Expectation};

/// Default upper end of the ρ sweep.
pub const DEFAULT_RHO_MAX: f64 = 3.0;

/// Cuts present in both sets, by a linear merge of the sorted member lists.
pub fn intersect_sets(a: &ApproximationSet, b: &ApproximationSet) -> Result<Vec<Cut>> {
    let n_of = |s: &ApproximationSet| s.members.first().map(|wc| wc.cut.n());
    if let (Some(na), Some(nb)) = (n_of(a), n_of(b)) {
        if na != nb {
            return Err(Error::InvalidArgument(format!(
                "approximation sets over different vertex counts ({na} vs {nb})"
            )));
        }
    }
    Ok(merge_common(a.cuts(), b.cuts()))
}

fn merge_common<'a>(
    a: impl Iterator<Item = &'a Cut>,
    b: impl Iterator<Item = &'a Cut>,
) -> Vec<Cut> {
    let mut out = Vec::new();
    let mut a = a.peekable();
    let mut b = b.peekable();
    while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
        match x.cmp(y) {
            Ordering::Less => {
                a.next();
            }
            Ordering::Greater => {
                b.next();
            }
            Ordering::Equal => {
                out.push((*x).clone());
                a.next();
                b.next();
            }
        }
    }
    out
}

/// `intersection_size / es`.
pub fn unexpected_similarity(intersection_size: usize, es: &BigRational) -> Result<f64> {
    if es.is_zero() {
        return Err(Error::UndefinedSimilarity);
    }
    let ratio = BigRational::from_integer(BigInt::from(intersection_size)) / es;
    Ok(ratio.to_f64().unwrap_or(f64::INFINITY))
}

/// One candidate ρ of the sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub rho: f64,
    pub k: usize,
    pub l: usize,
    pub intersection: usize,
    pub es: BigRational,
    pub u_sim: f64,
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityReport {
    pub rho_max: f64,
    pub rows: Vec<SweepRow>,
    pub rho_star: f64,
    pub max_u_sim: f64,
    pub star_intersection: Vec<Cut>,
}

/// CSV row layout: `rho,k,l,intersection,es_num,es_den,u_sim,fallback`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub rho: f64,
    pub k: usize,
    pub l: usize,
    pub intersection: usize,
    pub es_num: String,
    pub es_den: String,
    pub u_sim: f64,
    pub fallback: bool,
}

impl From<&SweepRow> for SweepRecord {
    fn from(row: &SweepRow) -> Self {
        Self {
            rho: row.rho,
            k: row.k,
            l: row.l,
            intersection: row.intersection,
            es_num: row.es.numer().to_string(),
            es_den: row.es.denom().to_string(),
            u_sim: row.u_sim,
            fallback: row.fallback,
        }
    }
}

impl TryFrom<SweepRecord> for SweepRow {
    type Error = Error;

    fn try_from(rec: SweepRecord) -> Result<Self> {
        let int = |s: &str| -> Result<BigInt> {
            s.parse()
                .map_err(|_| Error::InvalidArgument(format!("invalid integer {s:?}")))
        };
        let den = int(&rec.es_den)?;
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        Ok(Self {
            rho: rec.rho,
            k: rec.k,
            l: rec.l,
            intersection: rec.intersection,
            es: BigRational::new(int(&rec.es_num)?, den),
            u_sim: rec.u_sim,
            fallback: rec.fallback,
        })
    }
}

/// JSON form of a [`SimilarityReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilarityDocument {
    pub rho_max: f64,
    pub rho_star: f64,
    pub max_u_sim: f64,
    pub star_intersection: Vec<Cut>,
    pub rows: Vec<SweepRecord>,
}

impl From<&SimilarityReport> for SimilarityDocument {
    fn from(r: &SimilarityReport) -> Self {
        Self {
            rho_max: r.rho_max,
            rho_star: r.rho_star,
            max_u_sim: r.max_u_sim,
            star_intersection: r.star_intersection.clone(),
            rows: r.rows.iter().map(SweepRecord::from).collect(),
        }
    }
}

/// The two approximation sets at `rho_max` together with the sweep over the
/// breakpoint grid. Sets at smaller ρ are weight-filtered subsets.
#[derive(Clone, Debug)]
pub struct RhoSweep {
    first: ApproximationSet,
    second: ApproximationSet,
    report: SimilarityReport,
}

impl RhoSweep {
    pub fn compute(g1: &Graph, g2: &Graph, cfg: &EnumerationConfig, rho_max: f64) -> Result<Self> {
        Self::compute_with(g1, g2, cfg, rho_max, EsVariant::Symmetric)
    }

    pub fn compute_with(
        g1: &Graph,
        g2: &Graph,
        cfg: &EnumerationConfig,
        rho_max: f64,
        variant: EsVariant,
    ) -> Result<Self> {
        if g1.n() != g2.n() {
            return Err(Error::InvalidArgument(format!(
                "graphs have different vertex counts ({} vs {})",
                g1.n(),
                g2.n()
            )));
        }
        let wide = cfg.with_rho(rho_max);
        let first = approximation_set(g1, &wide)?;
        let second = approximation_set(g2, &wide)?;
        let tables = build_tables(g1.n())?;
        Self::from_sets(first, second, &tables, variant)
    }

    /// Sweeps two approximation sets that were enumerated at the same ρ.
    pub fn from_sets(
        first: ApproximationSet,
        second: ApproximationSet,
        tables: &CombinatoricsTables,
        variant: EsVariant,
    ) -> Result<Self> {
        if first.rho != second.rho {
            return Err(Error::InvalidArgument(format!(
                "approximation sets enumerated at different rho ({} vs {})",
                first.rho, second.rho
            )));
        }
        intersect_sets(&first, &second)?;
        let rho_max = first.rho;

        let mut grid = vec![1.0];
        for set in [&first, &second] {
            if set.lambda > 0.0 {
                grid.extend(set.members.iter().map(|wc| (wc.weight / set.lambda).clamp(1.0, rho_max)));
            }
        }
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let mut es_cache: HashMap<(usize, usize), Expectation> = HashMap::new();
        let mut rows = Vec::with_capacity(grid.len());
        for rho in grid {
            let a = first.restrict(rho);
            let b = second.restrict(rho);
            let (k, l) = (a.len(), b.len());
            let intersection = merge_common(a.cuts(), b.cuts()).len();
            let es = match es_cache.get(&(k, l)) {
                Some(e) => e.clone(),
                None => {
                    let e = tables.expected_intersection_with(k, l, variant)?;
                    es_cache.insert((k, l), e.clone());
                    e
                }
            };
            let u_sim = unexpected_similarity(intersection, &es.value)?;
            rows.push(SweepRow {
                rho,
                k,
                l,
                intersection,
                es: es.value,
                u_sim,
                fallback: es.fallback,
            });
        }

        let mut star = 0;
        for (i, row) in rows.iter().enumerate() {
            if row.u_sim > rows[star].u_sim {
                star = i;
            }
        }
        let rho_star = rows[star].rho;
        let max_u_sim = rows[star].u_sim;
        let star_intersection = merge_common(first.restrict(rho_star).cuts(), second.restrict(rho_star).cuts());
        let report = SimilarityReport {
            rho_max,
            rows,
            rho_star,
            max_u_sim,
            star_intersection,
        };
        Ok(Self {
            first,
            second,
            report,
        })
    }

    pub fn report(&self) -> &SimilarityReport {
        &self.report
    }

    pub fn into_report(self) -> SimilarityReport {
        self.report
    }

    pub fn first(&self) -> &ApproximationSet {
        &self.first
    }

    pub fn second(&self) -> &ApproximationSet {
        &self.second
    }

    /// `A_ρ(G₁) ∩ A_ρ(G₂)` for `rho <= rho_max`.
    pub fn intersection_at(&self, rho: f64) -> Vec<Cut> {
        merge_common(self.first.restrict(rho).cuts(), self.second.restrict(rho).cuts())
    }

    /// The smallest grid ρ with a non-empty intersection.
    pub fn first_nonempty(&self) -> Option<&SweepRow> {
        self.report.rows.iter().find(|r| r.intersection > 0)
    }
}

/// Enumerates both approximation sets at `rho_max` and returns the sweep
/// report; ρ* is the smallest grid ρ with maximum unexpected similarity.
pub fn sweep_rho_star(g1: &Graph, g2: &Graph, cfg: &EnumerationConfig, rho_max: f64) -> Result<SimilarityReport> {
    Ok(RhoSweep::compute(g1, g2, cfg, rho_max)?.into_report())
}
