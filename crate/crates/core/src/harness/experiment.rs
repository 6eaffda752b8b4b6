use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::EnumerationConfig;
use crate::error::{Error, Result};
use crate::seed;
use crate::similarity::{EsVariant, RhoSweep, DEFAULT_RHO_MAX};
use crate::strategy::{
    best_similarity_from_sweep, first_intersection_from_sweep, strategy_average, strategy_optimum, Strategy,
    StrategyOutcome,
};

use super::generate::{generate_triple, GeneratorSpec};

pub const DEFAULT_TRIPLES: usize = 512;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub enumeration: EnumerationConfig,
    pub rho_max: f64,
    pub es_variant: EsVariant,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            enumeration: EnumerationConfig::default(),
            rho_max: DEFAULT_RHO_MAX,
            es_variant: EsVariant::Symmetric,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleResult {
    pub index: usize,
    /// Maximum unexpected similarity of the first two graphs.
    pub u_sim: f64,
    pub outcomes: Vec<StrategyOutcome>,
}

impl TripleResult {
    pub fn outcome(&self, strategy: Strategy) -> &StrategyOutcome {
        self.outcomes
            .iter()
            .find(|o| o.strategy == strategy)
            .expect("every strategy is run on every triple")
    }
}

/// Aggregate CSV row: `strategy,sum_all,pct_of_opt_all,sum_high_sim,pct_of_opt_high_sim,failures`.
///
/// A strategy's percentages compare against the optimum summed over the
/// triples where that strategy succeeded.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub strategy: Strategy,
    pub sum_all: f64,
    pub pct_of_opt_all: f64,
    pub sum_high_sim: f64,
    pub pct_of_opt_high_sim: f64,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: GeneratorSpec,
    pub triples: Vec<TripleResult>,
    /// Median of the per-triple `u_sim`.
    pub median_u_sim: f64,
    pub high_sim_count: usize,
    pub aggregates: Vec<Aggregate>,
}

impl ExperimentReport {
    pub fn aggregate(&self, strategy: Strategy) -> &Aggregate {
        self.aggregates
            .iter()
            .find(|a| a.strategy == strategy)
            .expect("aggregates cover every strategy")
    }
}

/// Runs all four strategies on one triple.
pub fn run_triple(spec: &GeneratorSpec, index: usize, cfg: &ExperimentConfig) -> Result<TripleResult> {
    let triple_seed = seed::mix(spec.seed, index as u64);
    let [g1, g2, g3] = generate_triple(spec, triple_seed)?;
    let run_seed = seed::mix(cfg.enumeration.master_seed, index as u64);
    let enumeration = cfg.enumeration.with_seed(run_seed);

    let sweep = RhoSweep::compute_with(&g1, &g2, &enumeration, cfg.rho_max, cfg.es_variant)?;
    let outcomes = vec![
        strategy_average(&g1, &g2, &g3)?,
        first_intersection_from_sweep(&sweep, &g3, seed::mix(run_seed, 1))?,
        best_similarity_from_sweep(&sweep, &g3, seed::mix(run_seed, 2))?,
        strategy_optimum(&g3),
    ];
    Ok(TripleResult {
        index,
        u_sim: sweep.report().max_u_sim,
        outcomes,
    })
}

/// Runs `triples` triples (in parallel on the current rayon pool) and
/// aggregates. The result does not depend on the number of workers.
pub fn run_experiment(spec: &GeneratorSpec, triples: usize, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    spec.validate()?;
    cfg.enumeration.validate()?;
    if triples == 0 {
        return Err(Error::InvalidArgument("at least one triple is required".into()));
    }
    let results: Vec<TripleResult> = (0..triples)
        .into_par_iter()
        .map(|i| run_triple(spec, i, cfg))
        .collect::<Result<_>>()?;
    Ok(summarize(spec.clone(), results))
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.is_empty() {
        f64::NAN
    } else if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

fn percent(sum: f64, optimum: f64) -> f64 {
    if optimum > 0.0 {
        100.0 * sum / optimum
    } else if sum == 0.0 {
        100.0
    } else {
        f64::INFINITY
    }
}

/// Computes the median split and per-strategy aggregates.
pub fn summarize(spec: GeneratorSpec, triples: Vec<TripleResult>) -> ExperimentReport {
    let median_u_sim = median(&triples.iter().map(|t| t.u_sim).collect::<Vec<_>>());
    let high = |t: &TripleResult| t.u_sim >= median_u_sim;
    let high_sim_count = triples.iter().filter(|t| high(t)).count();

    let aggregates = Strategy::ALL
        .into_iter()
        .map(|strategy| {
            let (mut sum_all, mut opt_all, mut sum_high, mut opt_high, mut failures) = (0.0, 0.0, 0.0, 0.0, 0);
            for t in &triples {
                let Some(w) = t.outcome(strategy).weight_on_g3 else {
                    failures += 1;
                    continue;
                };
                let opt = t.outcome(Strategy::Optimum).weight_on_g3.expect("optimum never fails");
                sum_all += w;
                opt_all += opt;
                if high(t) {
                    sum_high += w;
                    opt_high += opt;
                }
            }
            Aggregate {
                strategy,
                sum_all,
                pct_of_opt_all: percent(sum_all, opt_all),
                sum_high_sim: sum_high,
                pct_of_opt_high_sim: percent(sum_high, opt_high),
                failures,
            }
        })
        .collect();

    ExperimentReport {
        spec,
        triples,
        median_u_sim,
        high_sim_count,
        aggregates,
    }
}

/// Experiment CSV row, columns in file order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub triple_index: usize,
    pub strategy: Strategy,
    pub rho: Option<f64>,
    pub intersection_size: Option<usize>,
    pub u_sim: Option<f64>,
    pub cut_bits: Option<String>,
    pub weight_on_g3: Option<f64>,
    pub failed: bool,
}

impl ExperimentRecord {
    pub fn new(triple_index: usize, o: &StrategyOutcome) -> Self {
        Self {
            triple_index,
            strategy: o.strategy,
            rho: o.rho,
            intersection_size: o.intersection_size,
            u_sim: o.u_sim,
            cut_bits: o.cut.as_ref().map(|c| c.to_bits()),
            weight_on_g3: o.weight_on_g3,
            failed: o.failed(),
        }
    }
}

impl ExperimentReport {
    pub fn records(&self) -> Vec<ExperimentRecord> {
        self.triples
            .iter()
            .flat_map(|t| t.outcomes.iter().map(move |o| ExperimentRecord::new(t.index, o)))
            .collect()
    }
}

pub fn write_records<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read, T: for<'de> Deserialize<'de>>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

pub fn experiment_csv(report: &ExperimentReport) -> Result<String> {
    let mut buf = Vec::new();
    write_records(&mut buf, &report.records())?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn aggregate_csv(report: &ExperimentReport) -> Result<String> {
    let mut buf = Vec::new();
    write_records(&mut buf, &report.aggregates)?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}
