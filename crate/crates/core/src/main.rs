use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use smallcuts::enumerate::{approximation_set, brute_force_approximation_set, stoer_wagner_min_cut};
use smallcuts::harness::{
    aggregate_csv, experiment_csv, run_experiment, write_records, ExperimentConfig, ExperimentRecord, GeneratorSpec,
    DEFAULT_TRIPLES,
};
use smallcuts::similarity::{sweep_rho_star, SimilarityDocument, SweepRecord, DEFAULT_RHO_MAX};
use smallcuts::strategy::{
    strategy_average, strategy_best_similarity, strategy_first_intersection, strategy_optimum, Strategy,
    StrategyOutcome,
};
use smallcuts::{read_graph_file, seed, EnumerationConfig, Error, Graph, Result, WeightedCut};

#[derive(Debug, Parser)]
#[command(name = "smallcuts", version, about = "Near-minimum cuts and robust cut prediction")]
struct Cli {
    /// Master seed for all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of recursive contraction runs (default: ceil(10 ln^2 n)).
    #[arg(long, global = true)]
    repetitions: Option<usize>,

    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Replace every input edge weight w by ln(1 + w).
    #[arg(long, global = true)]
    log_weights: bool,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Deterministic minimum cut.
    Mincut { file: PathBuf },
    /// All cuts of weight at most rho times the minimum.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        rho: f64,
        /// Check every cut instead of sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Unexpected similarity sweep over rho for two instances.
    Similarity {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RHO_MAX)]
        rho_max: f64,
    },
    /// Predict a cut for the third instance from the first two.
    Predict {
        file1: PathBuf,
        file2: PathBuf,
        file3: PathBuf,
        #[arg(long)]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_RHO_MAX)]
        rho_max: f64,
    },
    /// Run all strategies on generated triples.
    Experiment {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIPLES)]
        triples: usize,
        #[arg(long, default_value_t = DEFAULT_RHO_MAX)]
        rho_max: f64,
        /// Also write the aggregate CSV here.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'a str,
    message: String,
}

fn report(kind: &str, message: String) {
    let line = serde_json::to_string(&Diagnostic { error: kind, message }).expect("diagnostic serializes");
    eprintln!("{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report("usage", e.to_string().trim_end().to_string());
            return ExitCode::from(1);
        }
    };
    let result = match cli.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))
            .and_then(|pool| pool.install(|| run(&cli))),
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            report(e.kind(), e.to_string());
            match e {
                Error::StrategyFailed { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

impl Cli {
    fn enumeration(&self, rho: f64) -> EnumerationConfig {
        EnumerationConfig {
            rho,
            repetitions: self.repetitions,
            master_seed: self.seed,
            ..Default::default()
        }
    }

    fn graph(&self, path: &Path) -> Result<Graph> {
        let g = read_graph_file(path)?;
        if self.log_weights { g.map_weights(f64::ln_1p) } else { Ok(g) }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.emit(&text)
    }

    fn emit_rows<T: Serialize>(&self, rows: &[T]) -> Result<()> {
        let mut buf = Vec::new();
        write_records(&mut buf, rows)?;
        self.emit(&String::from_utf8(buf).expect("csv output is UTF-8"))
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Mincut { file } => {
            let min = stoer_wagner_min_cut(&cli.graph(file)?);
            match cli.format {
                Format::Csv => cli.emit_rows(&[min]),
                Format::Json => cli.emit_json(&min),
            }
        }
        Command::Enumerate { file, rho, exact } => {
            let g = cli.graph(file)?;
            let set = if *exact {
                brute_force_approximation_set(&g, *rho)?
            } else {
                approximation_set(&g, &cli.enumeration(*rho))?
            };
            match cli.format {
                Format::Csv => cli.emit_rows(&set.members.iter().collect::<Vec<&WeightedCut>>()),
                Format::Json => cli.emit_json(&set),
            }
        }
        Command::Similarity { file1, file2, rho_max } => {
            let (g1, g2) = (cli.graph(file1)?, cli.graph(file2)?);
            let report = sweep_rho_star(&g1, &g2, &cli.enumeration(1.0), *rho_max)?;
            match cli.format {
                Format::Csv => cli.emit_rows(&report.rows.iter().map(SweepRecord::from).collect::<Vec<_>>()),
                Format::Json => cli.emit_json(&SimilarityDocument::from(&report)),
            }
        }
        Command::Predict {
            file1,
            file2,
            file3,
            strategy,
            rho_max,
        } => {
            let (g1, g2, g3) = (cli.graph(file1)?, cli.graph(file2)?, cli.graph(file3)?);
            let cfg = cli.enumeration(1.0);
            let outcome: StrategyOutcome = match strategy {
                Strategy::Average => strategy_average(&g1, &g2, &g3)?,
                Strategy::FirstIntersection => {
                    strategy_first_intersection(&g1, &g2, &g3, &cfg, *rho_max, seed::mix(cli.seed, 1))?
                }
                Strategy::BestSimilarity => {
                    strategy_best_similarity(&g1, &g2, &g3, &cfg, *rho_max, seed::mix(cli.seed, 2))?
                }
                Strategy::Optimum => strategy_optimum(&g3),
            };
            match cli.format {
                Format::Csv => cli.emit_rows(&[ExperimentRecord::new(0, &outcome)]),
                Format::Json => cli.emit_json(&outcome),
            }
        }
        Command::Experiment {
            spec,
            triples,
            rho_max,
            summary,
        } => {
            let spec: GeneratorSpec = serde_json::from_str(&fs::read_to_string(spec)?)?;
            let cfg = ExperimentConfig {
                enumeration: cli.enumeration(1.0),
                rho_max: *rho_max,
                ..Default::default()
            };
            let report = run_experiment(&spec, *triples, &cfg)?;
            if let Some(path) = summary {
                fs::write(path, aggregate_csv(&report)?)?;
            }
            match cli.format {
                Format::Csv => cli.emit(&experiment_csv(&report)?),
                Format::Json => cli.emit_json(&report),
            }
        }
    }
}
