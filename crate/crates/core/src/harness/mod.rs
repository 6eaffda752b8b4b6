//! Random instance generators and the strategy comparison experiment.

pub mod experiment;
pub mod generate;

pub use experiment::{
    aggregate_csv, experiment_csv, median, read_records, run_experiment, run_triple, summarize, write_records,
    Aggregate, ExperimentConfig, ExperimentRecord, ExperimentReport, TripleResult, DEFAULT_TRIPLES,
};
pub use generate::{
    generate, generate_similar_triple, generate_triple, GeneratorKind, GeneratorSpec, SimilarTriple,
};
