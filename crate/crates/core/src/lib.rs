//! Near-minimum cut enumeration, approximation-set similarity between graph
//! instances, and robust cut selection.

pub mod contraction;
pub mod cut;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod graph;
pub mod harness;
pub mod seed;
pub mod similarity;
pub mod strategy;

pub use contraction::ContractionState;
pub use cut::{canonicalize, Cut, VertexSet, WeightedCut};
pub use enumerate::{
    approximation_set, brute_force_approximation_set, stoer_wagner_min_cut, ApproximationSet,
    EnumerationConfig,
};
pub use error::{Error, Result};
pub use format::{parse_graph, read_graph_file, write_graph};
pub use graph::{cut_weight, Graph};
pub use strategy::{Strategy, StrategyOutcome};
