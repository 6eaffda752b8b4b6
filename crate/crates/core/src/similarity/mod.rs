//! Approximation-set similarity between two instances.

pub mod combinatorics;
pub mod crossing;
pub mod sweep;

pub use combinatorics::{build_tables, CombinatoricsTables, EsVariant, Expectation};
pub use crossing::{composed_cuts, composed_sets, crossing, crossing_closure_violations};
pub use sweep::{
    intersect_sets, sweep_rho_star, unexpected_similarity, RhoSweep, SimilarityDocument,
    SimilarityReport, SweepRecord, SweepRow, DEFAULT_RHO_MAX,
};
