//! Generators and quantitative verifiers for four explicit shift-space
//! constructions: Oxtoby sequences over a nested arithmetic-progression
//! scale, a periodic tower of words with controlled cylinder masses, a
//! proximal hereditary family of sofic shifts with a common safe symbol,
//! and a minimal coded system with its shadowing and connecting algorithms.
//!
//! Every verifier reports the exact rational values of both sides of each
//! inequality it checks; randomized pieces are seeded and the seed is part
//! of the report.

pub mod coded;
pub mod oxtoby;
pub mod proximal;
pub mod tower;

pub use coded::{
    coded_connect, coded_graph, coded_levels, coded_min_t, coded_minimality_witness,
    coded_shadow_next, CodedLevelStats, CodedLevels, CodedParams, MinTMode,
};
pub use oxtoby::{oxtoby_prefix, oxtoby_verify, oxtoby_window_counts, OxtobyScale};
pub use proximal::{
    proximal_graph, proximal_intersection, proximal_zeroing_shadow, ProximalParams,
};
pub use tower::{canonical_enumeration, tower_build, tower_verify, Tower, TowerParams};
