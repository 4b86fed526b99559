//! Watchman's walks and directed domination.
//!
//! A watchman's walk of a digraph is a shortest closed walk whose vertices
//! dominate every vertex (closed out-neighbourhoods). This crate computes
//! watchman numbers with witnesses and multiplicities, the domination-number
//! variants around them, the structural decompositions they rely on, graph
//! families used as test material, and an isomorphism-free census of small
//! tournaments.

pub mod bitset;
pub mod canon;
pub mod census;
pub mod digraph;
pub mod domination;
pub mod error;
pub mod families;
pub mod properties;
pub mod structure;
pub mod watchman;

pub use bitset::VertexSet;
pub use canon::{canonical_form, canonical_labeling, CanonicalCode};
pub use census::{
    census, enumerate_tournaments, verify_appendix_a, CensusOptions, CensusTable, DiffReport,
};
pub use digraph::{Digraph, Tournament};
pub use domination::{domination_number, domination_report, DominationReport};
pub use error::{Error, Result};
pub use watchman::{watchman_number, watchman_number_tournament, Walk, WalkReport};
