//! Locating-dominating sets of size at most `n/2` in twin-free cubic graphs.
//!
//! The crate builds such a set constructively: a maximum matching `M`, a
//! transversal `D` of `M` tuned by local exchanges, a forest of "bad"
//! 4-cycles explaining every pair `D` fails to locate, a small dominating
//! set of an auxiliary multigraph on `M`-unmatched vertices, and a final
//! propagation of swaps along the forest. Every produced set is re-checked
//! from first definitions by [`locdom::classify_set`], and an exact
//! branch-and-bound oracle ([`locdom::ld_number_exact`]) is available for
//! cross-checking on small graphs.

pub mod construct;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod locdom;
pub mod matching;
pub mod vertex_set;

pub use construct::{construct, construct_with, ConstructOptions, ConstructionResult};
pub use error::{Error, Result};
pub use graph::{Graph, TwinKind, TwinPair};
pub use graph6::{parse_graph6, write_graph6};
pub use matching::{maximum_matching, tutte_berge_witness, Matching, TutteBergeWitness};
pub use vertex_set::VertexSet;
