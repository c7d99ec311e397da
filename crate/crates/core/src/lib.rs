//! Attractor separation analysis for Boolean networks under asynchronous
//! updates, and structural analysis of their signed interaction graphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`network`]: configurations, subspaces, state sets and truth-table networks.
//! - [`expr`]: the `.bn` text format and its compiler to truth tables.
//! - [`graph`]: signed digraphs, cycles, feedback numbers, switches, embeddings.
//! - [`dynamics`]: asynchronous graphs, attractors, trap spaces, classification.
//! - [`ensemble`]: all networks on a graph, exhaustive census, searches.
//! - [`fixtures`]: worked examples with their known verdicts.
//!
//! ```
//! use bnsep::{classify, load_network, interaction_graph};
//!
//! let f = load_network("x1 = x1 ^ x2\nx2 = x1 ^ x2", 24).unwrap();
//! let c = classify(&f);
//! assert_eq!(c.attractors.len(), 2);
//! assert!(!c.flags.separating);
//! assert_eq!(interaction_graph(&f).arc_count(), 8);
//! ```

pub mod dynamics;
pub mod ensemble;
pub mod expr;
pub mod fixtures;
pub mod graph;
pub mod network;

pub use dynamics::{classify, union_attractors, AsyncGraph, Classification, Flags, Property};
pub use expr::{load_network, parse_network, LoadError};
pub use graph::{interaction_graph, Sign, SignSet, SignedDigraph};
pub use network::{BooleanNetwork, Configuration, StateSet, Subspace};
