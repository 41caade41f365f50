//! Simulation laboratory for the acquaintance-time process on graphs and
//! r-uniform hypergraphs.
//!
//! One agent sits on every vertex. Each round a matching of the underlying
//! graph is chosen and the agents on every matched pair swap places. A set of
//! `k` agents becomes acquainted once they occupy vertices of a common edge at
//! some round boundary; the acquaintance time is the least number of rounds
//! after which every k-set is acquainted.
//!
//! * [`model`]: graphs, hypergraphs, loose paths, good trees, matchings.
//! * [`generators`]: seeded `G(n,p)`, `H_r(n,p)` and the random edge process.
//! * [`pathfinder`]: long loose paths, good spanning trees, Hamilton search.
//! * [`engine`]: the process executor and k-acquaintance ledger.
//! * [`strategies`]: constructive schedules (tree routing, good-tree
//!   traversal, 1-factorizations, loose-path team schedules, hypergraph
//!   strategies).
//! * [`oracle`]: exact acquaintance time at tiny scale and the counting
//!   lower bound.

pub mod engine;
pub mod error;
pub mod generators;
pub mod model;
pub mod oracle;
pub mod pathfinder;
pub mod strategies;

pub use error::{Error, Result};
