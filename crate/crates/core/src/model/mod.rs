//! Domain types shared by every module.
//!
//! Vertices and agents are 0-indexed `u32`s; the agent initially placed on
//! vertex `i` is agent `i`.

mod good_tree;
mod loose_path;
mod matching;
mod structure;
pub mod subset;

pub use good_tree::GoodTree;
pub use loose_path::LoosePath;
pub use matching::Matching;
pub use structure::{Graph, Hypergraph};
pub use subset::{binomial, rank_k_subset, unrank_k_subset, KSubsetIndex};

pub type Vertex = u32;
pub type Agent = u32;

/// `underlying_graph` as a free function, for symmetry with the other
/// structural derivations.
pub fn underlying_graph(h: &Hypergraph) -> Graph {
    h.underlying_graph()
}

/// Edges of a loose path as sorted r-sets, in path order.
pub fn loose_path_edges(p: &LoosePath) -> Vec<Vec<Vertex>> {
    p.edges()
}
