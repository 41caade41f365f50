//! Structure discovery inside sampled instances: long loose paths, good
//! spanning trees and loose Hamilton paths.

mod dfs;
mod good_tree;
mod hamilton;

pub use dfs::{dfs_loose_path, long_path_constant, longest_loose_path, DfsSearch, Role, Step};
pub use good_tree::{
    attach_leftovers, build_good_spanning_tree, build_good_spanning_tree_observed, good_spanning_tree,
    GoodTreeBuild, GoodTreeBuildState, SpanningTreeReport,
};
pub use hamilton::{find_loose_hamilton_path, hamilton_target, search_long_loose_path};
