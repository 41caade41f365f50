//! Schedule for a connected graph via a good spanning tree.

use crate::error::Result;
use crate::model::Graph;
use crate::pathfinder::good_spanning_tree;

use super::good_tree::good_tree_strategy;
use super::StrategyTrace;

/// Builds a good spanning tree of `g` (retrying DFS seeds up to `attempts`
/// times) and runs the good-tree schedule on it. Tree edges are edges of
/// `g`, so the trace is legal for `g` and completes there too.
pub fn connectivity_strategy(g: &Graph, seed: u64, attempts: usize) -> Result<StrategyTrace> {
    let report = good_spanning_tree(g, seed, attempts)?;
    let trace = good_tree_strategy(&report.tree)?;
    Ok(trace
        .with("path_len", report.spine_len)
        .with("leftover", report.leftover_before_fallback)
        .with("tree_attempts", report.attempts)
        .with("heavy", report.tree.heavy.len()))
}
