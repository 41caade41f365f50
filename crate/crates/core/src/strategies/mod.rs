//! Constructive schedules.
//!
//! Every strategy returns a [`StrategyTrace`]; `claimed_complete` is decided
//! by replaying the trace through the engine, so a claim is never weaker
//! than what the engine sees.

mod baranyai;
mod good_tree;
mod hyper;
mod loose_path;
mod path_route;
mod spanning;
mod tree_route;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::run_trace;
use crate::error::Result;
use crate::model::{Agent, Hypergraph, Matching, Vertex};

pub use baranyai::{baranyai, Factorization};
pub use good_tree::good_tree_strategy;
pub use hyper::{dense_hypergraph_strategy, group_of, sparse_hypergraph_strategy, DenseConfig};
pub use loose_path::loose_path_strategy;
pub use path_route::route_on_loose_path;
pub use spanning::connectivity_strategy;
pub use tree_route::{route_bound, route_on_tree, tree_spread};

/// Output of a strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrategyTrace {
    pub matchings: Vec<Matching>,
    pub claimed_complete: bool,
    /// Named quantities: team sizes, phase counts, measured constants.
    pub meta: BTreeMap<String, Value>,
}

impl StrategyTrace {
    pub fn rounds(&self) -> usize {
        self.matchings.len()
    }

    pub fn meta_f64(&self, key: &str) -> Option<f64> {
        self.meta.get(key).and_then(Value::as_f64)
    }

    pub fn meta_u64(&self, key: &str) -> Option<u64> {
        self.meta.get(key).and_then(Value::as_u64)
    }

    fn certified(matchings: Vec<Matching>, h: &Hypergraph, k: usize) -> Result<Self> {
        let report = run_trace(h, k, &matchings)?;
        let mut meta = BTreeMap::new();
        meta.insert("rounds".into(), Value::from(matchings.len()));
        if let Some(c) = report.completion_round {
            meta.insert("completion_round".into(), Value::from(c));
        }
        Ok(Self { matchings, claimed_complete: report.completed, meta })
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }
}

/// Rounds of swaps in some local index space.
pub(crate) type Rounds = Vec<Vec<(usize, usize)>>;

/// Merges simultaneous lanes round by round. Lanes must touch disjoint
/// positions.
pub(crate) fn merge_lanes(lanes: Vec<Rounds>) -> Rounds {
    let len = lanes.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Vec::new(); len];
    for lane in lanes {
        for (i, round) in lane.into_iter().enumerate() {
            out[i].extend(round);
        }
    }
    out
}

/// Agent placement plus the rounds emitted so far.
#[derive(Debug, Clone)]
pub(crate) struct Schedule {
    occ: Vec<Agent>,
    pos: Vec<Vertex>,
    rounds: Vec<Matching>,
}

impl Schedule {
    pub(crate) fn new(n: usize) -> Self {
        Self { occ: (0..n as Agent).collect(), pos: (0..n as Vertex).collect(), rounds: Vec::new() }
    }

    pub(crate) fn position(&self, a: Agent) -> Vertex {
        self.pos[a as usize]
    }

    pub(crate) fn len(&self) -> usize {
        self.rounds.len()
    }

    /// Applies one round; empty rounds are dropped.
    pub(crate) fn push(&mut self, swaps: Vec<(Vertex, Vertex)>) {
        if swaps.is_empty() {
            return;
        }
        for &(u, v) in &swaps {
            let (a, b) = (self.occ[u as usize], self.occ[v as usize]);
            self.occ.swap(u as usize, v as usize);
            self.pos[a as usize] = v;
            self.pos[b as usize] = u;
        }
        let m = Matching::new(swaps, self.rounds.len() + 1).expect("strategies emit matchings");
        self.rounds.push(m);
    }

    pub(crate) fn extend(&mut self, rounds: impl IntoIterator<Item = Matching>) {
        for m in rounds {
            self.push(m.swaps().to_vec());
        }
    }

    /// Pushes rounds given in local positions mapped through `map`.
    pub(crate) fn push_local(&mut self, rounds: Rounds, map: &[Vertex]) {
        for round in rounds {
            self.push(round.into_iter().map(|(i, j)| (map[i], map[j])).collect());
        }
    }

    pub(crate) fn into_rounds(self) -> Vec<Matching> {
        self.rounds
    }
}
