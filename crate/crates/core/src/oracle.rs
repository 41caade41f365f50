//! Ground truth at tiny scale.
//!
//! [`exact_ac`] runs a breadth-first search over `(placement, ledger)` states
//! with every matching of the underlying graph as a move, so the depth at
//! which a full ledger first appears is the exact acquaintance time.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::subset::{binomial, for_each_k_subset, SubsetRanker};
use crate::model::{Graph, Hypergraph, Matching, Vertex};

/// Counting bound: at most `|E| C(r,k)` k-sets are acquainted per round
/// boundary, so at least `ceil(C(n,k) / (|E| C(r,k))) - 1` rounds are needed.
pub fn lower_bound(n: usize, edge_count: usize, r: usize, k: usize) -> Result<u64> {
    let tuples = binomial(n as u64, k as u64);
    if tuples == 0 {
        return Ok(0);
    }
    if edge_count == 0 {
        return Err(Error::Unacquaintable { n, k });
    }
    let per_round = edge_count as u64 * binomial(r as u64, k as u64);
    if per_round == 0 {
        return Err(Error::Unacquaintable { n, k });
    }
    Ok(tuples.div_ceil(per_round).saturating_sub(1))
}

/// [`lower_bound`] evaluated for a concrete structure.
pub fn lower_bound_for(h: &Hypergraph, k: usize) -> Result<u64> {
    lower_bound(h.n(), h.edge_count(), h.r(), k)
}

/// Every matching of `g`, the empty matching first. Each appears once.
pub fn enumerate_matchings(g: &Graph) -> Vec<Matching> {
    fn go(
        edges: &[(Vertex, Vertex)],
        from: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(Vertex, Vertex)>,
        out: &mut Vec<Matching>,
    ) {
        out.push(Matching::from_disjoint(cur.clone()));
        for i in from..edges.len() {
            let (u, v) = edges[i];
            if used[u as usize] || used[v as usize] {
                continue;
            }
            used[u as usize] = true;
            used[v as usize] = true;
            cur.push((u, v));
            go(edges, i + 1, used, cur, out);
            cur.pop();
            used[u as usize] = false;
            used[v as usize] = false;
        }
    }
    let mut out = Vec::new();
    go(g.edges(), 0, &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    out
}

/// Caps checked before an exact search starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_states: 20_000_000, max_n: 8, max_k: 4 }
    }
}

/// Exact k-acquaintance time by breadth-first search.
///
/// Returns [`Error::Unacquaintable`] when the reachable state space is
/// exhausted without a full ledger (e.g. a disconnected structure).
pub fn exact_ac(h: &Hypergraph, k: usize, limits: SearchLimits) -> Result<usize> {
    let n = h.n();
    if k < 2 || k > h.r() {
        return Err(Error::InvalidArity { k, r: h.r() });
    }
    let tuples = binomial(n as u64, k as u64);
    if n > limits.max_n || k > limits.max_k || n > 16 || tuples > 64 {
        return Err(Error::SearchBudgetExceeded(format!(
            "n={n}, k={k}, C(n,k)={tuples} beyond search caps"
        )));
    }
    let full: u64 = if tuples == 64 { u64::MAX } else { (1u64 << tuples) - 1 };
    let ranker = SubsetRanker::new(n, k);
    let moves: Vec<Vec<(usize, usize)>> = enumerate_matchings(&h.underlying_graph())
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|m| m.swaps().iter().map(|&(u, v)| (u as usize, v as usize)).collect())
        .collect();

    let acquaint = |occ: &[u8]| -> u64 {
        let mut bits = 0u64;
        let mut agents = Vec::with_capacity(h.r());
        for e in h.edges() {
            agents.clear();
            agents.extend(e.iter().map(|&v| occ[v as usize] as u32));
            agents.sort_unstable();
            for_each_k_subset(&agents, k, |s| bits |= 1u64 << ranker.rank_sorted(s));
        }
        bits
    };
    let key = |occ: &[u8], ledger: u64| -> u128 {
        let mut perm = 0u128;
        for &a in occ {
            perm = perm << 4 | u128::from(a);
        }
        perm << 64 | u128::from(ledger)
    };

    let start: Vec<u8> = (0..n as u8).collect();
    let ledger0 = acquaint(&start);
    if ledger0 == full {
        return Ok(0);
    }
    let mut seen: HashSet<u128> = HashSet::from([key(&start, ledger0)]);
    let mut frontier = vec![(start, ledger0)];
    let mut depth = 0usize;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for (occ, ledger) in &frontier {
            for mv in &moves {
                let mut o = occ.clone();
                for &(u, v) in mv {
                    o.swap(u, v);
                }
                let l = ledger | acquaint(&o);
                if l == full {
                    return Ok(depth);
                }
                if seen.insert(key(&o, l)) {
                    if seen.len() > limits.max_states {
                        return Err(Error::SearchBudgetExceeded(format!(
                            "more than {} states at depth {depth}",
                            limits.max_states
                        )));
                    }
                    next.push((o, l));
                }
            }
        }
        frontier = next;
    }
    Err(Error::Unacquaintable { n, k })
}

/// One oracle result, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub instance: String,
    pub k: usize,
    pub exact: usize,
    pub lower_bound: u64,
}
