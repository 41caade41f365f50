//! The process executor.
//!
//! [`SimState`] holds the agent/vertex bijection and a dense bit ledger over
//! all `C(n, k)` agent k-sets. A k-set becomes acquainted when its agents sit
//! on vertices of one edge at a round boundary. After each matching only the
//! edges incident to swapped vertices are rescanned; the occupants of every
//! other edge are unchanged, so their k-sets were recorded earlier.

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::subset::{binomial, for_each_k_subset, SubsetRanker};
use crate::model::{Agent, Graph, Hypergraph, Matching, Vertex};

/// Upper bound on `C(n, k)` accepted by [`SimState::init`].
pub const LEDGER_CAP: u64 = 1 << 27;

/// Bit ledger over agent k-sets, indexed by lexicographic rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcquaintanceLedger {
    bits: BitVec<usize, Lsb0>,
    count: u64,
}

impl AcquaintanceLedger {
    fn new(len: u64) -> Self {
        Self { bits: bitvec![usize, Lsb0; 0; len as usize], count: 0 }
    }

    #[inline]
    fn set(&mut self, rank: u64) {
        let mut bit = self.bits.get_mut(rank as usize).expect("rank in range");
        if !*bit {
            *bit = true;
            self.count += 1;
        }
    }

    pub fn is_set(&self, rank: u64) -> bool {
        self.bits[rank as usize]
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn len(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.count == self.len()
    }

    /// `self` has every bit that `other` has.
    pub fn is_superset_of(&self, other: &Self) -> bool {
        self.bits.len() == other.bits.len()
            && self
                .bits
                .as_raw_slice()
                .iter()
                .zip(other.bits.as_raw_slice())
                .all(|(a, b)| b & !a == 0)
    }
}

/// Live process state for one structure.
#[derive(Debug, Clone)]
pub struct SimState {
    structure: Hypergraph,
    adjacency: Vec<Vec<Vertex>>,
    incidence: Vec<Vec<usize>>,
    ranker: SubsetRanker,
    k: usize,
    pos: Vec<Vertex>,
    inv: Vec<Agent>,
    ledger: AcquaintanceLedger,
    round: usize,
    visited: Option<Vec<BitVec<usize, Lsb0>>>,
}

impl SimState {
    /// Agent `i` on vertex `i`; every k-set inside an edge starts acquainted.
    pub fn init(structure: &Hypergraph, k: usize) -> Result<Self> {
        let (n, r) = (structure.n(), structure.r());
        if k < 2 || k > r {
            return Err(Error::InvalidArity { k, r });
        }
        let total = binomial(n as u64, k as u64);
        if total > LEDGER_CAP {
            return Err(Error::LedgerTooLarge { n, k });
        }
        let adjacency = structure.underlying_graph().adjacency();
        let mut state = Self {
            structure: structure.clone(),
            adjacency,
            incidence: structure.incidence(),
            ranker: SubsetRanker::new(n, k),
            k,
            pos: (0..n as Vertex).collect(),
            inv: (0..n as Agent).collect(),
            ledger: AcquaintanceLedger::new(total),
            round: 0,
            visited: None,
        };
        for e in 0..structure.edge_count() {
            state.record_edge(e);
        }
        Ok(state)
    }

    pub fn init_graph(g: &Graph) -> Result<Self> {
        Self::init(&g.to_hypergraph(), 2)
    }

    /// Turns on per-agent vertex-visit tracking, seeded with current positions.
    pub fn with_visits(mut self) -> Self {
        let n = self.pos.len();
        let mut visited = vec![bitvec![usize, Lsb0; 0; n]; n];
        for (a, &v) in self.pos.iter().enumerate() {
            visited[a].set(v as usize, true);
        }
        self.visited = Some(visited);
        self
    }

    fn record_edge(&mut self, e: usize) {
        let mut occupants: Vec<Agent> =
            self.structure.edges()[e].iter().map(|&v| self.inv[v as usize]).collect();
        occupants.sort_unstable();
        let ranker = &self.ranker;
        let ledger = &mut self.ledger;
        for_each_k_subset(&occupants, self.k, |s| ledger.set(ranker.rank_sorted(s)));
    }

    /// Validates a matching against the underlying graph without applying it.
    pub fn check_matching(&self, m: &Matching) -> Result<()> {
        let round = self.round + 1;
        m.check_disjoint(round)?;
        for &(u, v) in m.swaps() {
            let ok = (u as usize) < self.adjacency.len()
                && self.adjacency[u as usize].binary_search(&v).is_ok();
            if !ok {
                return Err(Error::IllegalSwap { round, u, v });
            }
        }
        Ok(())
    }

    /// Swaps the agents on every matched pair, advances the round and
    /// updates the ledger (and visit sets, when tracked).
    pub fn apply_matching(&mut self, m: &Matching) -> Result<()> {
        self.check_matching(m)?;
        self.apply_unchecked(m.swaps());
        Ok(())
    }

    fn apply_unchecked(&mut self, swaps: &[(Vertex, Vertex)]) {
        for &(u, v) in swaps {
            let (a, b) = (self.inv[u as usize], self.inv[v as usize]);
            self.inv.swap(u as usize, v as usize);
            self.pos[a as usize] = v;
            self.pos[b as usize] = u;
            if let Some(visited) = &mut self.visited {
                visited[a as usize].set(v as usize, true);
                visited[b as usize].set(u as usize, true);
            }
        }
        self.round += 1;
        if self.ledger.is_full() {
            return;
        }
        let mut touched: Vec<usize> = swaps
            .iter()
            .flat_map(|&(u, v)| {
                self.incidence[u as usize].iter().chain(&self.incidence[v as usize]).copied()
            })
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for e in touched {
            self.record_edge(e);
        }
    }

    pub fn is_complete(&self) -> bool {
        self.ledger.is_full()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn structure(&self) -> &Hypergraph {
        &self.structure
    }

    pub fn ledger(&self) -> &AcquaintanceLedger {
        &self.ledger
    }

    /// Vertex occupied by agent `a`.
    pub fn position(&self, a: Agent) -> Vertex {
        self.pos[a as usize]
    }

    /// Agent occupying vertex `v`.
    pub fn occupant(&self, v: Vertex) -> Agent {
        self.inv[v as usize]
    }

    pub fn positions(&self) -> &[Vertex] {
        &self.pos
    }

    pub fn occupants(&self) -> &[Agent] {
        &self.inv
    }

    /// Whether the sorted agent set `agents` is acquainted.
    pub fn acquainted(&self, agents: &[Agent]) -> bool {
        self.ledger.is_set(self.ranker.rank_sorted(agents))
    }

    pub fn visited(&self, a: Agent) -> Option<&BitSlice<usize, Lsb0>> {
        self.visited.as_ref().map(|v| v[a as usize].as_bitslice())
    }

    /// Whether agent `a` has visited every vertex in `vertices`.
    pub fn visited_all(&self, a: Agent, vertices: &[Vertex]) -> bool {
        match self.visited(a) {
            Some(bits) => vertices.iter().all(|&v| bits[v as usize]),
            None => false,
        }
    }

    pub fn adjacency(&self) -> &[Vec<Vertex>] {
        &self.adjacency
    }
}

/// Outcome of replaying a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub completed: bool,
    pub completion_round: Option<usize>,
    pub rounds: usize,
    /// Acquainted k-set count after each round; entry 0 is the initial state.
    pub ledger_counts: Vec<u64>,
    pub total_tuples: u64,
}

/// Replays `matchings` from the initial placement.
pub fn run_trace(structure: &Hypergraph, k: usize, matchings: &[Matching]) -> Result<TraceReport> {
    let mut state = SimState::init(structure, k)?;
    replay(&mut state, matchings)
}

/// Replays `matchings` on an existing state.
pub fn replay(state: &mut SimState, matchings: &[Matching]) -> Result<TraceReport> {
    let mut counts = Vec::with_capacity(matchings.len() + 1);
    counts.push(state.ledger().count());
    let start = state.round();
    let mut completion = state.is_complete().then_some(0);
    for m in matchings {
        state.apply_matching(m)?;
        counts.push(state.ledger().count());
        if completion.is_none() && state.is_complete() {
            completion = Some(state.round() - start);
        }
    }
    Ok(TraceReport {
        completed: completion.is_some(),
        completion_round: completion,
        rounds: matchings.len(),
        ledger_counts: counts,
        total_tuples: state.ledger().len(),
    })
}

/// Trace file format: a JSON list of rounds, each a list of `[u, v]` swaps.
pub fn parse_trace(json: &str) -> Result<Vec<Matching>> {
    let rounds: Vec<Vec<(Vertex, Vertex)>> =
        serde_json::from_str(json).map_err(|e| Error::InvalidStructure(format!("trace: {e}")))?;
    rounds.into_iter().enumerate().map(|(i, r)| Matching::new(r, i + 1)).collect()
}

pub fn trace_to_json(matchings: &[Matching]) -> String {
    serde_json::to_string(matchings).expect("serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(Vertex, Vertex)]) -> Matching {
        Matching::new(pairs.to_vec(), 0).unwrap()
    }

    #[test]
    fn complete_graph_is_acquainted_at_start() {
        let s = SimState::init_graph(&Graph::complete(4)).unwrap();
        assert_eq!(s.ledger().count(), 6);
        assert!(s.is_complete());
    }

    #[test]
    fn path_three_initial_pairs() {
        let s = SimState::init_graph(&Graph::path(3)).unwrap();
        assert!(s.acquainted(&[0, 1]) && s.acquainted(&[1, 2]));
        assert!(!s.acquainted(&[0, 2]));
        assert!(!s.is_complete());
    }

    #[test]
    fn one_triple_among_four() {
        let h = Hypergraph::new(4, 3, [vec![0, 1, 2]]).unwrap();
        let s = SimState::init(&h, 3).unwrap();
        assert_eq!(s.ledger().len(), 4);
        assert_eq!(s.ledger().count(), 1);
    }

    #[test]
    fn arity_checked() {
        let h = Hypergraph::new(4, 3, [vec![0, 1, 2]]).unwrap();
        assert!(matches!(SimState::init(&h, 4), Err(Error::InvalidArity { .. })));
        assert!(matches!(SimState::init(&h, 1), Err(Error::InvalidArity { .. })));
    }

    #[test]
    fn ledger_cap_enforced() {
        let h = Hypergraph::new(2000, 3, [vec![0, 1, 2]]).unwrap();
        assert!(matches!(SimState::init(&h, 3), Err(Error::LedgerTooLarge { .. })));
    }

    #[test]
    fn swap_on_path_completes() {
        let mut s = SimState::init_graph(&Graph::path(3)).unwrap();
        s.apply_matching(&m(&[(0, 1)])).unwrap();
        assert_eq!(s.position(0), 1);
        assert!(s.is_complete());
    }

    #[test]
    fn empty_matching_only_advances_round() {
        let mut s = SimState::init_graph(&Graph::path(4)).unwrap();
        let before = s.ledger().clone();
        s.apply_matching(&Matching::empty()).unwrap();
        assert_eq!(s.round(), 1);
        assert_eq!(s.ledger(), &before);
        assert_eq!(s.positions(), &[0, 1, 2, 3]);
    }

    #[test]
    fn cycle_swap_acquaints_both_diagonals() {
        let mut s = SimState::init_graph(&Graph::cycle(4)).unwrap();
        assert!(!s.acquainted(&[0, 2]) && !s.acquainted(&[1, 3]));
        s.apply_matching(&m(&[(1, 2)])).unwrap();
        assert!(s.is_complete());
    }

    #[test]
    fn run_trace_reports() {
        let k4 = Graph::complete(4).to_hypergraph();
        let r = run_trace(&k4, 2, &[]).unwrap();
        assert_eq!(r.completion_round, Some(0));

        let p3 = Graph::path(3).to_hypergraph();
        let r = run_trace(&p3, 2, &[m(&[(0, 1)])]).unwrap();
        assert_eq!(r.completion_round, Some(1));
        assert_eq!(r.ledger_counts, vec![2, 3]);

        let e = run_trace(&p3, 2, &[m(&[(0, 2)])]).unwrap_err();
        assert_eq!(e, Error::IllegalSwap { round: 1, u: 0, v: 2 });
    }

    #[test]
    fn overlapping_swaps_rejected_with_round() {
        let p4 = Graph::path(4).to_hypergraph();
        let bad = Matching::from_disjoint(vec![(0, 1), (1, 2)]);
        let e = run_trace(&p4, 2, &[Matching::empty(), bad]).unwrap_err();
        assert_eq!(e, Error::NotAMatching { round: 2, vertex: 1 });
    }

    #[test]
    fn visits_tracked() {
        let mut s = SimState::init_graph(&Graph::path(3)).unwrap().with_visits();
        s.apply_matching(&m(&[(0, 1)])).unwrap();
        s.apply_matching(&m(&[(1, 2)])).unwrap();
        assert!(s.visited_all(0, &[0, 1, 2]));
        assert!(!s.visited_all(1, &[2]));
    }

    #[test]
    fn trace_json_roundtrip() {
        let t = vec![m(&[(0, 1)]), Matching::empty(), m(&[(1, 2), (3, 4)])];
        let json = trace_to_json(&t);
        assert_eq!(json, "[[[0,1]],[],[[1,2],[3,4]]]");
        assert_eq!(parse_trace(&json).unwrap(), t);
        assert!(parse_trace("[[[0,1],[1,2]]]").is_err());
    }
}
