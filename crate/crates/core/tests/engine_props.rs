//! Engine properties checked against a naive ledger kept in a hash set.

use std::collections::HashSet;

use acqlab::engine::{parse_trace, run_trace, trace_to_json, SimState};
use acqlab::model::subset::{binomial, rank_k_subset, unrank_k_subset};
use acqlab::model::{Hypergraph, Matching};
use acqlab::oracle::lower_bound_for;
use proptest::prelude::*;

/// Random r-uniform hypergraph plus random greedy matchings of its shadow.
fn instance() -> impl Strategy<Value = (Hypergraph, usize, Vec<Matching>)> {
    (3usize..10, 2usize..4)
        .prop_flat_map(|(n, r)| {
            let r = r.min(n);
            let edge = proptest::collection::btree_set(0..n as u32, r).prop_map(|s| s.into_iter().collect::<Vec<_>>());
            (
                Just(n),
                Just(r),
                proptest::collection::vec(edge, 1..12),
                2..=r,
                proptest::collection::vec(proptest::collection::vec(any::<u32>(), 0..6), 0..25),
            )
        })
        .prop_map(|(n, r, edges, k, picks)| {
            let h = Hypergraph::new(n, r, edges).unwrap();
            let pairs: Vec<(u32, u32)> = h.underlying_graph().edges().to_vec();
            let matchings = picks
                .into_iter()
                .map(|pick| {
                    let mut used = vec![false; n];
                    let mut swaps = Vec::new();
                    for x in pick {
                        let (u, v) = pairs[x as usize % pairs.len()];
                        if !used[u as usize] && !used[v as usize] {
                            used[u as usize] = true;
                            used[v as usize] = true;
                            swaps.push((u, v));
                        }
                    }
                    Matching::new(swaps, 0).unwrap()
                })
                .collect();
            (h, k, matchings)
        })
}

fn naive_sets(h: &Hypergraph, k: usize, occ: &[u32], known: &mut HashSet<Vec<u32>>) {
    for e in h.edges() {
        let agents: Vec<u32> = e.iter().map(|&v| occ[v as usize]).collect();
        let m = agents.len();
        for mask in 0u32..1 << m {
            if mask.count_ones() as usize == k {
                let mut s: Vec<u32> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| agents[i]).collect();
                s.sort_unstable();
                known.insert(s);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ledger_matches_naive_replay((h, k, ms) in instance()) {
        let mut state = SimState::init(&h, k).unwrap();
        let mut occ: Vec<u32> = (0..h.n() as u32).collect();
        let mut known = HashSet::new();
        naive_sets(&h, k, &occ, &mut known);
        prop_assert_eq!(state.ledger().count(), known.len() as u64);
        for m in &ms {
            state.apply_matching(m).unwrap();
            for &(u, v) in m.swaps() {
                occ.swap(u as usize, v as usize);
            }
            naive_sets(&h, k, &occ, &mut known);
            prop_assert_eq!(state.ledger().count(), known.len() as u64);
            prop_assert_eq!(state.occupants(), &occ[..]);
        }
        for s in &known {
            prop_assert!(state.acquainted(s));
        }
    }

    #[test]
    fn positions_stay_a_bijection((h, k, ms) in instance()) {
        let mut state = SimState::init(&h, k).unwrap();
        for m in &ms {
            state.apply_matching(m).unwrap();
            for a in 0..h.n() as u32 {
                prop_assert_eq!(state.occupant(state.position(a)), a);
            }
        }
    }

    #[test]
    fn ledger_counts_never_drop((h, k, ms) in instance()) {
        let report = run_trace(&h, k, &ms).unwrap();
        prop_assert!(report.ledger_counts.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(report.ledger_counts.len(), ms.len() + 1);
        if let Some(c) = report.completion_round {
            prop_assert!(c as u64 >= lower_bound_for(&h, k).unwrap());
            prop_assert_eq!(report.ledger_counts[c], report.total_tuples);
        }
    }

    #[test]
    fn trace_json_round_trips((h, k, ms) in instance()) {
        let back = parse_trace(&trace_to_json(&ms)).unwrap();
        prop_assert_eq!(&back, &ms);
        prop_assert_eq!(run_trace(&h, k, &back).unwrap(), run_trace(&h, k, &ms).unwrap());
    }

    #[test]
    fn subset_rank_is_a_bijection(n in 1usize..14, k in 1usize..6, seed in any::<u64>()) {
        prop_assume!(k <= n);
        let total = binomial(n as u64, k as u64);
        let rank = seed % total;
        let s = unrank_k_subset(rank, n, k).unwrap();
        prop_assert_eq!(s.len(), k);
        prop_assert!(s.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(rank_k_subset(&s, n, k).unwrap(), rank);
    }
}

#[test]
fn illegal_swaps_leave_state_untouched() {
    let h = Hypergraph::new(4, 2, [vec![0, 1], vec![1, 2]]).unwrap();
    let mut state = SimState::init(&h, 2).unwrap();
    let before = state.clone();
    assert!(state.apply_matching(&Matching::new(vec![(0, 3)], 1).unwrap()).is_err());
    assert_eq!(state.occupants(), before.occupants());
    assert_eq!(state.ledger(), before.ledger());
    assert_eq!(state.round(), before.round());
}
