//! Team schedule on a loose path.
//!
//! With `s = k-1`, pad the path length `l` up to a multiple `N` of `s` and
//! take a 1-factorization of all s-subsets of `[0, N)`. Each factor, trimmed
//! to `[0, l)`, splits the agents (labelled by their starting position) into
//! teams. For every factor the teams are grouped into contiguous blocks in a
//! seeded random order and then swept past each other by odd-even
//! transposition on blocks, so every two teams cross once. When a full team
//! `X` crosses a team `Y`, each set `X + {y}` and `Y + {x}` is brought into a
//! window of positions inside one edge of the path. Every k-set contains a
//! full team of some factor, so all k-sets meet. A closing sweep of `2l`
//! rounds walks every agent across the whole path.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::generators::seeded_rng;
use crate::model::{Hypergraph, LoosePath};

use super::baranyai::baranyai;
use super::path_route::{halving, odd_even_sort};
use super::{merge_lanes, Rounds, Schedule, StrategyTrace};

/// Position-level plan for `path`; agents are identified by starting index.
pub(crate) fn plan_loose_path(path: &LoosePath, k: usize, rng: &mut ChaCha8Rng) -> Result<Rounds> {
    let r = path.r();
    if k < 2 || k > r {
        return Err(Error::InvalidArity { k, r });
    }
    let ell = path.len();
    if ell <= 1 {
        return Ok(Vec::new());
    }
    let s = k - 1;
    let fact = baranyai(ell.div_ceil(s) * s, s)?;
    let mut arr: Vec<usize> = (0..ell).collect();
    let mut rounds = Vec::new();
    for factor in &fact.factors {
        let mut teams: Vec<Vec<usize>> = factor
            .iter()
            .map(|part| part.iter().map(|&a| a as usize).filter(|&a| a < ell).collect::<Vec<_>>())
            .filter(|t| !t.is_empty())
            .collect();
        teams.shuffle(rng);
        rounds.extend(group_teams(&mut arr, &teams));
        rounds.extend(sweep_teams(path, &mut arr, teams, s));
    }
    // closing sweep: every agent crosses the whole path
    for phase in 0..2 * ell {
        let round: Vec<(usize, usize)> = (phase % 2..ell - 1).step_by(2).map(|i| (i, i + 1)).collect();
        for &(i, j) in &round {
            arr.swap(i, j);
        }
        if !round.is_empty() {
            rounds.push(round);
        }
    }
    Ok(rounds)
}

fn positions_of(arr: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; arr.len()];
    for (p, &a) in arr.iter().enumerate() {
        pos[a] = p;
    }
    pos
}

/// Routes the teams into consecutive blocks in the given order.
fn group_teams(arr: &mut [usize], teams: &[Vec<usize>]) -> Rounds {
    let pos = positions_of(arr);
    let mut dest_of = vec![0; arr.len()];
    let mut next = 0;
    for team in teams {
        let mut members = team.clone();
        members.sort_by_key(|&a| pos[a]);
        for a in members {
            dest_of[a] = next;
            next += 1;
        }
    }
    let mut dest: Vec<usize> = arr.iter().map(|&a| dest_of[a]).collect();
    let rounds = halving(&mut dest, 0);
    for round in &rounds {
        for &(i, j) in round {
            arr.swap(i, j);
        }
    }
    rounds
}

fn meeting_groups(x: &[usize], y: &[usize], s: usize) -> Vec<Vec<usize>> {
    let mut groups = Vec::new();
    if x.len() == s {
        for &b in y {
            groups.push([x, &[b]].concat());
        }
    }
    if y.len() == s && !(x.len() == 1 && y.len() == 1 && !groups.is_empty()) {
        for &a in x.iter().rev() {
            groups.push([y, &[a]].concat());
        }
    }
    groups
}

fn has_window(path: &LoosePath, lo: usize, hi: usize, w: usize) -> bool {
    w <= hi + 1 - lo && (lo..=hi + 1 - w).any(|st| path.window_in_edge(st, w))
}

/// Sweeps the blocks past each other, one odd-even transposition phase per
/// team.
fn sweep_teams(path: &LoosePath, arr: &mut [usize], teams: Vec<Vec<usize>>, s: usize) -> Rounds {
    let ell = arr.len();
    let mut rounds = Vec::new();
    let mut blocks = teams;
    let q = blocks.len();
    for phase in 0..q {
        let mut offsets = vec![0];
        for b in &blocks {
            offsets.push(offsets.last().unwrap() + b.len());
        }
        let mut lanes = Vec::new();
        let mut deferred = Vec::new();
        for b in (phase % 2..q.saturating_sub(1)).step_by(2) {
            let (lo, hi) = (offsets[b], offsets[b + 2] - 1);
            let groups = meeting_groups(&blocks[b], &blocks[b + 1], s);
            if groups.iter().all(|g| has_window(path, lo, hi, g.len())) {
                lanes.push(micro_schedule(path, arr, lo, hi, &groups, lo, offsets[b + 1], hi));
            } else {
                deferred.push((b, groups));
            }
        }
        rounds.extend(merge_lanes(lanes));
        for (b, groups) in deferred {
            let (mut lo, mut hi) = (offsets[b], offsets[b + 2] - 1);
            while !groups.iter().all(|g| has_window(path, lo, hi, g.len())) {
                assert!(lo > 0 || hi + 1 < ell, "a window of width <= r exists on any path with an edge");
                lo = lo.saturating_sub(1);
                hi = (hi + 1).min(ell - 1);
            }
            rounds.extend(micro_schedule(path, arr, lo, hi, &groups, offsets[b], offsets[b + 1], offsets[b + 2] - 1));
        }
        for b in (phase % 2..q.saturating_sub(1)).step_by(2) {
            blocks.swap(b, b + 1);
        }
        let pos = positions_of(arr);
        for block in &mut blocks {
            block.sort_by_key(|&a| pos[a]);
        }
    }
    rounds
}

/// Meets every group inside region `[lo, hi]`, then leaves the region with
/// the two blocks `[a, mid)` and `[mid, b]` exchanged and everything else
/// where it started.
#[allow(clippy::too_many_arguments)]
fn micro_schedule(
    path: &LoosePath,
    arr: &mut [usize],
    lo: usize,
    hi: usize,
    groups: &[Vec<usize>],
    a: usize,
    mid: usize,
    b: usize,
) -> Rounds {
    let region = lo..hi + 1;
    let mut fin: Vec<usize> = arr[region.clone()].to_vec();
    let mut swapped: Vec<usize> = arr[mid..=b].to_vec();
    swapped.extend_from_slice(&arr[a..mid]);
    fin[a - lo..=b - lo].copy_from_slice(&swapped);

    let mut rounds = Vec::new();
    for g in groups {
        let local = &arr[region.clone()];
        let mut at: Vec<usize> =
            (0..local.len()).filter(|&i| g.contains(&local[i])).map(|i| i + lo).collect();
        at.sort_unstable();
        let (first, last) = (at[0], *at.last().unwrap());
        if path.window_in_edge(first, last - first + 1) {
            continue;
        }
        let w = g.len();
        let start = (lo..=hi + 1 - w)
            .filter(|&st| path.window_in_edge(st, w))
            .min_by_key(|&st| st.abs_diff(first))
            .expect("window exists in region");
        // group members fill the window in current order, the rest keep theirs
        let mut key = vec![0usize; local.len()];
        let mut inside = start - lo;
        let mut outside = 0;
        for (i, &agent) in local.iter().enumerate() {
            if g.contains(&agent) {
                key[i] = inside;
                inside += 1;
            } else {
                if outside == start - lo {
                    outside += w;
                }
                key[i] = outside;
                outside += 1;
            }
        }
        rounds.extend(sort_region(arr, lo, &key));
    }
    let local = &arr[region.clone()];
    let mut rank = std::collections::HashMap::new();
    for (i, &agent) in fin.iter().enumerate() {
        rank.insert(agent, i);
    }
    let key: Vec<usize> = local.iter().map(|agent| rank[agent]).collect();
    rounds.extend(sort_region(arr, lo, &key));
    rounds
}

fn sort_region(arr: &mut [usize], lo: usize, key: &[usize]) -> Rounds {
    let mut items: Vec<(usize, usize)> = key.iter().copied().zip(arr[lo..lo + key.len()].iter().copied()).collect();
    let rounds = odd_even_sort(&mut items, |&(k, _)| k);
    for (i, (_, agent)) in items.into_iter().enumerate() {
        arr[lo + i] = agent;
    }
    rounds.into_iter().map(|r| r.into_iter().map(|(i, j)| (i + lo, j + lo)).collect()).collect()
}

/// The team schedule on `path`, with agents identified by the vertices
/// they start on.
pub fn loose_path_strategy(path: &LoosePath, k: usize, seed: u64) -> Result<StrategyTrace> {
    let rounds = plan_loose_path(path, k, &mut seeded_rng(seed))?;
    let n = path.ordering().iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let h = Hypergraph::new(n, path.r(), path.edges())?;
    let mut schedule = Schedule::new(n);
    schedule.push_local(rounds, path.ordering());
    let ell = path.len();
    let s = k - 1;
    let factors = crate::model::binomial((ell.div_ceil(s) * s) as u64 - 1, s as u64 - 1);
    let trace = if n == ell {
        StrategyTrace::certified(schedule.into_rounds(), &h, k)?
    } else {
        // vertices off the path are isolated; certify on the path alone
        let mut relabel = vec![0u32; n];
        for (i, &v) in path.ordering().iter().enumerate() {
            relabel[v as usize] = i as u32;
        }
        let local = LoosePath::new((0..ell as u32).collect(), path.r())?;
        let hl = Hypergraph::new(ell, path.r(), local.edges())?;
        let mapped: Vec<_> = schedule
            .into_rounds()
            .into_iter()
            .map(|m| {
                crate::model::Matching::from_disjoint(
                    m.swaps().iter().map(|&(u, v)| (relabel[u as usize], relabel[v as usize])).collect(),
                )
            })
            .collect();
        let t = StrategyTrace::certified(mapped, &hl, k)?;
        let back: Vec<_> = t
            .matchings
            .iter()
            .map(|m| {
                crate::model::Matching::from_disjoint(
                    m.swaps().iter().map(|&(u, v)| (path.ordering()[u as usize], path.ordering()[v as usize])).collect(),
                )
            })
            .collect();
        StrategyTrace { matchings: back, ..t }
    };
    let rounds = trace.rounds() as f64;
    Ok(trace
        .with("path_len", ell)
        .with("factors", factors)
        .with("c_lp", rounds / (ell as f64).powi(k as i32 - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{replay, SimState};

    fn path(ell: usize, r: usize) -> LoosePath {
        LoosePath::new((0..ell as u32).collect(), r).unwrap()
    }

    #[test]
    fn graph_path_pairs() {
        let t = loose_path_strategy(&path(12, 2), 2, 0).unwrap();
        assert!(t.claimed_complete);
    }

    #[test]
    fn triples_on_short_paths() {
        for ell in [3, 5, 7, 9, 11] {
            for k in [2, 3] {
                let t = loose_path_strategy(&path(ell, 3), k, 1).unwrap();
                assert!(t.claimed_complete, "ell={ell} k={k}");
            }
        }
    }

    #[test]
    fn visits_every_vertex() {
        let p = path(9, 3);
        let t = loose_path_strategy(&p, 2, 4).unwrap();
        let h = Hypergraph::new(9, 3, p.edges()).unwrap();
        let mut st = SimState::init(&h, 2).unwrap().with_visits();
        replay(&mut st, &t.matchings).unwrap();
        let all: Vec<u32> = (0..9).collect();
        assert!((0..9).all(|a| st.visited_all(a, &all)));
    }

    #[test]
    fn wide_edges() {
        let t = loose_path_strategy(&path(13, 4), 4, 2).unwrap();
        assert!(t.claimed_complete);
        let t = loose_path_strategy(&path(10, 4), 3, 2).unwrap();
        assert!(t.claimed_complete);
    }

    #[test]
    fn arity_checked() {
        assert!(matches!(loose_path_strategy(&path(5, 3), 4, 0), Err(Error::InvalidArity { .. })));
    }
}
