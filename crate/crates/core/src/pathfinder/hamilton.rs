//! Randomized backtracking search for a loose Hamilton path.
//!
//! When `r-1` does not divide `n-1` the target is the largest `N <= n` with
//! `(r-1) | (N-1)`; the `n - N` uncovered vertices are left to the caller.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::generators::seeded_rng;
use crate::model::{Hypergraph, LoosePath, Vertex};

/// Largest `N <= n` with `(r-1) | (N-1)`.
pub fn hamilton_target(n: usize, r: usize) -> usize {
    if n == 0 {
        return 0;
    }
    n - (n - 1) % (r - 1)
}

struct Search<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    used: Vec<bool>,
    /// number of incident edges whose vertices are all unused
    live: Vec<u32>,
    edge_live: Vec<bool>,
    zero_live: Vec<Vertex>,
    slack: usize,
    best: Vec<Vertex>,
}

impl Search<'_> {
    fn take(&mut self, v: Vertex, undo: &mut Vec<usize>) {
        self.used[v as usize] = true;
        for &e in &self.incidence[v as usize] {
            if self.edge_live[e] {
                self.edge_live[e] = false;
                undo.push(e);
                for &y in &self.h.edges()[e] {
                    self.live[y as usize] -= 1;
                    if self.live[y as usize] == 0 && !self.used[y as usize] {
                        self.zero_live.push(y);
                    }
                }
            }
        }
    }

    fn untake(&mut self, v: Vertex, undo: &[usize]) {
        for &e in undo.iter().rev() {
            self.edge_live[e] = true;
            for &y in &self.h.edges()[e] {
                self.live[y as usize] += 1;
            }
        }
        self.used[v as usize] = false;
        self.zero_live.retain(|&y| self.live[y as usize] == 0 && !self.used[y as usize]);
    }

    /// Vertices that can no longer join the path from endpoint `x`.
    fn lost(&self, x: Vertex) -> usize {
        self.zero_live
            .iter()
            .filter(|&&y| !self.used[y as usize])
            .filter(|&&y| {
                !self.incidence[x as usize].iter().any(|&e| {
                    let edge = &self.h.edges()[e];
                    edge.contains(&y) && edge.iter().all(|&z| z == x || !self.used[z as usize])
                })
            })
            .count()
    }

    /// Candidate extensions from endpoint `x`: (other vertices, new endpoint).
    fn candidates(&self, x: Vertex, rng: &mut impl Rng) -> Vec<(Vec<Vertex>, Vertex)> {
        let mut out: Vec<(usize, u32, Vec<Vertex>, Vertex)> = Vec::new();
        for &e in &self.incidence[x as usize] {
            let edge = &self.h.edges()[e];
            if edge.iter().any(|&z| z != x && self.used[z as usize]) {
                continue;
            }
            let others: Vec<Vertex> = edge.iter().copied().filter(|&z| z != x).collect();
            for &end in &others {
                // fewer onward options first; live[end] still counts edge e
                let onward = self.live[end as usize] as usize;
                out.push((onward, rng.gen(), others.clone(), end));
            }
        }
        out.sort_by_key(|c| (c.0, c.1));
        out.into_iter().map(|(_, _, o, e)| (o, e)).collect()
    }
}

/// Searches for a loose path on `hamilton_target(n, r)` vertices, giving up
/// after `budget` node expansions.
pub fn find_loose_hamilton_path(h: &Hypergraph, budget: usize, seed: u64) -> Option<LoosePath> {
    let target = hamilton_target(h.n(), h.r());
    search(h, h.n().saturating_sub(target), budget, seed).0
}

/// The same backtracking search without the coverage pruning, returning the
/// longest loose path met within `budget` expansions.
pub fn search_long_loose_path(h: &Hypergraph, budget: usize, seed: u64) -> LoosePath {
    let (found, best) = search(h, h.n(), budget, seed);
    found.unwrap_or(best)
}

fn search(h: &Hypergraph, slack: usize, budget: usize, seed: u64) -> (Option<LoosePath>, LoosePath) {
    let n = h.n();
    let r = h.r();
    let target = hamilton_target(n, r);
    let single = LoosePath::new(vec![0], r).expect("single vertex");
    if target <= 1 {
        return ((target == 1).then(|| single.clone()), single);
    }
    let mut rng = seeded_rng(seed);
    let incidence = h.incidence();
    let live: Vec<u32> = incidence.iter().map(|i| i.len() as u32).collect();
    let edge_live = vec![true; h.edge_count()];
    let mut starts: Vec<Vertex> = (0..n as Vertex).filter(|&v| live[v as usize] > 0).collect();
    starts.shuffle(&mut rng);
    // vertices with few edges make better endpoints
    starts.sort_by_key(|&v| live[v as usize]);
    let zero_live: Vec<Vertex> = (0..n as Vertex).filter(|&v| live[v as usize] == 0).collect();
    if zero_live.len() > slack || starts.is_empty() {
        return (None, single);
    }
    let mut s = Search { h, incidence, used: vec![false; n], live, edge_live, zero_live, slack, best: Vec::new() };

    // Restarts split the budget so a poor start cannot eat all of it.
    let per_start = (budget / 8).max(1);
    let mut spent = 0usize;
    let mut found = None;
    for &start in starts.iter().cycle().take(starts.len() * 8) {
        if spent >= budget {
            break;
        }
        let allowance = per_start.min(budget - spent);
        let mut expansions = 0usize;
        let mut undo0 = Vec::new();
        s.take(start, &mut undo0);
        let mut path = vec![start];
        let ok = extend(&mut s, &mut path, target, &mut expansions, allowance, &mut rng);
        spent += expansions;
        if ok {
            found = LoosePath::new(path, r).ok();
            break;
        }
        s.untake(start, &undo0);
    }
    let best = if s.best.is_empty() { single } else { LoosePath::new(s.best, r).expect("search builds loose paths") };
    (found, best)
}

fn extend(
    s: &mut Search,
    path: &mut Vec<Vertex>,
    target: usize,
    expansions: &mut usize,
    allowance: usize,
    rng: &mut impl Rng,
) -> bool {
    if path.len() > s.best.len() {
        s.best.clone_from(path);
    }
    if path.len() == target {
        return true;
    }
    if *expansions >= allowance {
        return false;
    }
    *expansions += 1;
    let x = *path.last().expect("non-empty");
    if s.slack < s.used.len() && s.lost(x) > s.slack {
        return false;
    }
    for (others, end) in s.candidates(x, rng) {
        let mut undo = Vec::new();
        let mut order = others.clone();
        order.retain(|&z| z != end);
        order.push(end);
        for &z in &order {
            let mut u = Vec::new();
            s.take(z, &mut u);
            undo.push((z, u));
        }
        let base = path.len();
        path.extend(&order);
        if extend(s, path, target, expansions, allowance, rng) {
            return true;
        }
        path.truncate(base);
        for (z, u) in undo.into_iter().rev() {
            s.untake(z, &u);
        }
        if *expansions >= allowance {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn targets() {
        assert_eq!(hamilton_target(61, 3), 61);
        assert_eq!(hamilton_target(60, 3), 59);
        assert_eq!(hamilton_target(10, 2), 10);
        assert_eq!(hamilton_target(10, 4), 10);
        assert_eq!(hamilton_target(9, 4), 7);
    }

    #[test]
    fn complete_five_three() {
        let h = Hypergraph::complete(5, 3).unwrap();
        let p = find_loose_hamilton_path(&h, 1000, 0).unwrap();
        assert_eq!(p.len(), 5);
        assert_eq!(p.edge_count(), 2);
        assert!(p.is_in(&h));
    }

    #[test]
    fn edgeless_has_none() {
        let h = Hypergraph::new(7, 3, []).unwrap();
        assert!(find_loose_hamilton_path(&h, 1000, 0).is_none());
    }

    #[test]
    fn planted_paths_are_found() {
        for seed in 0..5 {
            let base = crate::generators::gen_hrnp(41, 3, 0.004, seed).unwrap();
            let (h, _) = crate::generators::plant_loose_path(&base, 41, seed).unwrap();
            let p = find_loose_hamilton_path(&h, 200_000, seed).expect("planted path exists");
            assert_eq!(p.len(), 41);
            assert!(p.is_in(&h));
        }
    }
}
