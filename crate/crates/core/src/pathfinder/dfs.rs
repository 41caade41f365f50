//! Depth-first search for a long loose path.
//!
//! The vertex set is partitioned into the current path `P`, the unexplored
//! set `U`, dead ends `W`, and retired companions `W~`. From the path's last
//! vertex the search adds an edge whose other `r-1` vertices all lie in `U`;
//! when none exists the last vertex goes to `W` and the `r-2` vertices before
//! it go to `W~`, shrinking the path by one edge. A single-vertex dead end is
//! replaced by a fresh vertex of `U`.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::generators::seeded_rng;
use crate::model::{Hypergraph, LoosePath, Vertex};

/// Explicit constant for which `H_r(n, c/n^(r-1))` has a loose path on at
/// least `delta * n` vertices with probability at least `1 - exp(-n)`:
///
/// `c = 2 (r-1)! ln 4 / ( (1-delta)/(2(r-1)) * ((1-delta)/2)^(r-1) )`
pub fn long_path_constant(r: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    if r < 2 {
        return Err(Error::InvalidUniformity { n: 0, r });
    }
    let fact: f64 = (1..r).map(|i| i as f64).product();
    let w = (1.0 - delta) / (2.0 * (r - 1) as f64);
    let u = ((1.0 - delta) / 2.0).powi(r as i32 - 1);
    Ok(2.0 * fact * 4f64.ln() / (w * u))
}

/// Which part of the partition a vertex is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Path,
    Unexplored,
    DeadEnd,
    Retired,
}

/// What one call to [`DfsSearch::step`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Extended,
    Backtracked,
    Restarted,
    Done,
}

/// A resumable run of the search, exposing its partition after every step.
#[derive(Debug, Clone)]
pub struct DfsSearch<'a> {
    h: &'a Hypergraph,
    incidence: Vec<Vec<usize>>,
    /// vertex -> exploration priority (lower first)
    priority: Vec<u32>,
    /// priority -> vertex
    order: Vec<Vertex>,
    cursor: usize,
    roles: Vec<Role>,
    path: Vec<Vertex>,
    dead: usize,
    retired: usize,
    best: Vec<Vertex>,
    steps: usize,
    done: bool,
}

impl<'a> DfsSearch<'a> {
    /// `seed = None` explores vertices in index order; otherwise the
    /// exploration priority is a seeded shuffle.
    pub fn new(h: &'a Hypergraph, seed: Option<u64>) -> Self {
        let n = h.n();
        let mut order: Vec<Vertex> = (0..n as Vertex).collect();
        if let Some(s) = seed {
            order.shuffle(&mut seeded_rng(s));
        }
        let mut priority = vec![0u32; n];
        for (p, &v) in order.iter().enumerate() {
            priority[v as usize] = p as u32;
        }
        let mut search = Self {
            h,
            incidence: h.incidence(),
            priority,
            order,
            cursor: 0,
            roles: vec![Role::Unexplored; n],
            path: Vec::new(),
            dead: 0,
            retired: 0,
            best: Vec::new(),
            steps: 0,
            done: n == 0,
        };
        if n > 0 {
            search.restart();
        }
        search
    }

    fn restart(&mut self) -> bool {
        while self.cursor < self.order.len() {
            let v = self.order[self.cursor];
            self.cursor += 1;
            if self.roles[v as usize] == Role::Unexplored {
                self.roles[v as usize] = Role::Path;
                self.path.push(v);
                return true;
            }
        }
        false
    }

    fn note_best(&mut self) {
        if self.path.len() > self.best.len() {
            self.best.clone_from(&self.path);
        }
    }

    /// The lexicographically least (by priority) extension set, if any.
    fn extension(&self, v: Vertex) -> Option<Vec<Vertex>> {
        let mut best: Option<Vec<u32>> = None;
        for &e in &self.incidence[v as usize] {
            let edge = &self.h.edges()[e];
            if edge.iter().any(|&x| x != v && self.roles[x as usize] != Role::Unexplored) {
                continue;
            }
            let mut key: Vec<u32> =
                edge.iter().filter(|&&x| x != v).map(|&x| self.priority[x as usize]).collect();
            key.sort_unstable();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
        best.map(|key| key.into_iter().map(|p| self.order[p as usize]).collect())
    }

    fn has_unexplored(&self) -> bool {
        self.order[self.cursor..].iter().any(|&v| self.roles[v as usize] == Role::Unexplored)
    }

    pub fn step(&mut self) -> Step {
        if self.done {
            return Step::Done;
        }
        self.steps += 1;
        let v = *self.path.last().expect("path is non-empty while running");
        if let Some(f) = self.extension(v) {
            for &u in &f {
                self.roles[u as usize] = Role::Path;
            }
            self.path.extend(f);
            return Step::Extended;
        }
        self.note_best();
        let len = self.path.len();
        self.path.pop();
        self.roles[v as usize] = Role::DeadEnd;
        self.dead += 1;
        if len != 1 {
            for _ in 0..self.h.r() - 2 {
                let w = self.path.pop().expect("path of length >= r");
                self.roles[w as usize] = Role::Retired;
                self.retired += 1;
            }
            return Step::Backtracked;
        }
        if self.has_unexplored() && self.restart() {
            Step::Restarted
        } else {
            self.done = true;
            Step::Done
        }
    }

    /// Runs to completion and returns the longest path seen.
    pub fn run(mut self) -> LoosePath {
        while self.step() != Step::Done {
            // Once U is empty no extension is possible; the longest path is
            // already recorded or is the current one.
            if !self.has_unexplored() {
                break;
            }
        }
        self.note_best();
        let best = if self.best.is_empty() { vec![0] } else { self.best };
        LoosePath::new(best, self.h.r()).expect("search builds loose paths")
    }

    pub fn path(&self) -> &[Vertex] {
        &self.path
    }

    pub fn role(&self, v: Vertex) -> Role {
        self.roles[v as usize]
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn best_len(&self) -> usize {
        self.best.len().max(self.path.len())
    }

    /// Sizes of `(P, U, W, W~)`.
    pub fn partition_sizes(&self) -> (usize, usize, usize, usize) {
        let n = self.roles.len();
        let p = self.path.len();
        (p, n - p - self.dead - self.retired, self.dead, self.retired)
    }

    /// Verifies the partition bookkeeping, `|W~| <= (r-2)|W|`, and that the
    /// current path is a loose path of the hypergraph.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let mut counts = [0usize; 4];
        for r in &self.roles {
            counts[*r as usize] += 1;
        }
        let (p, u, w, wt) = self.partition_sizes();
        if counts != [p, u, w, wt] {
            return Err(format!("role counts {counts:?} disagree with ({p},{u},{w},{wt})"));
        }
        if self.path.iter().any(|&v| self.roles[v as usize] != Role::Path) {
            return Err("path vertex without Path role".into());
        }
        if wt > (self.h.r() - 2) * w {
            return Err(format!("|W~|={wt} exceeds (r-2)|W|={}", (self.h.r() - 2) * w));
        }
        if !self.path.is_empty() {
            let lp = LoosePath::new(self.path.clone(), self.h.r()).map_err(|e| e.to_string())?;
            if !lp.is_in(self.h) {
                return Err("path uses a missing edge".into());
            }
        }
        Ok(())
    }
}

/// Longest loose path found by one run of the search.
pub fn dfs_loose_path(h: &Hypergraph, seed: Option<u64>) -> LoosePath {
    if h.n() == 0 {
        return LoosePath::new(vec![0], h.r()).expect("trivial path");
    }
    DfsSearch::new(h, seed).run()
}

/// Best of several seeded runs (`seed`, `seed+1`, ...).
pub fn longest_loose_path(h: &Hypergraph, seed: u64, runs: usize) -> LoosePath {
    (0..runs.max(1) as u64)
        .map(|i| dfs_loose_path(h, Some(seed.wrapping_add(i))))
        .max_by_key(|p| p.len())
        .expect("at least one run")
}
