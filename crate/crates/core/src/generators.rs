//! Seeded random structures.
//!
//! Every generator is a pure function of its parameters and a `u64` seed.
//! The stream is ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), which is
//! value-stable across platforms; probabilities are tested as
//! `rng.gen::<f64>() < p` with one draw per candidate subset, taken in
//! lexicographic subset order. Shuffles are Fisher-Yates
//! (`SliceRandom::shuffle`).

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::subset::next_combination;
use crate::model::{GoodTree, Graph, Hypergraph, LoosePath, Vertex};

/// The lab's pinned generator.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidProbability(p))
    }
}

/// Binomial random graph `G(n, p)`.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// Random r-uniform hypergraph `H_r(n, p)`. With `r = 2` this draws exactly
/// the same stream as [`gen_gnp`].
pub fn gen_hrnp(n: usize, r: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    if r < 2 || r > n {
        return Err(Error::InvalidUniformity { n, r });
    }
    check_probability(p)?;
    let mut rng = seeded_rng(seed);
    let mut edges = Vec::new();
    let mut idx: Vec<Vertex> = (0..r as Vertex).collect();
    loop {
        if rng.gen::<f64>() < p {
            edges.push(idx.clone());
        }
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    Ok(Hypergraph::from_sorted_unchecked(n, r, edges))
}

/// A uniformly random ordering of all `C(n, 2)` pairs: the random graph
/// process.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSequence {
    pub n: usize,
    pub order: Vec<(Vertex, Vertex)>,
}

impl EdgeSequence {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Checks that `order` is a permutation of the full pair set.
    pub fn validate(&self) -> Result<()> {
        let mut sorted = self.order.clone();
        for e in &mut sorted {
            *e = (e.0.min(e.1), e.0.max(e.1));
        }
        sorted.sort_unstable();
        if sorted != Graph::complete(self.n).edges() {
            return Err(Error::InvalidStructure("order is not a permutation of all pairs".into()));
        }
        Ok(())
    }
}

pub fn gen_process(n: usize, seed: u64) -> Result<EdgeSequence> {
    if n < 2 {
        return Err(Error::InvalidStructure(format!("edge process needs n >= 2, got {n}")));
    }
    let mut order = Graph::complete(n).edges().to_vec();
    order.shuffle(&mut seeded_rng(seed));
    Ok(EdgeSequence { n, order })
}

/// The hitting time of connectivity: least `m` such that the first `m` edges
/// span a connected graph.
pub fn connectivity_time(seq: &EdgeSequence) -> usize {
    if seq.n <= 1 {
        return 0;
    }
    let mut uf = UnionFind::<usize>::new(seq.n);
    let mut components = seq.n;
    for (m, &(u, v)) in seq.order.iter().enumerate() {
        if uf.union(u as usize, v as usize) {
            components -= 1;
            if components == 1 {
                return m + 1;
            }
        }
    }
    seq.order.len()
}

/// The graph on the first `m` edges of the process.
pub fn snapshot(seq: &EdgeSequence, m: usize) -> Result<Graph> {
    if m > seq.order.len() {
        return Err(Error::IndexOutOfRange { index: m, max: seq.order.len() });
    }
    Graph::new(seq.n, seq.order[..m].iter().copied())
}

/// A random good tree on `n` vertices with vertex labels shuffled.
///
/// The spine takes between 30% and 90% of the vertices; up to one heavy vertex
/// per spine position is drawn from the rest, and the remaining vertices hang
/// as light vertices from uniformly chosen spine or heavy vertices.
pub fn gen_good_tree(n: usize, seed: u64) -> Result<GoodTree> {
    if n < 1 {
        return Err(Error::InvalidStructure("good tree needs n >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let lo = ((n as f64 * 0.3).ceil() as usize).max(1);
    let hi = ((n as f64 * 0.9).floor() as usize).max(lo).min(n);
    let spine_len = rng.gen_range(lo..=hi);
    let rest = n - spine_len;
    let heavy_count = rng.gen_range(0..=rest.min(spine_len));
    random_good_tree(n, spine_len, heavy_count, &mut rng)
}

/// A random good tree with prescribed spine length and heavy count.
pub fn gen_good_tree_shaped(n: usize, spine_len: usize, heavy_count: usize, seed: u64) -> Result<GoodTree> {
    if spine_len == 0 || spine_len > n || heavy_count > spine_len.min(n - spine_len) {
        return Err(Error::InvalidStructure(format!(
            "cannot shape a good tree with n={n}, spine={spine_len}, heavy={heavy_count}"
        )));
    }
    random_good_tree(n, spine_len, heavy_count, &mut seeded_rng(seed))
}

fn random_good_tree(n: usize, spine_len: usize, heavy_count: usize, rng: &mut ChaCha8Rng) -> Result<GoodTree> {
    let mut labels: Vec<Vertex> = (0..n as Vertex).collect();
    labels.shuffle(rng);
    let spine = labels[..spine_len].to_vec();
    let mut positions: Vec<usize> = (0..spine_len).collect();
    positions.shuffle(rng);
    let heavy: BTreeMap<usize, Vertex> = positions[..heavy_count]
        .iter()
        .zip(&labels[spine_len..spine_len + heavy_count])
        .map(|(&i, &u)| (i, u))
        .collect();
    let anchors: Vec<Vertex> = spine.iter().chain(heavy.values()).copied().collect();
    let light = labels[spine_len + heavy_count..]
        .iter()
        .map(|&w| (w, anchors[rng.gen_range(0..anchors.len())]))
        .collect();
    GoodTree::new(spine, heavy, light)
}

/// Adds the edges of a random loose path on `len` vertices to `h` and returns
/// the augmented hypergraph with the planted path.
pub fn plant_loose_path(h: &Hypergraph, len: usize, seed: u64) -> Result<(Hypergraph, LoosePath)> {
    if len > h.n() {
        return Err(Error::InvalidStructure(format!("path of {len} vertices exceeds n={}", h.n())));
    }
    let mut labels: Vec<Vertex> = (0..h.n() as Vertex).collect();
    labels.shuffle(&mut seeded_rng(seed));
    labels.truncate(len);
    let path = LoosePath::new(labels, h.r())?;
    let planted = h.with_edges(path.edges())?;
    Ok((planted, path))
}
