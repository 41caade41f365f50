use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::subset::{for_each_k_subset, next_combination};
use super::Vertex;
use crate::error::{Error, Result};

/// Canonical on-disk form shared by graphs and hypergraphs:
/// `{"n": int, "r": int, "edges": [[int, ...], ...]}` with every edge and the
/// edge list sorted.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawStructure {
    n: usize,
    r: usize,
    edges: Vec<Vec<Vertex>>,
}

/// A simple undirected graph on `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// Builds a graph, normalising each pair to `(min, max)` and sorting and
    /// deduplicating the edge list.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidStructure(format!("self-loop at {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::InvalidStructure(format!("edge {{{u},{v}}} outside [0,{n})")));
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n as Vertex {
            for v in u + 1..n as Vertex {
                edges.push((u, v));
            }
        }
        Self { n, edges }
    }

    pub fn path(n: usize) -> Self {
        Self { n, edges: (1..n as Vertex).map(|v| (v - 1, v)).collect() }
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.edges.push((0, n as Vertex - 1));
            g.edges.sort_unstable();
        }
        g
    }

    /// Star with centre 0 and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        Self { n, edges: (1..n as Vertex).map(|v| (0, v)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Sorted neighbour lists.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0 as Vertex]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn to_hypergraph(&self) -> Hypergraph {
        Hypergraph {
            n: self.n,
            r: 2,
            edges: self.edges.iter().map(|&(u, v)| vec![u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialises")
    }
}

impl TryFrom<RawStructure> for Graph {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        if raw.r != 2 {
            return Err(Error::InvalidStructure(format!("graph requires r=2, got r={}", raw.r)));
        }
        let mut pairs = Vec::with_capacity(raw.edges.len());
        for e in raw.edges {
            if e.len() != 2 {
                return Err(Error::InvalidStructure(format!("edge {e:?} is not a pair")));
            }
            pairs.push((e[0], e[1]));
        }
        Graph::new(raw.n, pairs)
    }
}

impl From<Graph> for RawStructure {
    fn from(g: Graph) -> Self {
        RawStructure { n: g.n, r: 2, edges: g.edges.into_iter().map(|(u, v)| vec![u, v]).collect() }
    }
}

/// An r-uniform hypergraph on `[0, n)`; graphs are the `r = 2` case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Builds a hypergraph; each edge is sorted, then the edge list is sorted
    /// and deduplicated.
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidUniformity { n, r });
        }
        let mut out = Vec::new();
        for mut e in edges {
            if e.len() != r {
                return Err(Error::InvalidStructure(format!("edge {e:?} has size != r={r}")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidStructure(format!("edge {e:?} repeats a vertex")));
            }
            if e[r - 1] as usize >= n {
                return Err(Error::InvalidStructure(format!("edge {e:?} outside [0,{n})")));
            }
            out.push(e);
        }
        out.sort_unstable();
        out.dedup();
        Ok(Self { n, r, edges: out })
    }

    /// Every r-subset of `[0, n)`.
    pub fn complete(n: usize, r: usize) -> Result<Self> {
        if r < 2 || r > n {
            return Err(Error::InvalidUniformity { n, r });
        }
        let mut edges = Vec::new();
        let mut idx: Vec<Vertex> = (0..r as Vertex).collect();
        loop {
            edges.push(idx.clone());
            if !next_combination(&mut idx, n) {
                break;
            }
        }
        Ok(Self { n, r, edges })
    }

    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, edges: Vec<Vec<Vertex>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Self { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn edges(&self) -> &[Vec<Vertex>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Membership test for a sorted r-set.
    pub fn contains_edge(&self, sorted: &[Vertex]) -> bool {
        self.edges.binary_search_by(|e| e.as_slice().cmp(sorted)).is_ok()
    }

    /// For every vertex, the indices of the edges containing it.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            for &v in e {
                inc[v as usize].push(i);
            }
        }
        inc
    }

    /// `{u, v}` is an edge iff some hyperedge contains both.
    pub fn underlying_graph(&self) -> Graph {
        let mut pairs = Vec::new();
        for e in &self.edges {
            for_each_k_subset(e, 2, |p| pairs.push((p[0], p[1])));
        }
        pairs.sort_unstable();
        pairs.dedup();
        Graph { n: self.n, edges: pairs }
    }

    /// Inverse of [`Graph::to_hypergraph`]; `None` unless `r = 2`.
    pub fn as_graph(&self) -> Option<Graph> {
        (self.r == 2).then(|| Graph {
            n: self.n,
            edges: self.edges.iter().map(|e| (e[0], e[1])).collect(),
        })
    }

    /// Returns a copy with additional edges merged in.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = Vec<Vertex>>) -> Result<Self> {
        Self::new(self.n, self.r, self.edges.iter().cloned().chain(extra))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialises")
    }
}

impl From<Graph> for Hypergraph {
    fn from(g: Graph) -> Self {
        g.to_hypergraph()
    }
}

impl TryFrom<RawStructure> for Hypergraph {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        let h = Hypergraph::new(raw.n, raw.r, raw.edges.clone())?;
        if h.edges.len() != raw.edges.len() {
            return Err(Error::InvalidStructure("duplicate edges".into()));
        }
        Ok(h)
    }
}

impl From<Hypergraph> for RawStructure {
    fn from(h: Hypergraph) -> Self {
        RawStructure { n: h.n, r: h.r, edges: h.edges }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_triple_gives_triangle() {
        let h = Hypergraph::new(3, 3, [vec![2, 0, 1]]).unwrap();
        assert_eq!(h.underlying_graph(), Graph::complete(3));
    }

    #[test]
    fn graph_roundtrips_through_r2() {
        let g = Graph::new(5, [(0, 1), (3, 1), (4, 2)]).unwrap();
        let h = g.to_hypergraph();
        assert_eq!(h.underlying_graph(), g);
        assert_eq!(h.as_graph().unwrap(), g);
    }

    #[test]
    fn two_cliques_sharing_a_vertex() {
        let h = Hypergraph::new(5, 3, [vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let g = h.underlying_graph();
        assert_eq!(g.edge_count(), 6);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 4) && !g.has_edge(1, 3));
    }

    #[test]
    fn invalid_edges_rejected() {
        assert!(Hypergraph::new(4, 3, [vec![0, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, [vec![0, 1, 4]]).is_err());
        assert!(Graph::new(3, [(1, 1)]).is_err());
    }

    #[test]
    fn canonical_json_is_sorted() {
        let h = Hypergraph::new(5, 3, [vec![4, 3, 2], vec![2, 1, 0]]).unwrap();
        assert_eq!(h.to_json(), r#"{"n":5,"r":3,"edges":[[0,1,2],[2,3,4]]}"#);
        let back: Hypergraph = serde_json::from_str(&h.to_json()).unwrap();
        assert_eq!(back, h);
        let g = Graph::new(3, [(2, 1), (0, 1)]).unwrap();
        assert_eq!(g.to_json(), r#"{"n":3,"r":2,"edges":[[0,1],[1,2]]}"#);
        assert!(serde_json::from_str::<Graph>(r#"{"n":3,"r":3,"edges":[]}"#).is_err());
        assert!(serde_json::from_str::<Hypergraph>(r#"{"n":3,"r":2,"edges":[[0,1],[1,0]]}"#).is_err());
    }

    #[test]
    fn connectivity_and_trees() {
        assert!(Graph::path(5).is_tree());
        assert!(!Graph::cycle(5).is_tree());
        assert!(Graph::cycle(5).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert_eq!(Graph::complete(4).edge_count(), 6);
    }
}
