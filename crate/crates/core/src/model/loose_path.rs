use serde::{Deserialize, Serialize};

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

/// A loose path given by its vertex ordering `(v_1, ..., v_l)`.
///
/// Edge `i` (0-based) consists of the `r` consecutive vertices starting at
/// position `i(r-1)`; consecutive edges share exactly one vertex, so
/// `l = k(r-1) + 1` for `k` edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct LoosePath {
    ordering: Vec<Vertex>,
    r: usize,
}

#[derive(Deserialize)]
struct RawPath {
    ordering: Vec<Vertex>,
    #[serde(default = "default_r")]
    r: usize,
}

fn default_r() -> usize {
    2
}

impl TryFrom<RawPath> for LoosePath {
    type Error = Error;

    fn try_from(raw: RawPath) -> Result<Self> {
        LoosePath::new(raw.ordering, raw.r)
    }
}

impl LoosePath {
    pub fn new(ordering: Vec<Vertex>, r: usize) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidStructure(format!("loose path needs r >= 2, got {r}")));
        }
        if ordering.is_empty() || !(ordering.len() - 1).is_multiple_of(r - 1) {
            return Err(Error::InvalidStructure(format!(
                "length {} is not k(r-1)+1 for r={r}",
                ordering.len()
            )));
        }
        let mut seen = ordering.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidStructure("loose path repeats a vertex".into()));
        }
        Ok(Self { ordering, r })
    }

    pub fn ordering(&self) -> &[Vertex] {
        &self.ordering
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of vertices `l`.
    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        (self.ordering.len() - 1) / (self.r - 1)
    }

    /// Position range `[start, start + r)` of edge `i`.
    pub fn edge_span(&self, i: usize) -> std::ops::Range<usize> {
        let start = i * (self.r - 1);
        start..start + self.r
    }

    /// Whether the positions `[start, start + width)` lie inside a single edge.
    pub fn window_in_edge(&self, start: usize, width: usize) -> bool {
        if width == 0 || start + width > self.len() {
            return false;
        }
        if width == 1 {
            return true;
        }
        width <= self.r && start % (self.r - 1) + width <= self.r
    }

    /// Sorted edges in path order.
    pub fn edges(&self) -> Vec<Vec<Vertex>> {
        (0..self.edge_count())
            .map(|i| {
                let mut e = self.ordering[self.edge_span(i)].to_vec();
                e.sort_unstable();
                e
            })
            .collect()
    }

    /// All edges present in `h` (and `h` has matching uniformity).
    pub fn is_in(&self, h: &Hypergraph) -> bool {
        h.r() == self.r
            && self.ordering.iter().all(|&v| (v as usize) < h.n())
            && self.edges().iter().all(|e| h.contains_edge(e))
    }

    /// The loose sub-path spanning edges `first..first + count`.
    pub fn sub_path(&self, first: usize, count: usize) -> LoosePath {
        let start = first * (self.r - 1);
        let end = start + count * (self.r - 1) + 1;
        LoosePath { ordering: self.ordering[start..end].to_vec(), r: self.r }
    }

    /// `{"ordering": [...], "r": r}`; `r` may be omitted on input for graphs.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_has_no_edges() {
        let p = LoosePath::new(vec![0], 3).unwrap();
        assert!(p.edges().is_empty());
    }

    #[test]
    fn five_vertices_two_triples() {
        let p = LoosePath::new(vec![0, 1, 2, 3, 4], 3).unwrap();
        assert_eq!(p.edges(), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn nine_vertices_four_triples() {
        let p = LoosePath::new((0..9).collect(), 3).unwrap();
        let e = p.edges();
        assert_eq!(e.len(), 4);
        for w in e.windows(2) {
            let shared: Vec<_> = w[0].iter().filter(|v| w[1].contains(v)).collect();
            assert_eq!(shared.len(), 1);
        }
    }

    #[test]
    fn bad_lengths_rejected() {
        assert!(LoosePath::new(vec![0, 1, 2, 3], 3).is_err());
        assert!(LoosePath::new(vec![], 2).is_err());
        assert!(LoosePath::new(vec![0, 1, 0], 3).is_err());
    }

    #[test]
    fn windows() {
        let p = LoosePath::new((0..7).collect(), 4).unwrap();
        assert!(p.window_in_edge(0, 4));
        assert!(!p.window_in_edge(1, 4));
        assert!(p.window_in_edge(1, 3));
        assert!(!p.window_in_edge(2, 3));
        assert!(p.window_in_edge(3, 4));
        assert!(!p.window_in_edge(5, 3));
    }

    #[test]
    fn json_validates() {
        let p: LoosePath = serde_json::from_str(r#"{"ordering":[2,0,1]}"#).unwrap();
        assert_eq!(p.r(), 2);
        assert!(serde_json::from_str::<LoosePath>(r#"{"ordering":[0,1],"r":3}"#).is_err());
    }
}
