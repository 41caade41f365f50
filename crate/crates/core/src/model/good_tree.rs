use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};
use crate::error::{Error, Result};

/// A spanning tree made of a spine path, heavy vertices matched one-to-one to
/// spine positions, and light vertices pendant on a spine or heavy vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodTree {
    /// Spine vertices in path order.
    pub spine: Vec<Vertex>,
    /// Spine position `i` -> heavy vertex `u_i`.
    pub heavy: BTreeMap<usize, Vertex>,
    /// Light vertex -> the spine or heavy vertex it hangs from.
    pub light: BTreeMap<Vertex, Vertex>,
}

impl GoodTree {
    pub fn new(
        spine: Vec<Vertex>,
        heavy: BTreeMap<usize, Vertex>,
        light: BTreeMap<Vertex, Vertex>,
    ) -> Result<Self> {
        let t = Self { spine, heavy, light };
        t.validate()?;
        Ok(t)
    }

    pub fn vertex_count(&self) -> usize {
        self.spine.len() + self.heavy.len() + self.light.len()
    }

    /// One past the largest vertex label.
    pub fn span(&self) -> usize {
        let max = self.spine.iter().chain(self.heavy.values()).chain(self.light.keys()).max();
        max.map_or(0, |&v| v as usize + 1)
    }

    /// Whether the vertex set is exactly `[0, vertex_count)`.
    pub fn is_spanning(&self) -> bool {
        self.span() == self.vertex_count()
    }

    /// Checks disjointness and attachment targets. A structure with these
    /// properties is a tree by construction (each non-spine vertex has one
    /// parent closer to the spine). It need not cover `[0, span)`: the tree
    /// builder returns partial trees alongside a leftover set.
    pub fn validate(&self) -> Result<()> {
        let n = self.span();
        if self.spine.is_empty() {
            return Err(Error::InvalidTree("empty spine".into()));
        }
        let mut role = vec![0u8; n]; // 0 unseen, 1 spine, 2 heavy, 3 light
        let mut mark = |v: Vertex, r: u8| -> Result<()> {
            let slot = role
                .get_mut(v as usize)
                .ok_or_else(|| Error::InvalidTree(format!("vertex {v} outside [0,{n})")))?;
            if *slot != 0 {
                return Err(Error::InvalidTree(format!("vertex {v} used twice")));
            }
            *slot = r;
            Ok(())
        };
        for &v in &self.spine {
            mark(v, 1)?;
        }
        for (&i, &u) in &self.heavy {
            if i >= self.spine.len() {
                return Err(Error::InvalidTree(format!("heavy position {i} beyond spine")));
            }
            mark(u, 2)?;
        }
        for &w in self.light.keys() {
            mark(w, 3)?;
        }
        for (&w, &a) in &self.light {
            match role.get(a as usize) {
                Some(1) | Some(2) => {}
                _ => {
                    return Err(Error::InvalidTree(format!(
                        "light vertex {w} attached to {a}, which is neither spine nor heavy"
                    )))
                }
            }
        }
        Ok(())
    }

    /// The tree's edges.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self.spine.windows(2).map(|w| (w[0], w[1])).collect();
        out.extend(self.heavy.iter().map(|(&i, &u)| (self.spine[i], u)));
        out.extend(self.light.iter().map(|(&w, &a)| (a, w)));
        out
    }

    /// The tree as a graph on `[0, span)`.
    pub fn to_graph(&self) -> Graph {
        Graph::new(self.span(), self.edges()).expect("validated tree")
    }

    /// All tree edges exist in `g`.
    pub fn is_subgraph_of(&self, g: &Graph) -> bool {
        self.is_spanning() && self.vertex_count() == g.n() && self.edges().iter().all(|&(u, v)| g.has_edge(u, v))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GoodTree {
        // spine 0-1-2, heavy 3 at position 1, light 4 on heavy 3, light 5 on spine 0
        GoodTree::new(
            vec![0, 1, 2],
            BTreeMap::from([(1, 3)]),
            BTreeMap::from([(4, 3), (5, 0)]),
        )
        .unwrap()
    }

    #[test]
    fn sample_is_a_tree() {
        let t = sample();
        assert!(t.to_graph().is_tree());
        assert_eq!(t.vertex_count(), 6);
    }

    #[test]
    fn light_on_light_rejected() {
        let e = GoodTree::new(vec![0, 1], BTreeMap::new(), BTreeMap::from([(2, 0), (3, 2)]));
        assert!(matches!(e, Err(Error::InvalidTree(_))));
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let e = GoodTree::new(vec![0, 1], BTreeMap::from([(0, 1)]), BTreeMap::new());
        assert!(e.is_err());
    }

    #[test]
    fn json_shape() {
        let json = sample().to_json();
        assert_eq!(json, r#"{"spine":[0,1,2],"heavy":{"1":3},"light":{"4":3,"5":0}}"#);
        let back: GoodTree = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sample());
    }
}
