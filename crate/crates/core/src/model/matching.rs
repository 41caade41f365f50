use serde::{Deserialize, Serialize};

use super::Vertex;
use crate::error::{Error, Result};

/// One round's swap set: pairwise vertex-disjoint pairs.
///
/// Serialises as a bare list of `[u, v]` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    swaps: Vec<(Vertex, Vertex)>,
}

impl Matching {
    /// Validates disjointness. `round` is only used to label the error.
    pub fn new(swaps: Vec<(Vertex, Vertex)>, round: usize) -> Result<Self> {
        let m = Self { swaps };
        m.check_disjoint(round)?;
        Ok(m)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Skips validation; callers guarantee disjointness.
    pub(crate) fn from_disjoint(swaps: Vec<(Vertex, Vertex)>) -> Self {
        Self { swaps }
    }

    pub fn swaps(&self) -> &[(Vertex, Vertex)] {
        &self.swaps
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn check_disjoint(&self, round: usize) -> Result<()> {
        let mut seen: Vec<Vertex> = self.swaps.iter().flat_map(|&(u, v)| [u, v]).collect();
        seen.sort_unstable();
        match seen.windows(2).find(|w| w[0] == w[1]) {
            Some(w) => Err(Error::NotAMatching { round, vertex: w[0] }),
            None => Ok(()),
        }
    }
}

impl From<Matching> for Vec<(Vertex, Vertex)> {
    fn from(m: Matching) -> Self {
        m.swaps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlapping_pairs_rejected() {
        assert!(matches!(
            Matching::new(vec![(0, 1), (1, 2)], 3),
            Err(Error::NotAMatching { round: 3, vertex: 1 })
        ));
        assert!(Matching::new(vec![(0, 1), (2, 3)], 0).is_ok());
        assert!(Matching::new(vec![(0, 0)], 0).is_err());
    }

    #[test]
    fn serialises_as_pair_list() {
        let m = Matching::new(vec![(0, 1), (2, 3)], 0).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[0,1],[2,3]]");
    }
}
