//! Greedy construction of a good spanning tree around a given spine.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{GoodTree, Graph, LoosePath, Vertex};

use super::dfs::longest_loose_path;

/// Bookkeeping of the greedy builder.
///
/// `a[i]` is true while spine position `i` has no heavy vertex, `b` lists
/// heavy vertices in the order they were found, and `c` holds vertices that
/// phase (i) could not attach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodTreeBuildState {
    pub a: Vec<bool>,
    pub b: Vec<Vertex>,
    pub c: Vec<Vertex>,
}

impl GoodTreeBuildState {
    pub fn unmatched(&self) -> usize {
        self.a.iter().filter(|&&x| x).count()
    }
}

/// A possibly partial good tree plus the vertices it failed to attach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodTreeBuild {
    pub tree: GoodTree,
    pub leftover: Vec<Vertex>,
}

fn check_spine(g: &Graph, spine: &LoosePath) -> Result<()> {
    if spine.r() != 2 {
        return Err(Error::InvalidSpine(format!("spine must be a graph path, got r={}", spine.r())));
    }
    if let Some(&v) = spine.ordering().iter().find(|&&v| v as usize >= g.n()) {
        return Err(Error::InvalidSpine(format!("vertex {v} outside the graph")));
    }
    if let Some(w) = spine.ordering().windows(2).find(|w| !g.has_edge(w[0], w[1])) {
        return Err(Error::InvalidSpine(format!("{}-{} is not an edge", w[0], w[1])));
    }
    Ok(())
}

/// Three-phase greedy: (i) in ascending vertex order, attach each off-spine
/// vertex as heavy to the first unmatched spine position it neighbours, else
/// as light to the first heavy vertex it neighbours; (ii) retry the rest
/// against all heavy vertices; (iii) return what remains as the leftover set.
///
/// `on_phase_one` observes the state after every phase (i) decision.
pub fn build_good_spanning_tree_observed(
    g: &Graph,
    spine: &LoosePath,
    mut on_phase_one: impl FnMut(&GoodTreeBuildState),
) -> Result<GoodTreeBuild> {
    check_spine(g, spine)?;
    let n = g.n();
    let adj = g.adjacency();
    let mut spine_pos = vec![usize::MAX; n];
    for (i, &v) in spine.ordering().iter().enumerate() {
        spine_pos[v as usize] = i;
    }
    // heavy vertex -> index into state.b
    let mut heavy_rank = vec![usize::MAX; n];
    let mut state = GoodTreeBuildState { a: vec![true; spine.len()], b: Vec::new(), c: Vec::new() };
    let mut heavy = BTreeMap::new();
    let mut light = BTreeMap::new();

    for v in 0..n as Vertex {
        if spine_pos[v as usize] != usize::MAX {
            continue;
        }
        let slot = adj[v as usize]
            .iter()
            .map(|&w| spine_pos[w as usize])
            .filter(|&i| i != usize::MAX && state.a[i])
            .min();
        if let Some(i) = slot {
            state.a[i] = false;
            heavy_rank[v as usize] = state.b.len();
            state.b.push(v);
            heavy.insert(i, v);
        } else if let Some(u) = first_heavy(&adj[v as usize], &heavy_rank) {
            light.insert(v, u);
        } else {
            state.c.push(v);
        }
        on_phase_one(&state);
    }

    let mut leftover = Vec::new();
    for &v in &state.c {
        match first_heavy(&adj[v as usize], &heavy_rank) {
            Some(u) => {
                light.insert(v, u);
            }
            None => leftover.push(v),
        }
    }
    let tree = GoodTree::new(spine.ordering().to_vec(), heavy, light)?;
    Ok(GoodTreeBuild { tree, leftover })
}

fn first_heavy(neighbours: &[Vertex], heavy_rank: &[usize]) -> Option<Vertex> {
    neighbours
        .iter()
        .filter(|&&w| heavy_rank[w as usize] != usize::MAX)
        .min_by_key(|&&w| heavy_rank[w as usize])
        .copied()
}

pub fn build_good_spanning_tree(g: &Graph, spine: &LoosePath) -> Result<GoodTreeBuild> {
    build_good_spanning_tree_observed(g, spine, |_| {})
}

/// Attaches leftover vertices, repeating until nothing changes:
///
/// * a leftover vertex adjacent to a spine or heavy vertex becomes light;
/// * otherwise, for a neighbour `w` adjacent to the spine, an augmenting
///   path over spine positions makes `w` heavy (displaced heavy vertices move
///   to another free position, or turn light when nothing hangs from them),
///   and the leftover vertex hangs from `w`.
///
/// Returns the extended build; `leftover` is empty on success.
pub fn attach_leftovers(g: &Graph, build: GoodTreeBuild) -> GoodTreeBuild {
    let GoodTreeBuild { tree, mut leftover } = build;
    let mut fix = Fixer::new(g, tree);
    loop {
        let mut changed = false;
        let mut still = Vec::new();
        for &v in &leftover {
            if fix.attach(v) {
                changed = true;
            } else {
                still.push(v);
            }
        }
        leftover = still;
        if !changed || leftover.is_empty() {
            break;
        }
    }
    let tree = GoodTree::new(fix.spine, fix.heavy, fix.light).expect("attachments keep the tree valid");
    GoodTreeBuild { tree, leftover }
}

struct Fixer {
    adj: Vec<Vec<Vertex>>,
    spine: Vec<Vertex>,
    spine_pos: Vec<usize>,
    heavy: BTreeMap<usize, Vertex>,
    heavy_pos: Vec<usize>,
    light: BTreeMap<Vertex, Vertex>,
    children: Vec<usize>,
}

impl Fixer {
    fn new(g: &Graph, tree: GoodTree) -> Self {
        let n = g.n();
        let mut spine_pos = vec![usize::MAX; n];
        for (i, &v) in tree.spine.iter().enumerate() {
            spine_pos[v as usize] = i;
        }
        let mut heavy_pos = vec![usize::MAX; n];
        for (&i, &u) in &tree.heavy {
            heavy_pos[u as usize] = i;
        }
        let mut children = vec![0; n];
        for &a in tree.light.values() {
            children[a as usize] += 1;
        }
        Self {
            adj: g.adjacency(),
            spine: tree.spine,
            spine_pos,
            heavy: tree.heavy,
            heavy_pos,
            light: tree.light,
            children,
        }
    }

    fn hang(&mut self, v: Vertex, anchor: Vertex) {
        self.light.insert(v, anchor);
        self.children[anchor as usize] += 1;
    }

    fn attach(&mut self, v: Vertex) -> bool {
        let anchor = self.adj[v as usize].iter().copied().find(|&w| {
            self.spine_pos[w as usize] != usize::MAX || self.heavy_pos[w as usize] != usize::MAX
        });
        if let Some(w) = anchor {
            self.hang(v, w);
            return true;
        }
        let candidates: Vec<Vertex> =
            self.adj[v as usize].iter().copied().filter(|w| self.light.contains_key(w)).collect();
        for w in candidates {
            let mut seen = vec![false; self.spine.len()];
            if self.augment(w, &mut seen) {
                self.hang(v, w);
                return true;
            }
        }
        false
    }

    /// Makes `w` heavy at some spine position adjacent to it.
    fn augment(&mut self, w: Vertex, seen: &mut [bool]) -> bool {
        let slots: Vec<usize> = self.adj[w as usize]
            .iter()
            .map(|&p| self.spine_pos[p as usize])
            .filter(|&i| i != usize::MAX)
            .collect();
        for i in slots {
            if std::mem::replace(&mut seen[i], true) {
                continue;
            }
            match self.heavy.get(&i).copied() {
                None => {}
                Some(u) if self.children[u as usize] == 0 => {
                    self.heavy.remove(&i);
                    self.heavy_pos[u as usize] = usize::MAX;
                    self.hang(u, self.spine[i]);
                }
                Some(u) if !self.augment(u, seen) => continue,
                Some(_) => {}
            }
            self.make_heavy(w, i);
            return true;
        }
        false
    }

    fn make_heavy(&mut self, w: Vertex, i: usize) {
        if let Some(a) = self.light.remove(&w) {
            self.children[a as usize] -= 1;
        }
        let old = self.heavy_pos[w as usize];
        if old != usize::MAX && self.heavy.get(&old) == Some(&w) {
            self.heavy.remove(&old);
        }
        self.heavy.insert(i, w);
        self.heavy_pos[w as usize] = i;
    }
}

/// Outcome of [`good_spanning_tree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeReport {
    pub tree: GoodTree,
    pub spine_len: usize,
    /// Leftover set of the greedy builder before the fallback ran.
    pub leftover_before_fallback: usize,
    /// Spine searches tried, including the successful one.
    pub attempts: usize,
}

/// The full pipeline for a connected graph: long path by DFS, greedy
/// builder, then leftover attachment; retried with fresh DFS seeds until the
/// tree spans.
pub fn good_spanning_tree(g: &Graph, seed: u64, attempts: usize) -> Result<SpanningTreeReport> {
    if g.n() == 0 {
        return Err(Error::InvalidStructure("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::StructuralAssumptionViolated("graph is disconnected".into()));
    }
    let h = g.to_hypergraph();
    let mut best_leftover = usize::MAX;
    for attempt in 0..attempts.max(1) {
        let spine = longest_loose_path(&h, seed.wrapping_add(97 * attempt as u64), 3);
        let build = build_good_spanning_tree(g, &spine)?;
        let before = build.leftover.len();
        let done = attach_leftovers(g, build);
        if done.leftover.is_empty() {
            return Ok(SpanningTreeReport {
                tree: done.tree,
                spine_len: spine.len(),
                leftover_before_fallback: before,
                attempts: attempt + 1,
            });
        }
        best_leftover = best_leftover.min(done.leftover.len());
    }
    Err(Error::StructuralAssumptionViolated(format!(
        "no good spanning tree after {attempts} attempts; best leftover {best_leftover}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_spine_is_whole_tree() {
        let g = Graph::path(7);
        let spine = LoosePath::new((0..7).collect(), 2).unwrap();
        let b = build_good_spanning_tree(&g, &spine).unwrap();
        assert!(b.leftover.is_empty());
        assert!(b.tree.heavy.is_empty() && b.tree.light.is_empty());
    }

    #[test]
    fn star_leaves_one_vertex() {
        // centre 0, leaves 1, 2, 3; spine (leaf 1, centre)
        let g = Graph::star(4);
        let spine = LoosePath::new(vec![1, 0], 2).unwrap();
        let b = build_good_spanning_tree(&g, &spine).unwrap();
        assert_eq!(b.tree.heavy, BTreeMap::from([(1, 2)]));
        assert!(b.tree.light.is_empty());
        assert_eq!(b.leftover, vec![3]);
        let fixed = attach_leftovers(&g, b);
        assert!(fixed.leftover.is_empty());
        assert!(fixed.tree.is_subgraph_of(&g));
    }

    #[test]
    fn a_plus_b_is_spine_length() {
        let g = crate::generators::gen_gnp(80, 0.05, 3).unwrap();
        let spine = longest_loose_path(&g.to_hypergraph(), 3, 2);
        build_good_spanning_tree_observed(&g, &spine, |s| {
            assert_eq!(s.unmatched() + s.b.len(), spine.len());
        })
        .unwrap();
    }

    #[test]
    fn bad_spine_rejected() {
        let g = Graph::path(4);
        let spine = LoosePath::new(vec![0, 2], 2).unwrap();
        assert!(matches!(build_good_spanning_tree(&g, &spine), Err(Error::InvalidSpine(_))));
    }

    #[test]
    fn pipeline_on_connected_random_graphs() {
        for seed in 0..10 {
            let seq = crate::generators::gen_process(150, seed).unwrap();
            let m = crate::generators::connectivity_time(&seq);
            let g = crate::generators::snapshot(&seq, m).unwrap();
            let rep = good_spanning_tree(&g, seed, 16).unwrap();
            assert!(rep.tree.is_subgraph_of(&g));
            assert!(rep.tree.to_graph().is_tree());
        }
    }
}
