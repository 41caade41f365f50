//! Set-wise routing of tokens on a tree.
//!
//! Tokens start on `S` and must cover `T`. Rooting the tree anywhere, the net
//! number of tokens that must cross each edge is fixed by the subtree
//! surplus `|S ∩ sub| - |T ∩ sub|`. Each round fires a matching of edges
//! `x -> y` with remaining flow, a token on `x` and none on `y`; edges whose
//! downstream chain of remaining flow is longest go first so tokens stream
//! in a pipeline. Some edge is always fireable while flow remains, so the
//! process terminates with the tokens exactly on `T`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::model::{Graph, Matching, Vertex};

/// The relaxed routing bound `6 (l + 2(|S|-1)) + 4` asserted by tests.
pub fn route_bound(spread: usize, size: usize) -> usize {
    6 * (spread + 2 * size.saturating_sub(1)) + 4
}

fn bfs(adj: &[Vec<Vertex>], root: Vertex) -> (Vec<u32>, Vec<Vertex>, Vec<Vertex>) {
    let n = adj.len();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![Vertex::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([root]);
    dist[root as usize] = 0;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                parent[w as usize] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, parent, order)
}

/// `max_{s in S, t in T} dist(s, t)`.
pub fn tree_spread(tree: &Graph, s: &[Vertex], t: &[Vertex]) -> usize {
    let adj = tree.adjacency();
    s.iter()
        .map(|&v| {
            let (d, _, _) = bfs(&adj, v);
            t.iter().map(|&u| d[u as usize] as usize).max().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

fn check_set(n: usize, set: &[Vertex], what: &str) -> Result<Vec<bool>> {
    let mut mark = vec![false; n];
    for &v in set {
        let slot = mark
            .get_mut(v as usize)
            .ok_or(Error::IndexOutOfRange { index: v as usize, max: n })?;
        if *slot {
            return Err(Error::InvalidTarget(format!("{what} repeats vertex {v}")));
        }
        *slot = true;
    }
    Ok(mark)
}

pub fn route_on_tree(tree: &Graph, s: &[Vertex], t: &[Vertex]) -> Result<Vec<Matching>> {
    if s.len() != t.len() {
        return Err(Error::SizeMismatch { s: s.len(), t: t.len() });
    }
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let n = tree.n();
    let mut marked = check_set(n, s, "S")?;
    let in_t = check_set(n, t, "T")?;
    if marked == in_t {
        return Ok(Vec::new());
    }
    let adj = tree.adjacency();
    let (_, parent, order) = bfs(&adj, 0);

    // surplus[v] for the edge (v, parent v): >0 flows up, <0 flows down
    let mut surplus = vec![0i64; n];
    for &v in order.iter().rev() {
        surplus[v as usize] += i64::from(marked[v as usize]) - i64::from(in_t[v as usize]);
        let p = parent[v as usize];
        if p != Vertex::MAX {
            surplus[p as usize] += surplus[v as usize];
        }
    }
    // remaining flow on each non-root vertex's parent edge
    let mut flow: Vec<i64> = (0..n).map(|v| if parent[v] == Vertex::MAX { 0 } else { surplus[v] }).collect();

    let mut rounds = Vec::new();
    let mut reach = vec![0u32; n];
    loop {
        // reach[v]: longest chain of remaining-flow edges leaving v
        for &v in order.iter().rev() {
            let mut best = 0;
            for &w in &adj[v as usize] {
                if parent[w as usize] == v && flow[w as usize] < 0 {
                    best = best.max(reach[w as usize] + 1);
                }
            }
            reach[v as usize] = best;
        }
        for &v in &order {
            let p = parent[v as usize];
            if p != Vertex::MAX && flow[v as usize] > 0 {
                reach[v as usize] = reach[v as usize].max(reach[p as usize] + 1);
            }
        }
        let mut candidates: Vec<(u32, Vertex, Vertex)> = Vec::new();
        for v in 0..n as Vertex {
            let p = parent[v as usize];
            if p == Vertex::MAX {
                continue;
            }
            let f = flow[v as usize];
            let (from, to) = match f.signum() {
                1 => (v, p),
                -1 => (p, v),
                _ => continue,
            };
            if marked[from as usize] && !marked[to as usize] {
                candidates.push((reach[to as usize], from, to));
            }
        }
        if candidates.is_empty() {
            break;
        }
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut busy = vec![false; n];
        let mut swaps = Vec::new();
        for (_, from, to) in candidates {
            if busy[from as usize] || busy[to as usize] {
                continue;
            }
            busy[from as usize] = true;
            busy[to as usize] = true;
            marked[from as usize] = false;
            marked[to as usize] = true;
            let child = if parent[from as usize] == to { from } else { to };
            flow[child as usize] -= if child == from { 1 } else { -1 };
            swaps.push((from, to));
        }
        rounds.push(Matching::from_disjoint(swaps));
    }
    debug_assert_eq!(marked, in_t);
    Ok(rounds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn occupied_after(n: usize, s: &[Vertex], rounds: &[Matching]) -> Vec<Vertex> {
        let mut mark = vec![false; n];
        for &v in s {
            mark[v as usize] = true;
        }
        for m in rounds {
            for &(u, v) in m.swaps() {
                mark.swap(u as usize, v as usize);
            }
        }
        (0..n as Vertex).filter(|&v| mark[v as usize]).collect()
    }

    #[test]
    fn identity_needs_nothing() {
        let t = Graph::path(5);
        assert!(route_on_tree(&t, &[1, 3], &[3, 1]).unwrap().is_empty());
    }

    #[test]
    fn single_token_walks() {
        let t = Graph::path(8);
        let r = route_on_tree(&t, &[0], &[6]).unwrap();
        assert_eq!(r.len(), 6);
        assert!(r.iter().all(|m| m.len() == 1));
    }

    #[test]
    fn errors() {
        let t = Graph::path(4);
        assert!(matches!(route_on_tree(&t, &[0], &[1, 2]), Err(Error::SizeMismatch { s: 1, t: 2 })));
        assert!(matches!(route_on_tree(&Graph::cycle(4), &[0], &[1]), Err(Error::NotATree)));
    }

    #[test]
    fn convoy_on_path() {
        let t = Graph::path(20);
        let s: Vec<Vertex> = (0..6).collect();
        let tt: Vec<Vertex> = (14..20).collect();
        let r = route_on_tree(&t, &s, &tt).unwrap();
        assert_eq!(occupied_after(20, &s, &r), tt);
        assert!(r.len() <= route_bound(tree_spread(&t, &s, &tt), 6));
    }

    #[test]
    fn star_swaps() {
        let t = Graph::star(6);
        let r = route_on_tree(&t, &[1, 2], &[3, 4]).unwrap();
        assert_eq!(occupied_after(6, &[1, 2], &r), vec![3, 4]);
    }
}
