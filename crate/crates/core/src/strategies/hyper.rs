//! Strategies for random hypergraphs built on a long loose path `P`.
//!
//! Sparse regime: agents are split into `k+1` groups (agent `a` is in group
//! `a mod (k+1)`). For each group `A_i`, every agent outside `A_i`, topped up
//! with the lowest-id agents of `A_i`, is routed onto `P` and the loose-path
//! team schedule runs there. A k-set misses at least one group, so it is
//! entirely on `P` in that group's turn. Routing uses the caterpillar made of
//! the path plus one attaching edge per off-path vertex.
//!
//! Dense regime: a (near-)Hamilton path is cut into sub-paths separated by a
//! skipped edge; the team schedules on the sub-paths run simultaneously, and
//! the group rotation finishes whatever the units left unacquainted.

use serde::{Deserialize, Serialize};

use crate::engine::{replay, SimState};
use crate::error::{Error, Result};
use crate::generators::seeded_rng;
use crate::model::{Graph, Hypergraph, LoosePath, Vertex};
use crate::pathfinder::{find_loose_hamilton_path, longest_loose_path, search_long_loose_path};

use super::loose_path::plan_loose_path;
use super::tree_route::route_on_tree;
use super::{merge_lanes, Rounds, Schedule, StrategyTrace};

/// Group of agent `a` in the `(k+1)`-way rotation.
pub fn group_of(a: u32, k: usize) -> usize {
    a as usize % (k + 1)
}

/// Spanning caterpillar: the path's consecutive pairs plus, for each vertex
/// off the path, one edge to a path vertex sharing a hyperedge with it.
fn caterpillar(h: &Hypergraph, path: &LoosePath) -> Result<Graph> {
    let n = h.n();
    let mut on_path = vec![false; n];
    for &v in path.ordering() {
        on_path[v as usize] = true;
    }
    let mut edges: Vec<(Vertex, Vertex)> = path.ordering().windows(2).map(|w| (w[0], w[1])).collect();
    let mut anchor = vec![Vertex::MAX; n];
    for e in h.edges() {
        if let Some(&p) = e.iter().find(|&&v| on_path[v as usize]) {
            for &v in e {
                if !on_path[v as usize] && anchor[v as usize] == Vertex::MAX {
                    anchor[v as usize] = p;
                }
            }
        }
    }
    for v in 0..n {
        if on_path[v] {
            continue;
        }
        if anchor[v] == Vertex::MAX {
            return Err(Error::StructuralAssumptionViolated(format!(
                "vertex {v} shares no edge with the path"
            )));
        }
        edges.push((v as Vertex, anchor[v]));
    }
    Graph::new(n, edges)
}

/// Appends the `k+1` rotations on `path` to `schedule`.
fn group_rotation(
    h: &Hypergraph,
    path: &LoosePath,
    k: usize,
    seed: u64,
    schedule: &mut Schedule,
) -> Result<()> {
    let n = h.n();
    let ell = path.len();
    let tree = caterpillar(h, path)?;
    let mut rng = seeded_rng(seed);
    for g in 0..=k {
        let mut chosen: Vec<u32> = (0..n as u32).filter(|&a| group_of(a, k) != g).collect();
        if chosen.len() > ell {
            return Err(Error::StructuralAssumptionViolated(format!(
                "{} agents outside group {g} do not fit on a path of {ell}",
                chosen.len()
            )));
        }
        chosen.extend((0..n as u32).filter(|&a| group_of(a, k) == g).take(ell - chosen.len()));
        let from: Vec<Vertex> = chosen.iter().map(|&a| schedule.position(a)).collect();
        schedule.extend(route_on_tree(&tree, &from, path.ordering())?);
        schedule.push_local(plan_loose_path(path, k, &mut rng)?, path.ordering());
    }
    Ok(())
}

fn check_arity(h: &Hypergraph, k: usize) -> Result<()> {
    if k < 2 || k > h.r() {
        return Err(Error::InvalidArity { k, r: h.r() });
    }
    Ok(())
}

pub fn sparse_hypergraph_strategy(h: &Hypergraph, k: usize, seed: u64) -> Result<StrategyTrace> {
    check_arity(h, k)?;
    let n = h.n();
    let dfs = longest_loose_path(h, seed, 4);
    let searched = search_long_loose_path(h, 20 * h.n() * h.n(), seed);
    let path = if searched.len() > dfs.len() { searched } else { dfs };
    let mut schedule = Schedule::new(n);
    let groups;
    if path.len() == n {
        groups = 1;
        schedule.push_local(plan_loose_path(&path, k, &mut seeded_rng(seed))?, path.ordering());
    } else {
        groups = k + 1;
        group_rotation(h, &path, k, seed, &mut schedule)?;
    }
    let trace = StrategyTrace::certified(schedule.into_rounds(), h, k)?;
    let ell = path.len() as f64;
    let rounds = trace.rounds() as f64;
    Ok(trace
        .with("path_len", path.len())
        .with("groups", groups)
        .with("c_sparse", rounds / ((k + 1) as f64 * ell.powi(k as i32 - 1))))
}

/// Knobs of the dense strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenseConfig {
    pub omega: f64,
    pub c_cut: f64,
    /// Node-expansion budget of the Hamilton search.
    pub budget: usize,
    pub seed: u64,
    /// Use this path instead of searching.
    pub path: Option<LoosePath>,
}

impl DenseConfig {
    pub fn new(omega: f64, seed: u64) -> Self {
        Self { omega, c_cut: 4.0, budget: 1_000_000, seed, path: None }
    }
}

/// Number of sub-paths, `max(1, floor((ω / C_cut)^(1/(k-1))))`, capped so
/// each sub-path keeps at least one edge.
fn unit_count(omega: f64, c_cut: f64, k: usize, edges: usize) -> usize {
    let c = (omega / c_cut).powf(1.0 / (k - 1) as f64);
    let c = if c.is_finite() && c >= 1.0 { (c + 1e-9).floor() as usize } else { 1 };
    c.min(edges.div_ceil(2)).max(1)
}

/// Cuts `path` into `units` sub-paths separated by one skipped edge each;
/// edges are spread as evenly as possible.
fn cut(path: &LoosePath, units: usize) -> Vec<(usize, LoosePath)> {
    let usable = path.edge_count() - (units - 1);
    let mut out = Vec::new();
    let mut first = 0;
    for u in 0..units {
        let count = usable / units + usize::from(u < usable % units);
        out.push((first * (path.r() - 1), path.sub_path(first, count)));
        first += count + 1;
    }
    out
}

pub fn dense_hypergraph_strategy(h: &Hypergraph, k: usize, cfg: &DenseConfig) -> Result<StrategyTrace> {
    check_arity(h, k)?;
    let n = h.n();
    let path = match &cfg.path {
        Some(p) => {
            if !p.is_in(h) {
                return Err(Error::InvalidStructure("supplied path is not in the hypergraph".into()));
            }
            p.clone()
        }
        None => find_loose_hamilton_path(h, cfg.budget, cfg.seed).ok_or(Error::PathUnavailable)?,
    };
    let units = unit_count(cfg.omega, cfg.c_cut, k, path.edge_count());
    let pieces = cut(&path, units);
    let mut lanes: Vec<Rounds> = Vec::new();
    let mut rng = seeded_rng(cfg.seed);
    for (offset, piece) in &pieces {
        let plan = plan_loose_path(piece, k, &mut rng)?;
        lanes.push(plan.into_iter().map(|r| r.into_iter().map(|(a, b)| (a + offset, b + offset)).collect()).collect());
    }
    let mut schedule = Schedule::new(n);
    schedule.push_local(merge_lanes(lanes), path.ordering());
    let unit_rounds = schedule.len();

    let mut state = SimState::init(h, k)?;
    replay(&mut state, &schedule.clone().into_rounds())?;
    let rotation = !state.is_complete();
    if rotation {
        group_rotation(h, &path, k, cfg.seed.wrapping_add(1), &mut schedule)?;
    }
    let covered: usize = pieces.iter().map(|(_, p)| p.len()).sum();
    let trace = StrategyTrace::certified(schedule.into_rounds(), h, k)?;
    let rounds = trace.rounds();
    Ok(trace
        .with("path_len", path.len())
        .with("units", units)
        .with("sub_path_len", pieces.iter().map(|(_, p)| p.len()).max().unwrap_or(0))
        .with("passive", n - covered)
        .with("unit_stage_rounds", unit_rounds)
        .with("rotation_rounds", rounds - unit_rounds)
        .with("rotation", rotation))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_hrnp, plant_loose_path};

    #[test]
    fn unit_counts() {
        assert_eq!(unit_count(16.0, 4.0, 3, 60), 2);
        assert_eq!(unit_count(16.0, 4.0, 2, 60), 4);
        assert_eq!(unit_count(1.0, 4.0, 2, 60), 1);
        assert_eq!(unit_count(1000.0, 4.0, 2, 5), 3);
    }

    #[test]
    fn cut_pieces_are_separated() {
        let p = LoosePath::new((0..121).collect(), 3).unwrap();
        let pieces = cut(&p, 2);
        assert_eq!(pieces.len(), 2);
        assert_eq!(pieces[0].1.len() + pieces[1].1.len() + 1, 121);
        assert_eq!(pieces[1].0, 31 * 2);
    }

    #[test]
    fn sparse_on_small_instance() {
        let n = 60;
        let p = 3.0 * (n as f64).ln() / (n * n) as f64;
        let mut done = 0;
        for seed in 0..5 {
            let h = gen_hrnp(n, 3, p, seed).unwrap();
            if let Ok(t) = sparse_hypergraph_strategy(&h, 2, seed) {
                assert!(t.claimed_complete);
                done += 1;
            }
        }
        assert!(done >= 3);
    }

    #[test]
    fn dense_with_planted_path() {
        let base = gen_hrnp(41, 3, 0.002, 5).unwrap();
        let (h, path) = plant_loose_path(&base, 41, 5).unwrap();
        let cfg = DenseConfig { path: Some(path), ..DenseConfig::new(16.0, 5) };
        let t = dense_hypergraph_strategy(&h, 2, &cfg).unwrap();
        assert!(t.claimed_complete);
        assert_eq!(t.meta_u64("units"), Some(4));
    }

    #[test]
    fn degenerate_single_unit() {
        let base = gen_hrnp(21, 3, 0.0, 1).unwrap();
        let (h, path) = plant_loose_path(&base, 21, 1).unwrap();
        let cfg = DenseConfig { path: Some(path.clone()), ..DenseConfig::new(1.0, 3) };
        let t = dense_hypergraph_strategy(&h, 2, &cfg).unwrap();
        assert!(t.claimed_complete);
        assert_eq!(t.meta_u64("units"), Some(1));
        assert_eq!(t.meta.get("rotation"), Some(&serde_json::Value::Bool(false)));
    }
}
