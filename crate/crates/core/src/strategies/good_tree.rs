//! Traversal schedule on a good tree.
//!
//! Agents are processed in teams of at most `κ` (the spine length). A team
//! is routed onto the spine, then the spine runs `2κ` phases: one round of
//! swaps on every other spine edge (alternating parity), followed by two
//! detour rounds that swap each spine vertex `v_i` with its heavy vertex
//! `u_i` and back. Over the phases every agent on the spine walks its full
//! length, meeting every spine agent, every pendant of a spine vertex, every
//! heavy agent, and, during detours, every pendant of a heavy vertex.

use crate::error::{Error, Result};
use crate::model::{GoodTree, Vertex};

use super::tree_route::route_on_tree;
use super::{Schedule, StrategyTrace};

pub fn good_tree_strategy(tree: &GoodTree) -> Result<StrategyTrace> {
    tree.validate()?;
    if !tree.is_spanning() {
        return Err(Error::InvalidTree(format!(
            "vertex labels do not cover [0,{})",
            tree.vertex_count()
        )));
    }
    let n = tree.vertex_count();
    let kappa = tree.spine.len();
    let g = tree.to_graph();
    let h = g.to_hypergraph();
    let mut on_spine = vec![false; n];
    for &v in &tree.spine {
        on_spine[v as usize] = true;
    }
    // detours only matter where a heavy vertex has pendants
    let mut has_pendant = vec![false; n];
    for &a in tree.light.values() {
        has_pendant[a as usize] = true;
    }
    let detours: Vec<(Vertex, Vertex)> = tree
        .heavy
        .iter()
        .filter(|(_, &u)| has_pendant[u as usize])
        .map(|(&i, &u)| (tree.spine[i], u))
        .collect();
    // distance of every vertex to the spine (0, 1 or 2)
    let mut depth = vec![0u8; n];
    for &u in tree.heavy.values() {
        depth[u as usize] = 1;
    }
    for (&w, &a) in &tree.light {
        depth[w as usize] = if on_spine[a as usize] { 1 } else { 2 };
    }

    let mut schedule = Schedule::new(n);
    let mut active = vec![false; n];
    let mut teams = 0usize;
    let mut route_rounds = 0usize;
    if n > 1 {
        loop {
            let mut waiting: Vec<u32> = (0..n as u32).filter(|&a| !active[a as usize]).collect();
            if waiting.is_empty() {
                break;
            }
            waiting.sort_by_key(|&a| (depth[schedule.position(a) as usize], a));
            waiting.truncate(kappa);
            teams += 1;
            let from: Vec<Vertex> = waiting.iter().map(|&a| schedule.position(a)).collect();
            let mut to: Vec<Vertex> = from.iter().copied().filter(|&v| on_spine[v as usize]).collect();
            for &v in &tree.spine {
                if to.len() == from.len() {
                    break;
                }
                if !to.contains(&v) {
                    to.push(v);
                }
            }
            let before = schedule.len();
            schedule.extend(route_on_tree(&g, &from, &to)?);
            route_rounds += schedule.len() - before;
            for &a in &waiting {
                active[a as usize] = true;
            }
            for phase in 0..2 * kappa {
                let swaps = (phase % 2..kappa.saturating_sub(1))
                    .step_by(2)
                    .map(|i| (tree.spine[i], tree.spine[i + 1]))
                    .collect();
                schedule.push(swaps);
                if !detours.is_empty() {
                    schedule.push(detours.clone());
                    schedule.push(detours.clone());
                }
            }
        }
    }
    let trace = StrategyTrace::certified(schedule.into_rounds(), &h, 2)?;
    let rounds = trace.rounds();
    Ok(trace
        .with("kappa", kappa)
        .with("teams", teams)
        .with("route_rounds", route_rounds)
        .with("detour_positions", detours.len())
        .with("c_gt", rounds as f64 / n as f64))
}
