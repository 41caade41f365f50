//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the `*_json` functions hold the logic
//! and are what the native tests call.

use acqlab::engine::run_trace;
use acqlab::generators::{gen_gnp, gen_process};
use acqlab::model::Graph;
use acqlab::oracle::lower_bound_for;
use acqlab::pathfinder::good_spanning_tree;
use acqlab::strategies::{baranyai, connectivity_strategy};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest graph the page will draw.
const MAX_N: usize = 400;

fn check_n(n: usize) -> Result<(), String> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(format!("n must lie in 2..={MAX_N}"))
    }
}

/// `G(n, p)` plus a good spanning tree of it, with the spine, heavy and light
/// vertices listed separately for drawing.
pub fn good_tree_json(n: usize, p: f64, seed: u64) -> Result<String, String> {
    check_n(n)?;
    let g = gen_gnp(n, p, seed).map_err(|e| e.to_string())?;
    if !g.is_connected() {
        return Ok(json!({ "graph": g, "connected": false }).to_string());
    }
    let report = good_spanning_tree(&g, seed, 16).map_err(|e| e.to_string())?;
    let t = &report.tree;
    Ok(json!({
        "graph": g,
        "connected": true,
        "spine": t.spine,
        "heavy": t.heavy.iter().map(|(&i, &u)| [t.spine[i], u]).collect::<Vec<_>>(),
        "light": t.light.iter().map(|(&w, &u)| [w, u]).collect::<Vec<_>>(),
        "leftover_before_fallback": report.leftover_before_fallback,
    })
    .to_string())
}

/// Runs the random graph process to its connectivity time `M`, schedules
/// the good-spanning-tree strategy and returns the acquainted-pair count
/// after every round.
pub fn ledger_curve_json(n: usize, seed: u64) -> Result<String, String> {
    check_n(n)?;
    let seq = gen_process(n, seed).map_err(|e| e.to_string())?;
    let m = acqlab::generators::connectivity_time(&seq);
    let g: Graph = acqlab::generators::snapshot(&seq, m).map_err(|e| e.to_string())?;
    let trace = connectivity_strategy(&g, seed, 16).map_err(|e| e.to_string())?;
    let h = g.to_hypergraph();
    let report = run_trace(&h, 2, &trace.matchings).map_err(|e| e.to_string())?;
    Ok(json!({
        "n": n,
        "M": m,
        "rounds": report.rounds,
        "completion_round": report.completion_round,
        "lower_bound": lower_bound_for(&h, 2).map_err(|e| e.to_string())?,
        "total": report.total_tuples,
        "counts": report.ledger_counts,
    })
    .to_string())
}

/// 1-factorization of the complete s-uniform hypergraph on `n` vertices.
pub fn factorization_json(n: usize, s: usize) -> Result<String, String> {
    if n == 0 || s == 0 || n > 24 {
        return Err("need 1 <= s <= n <= 24".into());
    }
    let f = baranyai(n, s).map_err(|e| e.to_string())?;
    Ok(f.to_json())
}

#[wasm_bindgen]
pub fn good_tree(n: usize, p: f64, seed: u32) -> Result<String, JsError> {
    good_tree_json(n, p, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ledger_curve(n: usize, seed: u32) -> Result<String, JsError> {
    ledger_curve_json(n, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn factorize(n: usize, s: usize) -> Result<String, JsError> {
    factorization_json(n, s).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn tree_covers_every_vertex() {
        let v: Value = serde_json::from_str(&good_tree_json(60, 0.15, 2).unwrap()).unwrap();
        assert_eq!(v["connected"], true);
        let count = v["spine"].as_array().unwrap().len()
            + v["heavy"].as_array().unwrap().len()
            + v["light"].as_array().unwrap().len();
        assert_eq!(count, 60);
    }

    #[test]
    fn disconnected_graph_is_reported() {
        let v: Value = serde_json::from_str(&good_tree_json(30, 0.0, 1).unwrap()).unwrap();
        assert_eq!(v["connected"], false);
    }

    #[test]
    fn curve_ends_full() {
        let v: Value = serde_json::from_str(&ledger_curve_json(50, 3).unwrap()).unwrap();
        let counts = v["counts"].as_array().unwrap();
        assert_eq!(counts.last().unwrap(), &v["total"]);
        assert!(counts.windows(2).all(|w| w[0].as_u64() <= w[1].as_u64()));
        assert!(v["completion_round"].as_u64().unwrap() >= v["lower_bound"].as_u64().unwrap());
    }

    #[test]
    fn factorization_and_bad_input() {
        let v: Value = serde_json::from_str(&factorization_json(6, 2).unwrap()).unwrap();
        assert_eq!(v["factors"].as_array().unwrap().len(), 5);
        assert!(factorization_json(7, 2).is_err());
        assert!(ledger_curve_json(1, 0).is_err());
    }
}
