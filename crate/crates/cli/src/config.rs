use std::path::Path;

use acqlab::generators::{connectivity_time, gen_gnp, gen_good_tree, gen_hrnp, gen_process, snapshot, EdgeSequence};
use acqlab::model::{GoodTree, Graph, Hypergraph};
use acqlab::pathfinder::long_path_constant;
use acqlab::strategies::{
    connectivity_strategy, dense_hypergraph_strategy, good_tree_strategy, sparse_hypergraph_strategy, DenseConfig,
    StrategyTrace,
};
use clap::ValueEnum;
use rayon::ThreadPool;
use serde::Serialize;

use crate::failure::Failure;
use crate::Common;

pub const THREADS_VAR: &str = "ACQ_LAB_THREADS";

/// Spanning-tree retries for graph inputs.
const TREE_ATTEMPTS: usize = 16;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Gnp,
    /// Random graph process stopped at its connectivity time `M`.
    GnmProcess,
    Hrnp,
    GoodTree,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Gnp => "gnp",
            Model::GnmProcess => "gnm-process",
            Model::Hrnp => "hrnp",
            Model::GoodTree => "good-tree",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrategyName {
    /// good-tree for graphs and trees, sparse for hypergraphs.
    Auto,
    GoodTree,
    Sparse,
    Dense,
}

pub fn thread_pool() -> Result<ThreadPool, Failure> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let threads: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Failure::Config(format!("{THREADS_VAR}={v:?} is not a positive integer")))?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| Failure::Config(format!("thread pool: {e}")))
}

/// Parses `7`, `1,4,9`, `0..50`, `0..=49` or `200..=1000:200`.
pub fn parse_list(spec: &str, what: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Config(format!("cannot parse {what} list {spec:?}"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (range, step) = match part.split_once(':') {
            Some((r, s)) => (r, num(s)?),
            None => (part, 1),
        };
        if step == 0 {
            return Err(bad());
        }
        if let Some((a, b)) = range.split_once("..=") {
            out.extend((num(a)?..=num(b)?).step_by(step as usize));
        } else if let Some((a, b)) = range.split_once("..") {
            out.extend((num(a)?..num(b)?).step_by(step as usize));
        } else {
            out.push(num(range)?);
        }
    }
    if out.is_empty() {
        return Err(Failure::Config(format!("{what} list {spec:?} is empty")));
    }
    Ok(out)
}

pub fn sizes(c: &Common) -> Result<Vec<usize>, Failure> {
    let spec = c.n.as_deref().ok_or_else(|| Failure::Config("--n is required".into()))?;
    Ok(parse_list(spec, "n")?.into_iter().map(|n| n as usize).collect())
}

pub fn seeds(c: &Common) -> Result<Vec<u64>, Failure> {
    parse_list(&c.seeds, "seed")
}

pub enum Instance {
    Graph(Graph),
    Process { seq: EdgeSequence, m: usize },
    Hyper(Hypergraph),
    Tree(GoodTree),
}

impl Instance {
    /// The structure agents move on.
    pub fn structure(&self) -> Result<Hypergraph, Failure> {
        Ok(match self {
            Instance::Graph(g) => g.to_hypergraph(),
            Instance::Process { seq, m } => snapshot(seq, *m)?.to_hypergraph(),
            Instance::Hyper(h) => h.clone(),
            Instance::Tree(t) => t.to_graph().to_hypergraph(),
        })
    }

    pub fn to_json(&self) -> String {
        match self {
            Instance::Graph(g) => g.to_json(),
            Instance::Process { seq, .. } => serde_json::to_string(seq).expect("serialises"),
            Instance::Hyper(h) => h.to_json(),
            Instance::Tree(t) => t.to_json(),
        }
    }
}

/// The edge probability the model flags select for `n` vertices, if any.
pub fn probability(c: &Common, n: usize) -> Result<Option<f64>, Failure> {
    let r = if c.model == Model::Hrnp { c.r } else { 2 };
    if let Some(p) = c.p {
        return Ok(Some(p));
    }
    let scale = (n as f64).powi(r as i32 - 1);
    if let Some(omega) = c.omega {
        return Ok(Some((omega * (n as f64).ln() / scale).min(1.0)));
    }
    if let Some(delta) = c.delta {
        return Ok(Some((long_path_constant(r, delta)? / scale).min(1.0)));
    }
    Ok(None)
}

pub fn generate(c: &Common, n: usize, seed: u64) -> Result<Instance, Failure> {
    let need_p = || {
        probability(c, n)?.ok_or_else(|| Failure::Config(format!("model {} needs --p, --omega or --delta", c.model.name())))
    };
    Ok(match c.model {
        Model::Gnp => Instance::Graph(gen_gnp(n, need_p()?, seed)?),
        Model::Hrnp => Instance::Hyper(gen_hrnp(n, c.r, need_p()?, seed)?),
        Model::GnmProcess => {
            let seq = gen_process(n, seed)?;
            let m = connectivity_time(&seq);
            Instance::Process { seq, m }
        }
        Model::GoodTree => Instance::Tree(gen_good_tree(n, seed)?),
    })
}

/// Reads a good tree, an edge sequence or a graph/hypergraph file.
pub fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path).map_err(Failure::io(path))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let parse_err = |e: serde_json::Error| Failure::Config(format!("{}: {e}", path.display()));
    if value.get("spine").is_some() {
        return Ok(Instance::Tree(serde_json::from_value(value).map_err(parse_err)?));
    }
    if value.get("order").is_some() {
        let seq: EdgeSequence = serde_json::from_value(value).map_err(parse_err)?;
        seq.validate()?;
        let m = connectivity_time(&seq);
        return Ok(Instance::Process { seq, m });
    }
    let h: Hypergraph = serde_json::from_value(value).map_err(parse_err)?;
    Ok(match h.as_graph() {
        Some(g) => Instance::Graph(g),
        None => Instance::Hyper(h),
    })
}

pub fn run_strategy(c: &Common, inst: &Instance, seed: u64) -> Result<StrategyTrace, Failure> {
    let wrong = |what: &str| Failure::Config(format!("strategy {:?} does not apply to {what}", c.strategy));
    let graph_k = || if c.k == 2 { Ok(()) } else { Err(Failure::Config(format!("graphs need k=2, got k={}", c.k))) };
    match (c.strategy, inst) {
        (StrategyName::Auto | StrategyName::GoodTree, Instance::Tree(t)) => {
            graph_k()?;
            Ok(good_tree_strategy(t)?)
        }
        (StrategyName::Auto | StrategyName::GoodTree, Instance::Graph(g)) => {
            graph_k()?;
            Ok(connectivity_strategy(g, seed, TREE_ATTEMPTS)?)
        }
        (StrategyName::Auto | StrategyName::GoodTree, Instance::Process { seq, m }) => {
            graph_k()?;
            Ok(connectivity_strategy(&snapshot(seq, *m)?, seed, TREE_ATTEMPTS)?)
        }
        (StrategyName::Auto | StrategyName::Sparse, Instance::Hyper(h)) => Ok(sparse_hypergraph_strategy(h, c.k, seed)?),
        (StrategyName::Dense, Instance::Hyper(h)) => {
            let omega = c.omega.ok_or_else(|| Failure::Config("the dense strategy needs --omega".into()))?;
            let cfg = DenseConfig { c_cut: c.c_cut, ..DenseConfig::new(omega, seed) };
            Ok(dense_hypergraph_strategy(h, c.k, &cfg)?)
        }
        (_, Instance::Hyper(_)) => Err(wrong("hypergraphs")),
        _ => Err(wrong("graphs")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists() {
        assert_eq!(parse_list("7", "x").unwrap(), vec![7]);
        assert_eq!(parse_list("1, 4,9", "x").unwrap(), vec![1, 4, 9]);
        assert_eq!(parse_list("0..3", "x").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_list("200..=1000:400", "x").unwrap(), vec![200, 600, 1000]);
        assert!(parse_list("5..5", "x").is_err());
        assert!(parse_list("", "x").is_err());
        assert!(parse_list("a", "x").is_err());
        assert!(parse_list("0..9:0", "x").is_err());
    }
}
