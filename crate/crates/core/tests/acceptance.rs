//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use acqlab::engine::{replay, SimState};
use acqlab::generators::{
    connectivity_time, gen_good_tree, gen_hrnp, gen_process, plant_loose_path, seeded_rng, snapshot,
};
use acqlab::model::{binomial, Graph, Hypergraph, LoosePath, Matching, Vertex};
use acqlab::oracle::{exact_ac, lower_bound_for, SearchLimits};
use acqlab::pathfinder::{dfs_loose_path, long_path_constant};
use acqlab::strategies::{
    baranyai, connectivity_strategy, dense_hypergraph_strategy, good_tree_strategy, loose_path_strategy,
    sparse_hypergraph_strategy, DenseConfig,
};
use rand::seq::SliceRandom;
use rand::Rng;

// Pinned tolerances.
const GOOD_TREE_MAX_C: f64 = 50.0;
const CONNECTIVITY_MAX_C: f64 = 100.0;
const LOOSE_PATH_K2_MAX_C: f64 = 8.0;
const LOOSE_PATH_K3_MAX_C: f64 = 12.0;
const DENSE_UNIT_RATIO: f64 = 0.75;
const FUZZ_MATCHINGS: usize = 100_000;

struct Outcome {
    pass: bool,
    detail: String,
    limit: Duration,
}

fn outcome(pass: bool, limit_secs: u64, detail: String) -> Outcome {
    Outcome { pass, detail, limit: Duration::from_secs(limit_secs) }
}

fn graph_ac(g: &Graph) -> usize {
    exact_ac(&g.to_hypergraph(), 2, SearchLimits::default()).expect("searchable")
}

fn oracle_exactness() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=5 {
        if graph_ac(&Graph::complete(n)) != 0 {
            bad.push(format!("K_{n}"));
        }
    }
    for (name, g, want) in [("P_3", Graph::path(3), 1), ("C_4", Graph::cycle(4), 1), ("K_1,3", Graph::star(4), 2)] {
        let got = graph_ac(&g);
        if got != want {
            bad.push(format!("{name}: {got} != {want}"));
        }
    }
    outcome(bad.is_empty(), 10, if bad.is_empty() { "K_n=0 (n<=5), P_3=1, C_4=1, K_1,3=2".into() } else { bad.join("; ") })
}

/// Connected graphs on `n` vertices, one per isomorphism class.
fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs = Graph::complete(n).edges().to_vec();
    let mut perms: Vec<Vec<Vertex>> = Vec::new();
    let mut p: Vec<Vertex> = (0..n as Vertex).collect();
    permutations(&mut p, 0, &mut perms);
    let index = |u: Vertex, v: Vertex| pairs.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|perm| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, &(u, v))| acc | 1 << index(perm[u as usize], perm[v as usize]))
            })
            .min()
            .unwrap();
        if !seen.insert(canon) {
            continue;
        }
        let g = Graph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

fn permutations(p: &mut Vec<Vertex>, i: usize, out: &mut Vec<Vec<Vertex>>) {
    if i == p.len() {
        out.push(p.clone());
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, out);
        p.swap(i, j);
    }
}

fn lower_bound_soundness() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=5 {
        for g in connected_graphs(n) {
            let h = g.to_hypergraph();
            let lb = lower_bound_for(&h, 2).unwrap() as usize;
            let exact = graph_ac(&g);
            let trace = connectivity_strategy(&g, 0, 16).unwrap();
            if !(lb <= exact && trace.claimed_complete && exact <= trace.rounds()) {
                bad.push(format!("{:?}: lb {lb}, exact {exact}, strategy {}", g.edges(), trace.rounds()));
            }
            checked += 1;
        }
    }
    outcome(bad.is_empty(), 600, format!("{checked} connected graphs up to isomorphism (n=2..5); violations: {bad:?}"))
}

fn good_tree_linearity() -> Outcome {
    let mut rng = seeded_rng(3);
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for seed in 0..100 {
        let n = rng.gen_range(100..=1000);
        let tree = gen_good_tree(n, seed).unwrap();
        let trace = good_tree_strategy(&tree).unwrap();
        let c = trace.rounds() as f64 / n as f64;
        worst = worst.max(c);
        if !trace.claimed_complete || c > GOOD_TREE_MAX_C {
            failures.push(format!("seed {seed} n {n} c {c:.2}"));
        }
        if n <= 200 {
            let mut st = SimState::init_graph(&tree.to_graph()).unwrap().with_visits();
            replay(&mut st, &trace.matchings).unwrap();
            if !(0..n as u32).all(|a| st.visited_all(a, &tree.spine)) {
                failures.push(format!("seed {seed}: an agent missed a spine vertex"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        300,
        format!("100 trees, max rounds/n = {worst:.2} (limit {GOOD_TREE_MAX_C}); failures: {failures:?}"),
    )
}

fn connectivity_strategy_linear() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    let mut per_n = Vec::new();
    for n in [200, 500, 1000] {
        let mut worst_n: f64 = 0.0;
        for seed in 0..50 {
            let seq = gen_process(n, seed).unwrap();
            let g = snapshot(&seq, connectivity_time(&seq)).unwrap();
            match connectivity_strategy(&g, seed, 32) {
                Ok(t) if t.claimed_complete => worst_n = worst_n.max(t.rounds() as f64 / n as f64),
                Ok(_) => failures.push(format!("n {n} seed {seed}: incomplete")),
                Err(e) => failures.push(format!("n {n} seed {seed}: {e}")),
            }
        }
        per_n.push(format!("n={n}: {worst_n:.2}"));
        worst = worst.max(worst_n);
    }
    outcome(
        failures.is_empty() && worst <= CONNECTIVITY_MAX_C,
        900,
        format!("C = {worst:.2} (limit {CONNECTIVITY_MAX_C}; {}); failures: {failures:?}", per_n.join(", ")),
    )
}

fn dfs_long_path() -> Outcome {
    let n2 = 300;
    let p2 = long_path_constant(2, 0.5).unwrap() / n2 as f64;
    let hits2 = (0..100).filter(|&s| dfs_loose_path(&gen_hrnp(n2, 2, p2, s).unwrap(), Some(s)).len() >= n2 / 2).count();
    let n3 = 60;
    let p3 = (long_path_constant(3, 0.5).unwrap() / (n3 * n3) as f64).min(1.0);
    let hits3 = (0..100).filter(|&s| dfs_loose_path(&gen_hrnp(n3, 3, p3, s).unwrap(), Some(s)).len() >= n3 / 2).count();
    outcome(hits2 >= 90 && hits3 >= 85, 300, format!("r=2: {hits2}/100 (need 90); r=3: {hits3}/100 (need 85)"))
}

fn baranyai_correctness() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (n, s, want) in [(4, 2, 3), (6, 2, 5), (8, 2, 7), (6, 3, 10), (9, 3, 28), (8, 4, 35)] {
        let f = baranyai(n, s).unwrap();
        let exhaustive = cover_check(n, s, &f.factors);
        counts.push(format!("({n},{s})={}", f.factor_count()));
        if f.factor_count() != want || !exhaustive || binomial(n as u64 - 1, s as u64 - 1) != want as u64 {
            bad.push((n, s));
        }
    }
    outcome(bad.is_empty(), 60, format!("{}; failures {bad:?}", counts.join(" ")))
}

/// Brute force: each factor partitions [0,n), each s-subset appears once.
fn cover_check(n: usize, s: usize, factors: &[Vec<Vec<u32>>]) -> bool {
    let mut all = HashSet::new();
    for f in factors {
        let mut covered: Vec<u32> = f.iter().flatten().copied().collect();
        covered.sort_unstable();
        if covered != (0..n as u32).collect::<Vec<_>>() || f.iter().any(|p| p.len() != s) {
            return false;
        }
        for p in f {
            if !all.insert(p.clone()) {
                return false;
            }
        }
    }
    all.len() as u64 == binomial(n as u64, s as u64)
}

fn loose_path_team_strategy() -> Outcome {
    let mut c2: f64 = 0.0;
    let mut c3: f64 = 0.0;
    let mut failures = Vec::new();
    for ell in (9..=121).step_by(2) {
        let path = LoosePath::new((0..ell as u32).collect(), 3).unwrap();
        let t = loose_path_strategy(&path, 2, ell as u64).unwrap();
        c2 = c2.max(t.rounds() as f64 / ell as f64);
        if !t.claimed_complete {
            failures.push(format!("k=2 l={ell}"));
        }
        if ell <= 61 {
            let t = loose_path_strategy(&path, 3, ell as u64).unwrap();
            c3 = c3.max(t.rounds() as f64 / (ell * ell) as f64);
            if !t.claimed_complete {
                failures.push(format!("k=3 l={ell}"));
            }
        }
    }
    outcome(
        failures.is_empty() && c2 <= LOOSE_PATH_K2_MAX_C && c3 <= LOOSE_PATH_K3_MAX_C,
        600,
        format!(
            "k=2: rounds <= {c2:.2} l (limit {LOOSE_PATH_K2_MAX_C}); k=3: rounds <= {c3:.2} l^2 (limit {LOOSE_PATH_K3_MAX_C}); failures {failures:?}"
        ),
    )
}

fn hypergraph_strategies() -> Outcome {
    let n = 100;
    let p = 1.5 * 2.0 * (n as f64).ln() / (n * n) as f64;
    let sparse_ok = (0..20)
        .filter(|&s| {
            let h = gen_hrnp(n, 3, p, s).unwrap();
            sparse_hypergraph_strategy(&h, 2, s).is_ok_and(|t| t.claimed_complete)
        })
        .count();
    let n = 121;
    let omega = 16.0;
    let p = omega * (n as f64).ln() / (n * n) as f64;
    let mut ratios = Vec::new();
    let mut dense_ok = true;
    for (k, seed) in [(2, 0), (2, 1), (3, 2)] {
        let base = gen_hrnp(n, 3, p, seed).unwrap();
        let (h, path) = plant_loose_path(&base, n, seed).unwrap();
        let cfg = DenseConfig { path: Some(path.clone()), ..DenseConfig::new(omega, seed) };
        let dense = dense_hypergraph_strategy(&h, k, &cfg).unwrap();
        let uncut = loose_path_strategy(&path, k, seed).unwrap();
        let ratio = dense.meta_u64("unit_stage_rounds").unwrap() as f64 / uncut.rounds() as f64;
        dense_ok &= dense.claimed_complete && ratio <= DENSE_UNIT_RATIO;
        ratios.push(format!("k={k}: {ratio:.3} ({} units)", dense.meta_u64("units").unwrap()));
    }
    outcome(
        sparse_ok >= 16 && dense_ok,
        600,
        format!("sparse {sparse_ok}/20 (need 16); dense unit/uncut {} (limit {DENSE_UNIT_RATIO})", ratios.join(", ")),
    )
}

fn random_structure(rng: &mut impl Rng, seed: u64) -> (Hypergraph, usize) {
    let n = rng.gen_range(3..=12);
    let r = rng.gen_range(2..=4.min(n));
    let p = rng.gen_range(0.05..0.6);
    let h = gen_hrnp(n, r, p, seed).unwrap();
    let k = rng.gen_range(2..=r);
    (h, k)
}

fn engine_fuzz() -> Outcome {
    let mut rng = seeded_rng(99);
    let mut applied = 0;
    let mut rejected = 0;
    let mut bad = Vec::new();
    let mut seed = 0;
    while applied < FUZZ_MATCHINGS {
        seed += 1;
        let (h, k) = random_structure(&mut rng, seed);
        let g = h.underlying_graph();
        let mut st = SimState::init(&h, k).unwrap();
        for _ in 0..50 {
            let before = st.ledger().clone();
            let mut edges = g.edges().to_vec();
            edges.shuffle(&mut rng);
            let mut used = vec![false; h.n()];
            let mut swaps = Vec::new();
            for (u, v) in edges {
                if !used[u as usize] && !used[v as usize] && rng.gen_bool(0.5) {
                    used[u as usize] = true;
                    used[v as usize] = true;
                    swaps.push((u, v));
                }
            }
            st.apply_matching(&Matching::new(swaps, 0).unwrap()).unwrap();
            applied += 1;
            let bijective = (0..h.n() as u32).all(|a| st.occupant(st.position(a)) == a);
            if !st.ledger().is_superset_of(&before) || !bijective {
                bad.push(seed);
            }
            // an illegal pair must be rejected without touching the state
            let missing = (0..h.n() as u32)
                .flat_map(|u| (u + 1..h.n() as u32).map(move |v| (u, v)))
                .find(|&(u, v)| !g.has_edge(u, v));
            if let Some(pair) = missing {
                let snapshot = (st.positions().to_vec(), st.ledger().clone(), st.round());
                let ok = st.apply_matching(&Matching::new(vec![pair], 0).unwrap()).is_err()
                    && snapshot == (st.positions().to_vec(), st.ledger().clone(), st.round());
                if ok {
                    rejected += 1;
                } else {
                    bad.push(seed);
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        120,
        format!("{applied} legal matchings, {rejected} illegal swaps rejected; violations in structures {bad:?}"),
    )
}

fn zero_time_regime() -> Outcome {
    let (n, r, k) = (200usize, 3usize, 2usize);
    let p = 2.0 * k as f64 * 1.0 * (n as f64).ln() / n as f64; // (r-k)! = 1
    let complete = (0..20)
        .filter(|&s| SimState::init(&gen_hrnp(n, r, p, s).unwrap(), k).unwrap().is_complete())
        .count();
    outcome(complete >= 18, 60, format!("{complete}/20 complete at round 0 (need 18), p = {p:.4}"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("oracle exactness", oracle_exactness),
        ("lower-bound soundness", lower_bound_soundness),
        ("good-tree linearity", good_tree_linearity),
        ("connectivity-time strategy", connectivity_strategy_linear),
        ("DFS long path", dfs_long_path),
        ("Baranyai correctness", baranyai_correctness),
        ("loose-path team strategy", loose_path_team_strategy),
        ("hypergraph strategies", hypergraph_strategies),
        ("engine property fuzz", engine_fuzz),
        ("zero-time regime", zero_time_regime),
    ];
    let results: Vec<(Outcome, Duration)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, f)| {
                scope.spawn(move || {
                    let t = Instant::now();
                    let o = f();
                    (o, t.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion panicked")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), (o, took))) in criteria.iter().zip(results).enumerate() {
        let pass = o.pass && took <= o.limit;
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.1}s, limit {}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            took.as_secs_f64(),
            o.limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
