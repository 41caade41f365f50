use std::io::Write;
use std::path::Path;
use std::time::Instant;

use acqlab::engine::{parse_trace, run_trace, SimState};
use acqlab::generators::{gen_good_tree, gen_hrnp, gen_process, seeded_rng};
use acqlab::model::{binomial, Graph, Hypergraph, Matching};
use acqlab::oracle::{exact_ac, lower_bound_for, OracleRecord, SearchLimits};
use acqlab::strategies::{baranyai, connectivity_strategy, good_tree_strategy, Factorization, StrategyTrace};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{self, Instance, Model, StrategyName};
use crate::failure::Failure;
use crate::Common;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Failure::io(path)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Failure::io(Path::new("<stdout>")))
        }
    }
}

/// The (label, instance, seed) jobs of a command, sorted by (n, seed).
fn jobs(file: Option<&Path>, c: &Common) -> Result<Vec<(String, Instance, u64)>, Failure> {
    let seeds = config::seeds(c)?;
    if let Some(path) = file {
        let label = path.display().to_string();
        return seeds.into_iter().map(|s| Ok((label.clone(), config::load(path)?, s))).collect();
    }
    let grid: Vec<(usize, u64)> =
        config::sizes(c)?.into_iter().flat_map(|n| seeds.iter().map(move |&s| (n, s))).collect();
    grid.into_par_iter()
        .map(|(n, s)| Ok((format!("{}-n{n}-s{s}", c.model.name()), config::generate(c, n, s)?, s)))
        .collect()
}

pub fn gen(c: &Common) -> Result<(), Failure> {
    let jobs = jobs(None, c)?;
    match &c.out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(Failure::io(dir))?;
            for (label, inst, _) in &jobs {
                let path = dir.join(format!("{label}.json"));
                std::fs::write(&path, inst.to_json()).map_err(Failure::io(&path))?;
                match inst {
                    Instance::Process { m, .. } => eprintln!("wrote {} (M = {m})", path.display()),
                    _ => eprintln!("wrote {}", path.display()),
                }
            }
            Ok(())
        }
        None => {
            let mut text = String::new();
            for (_, inst, _) in &jobs {
                text.push_str(&inst.to_json());
                text.push('\n');
            }
            emit(None, &text)
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    instance: String,
    strategy: String,
    k: usize,
    seed: u64,
    rounds: usize,
    completion_round: Option<usize>,
    complete: bool,
    lower_bound: u64,
    constants: Value,
}

fn run_one(c: &Common, label: &str, inst: &Instance, seed: u64) -> Result<RunReport, Failure> {
    let structure = inst.structure()?;
    let trace = config::run_strategy(c, inst, seed)?;
    let replay = run_trace(&structure, c.k, &trace.matchings)?;
    let mut constants = serde_json::to_value(&trace.meta).expect("serialises");
    if let Instance::Process { m, .. } = inst {
        constants["M"] = json!(m);
    }
    Ok(RunReport {
        instance: label.to_string(),
        strategy: format!("{:?}", c.strategy).to_lowercase(),
        k: c.k,
        seed,
        rounds: trace.rounds(),
        completion_round: replay.completion_round,
        complete: replay.completed,
        lower_bound: lower_bound_for(&structure, c.k)?,
        constants,
    })
}

pub fn run(file: Option<&Path>, c: &Common) -> Result<(), Failure> {
    let jobs = jobs(file, c)?;
    let reports: Vec<RunReport> =
        jobs.par_iter().map(|(label, inst, seed)| run_one(c, label, inst, *seed)).collect::<Result<_, _>>()?;
    emit(c.out.as_deref(), &(serde_json::to_string_pretty(&reports).expect("serialises") + "\n"))?;
    for r in &reports {
        if !r.complete {
            return Err(Failure::Invariant(format!("{} seed {}: replay did not complete", r.instance, r.seed)));
        }
        if (r.completion_round.unwrap_or(0) as u64) < r.lower_bound {
            return Err(Failure::Invariant(format!("{}: completion below the lower bound", r.instance)));
        }
    }
    Ok(())
}

pub fn oracle(file: Option<&Path>, c: &Common) -> Result<(), Failure> {
    let jobs = jobs(file, c)?;
    let records: Vec<OracleRecord> = jobs
        .par_iter()
        .map(|(label, inst, _)| {
            let h = inst.structure()?;
            let named = |e: acqlab::Error| match Failure::from(e) {
                Failure::Config(m) => Failure::Config(format!("{label}: {m}")),
                other => other,
            };
            let exact = exact_ac(&h, c.k, SearchLimits::default()).map_err(named)?;
            let lower_bound = lower_bound_for(&h, c.k).map_err(named)?;
            if lower_bound > exact as u64 {
                return Err(Failure::Invariant(format!("{label}: lower bound {lower_bound} exceeds {exact}")));
            }
            Ok(OracleRecord { instance: label.clone(), k: c.k, exact, lower_bound })
        })
        .collect::<Result<_, _>>()?;
    emit(c.out.as_deref(), &(serde_json::to_string_pretty(&records).expect("serialises") + "\n"))
}

#[derive(Serialize, Default)]
struct BenchRow {
    model: String,
    n: usize,
    p_or_omega: Option<f64>,
    r: usize,
    k: usize,
    seed: u64,
    #[serde(rename = "M")]
    m: Option<usize>,
    path_len: Option<u64>,
    leftover: Option<u64>,
    rounds: Option<usize>,
    lower_bound: Option<u64>,
    runtime_ms: u128,
    error: String,
}

fn bench_row(c: &Common, n: usize, seed: u64) -> BenchRow {
    let start = Instant::now();
    let r = if c.model == Model::Hrnp { c.r } else { 2 };
    let mut row = BenchRow { model: c.model.name().into(), n, r, k: c.k, seed, ..Default::default() };
    row.p_or_omega = match c.strategy {
        StrategyName::Dense => c.omega,
        _ => config::probability(c, n).ok().flatten(),
    };
    let result = (|| -> Result<(), Failure> {
        let inst = config::generate(c, n, seed)?;
        let h = inst.structure()?;
        row.m = Some(match &inst {
            Instance::Process { m, .. } => *m,
            _ => h.edge_count(),
        });
        row.lower_bound = lower_bound_for(&h, c.k).ok();
        let trace: StrategyTrace = config::run_strategy(c, &inst, seed)?;
        if !trace.claimed_complete {
            return Err(Failure::Invariant("trace does not complete".into()));
        }
        row.path_len = trace.meta_u64("path_len").or(trace.meta_u64("kappa"));
        row.leftover = trace.meta_u64("leftover").or(trace.meta_u64("passive"));
        row.rounds = Some(trace.rounds());
        Ok(())
    })();
    if let Err(e) = result {
        row.error = e.to_string();
    }
    row.runtime_ms = start.elapsed().as_millis();
    row
}

pub fn bench(c: &Common) -> Result<(), Failure> {
    let sizes = config::sizes(c)?;
    let seeds = config::seeds(c)?;
    let mut grid: Vec<(usize, u64)> = sizes.iter().flat_map(|&n| seeds.iter().map(move |&s| (n, s))).collect();
    grid.sort_unstable();
    grid.dedup();
    // rows run concurrently; collecting in grid order keeps the file stable
    let rows: Vec<BenchRow> = grid.par_iter().map(|&(n, s)| bench_row(c, n, s)).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| Failure::Io("<csv>".into(), e.into()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io("<csv>".into(), e.into_error()))?;
    emit(c.out.as_deref(), &String::from_utf8(bytes).expect("csv is utf-8"))?;
    let failed = rows.iter().filter(|r| !r.error.is_empty()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed; see the error column", rows.len());
    }
    Ok(())
}

pub fn factorize(n: usize, s: usize, out: Option<&Path>) -> Result<(), Failure> {
    if s == 0 || n == 0 {
        return Err(Failure::Config("N and s must be positive".into()));
    }
    let f = baranyai(n, s)?;
    f.validate()?;
    eprintln!("{} factors of {} parts", f.factor_count(), n / s);
    emit(out, &(f.to_json() + "\n"))
}

/// Outcome of one named check of the suite.
struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check_oracle_table() -> Check {
    let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).expect("star");
    let table = [("P_3", Graph::path(3), 1), ("C_4", Graph::cycle(4), 1), ("K_{1,3}", star, 2), ("K_4", Graph::complete(4), 0)];
    let mut wrong = Vec::new();
    for (name, g, want) in table {
        match exact_ac(&g.to_hypergraph(), 2, SearchLimits::default()) {
            Ok(v) if v == want => {}
            other => wrong.push(format!("{name}: {other:?}, want {want}")),
        }
    }
    Check { name: "oracle-table", pass: wrong.is_empty(), detail: if wrong.is_empty() { "P_3:1 C_4:1 K_{1,3}:2 K_4:0".into() } else { wrong.join("; ") } }
}

fn check_dominance() -> Check {
    let graphs: Vec<Graph> = (2..=5usize)
        .flat_map(|n| {
            let pairs = Graph::complete(n).edges().to_vec();
            (0u32..1 << pairs.len()).map(move |mask| {
                Graph::new(n, (0..pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i])).expect("graph")
            })
        })
        .filter(Graph::is_connected)
        .collect();
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let h = g.to_hypergraph();
            let exact = exact_ac(&h, 2, SearchLimits::default()).ok()?;
            let lb = lower_bound_for(&h, 2).ok()?;
            let rounds = connectivity_strategy(g, 0, 16).map(|t| t.rounds()).unwrap_or(0);
            (lb as usize > exact || rounds < exact).then(|| format!("{:?}", g.edges()))
        })
        .collect();
    Check {
        name: "oracle-dominance",
        pass: bad.is_empty(),
        detail: format!("{} connected graphs on <= 5 vertices, {} violations", graphs.len(), bad.len()),
    }
}

fn check_factorizations() -> Check {
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 1..=16usize {
        for s in (1..=n).filter(|s| n % s == 0) {
            count += 1;
            if let Err(e) = baranyai(n, s).and_then(|f| f.validate()) {
                bad.push(format!("({n},{s}): {e}"));
            }
        }
    }
    Check { name: "factorizations", pass: bad.is_empty(), detail: format!("{count} (N, s) pairs, {} invalid {}", bad.len(), bad.join("; ")) }
}

fn check_ledger_fuzz() -> Check {
    let mut rng = seeded_rng(0x5eed);
    let mut applied = 0usize;
    let mut bad = 0usize;
    for round in 0..200u64 {
        let n = rng.gen_range(4..12);
        let r = rng.gen_range(2..=3.min(n));
        let h = match gen_hrnp(n, r, 0.4, round) {
            Ok(h) if h.edge_count() > 0 => h,
            _ => continue,
        };
        let pairs = h.underlying_graph().edges().to_vec();
        let mut state = SimState::init(&h, 2).expect("small ledger");
        let mut last = state.ledger().count();
        for _ in 0..100 {
            let mut used = vec![false; n];
            let mut swaps = Vec::new();
            for _ in 0..3 {
                let (u, v) = pairs[rng.gen_range(0..pairs.len())];
                if !used[u as usize] && !used[v as usize] {
                    used[u as usize] = true;
                    used[v as usize] = true;
                    swaps.push((u, v));
                }
            }
            state.apply_matching(&Matching::new(swaps, 0).expect("disjoint")).expect("legal");
            applied += 1;
            let now = state.ledger().count();
            let bijective = (0..n as u32).all(|a| state.occupant(state.position(a)) == a);
            if now < last || !bijective {
                bad += 1;
            }
            last = now;
        }
    }
    Check { name: "ledger-monotonicity", pass: bad == 0, detail: format!("{applied} matchings, {bad} violations") }
}

fn check_strategies() -> Check {
    let mut bad = Vec::new();
    for seed in 0..4 {
        let tree = gen_good_tree(150, seed).expect("tree");
        match good_tree_strategy(&tree) {
            Ok(t) if t.claimed_complete => {}
            other => bad.push(format!("good tree seed {seed}: {:?}", other.err())),
        }
        let seq = gen_process(150, seed).expect("process");
        let g = acqlab::generators::snapshot(&seq, acqlab::generators::connectivity_time(&seq)).expect("snapshot");
        match connectivity_strategy(&g, seed, 16) {
            Ok(t) if t.claimed_complete => {}
            other => bad.push(format!("process seed {seed}: {:?}", other.err())),
        }
    }
    Check { name: "strategy-replay", pass: bad.is_empty(), detail: if bad.is_empty() { "8 traces complete on replay".into() } else { bad.join("; ") } }
}

fn verify_file(file: &Path, structure: Option<&Path>, k: usize) -> Result<(), Failure> {
    let text = std::fs::read_to_string(file).map_err(Failure::io(file))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
    if value.get("factors").is_some() {
        let f: Factorization =
            serde_json::from_value(value).map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
        f.validate().map_err(|e| Failure::Invariant(format!("factorization: {e}")))?;
        let parts = binomial(f.n as u64, f.s as u64);
        println!("PASS factorization: {} factors cover all {parts} {}-subsets of [{}]", f.factor_count(), f.s, f.n);
        return Ok(());
    }
    let matchings = parse_trace(&text).map_err(|e| Failure::Config(format!("{}: {e}", file.display())))?;
    let path = structure.ok_or_else(|| Failure::Config("checking a trace needs --structure".into()))?;
    let h: Hypergraph = config::load(path)?.structure()?;
    let report = run_trace(&h, k, &matchings).map_err(|e| Failure::Invariant(format!("trace legality: {e}")))?;
    match report.completion_round {
        Some(c) => {
            println!("PASS trace: {} rounds, complete after round {c}", report.rounds);
            Ok(())
        }
        None => Err(Failure::Invariant(format!(
            "trace completeness: {} of {} k-sets acquainted",
            report.ledger_counts.last().copied().unwrap_or(0),
            report.total_tuples
        ))),
    }
}

pub fn verify(file: Option<&Path>, structure: Option<&Path>, k: usize) -> Result<(), Failure> {
    if let Some(file) = file {
        return verify_file(file, structure, k);
    }
    let checks: Vec<fn() -> Check> =
        vec![check_oracle_table, check_dominance, check_factorizations, check_ledger_fuzz, check_strategies];
    let results: Vec<Check> = checks.par_iter().map(|f| f()).collect();
    for c in &results {
        println!("{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|c| !c.pass).map(|c| c.name).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Invariant(format!("failed checks: {}", failed.join(", "))))
    }
}
