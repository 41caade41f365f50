//! `acqlab`: generate instances, run strategies and the oracle, and run
//! ensemble benchmarks.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 config error, 3 I/O error.

mod commands;
mod config;
mod failure;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Model, StrategyName};
use failure::Failure;

#[derive(Parser)]
#[command(name = "acqlab", version, about = "Acquaintance-time laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by the instance-driven subcommands.
#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Random structure model.
    #[arg(long, value_enum, default_value_t = Model::Gnp)]
    pub model: Model,
    /// Vertex counts: `200`, `200,500,1000` or `200..=1000:200`.
    #[arg(long)]
    pub n: Option<String>,
    /// Edge probability.
    #[arg(long)]
    pub p: Option<f64>,
    /// Dense-regime density: `p = omega * ln n / n^(r-1)`.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Edge size for `hrnp`.
    #[arg(long, default_value_t = 3)]
    pub r: usize,
    /// Acquaintance arity.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Seeds: `7`, `1,4,9` or `0..50`.
    #[arg(long, default_value = "0")]
    pub seeds: String,
    #[arg(long, value_enum, default_value_t = StrategyName::Auto)]
    pub strategy: StrategyName,
    /// Path-length fraction; with `hrnp` and no `--p`/`--omega`, sets
    /// `p = c(r, delta) / n^(r-1)`.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Sub-path constant of the dense strategy.
    #[arg(long = "c-cut", default_value_t = 4.0)]
    pub c_cut: f64,
    /// Output file (a directory for `gen`); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Write one canonical JSON structure per (n, seed).
    Gen(Common),
    /// Run a strategy, replay it in the engine and report.
    Run {
        /// Structure file (graph, hypergraph or good tree); generated from
        /// the model flags when absent.
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact acquaintance time of tiny instances.
    Oracle {
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Ensemble experiment, one CSV row per (n, seed).
    Bench(Common),
    /// 1-factorization of the complete s-uniform hypergraph on N vertices.
    Factorize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite, or check a factorization or trace file.
    Verify {
        file: Option<PathBuf>,
        /// Structure the trace file is replayed on.
        #[arg(long)]
        structure: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let pool = config::thread_pool()?;
    pool.install(|| match cli.command {
        Command::Gen(c) => commands::gen(&c),
        Command::Run { file, common } => commands::run(file.as_deref(), &common),
        Command::Oracle { file, common } => commands::oracle(file.as_deref(), &common),
        Command::Bench(c) => commands::bench(&c),
        Command::Factorize { n, s, out } => commands::factorize(n, s, out.as_deref()),
        Command::Verify { file, structure, k } => commands::verify(file.as_deref(), structure.as_deref(), k),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("acqlab: {f}");
            ExitCode::from(f.code())
        }
    }
}
