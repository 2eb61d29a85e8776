use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use zxgopt::{AnnealConfig, LookaheadParams};

mod bench;
mod optimize;

#[derive(Parser)]
#[command(name = "zxgopt", version, about = "Reduce the two-qubit gate count of OpenQASM circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimize one circuit.
    Optimize(optimize::OptimizeArgs),
    /// Optimize every .qasm file in a directory and summarize.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone, Debug)]
pub struct Tuning {
    /// Lookahead steps per chain.
    #[arg(short = 'k', long = "lookahead", default_value_t = 4)]
    pub lookahead: usize,
    /// Candidate rewrites sampled per step (default: min(matches, 8)).
    #[arg(long)]
    pub samples_per_step: Option<usize>,
    /// Lower bound on the number of layer groups.
    #[arg(long, default_value_t = 5)]
    pub min_groups: usize,
    #[arg(long, default_value_t = 300.0)]
    pub temperature: f64,
    #[arg(long, default_value_t = 0.95)]
    pub cooling: f64,
    #[arg(long, default_value_t = 10)]
    pub iters_per_level: usize,
    /// Temperature levels without a new best before annealing stops.
    #[arg(long, default_value_t = 5)]
    pub patience: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Hard cap on annealing iterations; 0 passes the input through.
    #[arg(long)]
    pub max_iters: Option<usize>,
}

impl Tuning {
    pub fn config(&self, seed: u64) -> AnnealConfig {
        AnnealConfig {
            initial_temperature: self.temperature,
            cooling: self.cooling,
            iters_per_level: self.iters_per_level,
            patience: self.patience,
            min_groups: self.min_groups,
            lookahead: LookaheadParams {
                k: self.lookahead,
                samples_per_step: self.samples_per_step,
                ..Default::default()
            },
            seed,
            max_iters: self.max_iters,
            ..Default::default()
        }
    }

    /// Seeds `seed, seed + 1, ...` for `runs` runs.
    pub fn seeds(&self, runs: usize) -> Vec<u64> {
        (0..runs.max(1) as u64).map(|i| self.seed.wrapping_add(i)).collect()
    }
}

/// Process exit statuses.
pub mod status {
    pub const PARSE: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

pub struct Failure {
    pub code: u8,
    pub err: anyhow::Error,
}

impl Failure {
    pub fn parse(err: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: status::PARSE,
            err: err.into(),
        }
    }

    pub fn internal(err: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: status::INTERNAL,
            err: err.into(),
        }
    }
}

pub fn write_or_stdout(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::internal(anyhow::Error::new(e).context(format!("writing {}", p.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn init_threads() {
    let Ok(v) = std::env::var("ZXGOPT_THREADS") else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                log::warn!("could not size the thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring ZXGOPT_THREADS={v:?}: expected a positive integer"),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_threads();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Optimize(a) => optimize::run(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
