use std::path::PathBuf;

use anyhow::{anyhow, Context};
use clap::Args;
use serde::Serialize;
use zxgopt::verify::MAX_QUBITS;
use zxgopt::{anneal, emit_qasm, equivalent, gate_stats, parse_qasm, AnnealConfig, Circuit, TraceRecord, Verdict};

use crate::{write_or_stdout, Failure, Tuning};

#[derive(Args, Debug)]
pub struct OptimizeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Where to write the optimized QASM (default: stdout).
    #[arg(long)]
    output: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Independent runs from consecutive seeds; the best one is kept.
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Check the result against the input unitary (up to 10 qubits).
    #[arg(long)]
    verify: bool,
    /// Include the per-iteration annealing trace in the report.
    #[arg(long)]
    trace: bool,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Serialize)]
pub struct InputStats {
    pub file: String,
    pub qubits: usize,
    pub gates: usize,
    pub two_qubit: usize,
}

#[derive(Serialize)]
pub struct OutputStats {
    pub gates: usize,
    pub two_qubit: usize,
    pub reduction_ratio: f64,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputStats,
    pub output: OutputStats,
    pub params: AnnealConfig,
    pub runs: usize,
    pub seed: u64,
    pub wall_time_s: f64,
    pub verified: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceRecord>>,
}

pub fn reduction(before: usize, after: usize) -> f64 {
    if before == 0 {
        0.0
    } else {
        1.0 - after as f64 / before as f64
    }
}

pub fn read_circuit(path: &PathBuf) -> Result<Circuit, Failure> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::parse)?;
    parse_qasm(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::parse)
}

pub fn run(a: &OptimizeArgs) -> Result<(), Failure> {
    let input = read_circuit(&a.input)?;
    let before = gate_stats(&input);

    let mut best = None;
    let mut wall = 0.0;
    for seed in a.tuning.seeds(a.runs) {
        let cfg = a.tuning.config(seed);
        let r = anneal(&input, &cfg);
        wall += r.wall_time.as_secs_f64();
        let key = (r.best_report.two_qubit_count, r.best_report.total_count);
        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
            best = Some((key, cfg, r));
        }
    }
    let (_, cfg, res) = best.expect("at least one run");

    let verified = if a.verify && input.n_qubits() <= MAX_QUBITS {
        match equivalent(&input, &res.best_circuit, 1e-8) {
            Verdict::Equivalent => "unitary",
            Verdict::Different => {
                return Err(Failure::internal(anyhow!("optimized circuit is not equivalent to the input")));
            }
            Verdict::Unverifiable => "structural",
        }
    } else {
        if a.verify {
            log::warn!("{} qubits is past the unitary check limit; structurally verified only", input.n_qubits());
        }
        "structural"
    };

    let after = res.best_report;
    let report = Report {
        schema: 1,
        input: InputStats {
            file: a.input.display().to_string(),
            qubits: input.n_qubits(),
            gates: before.total_count,
            two_qubit: before.two_qubit_count,
        },
        output: OutputStats {
            gates: after.total_count,
            two_qubit: after.two_qubit_count,
            reduction_ratio: reduction(before.two_qubit_count, after.two_qubit_count),
        },
        seed: cfg.seed,
        params: cfg,
        runs: a.runs.max(1),
        wall_time_s: wall,
        verified,
        trace: a.trace.then_some(res.trace),
    };

    write_or_stdout(a.output.as_ref(), &emit_qasm(&res.best_circuit))?;
    match &a.report {
        Some(p) => {
            let json = serde_json::to_string_pretty(&report).map_err(Failure::internal)?;
            std::fs::write(p, json + "\n")
                .with_context(|| format!("writing {}", p.display()))
                .map_err(Failure::internal)?;
        }
        None => eprintln!(
            "{}: two-qubit {} -> {}, total {} -> {}",
            report.input.file, before.two_qubit_count, after.two_qubit_count, before.total_count, after.total_count
        ),
    }
    Ok(())
}
