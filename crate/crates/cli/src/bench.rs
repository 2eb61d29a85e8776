use std::path::PathBuf;
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use zxgopt::{anneal, AnnealConfig, Circuit};

use crate::optimize::{read_circuit, reduction};
use crate::{write_or_stdout, Failure, Tuning};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Directory of .qasm files.
    #[arg(long)]
    corpus: PathBuf,
    /// Where to write the CSV table.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Where to write the JSON summary (default: stdout).
    #[arg(long)]
    report: Option<PathBuf>,
    /// Seeds per circuit; rows report the median run.
    #[arg(long, default_value_t = 5)]
    runs: usize,
    #[command(flatten)]
    tuning: Tuning,
}

#[derive(Serialize, Debug)]
pub struct Row {
    pub name: String,
    pub qubits: usize,
    pub original_two_qubit: usize,
    pub optimized_two_qubit: usize,
    pub best_two_qubit: usize,
    pub total_before: usize,
    pub total_after: usize,
    pub seeds: Vec<u64>,
    pub median_of: usize,
    pub reduction: f64,
}

#[derive(Serialize, Debug)]
pub struct FileFailure {
    pub file: String,
    pub error: String,
}

#[derive(Serialize)]
pub struct Summary {
    pub schema: u32,
    pub rows: Vec<Row>,
    pub failures: Vec<FileFailure>,
    pub mean_reduction: f64,
    pub params: AnnealConfig,
    pub wall_time_s: f64,
}

fn bench_one(name: String, c: &Circuit, tuning: &Tuning, seeds: &[u64]) -> Row {
    let mut outs: Vec<(usize, usize)> = seeds
        .iter()
        .map(|&s| {
            let r = anneal(c, &tuning.config(s)).best_report;
            (r.two_qubit_count, r.total_count)
        })
        .collect();
    let best = outs.iter().map(|o| o.0).min().unwrap_or(0);
    outs.sort_unstable();
    let (median_2q, median_total) = outs[outs.len() / 2];
    let before = c.two_qubit_count();
    Row {
        name,
        qubits: c.n_qubits(),
        original_two_qubit: before,
        optimized_two_qubit: median_2q,
        best_two_qubit: best,
        total_before: c.len(),
        total_after: median_total,
        seeds: seeds.to_vec(),
        median_of: seeds.len(),
        reduction: reduction(before, median_2q),
    }
}

pub fn csv(rows: &[Row]) -> String {
    let mut s = String::from("name,qubits,original_2q,optimized_2q,best_2q,total_before,total_after,seeds,median_of,reduction\n");
    for r in rows {
        let seeds: Vec<String> = r.seeds.iter().map(u64::to_string).collect();
        s += &format!(
            "{},{},{},{},{},{},{},{},{},{:.6}\n",
            r.name,
            r.qubits,
            r.original_two_qubit,
            r.optimized_two_qubit,
            r.best_two_qubit,
            r.total_before,
            r.total_after,
            seeds.join(";"),
            r.median_of,
            r.reduction
        );
    }
    s
}

pub fn run(a: &BenchArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let mut files: Vec<PathBuf> = std::fs::read_dir(&a.corpus)
        .with_context(|| format!("reading corpus directory {}", a.corpus.display()))
        .map_err(Failure::parse)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    files.sort();

    let seeds = a.tuning.seeds(a.runs);
    let results: Vec<Result<Row, FileFailure>> = files
        .par_iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            match read_circuit(p) {
                Ok(c) => Ok(bench_one(name, &c, &a.tuning, &seeds)),
                Err(f) => Err(FileFailure {
                    file: p.display().to_string(),
                    error: format!("{:#}", f.err),
                }),
            }
        })
        .collect();
    let (mut rows, mut failures) = (Vec::new(), Vec::new());
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(f) => {
                log::warn!("skipping {}: {}", f.file, f.error);
                failures.push(f);
            }
        }
    }
    let mean_reduction = if rows.is_empty() {
        0.0
    } else {
        rows.iter().map(|r| r.reduction).sum::<f64>() / rows.len() as f64
    };

    if let Some(p) = &a.csv {
        write_or_stdout(Some(p), &csv(&rows))?;
    }
    let summary = Summary {
        schema: 1,
        rows,
        failures,
        mean_reduction,
        params: a.tuning.config(a.tuning.seed),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    let json = serde_json::to_string_pretty(&summary).map_err(Failure::internal)?;
    write_or_stdout(a.report.as_ref(), &(json + "\n"))
}
