//! Simulated-annealing driver around the group / rewrite / merge pipeline.

use std::time::{Duration, Instant};

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circuit::{compute_layers, gate_stats, Circuit, CostReport};
use crate::grouping::{sample_plan, slice_subcircuits, GroupingPlan};
use crate::lookahead::{optimize_subcircuit_detailed, LookaheadParams};
use crate::merge::{basic_optimize, merge};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub initial_temperature: f64,
    /// Geometric cooling factor applied after each temperature level.
    pub cooling: f64,
    pub iters_per_level: usize,
    /// Consecutive levels without a new global best before stopping.
    pub patience: usize,
    pub min_temperature: f64,
    /// Lower bound `b` on the number of groups.
    pub min_groups: usize,
    pub min_group_len: usize,
    /// When false every iteration treats the whole circuit as one group.
    pub grouping: bool,
    pub lookahead: LookaheadParams,
    pub seed: u64,
    /// Hard cap on pipeline iterations; `Some(0)` returns the input as is.
    pub max_iters: Option<usize>,
    /// Optimize the groups of one iteration on the rayon pool.
    pub parallel: bool,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            initial_temperature: 300.0,
            cooling: 0.95,
            iters_per_level: 10,
            patience: 5,
            min_temperature: 1e-3,
            min_groups: 5,
            min_group_len: 1,
            grouping: true,
            lookahead: LookaheadParams::default(),
            seed: 0,
            max_iters: None,
            parallel: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub temperature: f64,
    pub group_lengths: Vec<usize>,
    pub candidate_two_qubit: usize,
    pub candidate_total: usize,
    /// Candidate minus current two-qubit count (positive means worse).
    pub delta: i64,
    pub accepted: bool,
    pub current_two_qubit: usize,
    pub best_two_qubit: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OptimizationResult {
    pub best_circuit: Circuit,
    pub best_report: CostReport,
    pub initial_report: CostReport,
    pub trace: Vec<TraceRecord>,
    /// Groups whose optimization failed and fell back to the original gates.
    pub failed_groups: usize,
    #[serde(with = "secs")]
    pub wall_time: Duration,
}

mod secs {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        f64::deserialize(d).map(Duration::from_secs_f64)
    }
}

/// Metropolis rule for a change in cost: always accept `delta <= 0`,
/// otherwise accept with probability `exp(-delta / temperature)`.
pub fn metropolis_accept<R: Rng + ?Sized>(delta: i64, temperature: f64, rng: &mut R) -> bool {
    if delta <= 0 {
        return true;
    }
    rng.gen::<f64>() < (-(delta as f64) / temperature).exp()
}

/// SplitMix64 finalizer, used to give every group its own stream.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub(crate) fn derive_seed(base: u64, index: usize) -> u64 {
    mix(base ^ mix(index as u64))
}

struct Step {
    circuit: Circuit,
    plan: GroupingPlan,
    failed: usize,
}

/// One pass of the pipeline: group, optimize each group, merge, peephole.
fn pipeline_step(current: &Circuit, cfg: &AnnealConfig, rng: &mut ChaCha8Rng) -> Step {
    let lc = compute_layers(current);
    let plan = if cfg.grouping {
        sample_plan(lc.depth(), current.n_qubits(), cfg.min_groups, cfg.min_group_len, rng)
    } else {
        GroupingPlan::single(lc.depth())
    };
    let base = rng.next_u64();
    let parts = slice_subcircuits(&lc, &plan);
    let run = |(i, p): (usize, &Circuit)| {
        let mut r = ChaCha8Rng::seed_from_u64(derive_seed(base, i));
        optimize_subcircuit_detailed(p, &cfg.lookahead, &mut r)
    };
    let outs: Vec<_> = if cfg.parallel {
        parts.par_iter().enumerate().map(run).collect()
    } else {
        parts.iter().enumerate().map(run).collect()
    };
    let failed = outs.iter().filter(|o| o.failed).count();
    let pieces: Vec<Circuit> = outs.into_iter().map(|o| o.circuit).collect();
    let merged = merge(&pieces).expect("groups share the qubit count");
    Step {
        circuit: basic_optimize(&merged),
        plan,
        failed,
    }
}

fn better(a: &CostReport, b: &CostReport) -> bool {
    (a.two_qubit_count, a.total_count) < (b.two_qubit_count, b.total_count)
}

/// Anneals over re-groupings of the current circuit. The returned best is
/// never worse than the input in two-qubit count, and the same config
/// (including seed) gives the same trace.
pub fn anneal(c: &Circuit, cfg: &AnnealConfig) -> OptimizationResult {
    let start = Instant::now();
    let initial_report = gate_stats(c);
    let mut best = c.clone();
    let mut best_report = initial_report;
    let mut trace = Vec::new();
    let mut failed_groups = 0;

    let floor = initial_report.two_qubit_count == 0 || c.is_empty();
    if !floor && cfg.max_iters != Some(0) {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut current = c.clone();
        let mut cur_2q = initial_report.two_qubit_count;
        let mut temperature = cfg.initial_temperature;
        let mut stale_levels = 0;
        let mut iteration = 0;
        'levels: loop {
            let level_start = best_report;
            for _ in 0..cfg.iters_per_level.max(1) {
                if cfg.max_iters.is_some_and(|m| iteration >= m) {
                    break 'levels;
                }
                let step = pipeline_step(&current, cfg, &mut rng);
                failed_groups += step.failed;
                let report = gate_stats(&step.circuit);
                let delta = report.two_qubit_count as i64 - cur_2q as i64;
                let accepted = metropolis_accept(delta, temperature, &mut rng);
                if better(&report, &best_report) {
                    best = step.circuit.clone();
                    best_report = report;
                }
                if accepted {
                    current = step.circuit;
                    cur_2q = report.two_qubit_count;
                }
                trace.push(TraceRecord {
                    iteration,
                    temperature,
                    group_lengths: step.plan.lengths,
                    candidate_two_qubit: report.two_qubit_count,
                    candidate_total: report.total_count,
                    delta,
                    accepted,
                    current_two_qubit: cur_2q,
                    best_two_qubit: best_report.two_qubit_count,
                });
                iteration += 1;
            }
            if best_report.two_qubit_count == 0 {
                break;
            }
            stale_levels = if better(&best_report, &level_start) { 0 } else { stale_levels + 1 };
            if stale_levels >= cfg.patience.max(1) {
                break;
            }
            temperature *= cfg.cooling;
            if temperature < cfg.min_temperature {
                break;
            }
        }
    }

    OptimizationResult {
        best_circuit: best,
        best_report,
        initial_report,
        trace,
        failed_groups,
        wall_time: start.elapsed(),
    }
}
