//! k-step lookahead over local complementation and pivot rewrites for one
//! subcircuit.

use log::warn;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{gate_stats, Circuit};
use crate::error::ExtractError;
use crate::extract::extract;
use crate::merge::basic_optimize;
use crate::zx::{
    apply_rule, clean_identities_and_fusions, count_hadamard_edges, match_rules, preprocess, to_graph, ZxDiagram,
};

/// Default cap on candidates sampled per step when `samples_per_step` is unset.
pub const DEFAULT_SAMPLES_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LookaheadMode {
    /// Sample candidates, keep the one with the fewest Hadamard edges at
    /// each step, then keep the step whose extraction is cheapest.
    Screened,
    /// No screening: apply one uniformly random match per step and keep the
    /// last step. Used as an ablation baseline.
    Blind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LookaheadParams {
    /// Steps per chain.
    pub k: usize,
    /// Candidates sampled per step; `None` means `min(matches, 8)`.
    pub samples_per_step: Option<usize>,
    /// Consecutive non-improving chains before giving up.
    pub patience: usize,
    pub mode: LookaheadMode,
}

impl Default for LookaheadParams {
    fn default() -> Self {
        LookaheadParams {
            k: 4,
            samples_per_step: None,
            patience: 5,
            mode: LookaheadMode::Screened,
        }
    }
}

/// Cost used to rank extracted circuits: two-qubit count, then total count.
fn cost(c: &Circuit) -> (usize, usize) {
    (c.two_qubit_count(), c.len())
}

#[derive(Clone, Debug)]
pub struct ChainOutcome {
    /// The selected diagram `D_t`, to be committed by the caller.
    pub diagram: ZxDiagram,
    /// Its extraction after peephole cleanup.
    pub circuit: Circuit,
    /// 1-based index of the selected step.
    pub step: usize,
    /// Hadamard-edge count of the winner at each step.
    pub step_scores: Vec<usize>,
    /// Two-qubit count of each step's extraction.
    pub step_costs: Vec<usize>,
}

/// Index of the first minimum.
pub fn argmin_first<T: Ord + Copy>(xs: &[T]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (i, &x) in xs.iter().enumerate() {
        if best.is_none_or(|(_, b)| x < b) {
            best = Some((i, x));
        }
    }
    best.map(|b| b.0)
}

/// Runs one chain of up to `k` steps from `d0`. Returns `Ok(None)` when `d0`
/// has no candidate rewrite at all.
pub fn lookahead_chain<R: Rng + ?Sized>(
    d0: &ZxDiagram,
    params: &LookaheadParams,
    rng: &mut R,
) -> Result<Option<ChainOutcome>, ExtractError> {
    let mut cur = d0.clone();
    let mut chain: Vec<ZxDiagram> = Vec::with_capacity(params.k);
    let mut step_scores = Vec::with_capacity(params.k);
    for _ in 0..params.k.max(1) {
        let ms = match_rules(&cur);
        if ms.is_empty() {
            break;
        }
        let j = match params.mode {
            LookaheadMode::Blind => 1,
            LookaheadMode::Screened => params
                .samples_per_step
                .unwrap_or(DEFAULT_SAMPLES_CAP)
                .clamp(1, ms.len()),
        };
        let mut picked = sample(rng, ms.len(), j).into_vec();
        // the match list is ordered by vertex id; sorting makes ties resolve
        // to the lowest id
        picked.sort_unstable();
        let mut candidates = Vec::with_capacity(j);
        for &i in &picked {
            let mut d = apply_rule(&cur, &ms[i]).expect("fresh match");
            clean_identities_and_fusions(&mut d);
            candidates.push(d);
        }
        let scores: Vec<usize> = candidates.iter().map(count_hadamard_edges).collect();
        let w = argmin_first(&scores).expect("nonempty");
        step_scores.push(scores[w]);
        cur = candidates.swap_remove(w);
        chain.push(cur.clone());
    }
    if chain.is_empty() {
        return Ok(None);
    }
    let circuits = chain
        .iter()
        .map(|d| extract(d).map(|c| basic_optimize(&c)))
        .collect::<Result<Vec<_>, _>>()?;
    let costs: Vec<(usize, usize)> = circuits.iter().map(cost).collect();
    let t = match params.mode {
        LookaheadMode::Blind => chain.len() - 1,
        LookaheadMode::Screened => argmin_first(&costs).expect("nonempty"),
    };
    Ok(Some(ChainOutcome {
        diagram: chain.swap_remove(t),
        circuit: circuits.into_iter().nth(t).expect("index"),
        step: t + 1,
        step_scores,
        step_costs: costs.iter().map(|c| c.0).collect(),
    }))
}

#[derive(Clone, Debug)]
pub struct SubcircuitOutcome {
    pub circuit: Circuit,
    pub chains: usize,
    /// The hard cap on chain invocations was reached.
    pub hit_cap: bool,
    /// Extraction failed somewhere and the input was returned.
    pub failed: bool,
}

/// Repeatedly runs lookahead chains, committing each chain's selected diagram
/// and remembering the cheapest extraction seen, starting from the extraction
/// of the unrewritten diagram. Stops when no rewrite
/// applies or after `patience` chains in a row fail to improve. The result
/// never has more two-qubit gates than `c`.
pub fn optimize_subcircuit_detailed<R: Rng + ?Sized>(
    c: &Circuit,
    params: &LookaheadParams,
    rng: &mut R,
) -> SubcircuitOutcome {
    let mut out = SubcircuitOutcome {
        circuit: c.clone(),
        chains: 0,
        hit_cap: false,
        failed: false,
    };
    if c.two_qubit_count() == 0 {
        return out;
    }
    let mut best_cost = cost(c);
    let mut d0 = preprocess(&to_graph(c));
    // the unrewritten diagram is a candidate too: re-extraction alone often
    // routes CNOTs differently
    match extract(&d0) {
        Ok(e) => {
            let e = basic_optimize(&e);
            if cost(&e) < best_cost {
                best_cost = cost(&e);
                out.circuit = e;
            }
        }
        Err(e) => {
            warn!("extraction failed before any rewrite, keeping the subcircuit: {e}");
            out.failed = true;
            return out;
        }
    }
    let cap = params.patience.max(1) * (match_rules(&d0).len() + params.k.max(1));
    let mut stale = 0;
    loop {
        if out.chains >= cap {
            out.hit_cap = true;
            warn!("lookahead stopped at the chain cap ({cap})");
            break;
        }
        out.chains += 1;
        let chain = match lookahead_chain(&d0, params, rng) {
            Ok(Some(ch)) => ch,
            Ok(None) => break,
            Err(e) => {
                warn!("extraction failed during lookahead, keeping the subcircuit: {e}");
                out.failed = true;
                out.circuit = c.clone();
                return out;
            }
        };
        d0 = chain.diagram;
        let cc = cost(&chain.circuit);
        if cc < best_cost {
            best_cost = cc;
            out.circuit = chain.circuit;
            stale = 0;
        } else {
            stale += 1;
            if stale >= params.patience.max(1) {
                break;
            }
        }
    }
    debug_assert!(gate_stats(&out.circuit).two_qubit_count <= c.two_qubit_count());
    out
}

pub fn optimize_subcircuit<R: Rng + ?Sized>(c: &Circuit, params: &LookaheadParams, rng: &mut R) -> Circuit {
    optimize_subcircuit_detailed(c, params, rng).circuit
}
