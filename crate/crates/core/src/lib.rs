//! Quantum circuit optimizer targeting two-qubit gate count.
//!
//! The pipeline layers a circuit, randomly groups consecutive layers into
//! subcircuits, rewrites each subcircuit as a graph-like ZX-diagram under a
//! k-step lookahead search over local complementation and pivot rewrites,
//! extracts the best candidate back into gates, stitches the pieces together
//! with a delayed-placement peephole pass, and repeats the whole thing under
//! simulated annealing.
//!
//! ```
//! use zxgopt::{parse_qasm, AnnealConfig, anneal};
//!
//! let c = parse_qasm("OPENQASM 2.0;\nqreg q[2];\ncx q[0],q[1];\ncx q[0],q[1];\n").unwrap();
//! let res = anneal(&c, &AnnealConfig::default());
//! assert_eq!(res.best_report.two_qubit_count, 0);
//! ```

pub mod anneal;
pub mod circuit;
pub mod error;
pub mod extract;
pub mod generate;
pub mod gf2;
pub mod grouping;
pub mod lookahead;
pub mod merge;
pub mod phase;
pub mod qasm;
pub mod verify;
pub mod zx;

pub use anneal::{anneal, metropolis_accept, AnnealConfig, OptimizationResult, TraceRecord};
pub use circuit::{compute_layers, gate_stats, Circuit, CostReport, Gate, GateKind, LayeredCircuit};
pub use error::{CircuitError, ExtractError, QasmError, RewriteError, VerifyError};
pub use extract::extract;
pub use grouping::{sample_group_count, sample_group_lengths, slice_subcircuits, GroupingPlan};
pub use lookahead::{lookahead_chain, optimize_subcircuit, LookaheadMode, LookaheadParams};
pub use merge::{basic_optimize, merge};
pub use phase::Phase;
pub use qasm::{emit_qasm, parse_qasm, parse_qasm_detailed};
pub use verify::{equivalent, unitary_of, zx_tensor, Verdict};
pub use zx::{
    apply_rule, count_hadamard_edges, match_rules, preprocess, to_graph, EdgeType, RuleKind,
    RuleMatch, VertexType, ZxDiagram,
};
