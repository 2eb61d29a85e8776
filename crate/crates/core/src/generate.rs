//! Random circuit generation, used by tests, benches and the CLI.

use rand::Rng;

use crate::circuit::{Circuit, Gate};
use crate::phase::Phase;

/// A random Clifford+T circuit (plus the occasional CZ and RZ) with
/// roughly a third of the gates being CNOTs.
pub fn random_circuit<R: Rng + ?Sized>(n_qubits: usize, n_gates: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    for _ in 0..n_gates {
        let q = rng.gen_range(0..n_qubits);
        let two = n_qubits > 1 && rng.gen_bool(0.35);
        let g = if two {
            let mut r = rng.gen_range(0..n_qubits - 1);
            if r >= q {
                r += 1;
            }
            if rng.gen_bool(0.85) {
                Gate::cnot(q, r)
            } else {
                Gate::Cz(q, r)
            }
        } else {
            match rng.gen_range(0..10) {
                0 | 1 => Gate::H(q),
                2 => Gate::X(q),
                3 => Gate::Z(q),
                4 => Gate::S(q),
                5 => Gate::Sdg(q),
                6 => Gate::T(q),
                7 => Gate::Tdg(q),
                8 => Gate::Y(q),
                _ => Gate::Rz(q, Phase::new(rng.gen_range(1..8), 8)),
            }
        };
        c.push_unchecked(g);
    }
    c
}

/// Like [`random_circuit`] but restricted to {CNOT, H, S, T, Z-phases},
/// with a higher CNOT density. Useful for exercising extraction.
pub fn random_cnot_heavy<R: Rng + ?Sized>(n_qubits: usize, n_gates: usize, rng: &mut R) -> Circuit {
    let mut c = Circuit::new(n_qubits);
    for _ in 0..n_gates {
        let q = rng.gen_range(0..n_qubits);
        if n_qubits > 1 && rng.gen_bool(0.5) {
            let mut r = rng.gen_range(0..n_qubits - 1);
            if r >= q {
                r += 1;
            }
            c.push_unchecked(Gate::cnot(q, r));
        } else {
            let g = match rng.gen_range(0..4) {
                0 => Gate::H(q),
                1 => Gate::S(q),
                2 => Gate::T(q),
                _ => Gate::Tdg(q),
            };
            c.push_unchecked(g);
        }
    }
    c
}
