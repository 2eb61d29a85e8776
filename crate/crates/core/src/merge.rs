//! Concatenation of optimized pieces and the delayed-placement peephole pass.

use crate::circuit::{Circuit, Gate};
use crate::error::CircuitError;

pub fn merge(parts: &[Circuit]) -> Result<Circuit, CircuitError> {
    let Some(first) = parts.first() else {
        return Ok(Circuit::new(0));
    };
    let n = first.n_qubits();
    let mut gates = Vec::with_capacity(parts.iter().map(Circuit::len).sum());
    for p in parts {
        if p.n_qubits() != n {
            return Err(CircuitError::QubitCountMismatch {
                expected: n,
                found: p.n_qubits(),
            });
        }
        gates.extend_from_slice(p.gates());
    }
    Ok(Circuit::from_gates_unchecked(n, gates))
}

/// How a gate acts on one of its qubits, for commutation purposes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Role {
    /// Diagonal in the computational basis on this qubit.
    Z,
    /// Diagonal in the X basis on this qubit.
    X,
    Barrier,
}

fn role(g: &Gate, q: usize) -> Role {
    match *g {
        Gate::Cnot { control, .. } => {
            if control == q {
                Role::Z
            } else {
                Role::X
            }
        }
        Gate::Cz(..) => Role::Z,
        Gate::X(_) => Role::X,
        Gate::H(_) | Gate::Y(_) => Role::Barrier,
        _ => Role::Z,
    }
}

/// Sufficient condition: on every shared qubit both gates are diagonal in
/// the same basis.
fn commutes(a: &Gate, b: &Gate) -> bool {
    a.qubits().iter().filter(|&&q| b.acts_on(q)).all(|&q| {
        let r = role(a, q);
        r != Role::Barrier && r == role(b, q)
    })
}

enum Combine {
    Cancel,
    Replace(Gate),
    None,
}

/// What `earlier` followed directly by `later` reduces to.
fn combine(earlier: &Gate, later: &Gate) -> Combine {
    if let (Some(a), Some(b)) = (earlier.z_rotation(), later.z_rotation()) {
        if earlier.qubits() == later.qubits() {
            return match Gate::z_phase(earlier.qubits()[0], a + b) {
                Some(g) => Combine::Replace(g),
                None => Combine::Cancel,
            };
        }
        return Combine::None;
    }
    match (*earlier, *later) {
        (Gate::H(a), Gate::H(b)) | (Gate::X(a), Gate::X(b)) | (Gate::Y(a), Gate::Y(b)) if a == b => Combine::Cancel,
        (Gate::Cnot { .. }, Gate::Cnot { .. }) if earlier == later => Combine::Cancel,
        (Gate::Cz(a, b), Gate::Cz(c, d)) if (a, b) == (c, d) || (a, b) == (d, c) => Combine::Cancel,
        _ => Combine::None,
    }
}

/// Emitted gates with per-qubit stacks. Each placed gate is moved back past
/// the gates it commutes with until it cancels or merges with one, or meets
/// a gate that blocks it.
struct Placer {
    n: usize,
    out: Vec<Option<Gate>>,
    // per-qubit indices into `out`, in placement order
    on: Vec<Vec<usize>>,
}

impl Placer {
    fn new(n: usize) -> Self {
        Placer {
            n,
            out: Vec::new(),
            on: vec![Vec::new(); n],
        }
    }

    fn place(&mut self, g: Gate) {
        let qs = g.qubits();
        let mut cursors: Vec<usize> = qs.iter().map(|&q| self.on[q].len()).collect();
        loop {
            // latest live gate on any of g's qubits not yet examined
            let mut best: Option<usize> = None;
            for (k, &q) in qs.iter().enumerate() {
                while cursors[k] > 0 && self.out[self.on[q][cursors[k] - 1]].is_none() {
                    cursors[k] -= 1;
                }
                if cursors[k] > 0 {
                    let idx = self.on[q][cursors[k] - 1];
                    best = Some(best.map_or(idx, |b: usize| b.max(idx)));
                }
            }
            let Some(idx) = best else { break };
            for (k, &q) in qs.iter().enumerate() {
                if cursors[k] > 0 && self.on[q][cursors[k] - 1] == idx {
                    cursors[k] -= 1;
                }
            }
            let h = self.out[idx].expect("live");
            match combine(&h, &g) {
                Combine::Cancel => {
                    self.out[idx] = None;
                    return;
                }
                Combine::Replace(m) => {
                    self.out[idx] = Some(m);
                    return;
                }
                Combine::None => {}
            }
            if !commutes(&h, &g) {
                break;
            }
        }
        let idx = self.out.len();
        self.out.push(Some(g));
        for &q in &qs {
            self.on[q].push(idx);
        }
    }

    fn finish(self) -> Circuit {
        let gates: Vec<Gate> = self.out.into_iter().flatten().collect();
        Circuit::from_gates_unchecked(self.n, gates)
    }
}

/// Placement with cancellation only.
fn sweep(c: &Circuit) -> Circuit {
    let mut p = Placer::new(c.n_qubits());
    for g in c.gates() {
        p.place(*g);
    }
    p.finish()
}

/// Gates still to be placed on one qubit: `Z^z`, then `X^x`, then `H^h`.
#[derive(Clone, Copy, Default)]
struct Frame {
    h: bool,
    x: bool,
    z: bool,
}

/// Placement with delayed Hadamards and Paulis. Hadamards are held back and
/// two-qubit gates are rewritten to act before them (H on both sides of a
/// CNOT reverses it, H on one side turns CNOT and CZ into each other);
/// Paulis are pushed forward through two-qubit gates.
fn frame_sweep(c: &Circuit) -> Circuit {
    let n = c.n_qubits();
    let mut p = Placer::new(n);
    let mut fr = vec![Frame::default(); n];

    fn flush_h(p: &mut Placer, f: &mut Frame, q: usize) {
        if f.h {
            p.place(Gate::H(q));
            // H X^x Z^z = Z^x X^z H up to sign
            *f = Frame { h: false, x: f.z, z: f.x };
        }
    }
    fn pauli_x(f: &mut Frame) {
        if f.h {
            f.z ^= true;
        } else {
            f.x ^= true;
        }
    }
    fn pauli_z(f: &mut Frame) {
        if f.h {
            f.x ^= true;
        } else {
            f.z ^= true;
        }
    }

    for g in c.gates() {
        match *g {
            Gate::H(q) => fr[q].h ^= true,
            Gate::X(q) => pauli_x(&mut fr[q]),
            Gate::Z(q) => pauli_z(&mut fr[q]),
            Gate::Y(q) => {
                pauli_z(&mut fr[q]);
                pauli_x(&mut fr[q]);
            }
            Gate::Cnot { control, target } => {
                let inner = match (fr[control].h, fr[target].h) {
                    (false, false) => *g,
                    (true, true) => Gate::cnot(target, control),
                    (false, true) => Gate::Cz(control, target),
                    (true, false) => {
                        flush_h(&mut p, &mut fr[control], control);
                        *g
                    }
                };
                place_two(&mut p, &mut fr, inner);
            }
            Gate::Cz(a, b) => {
                let inner = match (fr[a].h, fr[b].h) {
                    (false, false) => *g,
                    (false, true) => Gate::cnot(a, b),
                    (true, false) => Gate::cnot(b, a),
                    (true, true) => {
                        flush_h(&mut p, &mut fr[a], a);
                        Gate::cnot(a, b)
                    }
                };
                place_two(&mut p, &mut fr, inner);
            }
            _ => {
                let q = g.qubits()[0];
                let phase = g.z_rotation().expect("diagonal gate");
                flush_h(&mut p, &mut fr[q], q);
                let phase = if fr[q].x { -phase } else { phase };
                if let Some(g) = Gate::z_phase(q, phase) {
                    p.place(g);
                }
            }
        }
    }
    for (q, f) in fr.into_iter().enumerate() {
        match (f.z, f.x) {
            (true, true) => p.place(Gate::Y(q)),
            (true, false) => p.place(Gate::Z(q)),
            (false, true) => p.place(Gate::X(q)),
            (false, false) => {}
        }
        if f.h {
            p.place(Gate::H(q));
        }
    }
    p.finish()
}

/// Places a two-qubit gate that acts inside the Hadamard frame and pushes
/// the pending Paulis through it.
fn place_two(p: &mut Placer, fr: &mut [Frame], g: Gate) {
    match g {
        Gate::Cnot { control, target } => {
            let (xc, zt) = (fr[control].x, fr[target].z);
            fr[target].x ^= xc;
            fr[control].z ^= zt;
        }
        Gate::Cz(a, b) => {
            let (xa, xb) = (fr[a].x, fr[b].x);
            fr[b].z ^= xa;
            fr[a].z ^= xb;
        }
        _ => unreachable!("two-qubit gate"),
    }
    p.place(g);
}

/// Folds each CZ into an earlier CNOT on the same pair when everything in
/// between commutes with the CZ: CNOT(c,t) then CZ(c,t) equals S†(t),
/// CNOT(c,t), S(c), S(t). Trades a two-qubit gate for phases, which the
/// sweeps then merge with their neighbors.
fn absorb_cz(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.len());
    for g in c.gates() {
        let Gate::Cz(a, b) = *g else {
            out.push(*g);
            continue;
        };
        let mut hit = None;
        for (j, h) in out.iter().enumerate().rev() {
            if !h.acts_on(a) && !h.acts_on(b) {
                continue;
            }
            if let Gate::Cnot { control, target } = *h {
                if (control, target) == (a, b) || (control, target) == (b, a) {
                    hit = Some((j, control, target));
                    break;
                }
            }
            if !commutes(h, g) {
                break;
            }
        }
        match hit {
            Some((j, ctl, tgt)) => {
                out.splice(j..=j, [Gate::Sdg(tgt), Gate::cnot(ctl, tgt), Gate::S(ctl), Gate::S(tgt)]);
            }
            None => out.push(*g),
        }
    }
    Circuit::from_gates_unchecked(c.n_qubits(), out)
}

fn cost(c: &Circuit) -> (usize, usize) {
    (c.two_qubit_count(), c.len())
}

fn both_ways(c: &Circuit, f: fn(&Circuit) -> Circuit) -> Circuit {
    f(&f(c).adjoint()).adjoint()
}

/// Peephole optimization by delayed placement, repeated forwards and
/// backwards while it lowers the (two-qubit, total) count without raising
/// either. Never increases either count, and is idempotent.
pub fn basic_optimize(c: &Circuit) -> Circuit {
    let mut cur = c.clone();
    loop {
        let plain = both_ways(&cur, sweep);
        let framed = both_ways(&both_ways(&cur, frame_sweep), sweep);
        let absorbed = both_ways(&both_ways(&both_ways(&framed, absorb_cz), frame_sweep), sweep);
        let (n2, nt) = cost(&cur);
        let best = [plain, framed, absorbed]
            .into_iter()
            .filter(|x| {
                let (x2, xt) = cost(x);
                x2 <= n2 && xt <= nt && (x2, xt) != (n2, nt)
            })
            .min_by_key(cost);
        match best {
            Some(b) => cur = b,
            None => return cur,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{compute_layers, gate_stats};
    use crate::generate::random_circuit;
    use crate::grouping::{sample_plan, slice_subcircuits};
    use crate::phase::Phase;
    use crate::verify::{equivalent, Verdict};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn circ(n: usize, gs: &[Gate]) -> Circuit {
        Circuit::from_gates(n, gs.iter().copied()).unwrap()
    }

    #[test]
    fn merge_single_part_is_identity() {
        let c = circ(2, &[Gate::H(0), Gate::cnot(0, 1)]);
        assert_eq!(merge(std::slice::from_ref(&c)).unwrap(), c);
        assert!(merge(&[c, Circuit::new(3)]).is_err());
    }

    #[test]
    fn merge_counts_are_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let parts: Vec<Circuit> = (0..4).map(|_| random_circuit(3, 12, &mut rng)).collect();
        let m = merge(&parts).unwrap();
        let sum = |f: fn(&crate::circuit::CostReport) -> usize| parts.iter().map(|p| f(&gate_stats(p))).sum::<usize>();
        let r = gate_stats(&m);
        assert_eq!(r.total_count, sum(|r| r.total_count));
        assert_eq!(r.two_qubit_count, sum(|r| r.two_qubit_count));
        assert_eq!(r.h_count, sum(|r| r.h_count));
        assert_eq!(r.t_count, sum(|r| r.t_count));
    }

    #[test]
    fn merged_slices_keep_per_qubit_sequences() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let c = random_circuit(4, 35, &mut rng);
            let lc = compute_layers(&c);
            let plan = sample_plan(lc.depth(), 4, 3, 1, &mut rng);
            let m = merge(&slice_subcircuits(&lc, &plan)).unwrap();
            for q in 0..4 {
                assert!(m.gates_on(q).eq(c.gates_on(q)));
            }
        }
    }

    #[test]
    fn adjacent_hadamards_cancel() {
        assert!(basic_optimize(&circ(1, &[Gate::H(0), Gate::H(0)])).is_empty());
    }

    #[test]
    fn hadamards_meeting_at_a_seam_cancel() {
        let left = circ(2, &[Gate::cnot(0, 1), Gate::H(1)]);
        let right = circ(2, &[Gate::H(1), Gate::T(0)]);
        let m = merge(&[left, right]).unwrap();
        assert_eq!(basic_optimize(&m), circ(2, &[Gate::cnot(0, 1), Gate::T(0)]));
    }

    #[test]
    fn phases_merge_through_controls() {
        let c = circ(
            2,
            &[Gate::T(0), Gate::cnot(0, 1), Gate::Cz(0, 1), Gate::T(0), Gate::Cz(1, 0), Gate::cnot(0, 1)],
        );
        assert_eq!(basic_optimize(&c), circ(2, &[Gate::S(0)]));
        let r = circ(1, &[Gate::Rz(0, Phase::new(1, 3)), Gate::Rz(0, Phase::new(5, 3))]);
        assert!(basic_optimize(&r).is_empty());
    }

    #[test]
    fn x_passes_cnot_targets_only() {
        let c = circ(2, &[Gate::X(1), Gate::cnot(0, 1), Gate::X(1)]);
        assert_eq!(basic_optimize(&c), circ(2, &[Gate::cnot(0, 1)]));
        // on the control an X spreads to the target instead
        let d = circ(2, &[Gate::X(0), Gate::cnot(0, 1), Gate::X(0)]);
        let o = basic_optimize(&d);
        assert_eq!(o.len(), 2);
        assert_eq!(equivalent(&d, &o, 1e-9), Verdict::Equivalent);
    }

    #[test]
    fn hadamard_conjugation_reverses_cnot() {
        let c = circ(
            2,
            &[Gate::H(0), Gate::H(1), Gate::cnot(0, 1), Gate::H(0), Gate::H(1), Gate::cnot(1, 0)],
        );
        assert!(basic_optimize(&c).is_empty());
    }

    #[test]
    fn cz_between_hadamards_cancels_cnot() {
        let c = circ(2, &[Gate::cnot(0, 1), Gate::H(1), Gate::Cz(1, 0), Gate::H(1)]);
        assert!(basic_optimize(&c).is_empty());
        let d = circ(3, &[Gate::cnot(0, 1), Gate::T(0), Gate::H(1), Gate::Cz(0, 1), Gate::H(1), Gate::S(2)]);
        assert_eq!(basic_optimize(&d), circ(3, &[Gate::T(0), Gate::S(2)]));
    }

    #[test]
    fn cz_folds_into_cnot() {
        let c = circ(2, &[Gate::T(1), Gate::cnot(0, 1), Gate::Tdg(0), Gate::Cz(1, 0), Gate::Sdg(1), Gate::Sdg(0)]);
        let o = basic_optimize(&c);
        assert_eq!(o.two_qubit_count(), 1);
        assert!(o.len() <= c.len());
        assert_eq!(equivalent(&c, &o, 1e-9), Verdict::Equivalent);
    }

    #[test]
    fn paulis_cross_two_qubit_gates() {
        // Z on a target reaches the control, where it cancels
        let c = circ(2, &[Gate::Z(0), Gate::Z(1), Gate::cnot(0, 1), Gate::Z(1)]);
        assert_eq!(basic_optimize(&c), circ(2, &[Gate::cnot(0, 1)]));
    }

    #[test]
    fn hadamard_blocks() {
        let c = circ(1, &[Gate::T(0), Gate::H(0), Gate::Tdg(0)]);
        assert_eq!(basic_optimize(&c), c);
    }

    #[test]
    fn random_circuits_sound_monotone_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..500 {
            let n = rng.gen_range(1..=5);
            let c = random_circuit(n, rng.gen_range(0..40), &mut rng);
            let o = basic_optimize(&c);
            assert_eq!(equivalent(&c, &o, 1e-8), Verdict::Equivalent, "{c}");
            assert!(o.len() <= c.len());
            assert!(o.two_qubit_count() <= c.two_qubit_count());
            assert_eq!(basic_optimize(&o), o);
        }
    }
}
