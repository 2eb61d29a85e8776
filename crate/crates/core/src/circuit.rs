//! Gate-level circuit representation, layering and cost metrics.

use std::fmt;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::CircuitError;
use crate::phase::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rz,
    Cnot,
    Cz,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz => 2,
            _ => 1,
        }
    }

    pub fn qasm_name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rz => "rz",
            GateKind::Cnot => "cx",
            GateKind::Cz => "cz",
        }
    }
}

/// A single gate. Z-rotations carry an exact phase; the named phase gates
/// (Z, S, Sdg, T, Tdg) have their phase implied by the kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    Rz(usize, Phase),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
}

impl Gate {
    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    /// The diagonal gate `diag(1, e^{i phase})` on `q`, using a named kind
    /// when one exists. Returns `None` for the zero phase.
    pub fn z_phase(q: usize, phase: Phase) -> Option<Gate> {
        let g = match (phase.numer(), phase.denom()) {
            (0, _) => return None,
            (1, 1) => Gate::Z(q),
            (1, 2) => Gate::S(q),
            (3, 2) => Gate::Sdg(q),
            (1, 4) => Gate::T(q),
            (7, 4) => Gate::Tdg(q),
            _ => Gate::Rz(q, phase),
        };
        Some(g)
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::S(_) => GateKind::S,
            Gate::Sdg(_) => GateKind::Sdg,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Rz(..) => GateKind::Rz,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Cz(..) => GateKind::Cz,
        }
    }

    pub fn qubits(&self) -> ArrayVec<usize, 2> {
        let mut v = ArrayVec::new();
        match *self {
            Gate::H(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::Rz(q, _) => v.push(q),
            Gate::Cnot { control, target } => {
                v.push(control);
                v.push(target);
            }
            Gate::Cz(a, b) => {
                v.push(a);
                v.push(b);
            }
        }
        v
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits().contains(&q)
    }

    pub fn is_two_qubit(&self) -> bool {
        self.kind().arity() == 2
    }

    /// Phase of a diagonal single-qubit gate, `None` for anything else.
    pub fn z_rotation(&self) -> Option<Phase> {
        match *self {
            Gate::Z(_) => Some(Phase::pi()),
            Gate::S(_) => Some(Phase::new(1, 2)),
            Gate::Sdg(_) => Some(Phase::new(3, 2)),
            Gate::T(_) => Some(Phase::new(1, 4)),
            Gate::Tdg(_) => Some(Phase::new(7, 4)),
            Gate::Rz(_, p) => Some(p),
            _ => None,
        }
    }

    /// Explicit phase, present only for `Rz`.
    pub fn phase(&self) -> Option<Phase> {
        match *self {
            Gate::Rz(_, p) => Some(p),
            _ => None,
        }
    }

    /// The inverse gate (up to global phase).
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::Rz(q, p) => Gate::Rz(q, -p),
            g => g,
        }
    }

    fn validate(&self, n_qubits: usize) -> Result<(), CircuitError> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n_qubits {
                return Err(CircuitError::QubitOutOfRange { qubit: q, n_qubits });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(CircuitError::RepeatedQubit(qs[0]));
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, p) => write!(f, "rz({p}) q[{q}]"),
            Gate::Cnot { control, target } => write!(f, "cx q[{control}],q[{target}]"),
            Gate::Cz(a, b) => write!(f, "cz q[{a}],q[{b}]"),
            g => write!(f, "{} q[{}]", g.kind().qasm_name(), g.qubits()[0]),
        }
    }
}

/// An ordered gate list over `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Self {
        Circuit {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(
        n_qubits: usize,
        gates: impl IntoIterator<Item = Gate>,
    ) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(n_qubits);
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CircuitError> {
        g.validate(self.n_qubits)?;
        self.gates.push(g);
        Ok(())
    }

    /// Push a gate already known to be valid for this circuit.
    pub(crate) fn push_unchecked(&mut self, g: Gate) {
        debug_assert!(g.validate(self.n_qubits).is_ok(), "{g}");
        self.gates.push(g);
    }

    pub(crate) fn from_gates_unchecked(n_qubits: usize, gates: Vec<Gate>) -> Self {
        debug_assert!(gates.iter().all(|g| g.validate(n_qubits).is_ok()));
        Circuit { n_qubits, gates }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// The adjoint circuit (reversed order, inverted gates).
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Gates touching `q`, in execution order.
    pub fn gates_on(&self, q: usize) -> impl Iterator<Item = &Gate> + '_ {
        self.gates.iter().filter(move |g| g.acts_on(q))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit on {} qubits:", self.n_qubits)?;
        for g in &self.gates {
            writeln!(f, "  {g}")?;
        }
        Ok(())
    }
}

/// Gates partitioned into depth layers. `layers[t]` holds indices into
/// `circuit.gates()` of the gates at depth `t + 1`, in circuit order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayeredCircuit {
    pub circuit: Circuit,
    pub layers: Vec<Vec<usize>>,
    /// 1-based layer of each gate.
    pub layer_of: Vec<usize>,
}

impl LayeredCircuit {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// Assigns each gate to one more than the deepest earlier gate sharing a
/// qubit with it (layer 1 when there is none).
pub fn compute_layers(c: &Circuit) -> LayeredCircuit {
    let mut frontier = vec![0usize; c.n_qubits()];
    let mut layer_of = Vec::with_capacity(c.len());
    let mut layers: Vec<Vec<usize>> = Vec::new();
    for (i, g) in c.gates().iter().enumerate() {
        let qs = g.qubits();
        let l = qs.iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
        for &q in &qs {
            frontier[q] = l;
        }
        if layers.len() < l {
            layers.resize_with(l, Vec::new);
        }
        layers[l - 1].push(i);
        layer_of.push(l);
    }
    LayeredCircuit {
        circuit: c.clone(),
        layers,
        layer_of,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CostReport {
    pub two_qubit_count: usize,
    pub total_count: usize,
    pub h_count: usize,
    pub t_count: usize,
    pub depth: usize,
}

pub fn gate_stats(c: &Circuit) -> CostReport {
    let mut r = CostReport {
        total_count: c.len(),
        ..Default::default()
    };
    for g in c.gates() {
        match g.kind() {
            GateKind::Cnot | GateKind::Cz => r.two_qubit_count += 1,
            GateKind::H => r.h_count += 1,
            GateKind::T | GateKind::Tdg => r.t_count += 1,
            _ => {}
        }
    }
    r.depth = compute_layers(c).depth();
    r
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::generate::random_circuit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Ten-gate, three-qubit circuit whose layering is nine layers with
    /// only the third layer holding two gates.
    pub(crate) fn nine_layer_example() -> Circuit {
        Circuit::from_gates(
            3,
            [
                Gate::H(0),
                Gate::cnot(0, 1),
                Gate::T(0),
                Gate::cnot(1, 2),
                Gate::cnot(0, 1),
                Gate::cnot(1, 2),
                Gate::H(2),
                Gate::cnot(0, 2),
                Gate::T(2),
                Gate::cnot(2, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn invalid_gates_rejected() {
        let mut c = Circuit::new(2);
        assert_eq!(
            c.push(Gate::H(2)),
            Err(CircuitError::QubitOutOfRange {
                qubit: 2,
                n_qubits: 2
            })
        );
        assert_eq!(c.push(Gate::cnot(1, 1)), Err(CircuitError::RepeatedQubit(1)));
        assert!(c.is_empty());
    }

    #[test]
    fn nine_layers_with_one_double_layer() {
        let lc = compute_layers(&nine_layer_example());
        assert_eq!(lc.depth(), 9);
        assert_eq!(lc.layers[2], vec![2, 3]);
        for (t, layer) in lc.layers.iter().enumerate() {
            if t != 2 {
                assert_eq!(layer.len(), 1, "layer {}", t + 1);
            }
        }
    }

    #[test]
    fn disjoint_gates_share_one_layer() {
        let c = Circuit::from_gates(3, [Gate::H(0), Gate::H(1), Gate::H(2)]).unwrap();
        let lc = compute_layers(&c);
        assert_eq!(lc.depth(), 1);
        assert_eq!(lc.layers[0].len(), 3);
    }

    #[test]
    fn layers_match_quadratic_predecessor_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let c = random_circuit(4, 30, &mut rng);
            let lc = compute_layers(&c);
            // brute force: scan every earlier gate
            let mut expect = vec![0usize; c.len()];
            for i in 0..c.len() {
                let mut best = 0;
                for (k, g) in c.gates()[..i].iter().enumerate() {
                    if g.qubits().iter().any(|q| c.gates()[i].acts_on(*q)) {
                        best = best.max(expect[k]);
                    }
                }
                expect[i] = best + 1;
            }
            assert_eq!(lc.layer_of, expect);
        }
    }

    #[test]
    fn layers_preserve_per_qubit_order_and_disjointness() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let c = random_circuit(5, 40, &mut rng);
            let lc = compute_layers(&c);
            let mut seen = vec![false; c.len()];
            let mut flat = Vec::new();
            for layer in &lc.layers {
                let mut used = std::collections::HashSet::new();
                for &i in layer {
                    assert!(!seen[i]);
                    seen[i] = true;
                    for q in c.gates()[i].qubits() {
                        assert!(used.insert(q), "qubit {q} used twice in a layer");
                    }
                    flat.push(c.gates()[i]);
                }
            }
            assert!(seen.iter().all(|&s| s));
            let rebuilt = Circuit::from_gates(c.n_qubits(), flat).unwrap();
            for q in 0..c.n_qubits() {
                assert!(rebuilt.gates_on(q).eq(c.gates_on(q)));
            }
        }
    }

    #[test]
    fn stats_of_empty_circuit_are_zero() {
        assert_eq!(gate_stats(&Circuit::new(3)), CostReport::default());
    }

    #[test]
    fn stats_count_kinds() {
        let c = Circuit::from_gates(
            2,
            [Gate::H(0), Gate::T(1), Gate::Tdg(0), Gate::cnot(0, 1), Gate::Cz(1, 0)],
        )
        .unwrap();
        let r = gate_stats(&c);
        assert_eq!(r.two_qubit_count, 2);
        assert_eq!(r.total_count, 5);
        assert_eq!(r.h_count, 1);
        assert_eq!(r.t_count, 2);
        assert_eq!(r.depth, 4);
    }

    #[test]
    fn stats_are_additive_under_concatenation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_circuit(3, 15, &mut rng);
            let b = random_circuit(3, 25, &mut rng);
            let ab = Circuit::from_gates(3, a.gates().iter().chain(b.gates()).copied()).unwrap();
            let (ra, rb, rab) = (gate_stats(&a), gate_stats(&b), gate_stats(&ab));
            assert_eq!(rab.two_qubit_count, ra.two_qubit_count + rb.two_qubit_count);
            assert_eq!(rab.total_count, ra.total_count + rb.total_count);
            assert_eq!(rab.h_count, ra.h_count + rb.h_count);
            assert_eq!(rab.t_count, ra.t_count + rb.t_count);
        }
    }
}
