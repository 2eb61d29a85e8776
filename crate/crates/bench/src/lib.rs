//! Benchmark corpus for zxgopt.
//!
//! Circuits are built at the reversible level (X, CNOT, Toffoli), checked
//! classically, and lowered to Clifford+T with the usual 7-T Toffoli
//! decomposition.

use zxgopt::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rev {
    X(usize),
    Cx(usize, usize),
    Ccx(usize, usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RevCircuit {
    pub n_qubits: usize,
    pub ops: Vec<Rev>,
}

impl RevCircuit {
    pub fn new(n_qubits: usize) -> Self {
        RevCircuit {
            n_qubits,
            ops: Vec::new(),
        }
    }

    fn push(&mut self, op: Rev) {
        self.ops.push(op);
    }

    /// Applies the circuit to a basis state, bit `q` of `state` being qubit `q`.
    pub fn simulate(&self, mut state: u64) -> u64 {
        let bit = |s: u64, q: usize| s >> q & 1 == 1;
        for op in &self.ops {
            match *op {
                Rev::X(t) => state ^= 1 << t,
                Rev::Cx(c, t) => {
                    if bit(state, c) {
                        state ^= 1 << t;
                    }
                }
                Rev::Ccx(a, b, t) => {
                    if bit(state, a) && bit(state, b) {
                        state ^= 1 << t;
                    }
                }
            }
        }
        state
    }

    pub fn toffoli_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, Rev::Ccx(..))).count()
    }

    pub fn lower(&self) -> Circuit {
        let mut c = Circuit::new(self.n_qubits);
        for op in &self.ops {
            match *op {
                Rev::X(t) => c.push(Gate::X(t)),
                Rev::Cx(a, t) => c.push(Gate::cnot(a, t)),
                Rev::Ccx(a, b, t) => toffoli(&mut c, a, b, t),
            }
            .expect("qubits in range");
        }
        c
    }
}

fn toffoli(c: &mut Circuit, a: usize, b: usize, t: usize) -> Result<(), zxgopt::CircuitError> {
    use Gate::*;
    for g in [
        H(t),
        Gate::cnot(b, t),
        Tdg(t),
        Gate::cnot(a, t),
        T(t),
        Gate::cnot(b, t),
        Tdg(t),
        Gate::cnot(a, t),
        T(b),
        T(t),
        H(t),
        Gate::cnot(a, b),
        T(a),
        Tdg(b),
        Gate::cnot(a, b),
    ] {
        c.push(g)?;
    }
    Ok(())
}

/// n-controlled NOT with `n - 2` clean ancillas computed and uncomputed.
/// Controls are qubits `0..n`, ancillas `n..2n-2`, target `2n-2`.
pub fn tof(n: usize) -> RevCircuit {
    assert!(n >= 3);
    let anc = |i: usize| n + i;
    let target = 2 * n - 2;
    let mut r = RevCircuit::new(2 * n - 1);
    let mut compute = vec![Rev::Ccx(0, 1, anc(0))];
    for i in 1..n - 2 {
        compute.push(Rev::Ccx(i + 1, anc(i - 1), anc(i)));
    }
    r.ops.extend(compute.iter().copied());
    r.push(Rev::Ccx(n - 1, anc(n - 3), target));
    r.ops.extend(compute.iter().rev().copied());
    r
}

/// n-controlled NOT using `n - 2` borrowed ancillas, which are returned in
/// whatever state they started in. Same qubit layout as [`tof`].
pub fn barenco_tof(n: usize) -> RevCircuit {
    assert!(n >= 3);
    let anc = |i: usize| n + i;
    let target = 2 * n - 2;
    let top = Rev::Ccx(n - 1, anc(n - 3), target);
    let mut ladder = Vec::new();
    for i in (1..n - 2).rev() {
        ladder.push(Rev::Ccx(i + 1, anc(i - 1), anc(i)));
    }
    ladder.push(Rev::Ccx(0, 1, anc(0)));
    for i in 1..n - 2 {
        ladder.push(Rev::Ccx(i + 1, anc(i - 1), anc(i)));
    }
    let mut r = RevCircuit::new(2 * n - 1);
    for _ in 0..2 {
        r.push(top);
        r.ops.extend(ladder.iter().copied());
    }
    r
}

/// Qubit layout of [`vbe_adder`].
#[derive(Clone, Copy, Debug)]
pub struct AdderLayout {
    pub n: usize,
    /// Whether a carry-in qubit exists.
    pub carry_in: bool,
}

impl AdderLayout {
    fn base(&self, i: usize) -> usize {
        let off = usize::from(!self.carry_in);
        3 * i - if i > 0 { off } else { 0 }
    }

    /// Carry qubit `i` (`1..n`, plus `0` when there is a carry-in).
    pub fn c(&self, i: usize) -> usize {
        assert!(i > 0 || self.carry_in);
        self.base(i)
    }

    pub fn a(&self, i: usize) -> usize {
        self.base(i) + usize::from(self.carry_in || i > 0)
    }

    pub fn b(&self, i: usize) -> usize {
        self.a(i) + 1
    }

    /// High sum bit.
    pub fn carry_out(&self) -> usize {
        self.n_qubits() - 1
    }

    pub fn n_qubits(&self) -> usize {
        3 * self.n + 1 - usize::from(!self.carry_in)
    }
}

/// Ripple-carry adder `b <- a + b (+ c0)` with carry qubits, qubits
/// interleaved as `c_i, a_i, b_i` and the carry-out last. Without a
/// carry-in, the gates touching the constant-zero carry are omitted.
pub fn vbe_adder(n: usize, carry_in: bool) -> (RevCircuit, AdderLayout) {
    assert!(n >= 1);
    let l = AdderLayout { n, carry_in };
    let has_c = |i: usize| i > 0 || carry_in;
    let next = |i: usize| if i + 1 == n { l.carry_out() } else { l.c(i + 1) };
    let mut r = RevCircuit::new(l.n_qubits());
    for i in 0..n {
        r.push(Rev::Ccx(l.a(i), l.b(i), next(i)));
        r.push(Rev::Cx(l.a(i), l.b(i)));
        if has_c(i) {
            r.push(Rev::Ccx(l.c(i), l.b(i), next(i)));
        }
    }
    // the top CNOT(a, b) cancels against the first half of the top sum
    if has_c(n - 1) {
        r.push(Rev::Cx(l.c(n - 1), l.b(n - 1)));
    }
    for i in (0..n - 1).rev() {
        if has_c(i) {
            r.push(Rev::Ccx(l.c(i), l.b(i), next(i)));
        }
        r.push(Rev::Cx(l.a(i), l.b(i)));
        r.push(Rev::Ccx(l.a(i), l.b(i), next(i)));
        r.push(Rev::Cx(l.a(i), l.b(i)));
        if has_c(i) {
            r.push(Rev::Cx(l.c(i), l.b(i)));
        }
    }
    (r, l)
}

/// Five-qubit residue-style network with the width and gate profile of the
/// usual `mod5_4` benchmark: four Toffolis and four CNOTs onto a flag qubit.
pub fn mod5_4() -> RevCircuit {
    let mut r = RevCircuit::new(5);
    r.push(Rev::X(4));
    for (a, b) in [(3, 2), (2, 1), (1, 0), (3, 0)] {
        r.push(Rev::Ccx(a, b, 4));
        r.push(Rev::Cx(a, b));
    }
    r
}

/// Nine-qubit constant-multiplier-style network with the width and gate
/// profile of the usual `mod_mult_55` benchmark: a 3-bit input spread into a
/// 6-bit register by CNOT fans, with five Toffoli corrections.
pub fn mod_mult_55() -> RevCircuit {
    let x = |i: usize| i;
    let y = |i: usize| 3 + i;
    let mut r = RevCircuit::new(9);
    let fan = |r: &mut RevCircuit, shift: usize| {
        for i in 0..3 {
            r.push(Rev::Cx(x(i), y(i + shift)));
            r.push(Rev::Cx(x(i), y((i + shift + 2) % 6)));
        }
    };
    fan(&mut r, 0);
    r.push(Rev::Ccx(x(0), x(1), y(3)));
    r.push(Rev::Ccx(x(1), x(2), y(4)));
    fan(&mut r, 1);
    r.push(Rev::Ccx(y(0), y(1), y(5)));
    r.push(Rev::Ccx(x(0), x(2), y(0)));
    fan(&mut r, 3);
    r.push(Rev::Ccx(y(3), y(4), y(2)));
    r
}

/// A named benchmark circuit.
#[derive(Clone, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub circuit: Circuit,
}

/// The corpus, smallest circuits first. Entries with more than ten qubits
/// are outside the dense equivalence oracle.
pub fn corpus() -> Vec<Entry> {
    let mut v = vec![
        Entry {
            name: "mod5_4",
            circuit: mod5_4().lower(),
        },
        Entry {
            name: "mod_mult_55",
            circuit: mod_mult_55().lower(),
        },
        Entry {
            name: "vbe_adder_3",
            circuit: vbe_adder(3, true).0.lower(),
        },
        Entry {
            name: "adder_8",
            circuit: vbe_adder(8, false).0.lower(),
        },
    ];
    for (name, n) in [("tof_3", 3), ("tof_4", 4), ("tof_5", 5), ("tof_10", 10)] {
        v.push(Entry {
            name,
            circuit: tof(n).lower(),
        });
    }
    for (name, n) in [
        ("barenco_tof_3", 3),
        ("barenco_tof_4", 4),
        ("barenco_tof_5", 5),
        ("barenco_tof_10", 10),
    ] {
        v.push(Entry {
            name,
            circuit: barenco_tof(n).lower(),
        });
    }
    v.sort_by_key(|e| (e.circuit.n_qubits(), e.circuit.len()));
    v
}

pub fn by_name(name: &str) -> Option<Circuit> {
    corpus().into_iter().find(|e| e.name == name).map(|e| e.circuit)
}
