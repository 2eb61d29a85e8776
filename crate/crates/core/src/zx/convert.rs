use crate::circuit::{Circuit, Gate};
use crate::phase::Phase;

use super::diagram::{EdgeType, VertexType, ZxDiagram};

struct Builder {
    d: ZxDiagram,
    last: Vec<usize>,
    // pending Hadamard on the wire since `last`
    pending: Vec<EdgeType>,
    row: Vec<usize>,
}

impl Builder {
    fn spider(&mut self, q: usize, ty: VertexType, phase: Phase) -> usize {
        self.row[q] += 1;
        let v = self.d.add_vertex_at(ty, phase, Some(q), self.row[q]);
        self.d.add_edge(self.last[q], v, self.pending[q]);
        self.last[q] = v;
        self.pending[q] = EdgeType::Simple;
        v
    }
}

/// Gate-by-gate translation into a ZX diagram. Hadamards become Hadamard
/// edges on the wire, Z-phases Z-spiders, X an X-spider with phase pi, Y a
/// Z(pi) followed by an X(pi), CNOT a Z/X pair joined by a plain edge and
/// CZ a pair of Z-spiders joined by a Hadamard edge. The diagram equals the
/// circuit's unitary up to a global scalar.
pub fn to_graph(c: &Circuit) -> ZxDiagram {
    let n = c.n_qubits();
    let mut d = ZxDiagram::new();
    let inputs: Vec<usize> = (0..n)
        .map(|q| d.add_vertex_at(VertexType::Boundary, Phase::zero(), Some(q), 0))
        .collect();
    d.set_inputs(inputs.clone());
    let mut b = Builder {
        d,
        last: inputs,
        pending: vec![EdgeType::Simple; n],
        row: vec![0; n],
    };
    for g in c.gates() {
        match *g {
            Gate::H(q) => b.pending[q] = b.pending[q].flipped(),
            Gate::X(q) => {
                b.spider(q, VertexType::X, Phase::pi());
            }
            Gate::Y(q) => {
                b.spider(q, VertexType::Z, Phase::pi());
                b.spider(q, VertexType::X, Phase::pi());
            }
            Gate::Cnot { control, target } => {
                let r = b.row[control].max(b.row[target]);
                b.row[control] = r;
                b.row[target] = r;
                let z = b.spider(control, VertexType::Z, Phase::zero());
                let x = b.spider(target, VertexType::X, Phase::zero());
                b.d.add_edge(z, x, EdgeType::Simple);
            }
            Gate::Cz(p, q) => {
                let r = b.row[p].max(b.row[q]);
                b.row[p] = r;
                b.row[q] = r;
                let u = b.spider(p, VertexType::Z, Phase::zero());
                let v = b.spider(q, VertexType::Z, Phase::zero());
                b.d.add_edge(u, v, EdgeType::Hadamard);
            }
            g => {
                let q = g.qubits()[0];
                let phase = g.z_rotation().expect("single-qubit diagonal gate");
                b.spider(q, VertexType::Z, phase);
            }
        }
    }
    let outputs: Vec<usize> = (0..n)
        .map(|q| {
            let o = b.d.add_vertex_at(VertexType::Boundary, Phase::zero(), Some(q), b.row[q] + 1);
            b.d.add_edge(b.last[q], o, b.pending[q]);
            o
        })
        .collect();
    b.d.set_outputs(outputs);
    b.d
}
