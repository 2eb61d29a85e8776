//! Circuit extraction from graph-like diagrams that admit a generalized flow.
//!
//! Works from the outputs towards the inputs. The frontier holds, for every
//! qubit, the spider currently attached to that output. Each round peels
//! frontier phases into Z-rotations and frontier-frontier Hadamard edges into
//! CZs, then advances one frontier spider whose only remaining neighbor can
//! take its place (emitting an H). When no spider has a single neighbor, the
//! frontier-to-neighbor biadjacency matrix is row reduced over GF(2) and the
//! cheapest combination of rows that yields a single neighbor is realized
//! with CNOTs. Once every output reaches an input, what remains is a qubit
//! permutation, synthesized from 3-CNOT swaps.

use crate::circuit::{Circuit, Gate};
use crate::error::ExtractError;
use crate::gf2::BitMatrix;
use crate::phase::Phase;
use crate::zx::{EdgeType, VertexType, ZxDiagram};

struct Extractor {
    g: ZxDiagram,
    outputs: Vec<usize>,
    frontier: Vec<usize>,
    // output side first
    gates: Vec<Gate>,
}

/// Rebuilds a circuit from a graph-like diagram with gflow. Ties are broken by
/// lowest vertex id / lowest qubit index, so equal diagrams give equal
/// circuits.
pub fn extract(d: &ZxDiagram) -> Result<Circuit, ExtractError> {
    if let Some(why) = d.graph_like_violation() {
        return Err(ExtractError::NotGraphLike(why));
    }
    let n = d.outputs().len();
    if d.inputs().len() != n {
        return Err(ExtractError::Boundary(format!(
            "{} inputs but {} outputs",
            d.inputs().len(),
            n
        )));
    }
    let mut ex = Extractor {
        g: d.clone(),
        outputs: d.outputs().to_vec(),
        frontier: Vec::with_capacity(n),
        gates: Vec::new(),
    };
    ex.init_frontier();
    ex.run()?;
    let perm = ex.permutation()?;
    let mut c = Circuit::new(n);
    for g in swap_network(&perm) {
        c.push_unchecked(g);
    }
    for g in ex.gates.into_iter().rev() {
        c.push_unchecked(g);
    }
    Ok(c)
}

impl Extractor {
    fn init_frontier(&mut self) {
        let mut claimed = std::collections::HashSet::new();
        for q in 0..self.outputs.len() {
            let o = self.outputs[q];
            let f = self.g.incident(o)[0].0;
            if self.g.is_boundary(f) || claimed.insert(f) {
                self.frontier.push(f);
                continue;
            }
            // spider shared with an earlier output: give this output its own
            self.g.remove_edge(o, f);
            let z2 = self.g.add_vertex(VertexType::Z, Phase::zero());
            self.g.add_edge(z2, f, EdgeType::Hadamard);
            let z1 = self.g.add_vertex(VertexType::Z, Phase::zero());
            self.g.add_edge(z1, z2, EdgeType::Hadamard);
            self.g.add_edge(o, z1, EdgeType::Simple);
            claimed.insert(z1);
            self.frontier.push(z1);
        }
    }

    fn is_frontier_spider(&self, q: usize) -> bool {
        !self.g.is_boundary(self.frontier[q])
    }

    fn run(&mut self) -> Result<(), ExtractError> {
        let n = self.outputs.len();
        loop {
            self.peel_phases_and_czs();
            self.settle_inputs()?;
            let active: Vec<usize> = (0..n).filter(|&q| self.is_frontier_spider(q)).collect();
            if active.is_empty() {
                return Ok(());
            }
            let mut cols: Vec<usize> = Vec::new();
            for &q in &active {
                let f = self.frontier[q];
                for w in self.g.neighbors(f) {
                    if w != self.outputs[q] {
                        cols.push(w);
                    }
                }
            }
            cols.sort_unstable();
            cols.dedup();
            let mut m = BitMatrix::zeros(active.len(), cols.len());
            for (i, &q) in active.iter().enumerate() {
                let f = self.frontier[q];
                for (j, &w) in cols.iter().enumerate() {
                    if self.g.connected(f, w) {
                        m.set(i, j, true);
                    }
                }
            }
            if self.advance_singletons(&active, &cols, &m) {
                continue;
            }
            self.eliminate(&active, &cols, &m)?;
        }
    }

    fn peel_phases_and_czs(&mut self) {
        let n = self.outputs.len();
        for q in 0..n {
            if !self.is_frontier_spider(q) {
                continue;
            }
            let f = self.frontier[q];
            let p = self.g.phase(f);
            if let Some(gate) = Gate::z_phase(q, p) {
                self.gates.push(gate);
                self.g.set_phase(f, Phase::zero());
            }
        }
        for q in 0..n {
            for r in q + 1..n {
                if !self.is_frontier_spider(q) || !self.is_frontier_spider(r) {
                    continue;
                }
                let (a, b) = (self.frontier[q], self.frontier[r]);
                if self.g.edge(a, b) == Some(EdgeType::Hadamard) {
                    self.gates.push(Gate::Cz(q, r));
                    self.g.remove_edge(a, b);
                }
            }
        }
    }

    /// Frontier spiders that touch an input: collapse them onto the input if
    /// that is their only other neighbor, otherwise push the input one step
    /// back so that all frontier neighbors are spiders behind Hadamard edges.
    fn settle_inputs(&mut self) -> Result<(), ExtractError> {
        for q in 0..self.outputs.len() {
            if !self.is_frontier_spider(q) {
                continue;
            }
            let (o, f) = (self.outputs[q], self.frontier[q]);
            let others: Vec<(usize, EdgeType)> =
                self.g.incident(f).iter().copied().filter(|&(w, _)| w != o).collect();
            match others.as_slice() {
                [] => {
                    return Err(ExtractError::NoProgress {
                        remaining: self.interior_count(),
                    })
                }
                [(b, EdgeType::Simple)] if self.g.is_boundary(*b) => {
                    let b = *b;
                    self.g.remove_vertex(f);
                    self.g.add_edge(o, b, EdgeType::Simple);
                    self.frontier[q] = b;
                }
                _ => {
                    let inputs: Vec<usize> = others
                        .iter()
                        .map(|e| e.0)
                        .filter(|&w| self.g.is_boundary(w))
                        .collect();
                    for b in inputs {
                        self.g.remove_edge(b, f);
                        let z2 = self.g.add_vertex(VertexType::Z, Phase::zero());
                        self.g.add_edge(z2, f, EdgeType::Hadamard);
                        let z1 = self.g.add_vertex(VertexType::Z, Phase::zero());
                        self.g.add_edge(z1, z2, EdgeType::Hadamard);
                        self.g.add_edge(b, z1, EdgeType::Simple);
                    }
                }
            }
        }
        Ok(())
    }

    fn interior_count(&self) -> usize {
        self.g.vertices().filter(|&v| !self.g.is_boundary(v)).count()
    }

    /// Moves frontier spiders with exactly one neighbor onto that neighbor.
    /// Each neighbor is taken by at most one spider per round.
    fn advance_singletons(&mut self, active: &[usize], cols: &[usize], m: &BitMatrix) -> bool {
        let mut taken = vec![false; cols.len()];
        let mut any = false;
        for (i, &q) in active.iter().enumerate() {
            if m.row_weight(i) != 1 {
                continue;
            }
            let j = m.row_ones(i)[0];
            if taken[j] {
                continue;
            }
            taken[j] = true;
            self.advance(q, cols[j]);
            any = true;
        }
        any
    }

    fn advance(&mut self, q: usize, w: usize) {
        let (o, f) = (self.outputs[q], self.frontier[q]);
        debug_assert_eq!(self.g.degree(f), 2);
        self.gates.push(Gate::H(q));
        self.g.remove_vertex(f);
        self.g.add_edge(o, w, EdgeType::Simple);
        self.frontier[q] = w;
    }

    fn eliminate(&mut self, active: &[usize], cols: &[usize], m: &BitMatrix) -> Result<(), ExtractError> {
        let k = active.len();
        let mut red = m.clone();
        let mut t = BitMatrix::identity(k);
        let pivots = red.rref(Some(&mut t));
        // among reduced rows with a single 1, the one built from fewest
        // original rows costs the fewest CNOTs
        let best = (0..pivots.len())
            .filter(|&r| red.row_weight(r) == 1)
            .min_by_key(|&r| (t.row_weight(r), pivots[r]));
        let Some(r) = best else {
            return Err(ExtractError::NoProgress {
                remaining: self.interior_count(),
            });
        };
        let rows = t.row_ones(r);
        let target = rows[0];
        let tq = active[target];
        for &s in &rows[1..] {
            let sq = active[s];
            self.row_add(sq, tq, cols);
        }
        Ok(())
    }

    /// Adds the neighborhood of frontier qubit `src` into that of `dst`,
    /// recording the CNOT that accounts for it.
    fn row_add(&mut self, src: usize, dst: usize, cols: &[usize]) {
        let (fs, fd) = (self.frontier[src], self.frontier[dst]);
        for &w in cols {
            if self.g.connected(fs, w) {
                self.g.toggle_hadamard(fd, w);
            }
        }
        self.gates.push(Gate::cnot(dst, src));
    }

    /// `perm[q]` = index of the input that output `q` is wired to.
    fn permutation(&self) -> Result<Vec<usize>, ExtractError> {
        let inputs = self.g.inputs();
        let remaining = self.interior_count();
        if remaining != 0 {
            return Err(ExtractError::NoProgress { remaining });
        }
        let perm: Vec<usize> = self
            .frontier
            .iter()
            .map(|f| inputs.iter().position(|i| i == f))
            .collect::<Option<_>>()
            .ok_or_else(|| ExtractError::Boundary("output not wired to an input".into()))?;
        Ok(perm)
    }
}

/// Gates realizing the wire permutation that carries input `perm[q]` to
/// output `q`, using three CNOTs per swap.
fn swap_network(perm: &[usize]) -> Vec<Gate> {
    let n = perm.len();
    // cur[w]: which input currently sits on wire w
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for q in 0..n {
        if cur[q] == perm[q] {
            continue;
        }
        let w = (q + 1..n).find(|&w| cur[w] == perm[q]).expect("permutation");
        out.extend([Gate::cnot(q, w), Gate::cnot(w, q), Gate::cnot(q, w)]);
        cur.swap(q, w);
    }
    out
}
