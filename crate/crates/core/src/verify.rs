//! Dense semantic oracles: circuit unitaries, ZX tensor contraction and
//! equality up to a global phase.
//!
//! Qubit convention is little-endian: basis state `|b_{n-1} ... b_1 b_0>`
//! has index `sum b_q 2^q`, and matrices are indexed `[output, input]`.

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::error::VerifyError;
use crate::zx::{EdgeType, VertexType, ZxDiagram};

pub const MAX_QUBITS: usize = 10;
pub const MAX_WIRES: usize = 20;
/// Largest intermediate tensor rank allowed during contraction.
pub const MAX_TENSOR_RANK: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equivalent,
    Different,
    /// Too large for the dense oracle.
    Unverifiable,
}

type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn single_qubit_matrix(g: &Gate) -> [[C; 2]; 2] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match g {
        Gate::H(_) => [[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]],
        Gate::X(_) => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
        Gate::Y(_) => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
        g => {
            let p = g.z_rotation().expect("diagonal gate");
            [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), C::from_polar(1.0, p.radians())]]
        }
    }
}

/// Product of the gate matrices in execution order.
pub fn unitary_of(circ: &Circuit) -> Result<Array2<C>, VerifyError> {
    let n = circ.n_qubits();
    if n > MAX_QUBITS {
        return Err(VerifyError::LimitExceeded {
            what: "qubit count",
            size: n,
            limit: MAX_QUBITS,
        });
    }
    let dim = 1usize << n;
    // row-major, so a gate mixes whole rows
    let mut u = vec![C::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        u[i * dim + i] = C::new(1.0, 0.0);
    }
    for g in circ.gates() {
        match *g {
            Gate::Cnot { control, target } => {
                let (cb, tb) = (1 << control, 1 << target);
                for i in 0..dim {
                    if i & cb != 0 && i & tb == 0 {
                        let j = i | tb;
                        for k in 0..dim {
                            u.swap(i * dim + k, j * dim + k);
                        }
                    }
                }
            }
            Gate::Cz(a, b) => {
                let m = (1 << a) | (1 << b);
                for i in 0..dim {
                    if i & m == m {
                        for x in &mut u[i * dim..(i + 1) * dim] {
                            *x = -*x;
                        }
                    }
                }
            }
            ref g1 => {
                let q = g1.qubits()[0];
                let m = single_qubit_matrix(g1);
                let qb = 1 << q;
                for i in 0..dim {
                    if i & qb != 0 {
                        continue;
                    }
                    let j = i | qb;
                    for k in 0..dim {
                        let (a, b) = (u[i * dim + k], u[j * dim + k]);
                        u[i * dim + k] = m[0][0] * a + m[0][1] * b;
                        u[j * dim + k] = m[1][0] * a + m[1][1] * b;
                    }
                }
            }
        }
    }
    Ok(Array2::from_shape_vec((dim, dim), u).expect("square"))
}

/// Whether `a = lambda * b` for some nonzero complex `lambda`. Both sides are
/// scaled to the Frobenius norm of a unitary of the same size, then the phase
/// is aligned on the largest-magnitude entry of `a`, and the largest entrywise
/// deviation is compared to `tol`.
pub fn proportional(a: &Array2<C>, b: &Array2<C>, tol: f64) -> bool {
    if a.dim() != b.dim() {
        return false;
    }
    let norm = |m: &Array2<C>| m.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let (na, nb) = (norm(a), norm(b));
    if na < 1e-12 || nb < 1e-12 {
        return na < 1e-12 && nb < 1e-12;
    }
    let target = (a.nrows() as f64).sqrt();
    let (mut k, mut best) = (0, -1.0);
    for (i, x) in a.iter().enumerate() {
        if x.norm() > best {
            best = x.norm();
            k = i;
        }
    }
    let (ak, bk) = (a.iter().nth(k).copied().unwrap(), b.iter().nth(k).copied().unwrap());
    if bk.norm() < 1e-12 {
        return false;
    }
    // lambda maps b onto a at the pivot, after norm scaling
    let phase = (ak / ak.norm()) / (bk / bk.norm());
    let (sa, sb) = (target / na, target / nb);
    a.iter()
        .zip(b.iter())
        .all(|(x, y)| (x * sa - y * sb * phase).norm() <= tol)
}

pub fn equivalent(a: &Circuit, b: &Circuit, tol: f64) -> Verdict {
    if a.n_qubits() != b.n_qubits() {
        return Verdict::Different;
    }
    match (unitary_of(a), unitary_of(b)) {
        (Ok(ua), Ok(ub)) => {
            if proportional(&ua, &ub, tol) {
                Verdict::Equivalent
            } else {
                Verdict::Different
            }
        }
        _ => Verdict::Unverifiable,
    }
}

#[derive(Clone, Debug)]
struct Tensor {
    labels: Vec<usize>,
    data: Vec<C>,
}

fn scatter(x: usize, positions: &[usize]) -> usize {
    let mut out = 0;
    for (bit, &p) in positions.iter().enumerate() {
        if x >> bit & 1 == 1 {
            out |= 1 << p;
        }
    }
    out
}

fn contract(a: &Tensor, b: &Tensor) -> Tensor {
    let shared: Vec<usize> = a.labels.iter().copied().filter(|l| b.labels.contains(l)).collect();
    let ra: Vec<usize> = a.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
    let rb: Vec<usize> = b.labels.iter().copied().filter(|l| !shared.contains(l)).collect();
    let pos = |t: &Tensor, ls: &[usize]| -> Vec<usize> {
        ls.iter()
            .map(|l| t.labels.iter().position(|x| x == l).unwrap())
            .collect()
    };
    let (pa_r, pa_s) = (pos(a, &ra), pos(a, &shared));
    let (pb_r, pb_s) = (pos(b, &rb), pos(b, &shared));
    let ia_r: Vec<usize> = (0..1usize << ra.len()).map(|x| scatter(x, &pa_r)).collect();
    let ib_r: Vec<usize> = (0..1usize << rb.len()).map(|x| scatter(x, &pb_r)).collect();
    let ia_s: Vec<usize> = (0..1usize << shared.len()).map(|x| scatter(x, &pa_s)).collect();
    let ib_s: Vec<usize> = (0..1usize << shared.len()).map(|x| scatter(x, &pb_s)).collect();
    let mut data = vec![C::new(0.0, 0.0); 1 << (ra.len() + rb.len())];
    for (y, &ib) in ib_r.iter().enumerate() {
        for (x, &ia) in ia_r.iter().enumerate() {
            let mut acc = C::new(0.0, 0.0);
            for (&sa, &sb) in ia_s.iter().zip(&ib_s) {
                acc += a.data[ia | sa] * b.data[ib | sb];
            }
            data[x | y << ra.len()] = acc;
        }
    }
    let mut labels = ra;
    labels.extend(rb);
    Tensor { labels, data }
}

fn spider_tensor(ty: VertexType, phase: f64, legs: Vec<usize>) -> Tensor {
    let n = legs.len();
    let e = C::from_polar(1.0, phase);
    let data = match ty {
        VertexType::Z => {
            let mut d = vec![C::new(0.0, 0.0); 1 << n];
            d[0] += 1.0;
            d[(1 << n) - 1] += e;
            d
        }
        _ => (0..1usize << n)
            .map(|x| {
                let sign = if x.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                (C::new(1.0, 0.0) + e * sign) * std::f64::consts::FRAC_1_SQRT_2.powi(n as i32)
            })
            .collect(),
    };
    Tensor { labels: legs, data }
}

/// Contracts the diagram into its linear map, as a `2^|outputs| x 2^|inputs|`
/// matrix. Components with no boundary are scalars and are dropped, so the
/// result is only meaningful up to a nonzero factor.
pub fn zx_tensor(d: &ZxDiagram) -> Result<Array2<C>, VerifyError> {
    let (ni, no) = (d.inputs().len(), d.outputs().len());
    if ni + no > MAX_WIRES {
        return Err(VerifyError::LimitExceeded {
            what: "boundary wires",
            size: ni + no,
            limit: MAX_WIRES,
        });
    }
    let mut next_label = 0;
    let mut legs: Vec<Vec<usize>> = vec![Vec::new(); d.id_bound()];
    let mut tensors = Vec::new();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for (u, v, t) in d.edges() {
        let (lu, lv) = (next_label, next_label + 1);
        next_label += 2;
        legs[u].push(lu);
        legs[v].push(lv);
        let data = match t {
            EdgeType::Simple => vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            EdgeType::Hadamard => vec![c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)],
        };
        tensors.push(Tensor {
            labels: vec![lu, lv],
            data,
        });
    }
    let mut open = std::collections::HashMap::new();
    for v in d.vertices() {
        let data = d.vertex(v);
        if data.ty == VertexType::Boundary {
            match legs[v].as_slice() {
                [l] => {
                    open.insert(v, *l);
                }
                _ => {
                    return Err(VerifyError::LimitExceeded {
                        what: "boundary degree",
                        size: legs[v].len(),
                        limit: 1,
                    })
                }
            }
        } else if !legs[v].is_empty() {
            tensors.push(spider_tensor(data.ty, data.phase.radians(), std::mem::take(&mut legs[v])));
        }
    }

    let open_labels: Vec<usize> = open.values().copied().collect();
    // greedy pairwise contraction along shared labels, smallest result first
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let sh = tensors[i].labels.iter().filter(|l| tensors[j].labels.contains(l)).count();
                if sh == 0 {
                    continue;
                }
                let rank = tensors[i].labels.len() + tensors[j].labels.len() - 2 * sh;
                if best.is_none_or(|b| rank < b.2) {
                    best = Some((i, j, rank));
                }
            }
        }
        let Some((i, j, rank)) = best else { break };
        if rank > MAX_TENSOR_RANK {
            return Err(VerifyError::LimitExceeded {
                what: "intermediate tensor rank",
                size: rank,
                limit: MAX_TENSOR_RANK,
            });
        }
        let b = tensors.swap_remove(j);
        let a = tensors.swap_remove(i);
        tensors.push(contract(&a, &b));
    }

    // outer product of the components that carry open legs
    let mut acc = Tensor {
        labels: vec![],
        data: vec![C::new(1.0, 0.0)],
    };
    for t in tensors {
        if t.labels.iter().any(|l| open_labels.contains(l)) {
            if acc.labels.len() + t.labels.len() > MAX_TENSOR_RANK {
                return Err(VerifyError::LimitExceeded {
                    what: "intermediate tensor rank",
                    size: acc.labels.len() + t.labels.len(),
                    limit: MAX_TENSOR_RANK,
                });
            }
            acc = contract(&acc, &t);
        }
    }
    // a boundary wired straight to another boundary shares one edge tensor
    // that is already in `acc`

    let pos_of = |v: usize| acc.labels.iter().position(|&l| l == open[&v]);
    let in_pos: Vec<Option<usize>> = d.inputs().iter().map(|&v| pos_of(v)).collect();
    let out_pos: Vec<Option<usize>> = d.outputs().iter().map(|&v| pos_of(v)).collect();
    if in_pos.iter().chain(&out_pos).any(Option::is_none) {
        return Err(VerifyError::LimitExceeded {
            what: "unlisted boundary",
            size: 0,
            limit: 0,
        });
    }
    let (dim_o, dim_i) = (1usize << no, 1usize << ni);
    let mut m = Array2::from_elem((dim_o, dim_i), C::new(0.0, 0.0));
    for o in 0..dim_o {
        for i in 0..dim_i {
            let mut idx = 0;
            for (q, p) in out_pos.iter().enumerate() {
                if o >> q & 1 == 1 {
                    idx |= 1 << p.unwrap();
                }
            }
            for (q, p) in in_pos.iter().enumerate() {
                if i >> q & 1 == 1 {
                    idx |= 1 << p.unwrap();
                }
            }
            m[[o, i]] = acc.data[idx];
        }
    }
    Ok(m)
}
