use arrayvec::ArrayVec;

use crate::error::RewriteError;
use crate::phase::Phase;

use super::diagram::{EdgeType, VertexType, ZxDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleKind {
    Identity,
    Fusion,
    ColorChange,
    LocalComplement,
    Pivot,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleMatch {
    pub rule: RuleKind,
    pub targets: ArrayVec<usize, 2>,
}

impl RuleMatch {
    pub fn one(rule: RuleKind, v: usize) -> Self {
        let mut targets = ArrayVec::new();
        targets.push(v);
        RuleMatch { rule, targets }
    }

    pub fn two(rule: RuleKind, u: usize, v: usize) -> Self {
        let mut targets = ArrayVec::new();
        targets.push(u);
        targets.push(v);
        RuleMatch { rule, targets }
    }
}

fn is_spider(d: &ZxDiagram, v: usize) -> bool {
    d.contains(v) && !d.is_boundary(v)
}

/// Z-spider with phase +-pi/2, no boundary neighbors, only Hadamard edges.
pub fn is_lc_candidate(d: &ZxDiagram, v: usize) -> bool {
    is_spider(d, v)
        && d.vertex_type(v) == VertexType::Z
        && d.phase(v).is_proper_clifford()
        && d
            .incident(v)
            .iter()
            .all(|&(w, t)| t == EdgeType::Hadamard && !d.is_boundary(w) && d.vertex_type(w) == VertexType::Z)
}

/// Hadamard edge between interior Z-spiders that both carry a Pauli phase.
pub fn is_pivot_candidate(d: &ZxDiagram, u: usize, v: usize) -> bool {
    let ok = |x: usize| {
        is_spider(d, x)
            && d.vertex_type(x) == VertexType::Z
            && d.phase(x).is_pauli()
            && d
                .incident(x)
                .iter()
                .all(|&(w, t)| t == EdgeType::Hadamard && !d.is_boundary(w) && d.vertex_type(w) == VertexType::Z)
    };
    u != v && d.edge(u, v) == Some(EdgeType::Hadamard) && ok(u) && ok(v)
}

fn is_identity_candidate(d: &ZxDiagram, v: usize) -> bool {
    is_spider(d, v) && d.phase(v).is_zero() && d.degree(v) == 2
}

fn is_fusion_candidate(d: &ZxDiagram, u: usize, v: usize) -> bool {
    u != v
        && is_spider(d, u)
        && is_spider(d, v)
        && d.vertex_type(u) == d.vertex_type(v)
        && d.edge(u, v) == Some(EdgeType::Simple)
}

pub fn is_applicable(d: &ZxDiagram, m: &RuleMatch) -> bool {
    let t = &m.targets;
    match (m.rule, t.len()) {
        (RuleKind::Identity, 1) => is_identity_candidate(d, t[0]),
        (RuleKind::ColorChange, 1) => is_spider(d, t[0]) && d.vertex_type(t[0]) == VertexType::X,
        (RuleKind::LocalComplement, 1) => is_lc_candidate(d, t[0]),
        (RuleKind::Fusion, 2) => is_fusion_candidate(d, t[0], t[1]),
        (RuleKind::Pivot, 2) => is_pivot_candidate(d, t[0], t[1]),
        _ => false,
    }
}

/// All matches of one rule kind, ordered by target ids. Pairs are listed
/// once with the smaller id first.
pub fn match_kind(d: &ZxDiagram, kind: RuleKind) -> Vec<RuleMatch> {
    let mut out = Vec::new();
    for v in d.vertices() {
        match kind {
            RuleKind::Identity if is_identity_candidate(d, v) => out.push(RuleMatch::one(kind, v)),
            RuleKind::ColorChange if is_spider(d, v) && d.vertex_type(v) == VertexType::X => {
                out.push(RuleMatch::one(kind, v))
            }
            RuleKind::LocalComplement if is_lc_candidate(d, v) => out.push(RuleMatch::one(kind, v)),
            RuleKind::Fusion => {
                for w in d.neighbors(v).filter(|&w| w > v) {
                    if is_fusion_candidate(d, v, w) {
                        out.push(RuleMatch::two(kind, v, w));
                    }
                }
            }
            RuleKind::Pivot => {
                for w in d.neighbors(v).filter(|&w| w > v) {
                    if is_pivot_candidate(d, v, w) {
                        out.push(RuleMatch::two(kind, v, w));
                    }
                }
            }
            _ => {}
        }
    }
    out
}

/// The candidate set for lookahead: every local complementation match
/// followed by every pivot match, each group ordered by vertex id.
pub fn match_rules(d: &ZxDiagram) -> Vec<RuleMatch> {
    let mut out = match_kind(d, RuleKind::LocalComplement);
    out.extend(match_kind(d, RuleKind::Pivot));
    out
}

/// Applies one rewrite in place. Local complementation and pivot keep a
/// graph-like diagram graph-like; the other three are the raw laws and may
/// leave the diagram in any form.
pub fn apply_rule_mut(d: &mut ZxDiagram, m: &RuleMatch) -> Result<(), RewriteError> {
    if !is_applicable(d, m) {
        let bad = m.targets.iter().copied().find(|&v| !d.contains(v)).unwrap_or(m.targets[0]);
        return Err(RewriteError::StaleMatch(bad));
    }
    let t = &m.targets;
    match m.rule {
        RuleKind::Identity => remove_identity(d, t[0]),
        RuleKind::Fusion => fuse(d, t[0], t[1]),
        RuleKind::ColorChange => color_change(d, t[0]),
        RuleKind::LocalComplement => local_complement(d, t[0]),
        RuleKind::Pivot => pivot(d, t[0], t[1]),
    }
    Ok(())
}

pub fn apply_rule(d: &ZxDiagram, m: &RuleMatch) -> Result<ZxDiagram, RewriteError> {
    let mut out = d.clone();
    apply_rule_mut(&mut out, m)?;
    Ok(out)
}

fn remove_identity(d: &mut ZxDiagram, v: usize) {
    let [(a, ta), (b, tb)] = [d.incident(v)[0], d.incident(v)[1]];
    d.remove_vertex(v);
    d.add_edge_smart(a, b, ta.compose(tb));
}

/// Merges `v` into `u`.
fn fuse(d: &mut ZxDiagram, u: usize, v: usize) {
    let pv = d.phase(v);
    d.add_to_phase(u, pv);
    let rest: Vec<_> = d.incident(v).iter().copied().filter(|&(w, _)| w != u).collect();
    d.remove_vertex(v);
    for (w, t) in rest {
        d.add_edge_smart(u, w, t);
    }
}

fn color_change(d: &mut ZxDiagram, v: usize) {
    let flip = match d.vertex_type(v) {
        VertexType::X => VertexType::Z,
        VertexType::Z => VertexType::X,
        VertexType::Boundary => return,
    };
    d.set_vertex_type(v, flip);
    let inc: Vec<_> = d.incident(v).to_vec();
    for (w, t) in inc {
        d.set_edge_type(v, w, t.flipped());
    }
}

/// Complements the Hadamard adjacency among the neighbors of `v` without
/// touching `v` itself.
pub(crate) fn complement_neighborhood(d: &mut ZxDiagram, v: usize) {
    let ns: Vec<usize> = d.neighbors(v).collect();
    for i in 0..ns.len() {
        for j in i + 1..ns.len() {
            d.toggle_hadamard(ns[i], ns[j]);
        }
    }
}

fn local_complement(d: &mut ZxDiagram, v: usize) {
    let a = d.phase(v);
    complement_neighborhood(d, v);
    let ns: Vec<usize> = d.neighbors(v).collect();
    for w in ns {
        d.add_to_phase(w, -a);
    }
    d.remove_vertex(v);
}

fn pivot(d: &mut ZxDiagram, u: usize, v: usize) {
    let (pu, pv) = (d.phase(u), d.phase(v));
    let nu: Vec<usize> = d.neighbors(u).filter(|&w| w != v).collect();
    let nv: Vec<usize> = d.neighbors(v).filter(|&w| w != u).collect();
    let only_u: Vec<usize> = nu.iter().copied().filter(|w| !nv.contains(w)).collect();
    let only_v: Vec<usize> = nv.iter().copied().filter(|w| !nu.contains(w)).collect();
    let both: Vec<usize> = nu.iter().copied().filter(|w| nv.contains(w)).collect();
    for (xs, ys) in [(&only_u, &only_v), (&only_u, &both), (&only_v, &both)] {
        for &x in xs {
            for &y in ys {
                d.toggle_hadamard(x, y);
            }
        }
    }
    for &w in &only_u {
        d.add_to_phase(w, pv);
    }
    for &w in &only_v {
        d.add_to_phase(w, pu);
    }
    for &w in &both {
        d.add_to_phase(w, pu + pv + Phase::pi());
    }
    d.remove_vertex(u);
    d.remove_vertex(v);
}

/// Identity removal and spider fusion to a fixpoint, restricted so that a
/// graph-like diagram stays graph-like: identities whose removal would put
/// a Hadamard edge on a boundary are left in place.
pub fn clean_identities_and_fusions(d: &mut ZxDiagram) {
    loop {
        let mut changed = false;
        for v in 0..d.id_bound() {
            if !d.contains(v) || !is_identity_candidate(d, v) {
                continue;
            }
            let [(a, ta), (b, tb)] = [d.incident(v)[0], d.incident(v)[1]];
            let t = ta.compose(tb);
            if t == EdgeType::Hadamard && (d.is_boundary(a) || d.is_boundary(b)) {
                continue;
            }
            remove_identity(d, v);
            changed = true;
        }
        for u in 0..d.id_bound() {
            while d.contains(u) && !d.is_boundary(u) {
                let Some(v) = d.neighbors(u).find(|&w| is_fusion_candidate(d, u, w)) else {
                    break;
                };
                fuse(d, u, v);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// Brings any diagram into graph-like form: every X-spider is colour
/// changed, spiders joined by plain edges are fused, identities removed, and
/// a phase-free spider is inserted wherever a boundary would otherwise meet
/// a Hadamard edge.
pub fn preprocess(d: &ZxDiagram) -> ZxDiagram {
    let mut d = d.clone();
    let xs: Vec<usize> = d
        .vertices()
        .filter(|&v| d.vertex_type(v) == VertexType::X)
        .collect();
    for v in xs {
        color_change(&mut d, v);
    }
    clean_identities_and_fusions(&mut d);
    let boundaries: Vec<usize> = d.inputs().iter().chain(d.outputs()).copied().collect();
    for b in boundaries {
        let (w, t) = d.incident(b)[0];
        if t == EdgeType::Simple {
            continue;
        }
        let info = d.vertex(b);
        let z = d.add_vertex_at(VertexType::Z, Phase::zero(), info.qubit, info.row);
        d.remove_edge(b, w);
        d.add_edge(b, z, EdgeType::Simple);
        if d.is_boundary(w) {
            // boundary-to-boundary Hadamard wire: needs a spider at each end
            let info = d.vertex(w);
            let z2 = d.add_vertex_at(VertexType::Z, Phase::zero(), info.qubit, info.row);
            d.add_edge(z, z2, EdgeType::Hadamard);
            d.add_edge(z2, w, EdgeType::Simple);
        } else {
            d.add_edge(z, w, EdgeType::Hadamard);
        }
    }
    debug_assert!(d.is_graph_like(), "{:?}", d.graph_like_violation());
    d
}

pub fn count_hadamard_edges(d: &ZxDiagram) -> usize {
    d.edges().filter(|e| e.2 == EdgeType::Hadamard).count()
}
