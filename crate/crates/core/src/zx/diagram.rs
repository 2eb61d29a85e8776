use serde::{Deserialize, Serialize};

use crate::phase::Phase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexType {
    Boundary,
    Z,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeType {
    Simple,
    Hadamard,
}

impl EdgeType {
    /// Edge type of the wire obtained by joining two edges through an
    /// identity spider.
    pub fn compose(self, other: EdgeType) -> EdgeType {
        if self == other {
            EdgeType::Simple
        } else {
            EdgeType::Hadamard
        }
    }

    pub fn flipped(self) -> EdgeType {
        match self {
            EdgeType::Simple => EdgeType::Hadamard,
            EdgeType::Hadamard => EdgeType::Simple,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexData {
    pub ty: VertexType,
    pub phase: Phase,
    /// Layout hints: the wire the vertex came from and its position along it.
    pub qubit: Option<usize>,
    pub row: usize,
}

/// An open ZX graph. Vertex ids are indices into an arena and are never
/// reused, so a removed id stays invalid for the lifetime of the diagram.
/// At most one edge joins any two vertices; parallel edges are resolved as
/// they arise (see [`ZxDiagram::add_edge_smart`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZxDiagram {
    verts: Vec<Option<VertexData>>,
    // sorted by neighbor id
    adj: Vec<Vec<(usize, EdgeType)>>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    n_live: usize,
}

impl Default for ZxDiagram {
    fn default() -> Self {
        Self::new()
    }
}

impl ZxDiagram {
    pub fn new() -> Self {
        ZxDiagram {
            verts: Vec::new(),
            adj: Vec::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            n_live: 0,
        }
    }

    pub fn add_vertex(&mut self, ty: VertexType, phase: Phase) -> usize {
        self.add_vertex_at(ty, phase, None, 0)
    }

    pub fn add_vertex_at(&mut self, ty: VertexType, phase: Phase, qubit: Option<usize>, row: usize) -> usize {
        let phase = if ty == VertexType::Boundary { Phase::zero() } else { phase };
        self.verts.push(Some(VertexData { ty, phase, qubit, row }));
        self.adj.push(Vec::new());
        self.n_live += 1;
        self.verts.len() - 1
    }

    pub fn remove_vertex(&mut self, v: usize) {
        assert!(self.contains(v), "remove of dead vertex {v}");
        for (w, _) in std::mem::take(&mut self.adj[v]) {
            let list = &mut self.adj[w];
            if let Ok(i) = list.binary_search_by_key(&v, |e| e.0) {
                list.remove(i);
            }
        }
        self.verts[v] = None;
        self.n_live -= 1;
        self.inputs.retain(|&x| x != v);
        self.outputs.retain(|&x| x != v);
    }

    pub fn contains(&self, v: usize) -> bool {
        self.verts.get(v).is_some_and(|x| x.is_some())
    }

    pub fn vertex(&self, v: usize) -> &VertexData {
        self.verts[v].as_ref().expect("dead vertex")
    }

    pub fn vertex_type(&self, v: usize) -> VertexType {
        self.vertex(v).ty
    }

    pub fn set_vertex_type(&mut self, v: usize, ty: VertexType) {
        self.verts[v].as_mut().expect("dead vertex").ty = ty;
    }

    pub fn phase(&self, v: usize) -> Phase {
        self.vertex(v).phase
    }

    pub fn set_phase(&mut self, v: usize, p: Phase) {
        self.verts[v].as_mut().expect("dead vertex").phase = p;
    }

    pub fn add_to_phase(&mut self, v: usize, p: Phase) {
        let d = self.verts[v].as_mut().expect("dead vertex");
        d.phase += p;
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.vertex_type(v) == VertexType::Boundary
    }

    /// Live vertex ids in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.verts
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.as_ref().map(|_| i))
    }

    /// Every edge once, as `(u, v, type)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeType)> + '_ {
        self.vertices().flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, t)| (u, v, t))
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.n_live
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// One past the largest id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.verts.len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|e| e.0)
    }

    pub fn incident(&self, v: usize) -> &[(usize, EdgeType)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge(&self, u: usize, v: usize) -> Option<EdgeType> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |e| e.0).ok().map(|i| list[i].1)
    }

    pub fn connected(&self, u: usize, v: usize) -> bool {
        self.edge(u, v).is_some()
    }

    fn insert_half(&mut self, u: usize, v: usize, t: EdgeType) {
        let list = &mut self.adj[u];
        match list.binary_search_by_key(&v, |e| e.0) {
            Ok(i) => list[i].1 = t,
            Err(i) => list.insert(i, (v, t)),
        }
    }

    fn remove_half(&mut self, u: usize, v: usize) {
        let list = &mut self.adj[u];
        if let Ok(i) = list.binary_search_by_key(&v, |e| e.0) {
            list.remove(i);
        }
    }

    /// Adds an edge, overwriting the type of an existing one.
    pub fn add_edge(&mut self, u: usize, v: usize, t: EdgeType) {
        assert!(u != v, "self-loop on {u}");
        assert!(self.contains(u) && self.contains(v));
        self.insert_half(u, v, t);
        self.insert_half(v, u, t);
    }

    pub fn set_edge_type(&mut self, u: usize, v: usize, t: EdgeType) {
        debug_assert!(self.connected(u, v));
        self.insert_half(u, v, t);
        self.insert_half(v, u, t);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.remove_half(u, v);
        self.remove_half(v, u);
    }

    /// Toggles a Hadamard edge between two Z-spiders; used for neighborhood
    /// complementation in graph-like diagrams.
    pub fn toggle_hadamard(&mut self, u: usize, v: usize) {
        match self.edge(u, v) {
            Some(EdgeType::Hadamard) => self.remove_edge(u, v),
            None => self.add_edge(u, v, EdgeType::Hadamard),
            Some(EdgeType::Simple) => panic!("toggle on simple edge {u}-{v}"),
        }
    }

    /// Adds an edge between two spiders, resolving a would-be parallel edge
    /// by the usual laws. Call an edge "fusing" if it is Simple between
    /// spiders of the same colour or Hadamard between different colours.
    /// Two fusing edges act as one; two non-fusing edges cancel; a fusing
    /// plus a non-fusing edge leave the fusing edge and add pi to `u`.
    /// Global scalars are dropped.
    pub fn add_edge_smart(&mut self, u: usize, v: usize, t: EdgeType) {
        let Some(old) = self.edge(u, v) else {
            self.add_edge(u, v, t);
            return;
        };
        let (tu, tv) = (self.vertex_type(u), self.vertex_type(v));
        assert!(
            tu != VertexType::Boundary && tv != VertexType::Boundary,
            "parallel edge at boundary {u}-{v}"
        );
        let fusing = if tu == tv { EdgeType::Simple } else { EdgeType::Hadamard };
        match (old == fusing, t == fusing) {
            (true, true) => {}
            (false, false) => self.remove_edge(u, v),
            _ => {
                self.set_edge_type(u, v, fusing);
                self.add_to_phase(u, Phase::pi());
            }
        }
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn set_inputs(&mut self, v: Vec<usize>) {
        self.inputs = v;
    }

    pub fn set_outputs(&mut self, v: Vec<usize>) {
        self.outputs = v;
    }

    pub fn is_input(&self, v: usize) -> bool {
        self.inputs.contains(&v)
    }

    pub fn is_output(&self, v: usize) -> bool {
        self.outputs.contains(&v)
    }

    /// Whether any neighbor of `v` is a boundary.
    pub fn touches_boundary(&self, v: usize) -> bool {
        self.neighbors(v).any(|w| self.is_boundary(w))
    }

    /// The graph-like predicate: only Z-spiders besides boundaries,
    /// Hadamard edges between spiders, Simple edges at boundaries, every
    /// boundary of degree one, and boundaries only on the input/output lists.
    pub fn is_graph_like(&self) -> bool {
        self.graph_like_violation().is_none()
    }

    pub fn graph_like_violation(&self) -> Option<String> {
        for v in self.vertices() {
            match self.vertex_type(v) {
                VertexType::X => return Some(format!("vertex {v} is an X-spider")),
                VertexType::Boundary => {
                    if self.degree(v) != 1 {
                        return Some(format!("boundary {v} has degree {}", self.degree(v)));
                    }
                    if !self.is_input(v) && !self.is_output(v) {
                        return Some(format!("boundary {v} is neither input nor output"));
                    }
                }
                VertexType::Z => {}
            }
        }
        for (u, v, t) in self.edges() {
            let boundary = self.is_boundary(u) || self.is_boundary(v);
            match (boundary, t) {
                (true, EdgeType::Hadamard) => return Some(format!("boundary edge {u}-{v} is Hadamard")),
                (false, EdgeType::Simple) => return Some(format!("spider edge {u}-{v} is Simple")),
                _ => {}
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_not_reused() {
        let mut d = ZxDiagram::new();
        let a = d.add_vertex(VertexType::Z, Phase::zero());
        d.remove_vertex(a);
        let b = d.add_vertex(VertexType::Z, Phase::zero());
        assert_ne!(a, b);
        assert!(!d.contains(a));
        assert_eq!(d.num_vertices(), 1);
    }

    #[test]
    fn smart_edges_follow_parallel_edge_laws() {
        let mut d = ZxDiagram::new();
        let a = d.add_vertex(VertexType::Z, Phase::zero());
        let b = d.add_vertex(VertexType::Z, Phase::zero());
        d.add_edge_smart(a, b, EdgeType::Hadamard);
        d.add_edge_smart(a, b, EdgeType::Hadamard);
        assert_eq!(d.edge(a, b), None);

        d.add_edge_smart(a, b, EdgeType::Hadamard);
        d.add_edge_smart(a, b, EdgeType::Simple);
        assert_eq!(d.edge(a, b), Some(EdgeType::Simple));
        assert_eq!(d.phase(a), Phase::pi());

        let x = d.add_vertex(VertexType::X, Phase::zero());
        d.add_edge_smart(a, x, EdgeType::Simple);
        d.add_edge_smart(a, x, EdgeType::Simple);
        assert_eq!(d.edge(a, x), None);
    }

    #[test]
    fn edge_listing_is_canonical() {
        let mut d = ZxDiagram::new();
        let vs: Vec<_> = (0..4).map(|_| d.add_vertex(VertexType::Z, Phase::zero())).collect();
        d.add_edge(vs[3], vs[0], EdgeType::Hadamard);
        d.add_edge(vs[1], vs[2], EdgeType::Simple);
        let e: Vec<_> = d.edges().collect();
        assert_eq!(e, vec![(0, 3, EdgeType::Hadamard), (1, 2, EdgeType::Simple)]);
        assert_eq!(d.num_edges(), 2);
    }
}
