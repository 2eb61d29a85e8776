use std::fmt::Write as _;

use super::diagram::{EdgeType, VertexType, ZxDiagram};

/// Renders the diagram as a Graphviz graph for inspection. Z-spiders are
/// green, X-spiders red, boundaries plain; Hadamard edges are dashed blue.
/// The exact layout of the output is not stable.
pub fn to_dot(d: &ZxDiagram) -> String {
    let mut s = String::from("graph zx {\n  node [style=filled];\n");
    for v in d.vertices() {
        let data = d.vertex(v);
        let (color, kind) = match data.ty {
            VertexType::Z => ("palegreen", "Z"),
            VertexType::X => ("salmon", "X"),
            VertexType::Boundary if d.is_input(v) => ("white", "in"),
            VertexType::Boundary => ("white", "out"),
        };
        let label = if data.phase.is_zero() {
            format!("{kind} {v}")
        } else {
            format!("{kind} {v}\\n{}", data.phase)
        };
        let _ = writeln!(s, "  v{v} [label=\"{label}\", fillcolor={color}];");
    }
    for (u, v, t) in d.edges() {
        let style = match t {
            EdgeType::Simple => "",
            EdgeType::Hadamard => " [style=dashed, color=blue]",
        };
        let _ = writeln!(s, "  v{u} -- v{v}{style};");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};
    use crate::zx::to_graph;

    #[test]
    fn lists_every_vertex_and_edge() {
        let d = to_graph(&Circuit::from_gates(2, [Gate::Cz(0, 1), Gate::T(0)]).unwrap());
        let dot = to_dot(&d);
        assert_eq!(dot.matches("label=").count(), d.num_vertices());
        assert_eq!(dot.matches(" -- ").count(), d.num_edges());
        assert!(dot.contains("pi/4"));
        assert!(dot.contains("style=dashed"));
    }
}
