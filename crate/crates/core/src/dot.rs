//! Deterministic Graphviz DOT renderings of the toolkit's graph objects.
//!
//! Output is plain text built in a fixed order, so equal inputs always give
//! byte-identical files — handy for snapshots and diffing.

use std::fmt::Write as _;

use crate::farey::FareySubcomplex;
use crate::pantsgraph::{PantsGraph, TypeMoveGraph};

fn quoted(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders a slope window: slopes as nodes, adjacency as edges, and the
/// triangles listed as comments (DOT has no native 2-cells).
pub fn farey_window_dot(window: &FareySubcomplex) -> String {
    let mut out = String::new();
    out.push_str("graph slope_window {\n");
    let _ = writeln!(out, "  // {} model, coefficient limit {}", window.kind, window.limit);
    out.push_str("  node [shape=circle];\n");
    for v in &window.vertices {
        let _ = writeln!(out, "  {};", quoted(&v.to_string()));
    }
    for (a, b) in &window.edges {
        let _ = writeln!(
            out,
            "  {} -- {};",
            quoted(&a.to_string()),
            quoted(&b.to_string())
        );
    }
    for t in &window.triangles {
        let _ = writeln!(out, "  // triangle {} {} {}", t[0], t[1], t[2]);
    }
    out.push_str("}\n");
    out
}

/// Renders a type move graph: canonical codes label the vertices, edges
/// carry the number of elementary moves realizing them, and self-moves
/// (moves that do not change the type) appear as comments.
pub fn move_graph_dot(mg: &TypeMoveGraph) -> String {
    let mut out = String::new();
    out.push_str("graph type_moves {\n");
    let _ = writeln!(out, "  // surface {}", mg.surface);
    out.push_str("  node [shape=box];\n");
    for (i, code) in mg.codes.iter().enumerate() {
        let _ = writeln!(out, "  t{} [label={}];", i, quoted(&code.to_string()));
    }
    for edge in &mg.edges {
        let _ = writeln!(
            out,
            "  t{} -- t{} [label=\"{}\"];",
            edge.a,
            edge.b,
            edge.sites.len()
        );
    }
    for site in &mg.self_sites {
        let _ = writeln!(out, "  // self-move at t{}: {:?}", site.from, site.site);
    }
    out.push_str("}\n");
    out
}

/// Renders one decomposition graph: pants as circles, boundary legs as
/// point nodes, curves as edges (loops allowed).
pub fn pants_graph_dot(graph: &PantsGraph) -> String {
    let mut out = String::new();
    out.push_str("graph pants {\n");
    let _ = writeln!(out, "  // surface {}", graph.surface());
    out.push_str("  node [shape=circle];\n");
    for p in 0..graph.surface().pants_count() {
        let _ = writeln!(out, "  p{p};");
    }
    if graph.surface().boundary_count() > 0 {
        out.push_str("  node [shape=point];\n");
    }
    for (label, pants) in graph.legs().iter().enumerate() {
        let _ = writeln!(out, "  leg{} [xlabel=\"{}\"];", label + 1, label + 1);
        let _ = writeln!(out, "  p{} -- leg{};", pants, label + 1);
    }
    for (curve, (a, b)) in graph.edges().iter().enumerate() {
        let _ = writeln!(out, "  p{a} -- p{b} [label=\"c{curve}\"];");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::farey::{FareyModel, ModelKind};
    use crate::pantsgraph::build_move_graph;
    use crate::surface::SurfaceType;

    #[test]
    fn farey_dot_is_deterministic_and_complete() {
        let window = FareyModel::new(ModelKind::A).window(1);
        let dot = farey_window_dot(&window);
        assert_eq!(dot, farey_window_dot(&window));
        assert!(dot.starts_with("graph slope_window {"));
        assert!(dot.contains("\"1/0\""));
        assert!(dot.contains("\"0/1\" -- \"1/0\";"));
        assert!(dot.contains("// triangle 0/1 1/1 1/0"));
        assert!(dot.ends_with("}\n"));
    }

    #[test]
    fn move_graph_dot_lists_every_type_and_edge() {
        let mg = build_move_graph(SurfaceType::new(0, 4).unwrap()).unwrap();
        let dot = move_graph_dot(&mg);
        for i in 0..mg.vertex_count() {
            assert!(dot.contains(&format!("t{i} [label=")));
        }
        assert_eq!(dot.matches(" -- ").count(), mg.edge_count());
    }

    #[test]
    fn pants_graph_dot_shows_legs_and_curves() {
        let mg = build_move_graph(SurfaceType::new(1, 2).unwrap()).unwrap();
        let dot = pants_graph_dot(&mg.types[0]);
        assert!(dot.contains("leg1"));
        assert!(dot.contains("leg2"));
        assert!(dot.contains("[label=\"c0\"]"));
    }
}
