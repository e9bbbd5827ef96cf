use super::{Multigraph, Orientation, VertexId};
use std::fmt::Write;

fn vertex_line(out: &mut String, g: &Multigraph, v: VertexId) {
    match g.label(v) {
        Some(l) => writeln!(out, "  {} [label=\"{}\"];", v.0, l.replace('"', "\\\"")).unwrap(),
        None => writeln!(out, "  {};", v.0).unwrap(),
    }
}

pub fn to_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        vertex_line(&mut out, g, v);
    }
    for (e, u, v) in g.edges() {
        writeln!(out, "  {} -- {} [label=\"{}\"];", u.0, v.0, e).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Digraph rendering; unassigned edges are drawn without arrowheads.
pub fn to_dot_oriented(d: &Orientation) -> String {
    let g = d.base();
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        vertex_line(&mut out, g, v);
    }
    for (e, u, v) in g.edges() {
        match d.arc(e) {
            Some(a) => writeln!(out, "  {} -> {} [label=\"{}\"];", a.tail.0, a.head.0, e).unwrap(),
            None => writeln!(out, "  {} -> {} [label=\"{}\", dir=none];", u.0, v.0, e).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::EdgeId;

    #[test]
    fn renders_edges_and_arcs() {
        let g = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(to_dot(&g).contains("0 -- 1 [label=\"e1\"]"));
        let mut d = Orientation::new(g);
        d.assign(EdgeId(0), VertexId(1), VertexId(0)).unwrap();
        let s = to_dot_oriented(&d);
        assert!(s.contains("1 -> 0 [label=\"e0\"]"));
        assert!(s.contains("dir=none"));
    }
}
