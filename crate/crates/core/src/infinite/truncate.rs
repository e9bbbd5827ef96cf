use super::{EndId, LazyGraph};
use crate::error::{Error, Result};
use crate::multigraph::{Multigraph, VertexSet};
use std::collections::BTreeSet;

/// Largest truncation built unless the caller asks otherwise.
pub const DEFAULT_MAX_VERTICES: usize = 400_000;

/// The ball of some depth around the root, with the vertices that have neighbours
/// outside it marked as frontier.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub depth: u32,
    pub graph: Multigraph,
    pub frontier: VertexSet,
}

pub fn truncate(g: &dyn LazyGraph, depth: u32) -> Truncation {
    truncate_bounded(g, depth, usize::MAX).expect("unbounded truncation")
}

/// As [`truncate`], failing once the ball exceeds `max_vertices`.
pub fn truncate_bounded(g: &dyn LazyGraph, depth: u32, max_vertices: usize) -> Result<Truncation> {
    let mut graph = Multigraph::new();
    let mut frontier = VertexSet::new();
    let root = g.root();
    graph.insert_vertex(root, Some(g.label(root)))?;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        for (e, w) in g.neighbors(v) {
            if g.level(w) > depth {
                frontier.insert(v);
                continue;
            }
            if !graph.has_vertex(w) {
                if graph.vertex_count() == max_vertices {
                    return Err(Error::BoundExceeded {
                        what: "truncation size",
                        found: max_vertices + 1,
                        bound: max_vertices,
                    });
                }
                graph.insert_vertex(w, Some(g.label(w)))?;
                stack.push(w);
            }
            if !graph.has_edge(e) {
                graph.insert_edge(e, v, w)?;
            }
        }
    }
    Ok(Truncation {
        depth,
        graph,
        frontier,
    })
}

/// The ends reached by `component`, read off its frontier vertices in `t`.
pub fn classify_component(g: &dyn LazyGraph, t: &Truncation, component: &VertexSet) -> BTreeSet<EndId> {
    component
        .intersection(&t.frontier)
        .map(|&v| g.region(v))
        .collect()
}
