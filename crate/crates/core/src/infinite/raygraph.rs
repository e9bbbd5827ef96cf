//! The ray graph of a boundary-linked component: nodes are boundary edges, two being
//! adjacent when the truncation holds enough disjoint paths joining their rays and avoiding
//! the other rays.

use super::component::ComponentView;
use super::decompose::BoundaryLinkedComponent;
use super::truncate::Truncation;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::multigraph::{Multigraph, VertexId};
use std::collections::HashMap;

/// Disjoint connecting paths required before two rays count as joined.
pub const DEFAULT_RAY_THRESHOLD: u32 = 2;

/// Rays of a component in the index space of its view.
pub(crate) struct Rays {
    /// ray owning each internal edge position, if any
    pub owner: HashMap<usize, usize>,
    /// vertex positions along each ray, starting at the inner end of its boundary edge
    pub verts: Vec<Vec<usize>>,
}

impl Rays {
    pub fn new(view: &ComponentView, comp: &BoundaryLinkedComponent) -> Result<Self> {
        let mut owner = HashMap::new();
        let mut verts = Vec::new();
        for (i, ray) in comp.rays.iter().enumerate() {
            let b = view
                .boundary
                .iter()
                .position(|x| Some(&x.0) == ray.first())
                .ok_or_else(|| Error::Certificate(format!("ray {i} does not start on the boundary")))?;
            let positions: Vec<usize> = ray[1..]
                .iter()
                .map(|e| {
                    view.edge_pos
                        .get(e)
                        .copied()
                        .ok_or_else(|| Error::Certificate(format!("ray edge {e} leaves the component")))
                })
                .collect::<Result<_>>()?;
            for &p in &positions {
                owner.insert(p, i);
            }
            verts.push(view.walk_vertices(view.boundary[b].2, &positions));
        }
        Ok(Self { owner, verts })
    }

    /// Whether at least `threshold` vertex-disjoint paths join ray `i` to ray `j`, using
    /// allowed edges off every live ray and no vertex of any other live ray.
    pub fn joined(
        &self,
        view: &ComponentView,
        i: usize,
        j: usize,
        live: &[bool],
        allowed: &dyn Fn(usize) -> bool,
        threshold: u32,
    ) -> bool {
        let n = view.n();
        // vertex v splits into 2v (in) and 2v + 1 (out)
        let (src, snk) = (2 * n, 2 * n + 1);
        let mut net = FlowNetwork::new(2 * n + 2);
        let mut blocked = vec![false; n];
        let mut on_i = vec![false; n];
        let mut on_j = vec![false; n];
        for (r, vs) in self.verts.iter().enumerate() {
            for &v in vs {
                if r == i {
                    on_i[v] = true;
                } else if r == j {
                    on_j[v] = true;
                } else if live[r] {
                    blocked[v] = true;
                }
            }
        }
        for v in 0..n {
            if blocked[v] && !on_i[v] && !on_j[v] {
                continue;
            }
            net.add_arc(2 * v, 2 * v + 1, 1, 0);
            if on_i[v] {
                net.add_arc(src, 2 * v, 1, 0);
            }
            if on_j[v] {
                net.add_arc(2 * v + 1, snk, 1, 0);
            }
        }
        for (p, &(_, u, v)) in view.edges.iter().enumerate() {
            let on_live = self.owner.get(&p).is_some_and(|&r| live[r]);
            if on_live || !allowed(p) {
                continue;
            }
            let ok = |x: usize| !blocked[x] || on_i[x] || on_j[x];
            if ok(u) && ok(v) {
                net.add_arc(2 * u + 1, 2 * v, 1, 0);
                net.add_arc(2 * v + 1, 2 * u, 1, 0);
            }
        }
        net.max_flow(src, snk, threshold) >= threshold
    }
}

/// The ray graph of `comp` inside `t`, on vertex ids equal to the boundary edge ids.
pub fn ray_graph(t: &Truncation, comp: &BoundaryLinkedComponent, threshold: u32) -> Result<Multigraph> {
    let view = ComponentView::new(&t.graph, &comp.vertices);
    let rays = Rays::new(&view, comp)?;
    let live = vec![true; rays.verts.len()];
    let mut m = Multigraph::new();
    for e in &comp.boundary {
        m.insert_vertex(VertexId(e.0), None)?;
    }
    for i in 0..live.len() {
        for j in i + 1..live.len() {
            if rays.joined(&view, i, j, &live, &|_| true, threshold) {
                m.add_edge(VertexId(comp.boundary[i].0), VertexId(comp.boundary[j].0))?;
            }
        }
    }
    Ok(m)
}
