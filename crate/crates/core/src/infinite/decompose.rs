//! Finite sets A whose complement splits into boundary-linked components.
//!
//! The loop follows the existence proof: take the first end still reachable outside the
//! current A, cut it off from A by a minimum cut, keep the end side, and add the cut's
//! near endpoints to A. Ends are read on a truncation; the components are then certified on
//! a deeper one by packing edge-disjoint paths from their boundary edges to the frontier of
//! a single end.

use super::component::ComponentView;
use super::truncate::{truncate_bounded, Truncation, DEFAULT_MAX_VERTICES};
use super::{EndId, LazyGraph};
use crate::connectivity::min_cut_separating;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, VertexId, VertexSet};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeOptions {
    /// Levels beyond A′ in the truncation the cutting loop runs on.
    pub margin: u32,
    /// Extra levels for the certificate truncation.
    pub relative_depth: u32,
    /// Both of the above double on failure until they exceed this.
    pub depth_cap: u32,
    pub max_vertices: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self {
            margin: 2,
            relative_depth: 4,
            depth_cap: 64,
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

/// A component of G − A with its boundary and, for each boundary edge, a path starting with
/// that edge and ending on the frontier of the certificate truncation towards `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryLinkedComponent {
    /// Vertices inside the certificate truncation.
    pub vertices: VertexSet,
    pub boundary: Vec<EdgeId>,
    pub end: EndId,
    pub depth: u32,
    pub rays: Vec<Vec<EdgeId>>,
}

impl BoundaryLinkedComponent {
    /// Rays pairwise edge-disjoint, one per boundary edge, each starting with it.
    pub fn certificate_is_consistent(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.rays.len() == self.boundary.len()
            && self
                .rays
                .iter()
                .zip(&self.boundary)
                .all(|(r, b)| r.first() == Some(b))
            && self.rays.iter().flatten().all(|e| seen.insert(*e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub least_vertex: VertexId,
    pub size_in_truncation: usize,
    pub boundary_size: usize,
    pub end: EndId,
    pub depth: u32,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub a: VertexSet,
    pub components: Vec<BoundaryLinkedComponent>,
    /// Rounds of the cutting loop.
    pub iterations: usize,
    pub work_depth: u32,
    /// The truncation the certificates live in.
    pub truncation: Truncation,
}

impl Decomposition {
    pub fn summaries(&self) -> Vec<ComponentSummary> {
        self.components
            .iter()
            .map(|c| ComponentSummary {
                least_vertex: *c.vertices.first().expect("nonempty component"),
                size_in_truncation: c.vertices.len(),
                boundary_size: c.boundary.len(),
                end: c.end,
                depth: c.depth,
            })
            .collect()
    }
}

pub fn decompose(g: &dyn LazyGraph, a_prime: &VertexSet) -> Result<Decomposition> {
    decompose_with(g, a_prime, DecomposeOptions::default())
}

pub fn decompose_with(
    g: &dyn LazyGraph,
    a_prime: &VertexSet,
    opts: DecomposeOptions,
) -> Result<Decomposition> {
    if a_prime.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    let base = a_prime.iter().map(|&v| g.level(v)).max().unwrap_or(0);
    let mut last = String::new();
    let mut margin = opts.margin.max(1);
    while margin <= opts.depth_cap {
        let work = truncate_bounded(g, (base + margin).max(g.region_level()), opts.max_vertices)?;
        for &v in a_prime {
            if !work.graph.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let (a, iterations) = cutting_loop(g, &work, a_prime)?;
        let mut rel = opts.relative_depth.max(1);
        while rel <= opts.depth_cap {
            let deep = truncate_bounded(g, work.depth + rel, opts.max_vertices)?;
            match certify(g, &deep, a.clone()) {
                Ok((a, components)) => {
                    return Ok(Decomposition {
                        a,
                        components,
                        iterations,
                        work_depth: work.depth,
                        truncation: deep,
                    })
                }
                Err(reason) => last = reason,
            }
            rel *= 2;
        }
        margin *= 2;
    }
    Err(Error::Certificate(format!(
        "no boundary-linked decomposition up to depth cap {}: {last}",
        opts.depth_cap
    )))
}

fn cutting_loop(g: &dyn LazyGraph, t: &Truncation, a_prime: &VertexSet) -> Result<(VertexSet, usize)> {
    let mut a = a_prime.clone();
    let mut taken = VertexSet::new();
    let mut iterations = 0;
    loop {
        let open: Vec<VertexId> = t
            .frontier
            .iter()
            .copied()
            .filter(|v| !a.contains(v) && !taken.contains(v))
            .collect();
        let Some(end) = open.iter().map(|&v| g.region(v)).min() else {
            break;
        };
        let sinks: VertexSet = open.into_iter().filter(|&v| g.region(v) == end).collect();
        let live: VertexSet = t
            .graph
            .vertices()
            .filter(|v| !taken.contains(v))
            .collect();
        let h = t.graph.induced(&live);
        let (cut, _) = min_cut_separating(&h, &a, &sinks)?;
        let far = h.induced(&h.complement(&cut.side));
        for comp in far.components() {
            if !comp.is_disjoint(&sinks) {
                taken.extend(comp);
            }
        }
        for e in &cut.boundary {
            let (u, v) = h.endpoints(*e).expect("cut edge present");
            a.insert(if cut.side.contains(&u) { u } else { v });
        }
        iterations += 1;
    }
    // whatever is left never reaches the frontier: fold it in
    a.extend(t.graph.vertices().filter(|v| !taken.contains(v)));
    Ok((a, iterations))
}

/// Components of `t − a`: finite ones are folded into `a`, the others must carry a full
/// ray packing towards one end.
fn certify(
    g: &dyn LazyGraph,
    t: &Truncation,
    mut a: VertexSet,
) -> std::result::Result<(VertexSet, Vec<BoundaryLinkedComponent>), String> {
    let rest = t.graph.induced(&t.graph.complement(&a));
    let comps = rest.components();
    let mut out = Vec::new();
    for comp in comps {
        if comp.is_disjoint(&t.frontier) {
            a.extend(comp);
            continue;
        }
        let view = ComponentView::new(&t.graph, &comp);
        let mut ends: Vec<EndId> = comp.intersection(&t.frontier).map(|&v| g.region(v)).collect();
        ends.sort();
        ends.dedup();
        let starts: Vec<usize> = (0..view.boundary.len()).collect();
        let mut best = 0;
        let mut found = None;
        for end in ends {
            let sinks: Vec<usize> = comp
                .intersection(&t.frontier)
                .filter(|&&v| g.region(v) == end)
                .map(|v| view.index[v])
                .collect();
            let mut rays = view.packing(&starts, &sinks);
            best = best.max(rays.len());
            if rays.len() == starts.len() {
                rays.sort();
                found = Some((end, rays));
                break;
            }
        }
        let Some((end, rays)) = found else {
            return Err(format!(
                "component at {} has {} boundary edges but only {best} disjoint rays at depth {}",
                comp.first().expect("nonempty"),
                view.boundary.len(),
                t.depth
            ));
        };
        out.push(BoundaryLinkedComponent {
            vertices: comp,
            boundary: view.boundary.iter().map(|b| b.0).collect(),
            end,
            depth: t.depth,
            rays,
        });
    }
    Ok((a, out))
}

/// A component of `t − a` reaching the frontier whose boundary is larger than any packing
/// of edge-disjoint paths from it into a single end region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub least_vertex: VertexId,
    pub boundary_size: usize,
    /// Largest packing into one region, with that region.
    pub best_packing: usize,
    pub region: Option<EndId>,
}

/// The first frontier-reaching component of `t − a` with at least `min_boundary` boundary
/// edges and single-region packing at most `max_packing`, if any.
pub fn fixed_set_obstruction(
    g: &dyn LazyGraph,
    t: &Truncation,
    a: &VertexSet,
    min_boundary: usize,
    max_packing: usize,
) -> Option<Obstruction> {
    let rest = t.graph.induced(&t.graph.complement(a));
    for comp in rest.components() {
        if comp.is_disjoint(&t.frontier) {
            continue;
        }
        let view = ComponentView::new(&t.graph, &comp);
        if view.boundary.len() < min_boundary {
            continue;
        }
        let starts: Vec<usize> = (0..view.boundary.len()).collect();
        let mut regions: Vec<EndId> = comp.intersection(&t.frontier).map(|&v| g.region(v)).collect();
        regions.sort();
        regions.dedup();
        let mut best = (0, None);
        for r in regions {
            let sinks: Vec<usize> = comp
                .intersection(&t.frontier)
                .filter(|&&v| g.region(v) == r)
                .map(|v| view.index[v])
                .collect();
            let p = view.packing(&starts, &sinks).len();
            if p > best.0 {
                best = (p, Some(r));
            }
        }
        if best.0 <= max_packing {
            return Some(Obstruction {
                least_vertex: *comp.first().expect("nonempty"),
                boundary_size: view.boundary.len(),
                best_packing: best.0,
                region: best.1,
            });
        }
    }
    None
}
