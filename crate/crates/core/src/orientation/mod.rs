//! Euler trails, odd-vertex pairings, and extension of consistently oriented Eulerian
//! subgraphs to well-balanced and k-arc-connected orientations.

mod euler;
mod pairing;

pub use euler::{euler_trail, euler_trail_from, orient_consistently, EulerTrail, TrailKind};
pub use pairing::{
    check_star_condition, check_star_condition_bounded, find_odd_pairing,
    find_odd_pairing_bounded, greedy_pairing, random_pairing, OddVertexPairing, StarViolation,
    DEFAULT_PAIRING_BOUND,
};

use crate::connectivity::{
    alpha_capped, arc_connectivity_violation, edge_connectivity_violation, even_floor,
    LambdaTable,
};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, Multigraph, Orientation, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// How to search for a pairing once the graph is beyond exhaustive (★) checking.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtensionOptions {
    pub pairing_bound: usize,
    /// Random pairings tried after the greedy one.
    pub attempts: usize,
    pub seed: u64,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        Self {
            pairing_bound: DEFAULT_PAIRING_BOUND,
            attempts: 64,
            seed: 0,
        }
    }
}

/// Endpoints `(start, end)` of the open trail formed by the assigned arcs of `h`, `None`
/// if every vertex is balanced.
pub fn eulerian_endpoints(h: &Orientation) -> Result<Option<(VertexId, VertexId)>> {
    let mut bal: BTreeMap<VertexId, i64> = BTreeMap::new();
    for (_, a) in h.arcs() {
        *bal.entry(a.tail).or_default() += 1;
        *bal.entry(a.head).or_default() -= 1;
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (&v, &b) in &bal {
        match b {
            0 => {}
            1 => plus.push(v),
            -1 => minus.push(v),
            _ => {
                return Err(Error::NotConsistent(format!(
                    "vertex {v} has out-degree minus in-degree {b}"
                )))
            }
        }
    }
    match (plus.as_slice(), minus.as_slice()) {
        ([], []) => Ok(None),
        ([a], [b]) => Ok(Some((*a, *b))),
        _ => Err(Error::NotConsistent(format!(
            "{} vertices with surplus, {} with deficit",
            plus.len(),
            minus.len()
        ))),
    }
}

/// Extends `h` along `pairing`: adds the pairing as edges, orients every component of the
/// unoriented remainder by an Euler trail (the one meeting the ends of an open `h` runs
/// from its end back to its start), and restricts to `g`.
pub fn extend_with_pairing(
    g: &Multigraph,
    h: &Orientation,
    pairing: &OddVertexPairing,
) -> Result<Orientation> {
    let ends = eulerian_endpoints(h)?;
    let mut out = Orientation::new(g.clone());
    for (e, a) in h.arcs() {
        out.assign(e, a.tail, a.head)?;
    }
    let mut gp = g.clone();
    for &(a, b) in &pairing.pairs {
        gp.add_edge(a, b)?;
    }
    let rest: EdgeSet = gp.edge_ids().filter(|e| h.arc(*e).is_none()).collect();
    let r = gp.edge_subgraph(&rest);
    for comp in r.components() {
        let edges: EdgeSet = r.induced(&comp).edge_ids().collect();
        if edges.is_empty() {
            continue;
        }
        let odd: Vec<VertexId> = comp.iter().copied().filter(|&v| r.degree(v) % 2 == 1).collect();
        let start = match (odd.as_slice(), ends) {
            ([], _) => None,
            ([x, y], Some((a, b))) if [*x, *y].contains(&a) && [*x, *y].contains(&b) => Some(b),
            _ => {
                return Err(Error::NotEulerian(format!(
                    "remainder component has odd vertices {odd:?}"
                )))
            }
        };
        let trail = euler_trail_from(&r, &edges, start)?;
        for (i, &e) in trail.edges.iter().enumerate() {
            if g.has_edge(e) {
                out.assign(e, trail.vertices[i], trail.vertices[i + 1])?;
            }
        }
    }
    Ok(out)
}

/// Total orientation of `g` extending `h` with α(x, y) ≥ λ*(x, y)/2 for every pair.
///
/// Up to the pairing bound the pairing is found by exhaustive (★) search and the result is
/// well-balanced by construction. Beyond it, greedy and then seeded random pairings are
/// tried and each candidate is verified by flows.
pub fn extend_to_well_balanced(g: &Multigraph, h: &Orientation) -> Result<Orientation> {
    extend_to_well_balanced_with(g, h, ExtensionOptions::default())
}

pub fn extend_to_well_balanced_with(
    g: &Multigraph,
    h: &Orientation,
    opts: ExtensionOptions,
) -> Result<Orientation> {
    extend_searching(g, h, opts, |d| verify_well_balanced(d).holds)
}

/// Extension of `h` in which every pair of `terminals` has k arc-disjoint paths both ways.
/// Requires λ ≥ 2k between terminals in `g`.
pub fn extend_for_terminals(
    g: &Multigraph,
    h: &Orientation,
    terminals: &[VertexId],
    k: u32,
    opts: ExtensionOptions,
) -> Result<Orientation> {
    let d = extend_searching(g, h, opts, |d| {
        arc_connectivity_violation(d, terminals, k).is_none()
    })?;
    match arc_connectivity_violation(&d, terminals, k) {
        None => Ok(d),
        Some((x, y, a)) => Err(Error::Certificate(format!(
            "extension has α({x}, {y}) = {a} < {k}"
        ))),
    }
}

pub(crate) fn extend_searching(
    g: &Multigraph,
    h: &Orientation,
    opts: ExtensionOptions,
    accept: impl Fn(&Orientation) -> bool,
) -> Result<Orientation> {
    if g.vertex_count() <= opts.pairing_bound {
        let p = find_odd_pairing_bounded(g, opts.pairing_bound)?;
        return extend_with_pairing(g, h, &p);
    }
    let mut candidates = vec![greedy_pairing(g)];
    candidates.extend((0..opts.attempts as u64).map(|i| random_pairing(g, opts.seed ^ i)));
    for p in candidates {
        let d = extend_with_pairing(g, h, &p)?;
        if accept(&d) {
            return Ok(d);
        }
    }
    Err(Error::PairingExhausted)
}

/// A k-arc-connected orientation of a 2k-edge-connected multigraph.
pub fn k_arc_orientation(g: &Multigraph, k: u32) -> Result<Orientation> {
    k_arc_orientation_with(g, k, ExtensionOptions::default())
}

pub fn k_arc_orientation_with(g: &Multigraph, k: u32, opts: ExtensionOptions) -> Result<Orientation> {
    if let Some(cut) = edge_connectivity_violation(g, 2 * k) {
        return Err(Error::NotEdgeConnected {
            required: 2 * k,
            found: cut.size() as u32,
            side: cut.side.into_iter().collect(),
        });
    }
    let all: Vec<VertexId> = g.vertices().collect();
    extend_for_terminals(g, &Orientation::new(g.clone()), &all, k, opts)
}

/// The ordered pair with the least margin α − λ*/2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstPair {
    pub x: VertexId,
    pub y: VertexId,
    pub alpha: u32,
    pub lambda_star: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellBalancedReport {
    pub holds: bool,
    pub pairs_checked: usize,
    pub worst: Option<WorstPair>,
}

/// All ordered pairs checked against α(x, y) ≥ λ*(x, y)/2; unassigned edges count as absent.
pub fn verify_well_balanced(d: &Orientation) -> WellBalancedReport {
    let g = d.base();
    let table = LambdaTable::compute(g);
    let mut worst: Option<(i64, WorstPair)> = None;
    let mut checked = 0;
    for (i, &x) in table.ids.iter().enumerate() {
        for (j, &y) in table.ids.iter().enumerate() {
            if i == j {
                continue;
            }
            checked += 1;
            let ls = even_floor(table.get(i, j));
            let a = alpha_capped(d, x, y, u32::MAX).expect("distinct vertices of the base");
            let margin = 2 * a as i64 - ls as i64;
            if worst.as_ref().is_none_or(|(m, _)| margin < *m) {
                worst = Some((
                    margin,
                    WorstPair {
                        x,
                        y,
                        alpha: a,
                        lambda_star: ls,
                    },
                ));
            }
        }
    }
    WellBalancedReport {
        holds: worst.as_ref().is_none_or(|(m, _)| *m >= 0),
        pairs_checked: checked,
        worst: worst.map(|(_, w)| w),
    }
}

/// Whether `d` agrees with every arc of `h`.
pub fn extends(d: &Orientation, h: &Orientation) -> bool {
    h.arcs().all(|(e, a)| d.arc(e) == Some(a))
}

/// Edges of `g` not yet oriented in `h`.
pub fn unoriented(g: &Multigraph, h: &Orientation) -> Vec<EdgeId> {
    g.edge_ids().filter(|e| h.arc(*e).is_none()).collect()
}
