use super::TargetFunction;
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};
use serde::{Deserialize, Serialize};

pub const DEFAULT_DANGEROUS_BOUND: usize = 22;

/// A vertex set avoiding `s` that separates the terminals and has |δ(D)| ≤ level + 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DangerousSet {
    pub set: VertexSet,
    pub boundary_size: usize,
}

/// Dangerous sets as bitmasks over `order` (the vertices other than `s`).
pub(crate) struct DangerousCensus {
    pub order: Vec<VertexId>,
    pub sets: Vec<(u64, usize)>,
}

impl DangerousCensus {
    pub fn to_set(&self, mask: u64) -> VertexSet {
        self.order
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Bitmask of the positions in `order` hit by the far ends of `edges` at `s`.
    pub fn ends_mask(&self, g: &Multigraph, s: VertexId, edges: &[EdgeId]) -> Result<u64> {
        let mut mask = 0u64;
        for &e in edges {
            let w = g.other_end(e, s)?;
            let i = self.order.iter().position(|&v| v == w).expect("w ≠ s");
            mask |= 1 << i;
        }
        Ok(mask)
    }
}

/// Gray-code walk over all subsets of `V − s` with an incrementally maintained boundary.
pub(crate) fn census(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
    bound: usize,
) -> Result<DangerousCensus> {
    if !g.has_vertex(s) {
        return Err(Error::UnknownVertex(s));
    }
    if g.vertex_count() > bound {
        return Err(Error::BoundExceeded {
            what: "vertex count",
            found: g.vertex_count(),
            bound,
        });
    }
    let order: Vec<VertexId> = g.vertices().filter(|&v| v != s).collect();
    let m = order.len();
    let index = |v: VertexId| order.iter().position(|&w| w == v);
    // neighbour lists with multiplicity, `None` standing for s
    let nbrs: Vec<Vec<Option<usize>>> = order
        .iter()
        .map(|&v| g.neighbors(v).map(|(_, w)| index(w)).collect())
        .collect();
    let is_terminal: Vec<bool> = order.iter().map(|v| tau.terminals().contains(v)).collect();
    let total_terminals = is_terminal.iter().filter(|&&t| t).count();
    let limit = tau.level() as usize + 1;

    let mut inside = vec![false; m];
    let mut into_d = vec![0usize; m];
    let mut boundary = 0usize;
    let mut terminals_in = 0usize;
    let mut mask = 0u64;
    let mut sets = Vec::new();
    for step in 1u64..(1u64 << m) {
        let i = step.trailing_zeros() as usize;
        let deg = nbrs[i].len();
        if inside[i] {
            boundary = boundary + 2 * into_d[i] - deg;
            inside[i] = false;
            for w in nbrs[i].iter().flatten() {
                into_d[*w] -= 1;
            }
            if is_terminal[i] {
                terminals_in -= 1;
            }
        } else {
            boundary = boundary + deg - 2 * into_d[i];
            inside[i] = true;
            for w in nbrs[i].iter().flatten() {
                into_d[*w] += 1;
            }
            if is_terminal[i] {
                terminals_in += 1;
            }
        }
        mask ^= 1 << i;
        if terminals_in > 0 && terminals_in < total_terminals && boundary <= limit {
            sets.push((mask, boundary));
        }
    }
    sets.sort_unstable();
    Ok(DangerousCensus { order, sets })
}

pub fn enumerate_dangerous_sets(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
) -> Result<Vec<DangerousSet>> {
    enumerate_dangerous_sets_bounded(g, tau, s, DEFAULT_DANGEROUS_BOUND)
}

pub fn enumerate_dangerous_sets_bounded(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
    bound: usize,
) -> Result<Vec<DangerousSet>> {
    let c = census(g, tau, s, bound)?;
    Ok(c.sets
        .iter()
        .map(|&(mask, boundary_size)| DangerousSet {
            set: c.to_set(mask),
            boundary_size,
        })
        .collect())
}

/// A dangerous set containing the far ends of all `edges` at `s`, if one exists.
pub fn covering_dangerous_set(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
    edges: &[EdgeId],
) -> Result<Option<DangerousSet>> {
    let c = census(g, tau, s, DEFAULT_DANGEROUS_BOUND)?;
    let want = c.ends_mask(g, s, edges)?;
    Ok(c
        .sets
        .iter()
        .find(|&&(mask, _)| mask & want == want)
        .map(|&(mask, boundary_size)| DangerousSet {
            set: c.to_set(mask),
            boundary_size,
        }))
}
