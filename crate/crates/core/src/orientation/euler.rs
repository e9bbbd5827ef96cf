use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, Multigraph, Orientation, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrailKind {
    Open,
    Closed,
}

/// A trail given by its edges in traversal order and the visited vertices
/// (`vertices.len() == edges.len() + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerTrail {
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<VertexId>,
    pub kind: TrailKind,
}

impl EulerTrail {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.vertices[0], *self.vertices.last().expect("nonempty"))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that consecutive edges join consecutive vertices and no edge repeats.
    pub fn is_valid_in(&self, g: &Multigraph) -> bool {
        if self.vertices.len() != self.edges.len() + 1 {
            return false;
        }
        let distinct: EdgeSet = self.edges.iter().copied().collect();
        if distinct.len() != self.edges.len() {
            return false;
        }
        let closed = self.vertices[0] == *self.vertices.last().unwrap();
        if closed != (self.kind == TrailKind::Closed) {
            return false;
        }
        self.edges.iter().enumerate().all(|(i, &e)| {
            matches!(g.endpoints(e), Some((u, v))
                if (u, v) == (self.vertices[i], self.vertices[i + 1])
                || (v, u) == (self.vertices[i], self.vertices[i + 1]))
        })
    }
}

/// Euler trail of the subgraph formed by `sub`, starting at an odd vertex if there is one.
pub fn euler_trail(g: &Multigraph, sub: &EdgeSet) -> Result<EulerTrail> {
    euler_trail_from(g, sub, None)
}

/// Euler trail of `sub` starting at `start` (must be odd when `sub` has odd vertices).
pub fn euler_trail_from(
    g: &Multigraph,
    sub: &EdgeSet,
    start: Option<VertexId>,
) -> Result<EulerTrail> {
    if sub.is_empty() {
        return Err(Error::NotEulerian("empty edge set".into()));
    }
    let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> = BTreeMap::new();
    for &e in sub {
        let (u, v) = g.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        adj.entry(u).or_default().push((e, v));
        adj.entry(v).or_default().push((e, u));
    }
    let odd: Vec<VertexId> = adj
        .iter()
        .filter(|(_, l)| l.len() % 2 == 1)
        .map(|(&v, _)| v)
        .collect();
    if odd.len() > 2 {
        return Err(Error::NotEulerian(format!(
            "{} odd-degree vertices",
            odd.len()
        )));
    }
    let start = match start {
        Some(s) if !adj.contains_key(&s) => {
            return Err(Error::NotEulerian(format!("start {s} is not on the subgraph")))
        }
        Some(s) if !odd.is_empty() && !odd.contains(&s) => {
            return Err(Error::NotEulerian(format!("start {s} has even degree")))
        }
        Some(s) => s,
        None => odd.first().copied().unwrap_or(*adj.keys().next().unwrap()),
    };

    // Hierholzer with an explicit stack of (vertex, edge used to reach it)
    let mut used: EdgeSet = EdgeSet::new();
    let mut next: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut stack: Vec<(VertexId, Option<EdgeId>)> = vec![(start, None)];
    let mut out_v = Vec::new();
    let mut out_e = Vec::new();
    while let Some(&(v, via)) = stack.last() {
        let list = &adj[&v];
        let i = next.entry(v).or_insert(0);
        while *i < list.len() && used.contains(&list[*i].0) {
            *i += 1;
        }
        if *i < list.len() {
            let (e, w) = list[*i];
            used.insert(e);
            stack.push((w, Some(e)));
        } else {
            stack.pop();
            out_v.push(v);
            if let Some(e) = via {
                out_e.push(e);
            }
        }
    }
    if out_e.len() != sub.len() {
        return Err(Error::NotEulerian("edge set is disconnected".into()));
    }
    out_v.reverse();
    out_e.reverse();
    let kind = if out_v[0] == *out_v.last().unwrap() {
        TrailKind::Closed
    } else {
        TrailKind::Open
    };
    Ok(EulerTrail {
        edges: out_e,
        vertices: out_v,
        kind,
    })
}

/// Orients every trail edge in traversal direction; other edges of `g` stay unassigned.
pub fn orient_consistently(g: &Multigraph, trail: &EulerTrail) -> Result<Orientation> {
    let mut d = Orientation::new(g.clone());
    orient_along(&mut d, trail)?;
    Ok(d)
}

pub(crate) fn orient_along(d: &mut Orientation, trail: &EulerTrail) -> Result<()> {
    for (i, &e) in trail.edges.iter().enumerate() {
        d.assign(e, trail.vertices[i], trail.vertices[i + 1])?;
    }
    Ok(())
}
