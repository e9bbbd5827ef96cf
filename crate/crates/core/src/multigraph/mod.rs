//! Finite loopless multigraphs with stable edge identities, partial orientations, and cuts.
//!
//! Edge ids are never reused: deleting, lifting, or contracting leaves every surviving edge
//! with the id it was created with, so orientations and path systems recorded against one
//! snapshot of a graph stay meaningful on later snapshots.

mod dense;
mod dot;
mod json;

pub use dense::DenseGraph;
pub use dot::{to_dot, to_dot_oriented};
pub use json::{GraphDocument, VertexEntry};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

pub type VertexSet = BTreeSet<VertexId>;
pub type EdgeSet = BTreeSet<EdgeId>;

/// A finite multigraph: parallel edges allowed, loops rejected.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeMap<VertexId, Option<String>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    incidence: BTreeMap<VertexId, BTreeSet<EdgeId>>,
    next_vertex: u64,
    next_edge: u64,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with the given edges, ids assigned in order.
    pub fn from_edges(n: usize, edges: &[(u64, u64)]) -> Result<Self> {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    /// Fresh vertex and edge ids will be allocated at or above these floors.
    ///
    /// Truncations of lazily generated graphs use generator-derived ids; raising the floors
    /// keeps synthetic vertices (contractions) and edges (lifts) out of that id space.
    pub fn reserve_ids(&mut self, vertex_floor: u64, edge_floor: u64) {
        self.next_vertex = self.next_vertex.max(vertex_floor);
        self.next_edge = self.next_edge.max(edge_floor);
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(id, None);
        self.incidence.insert(id, BTreeSet::new());
        id
    }

    pub fn add_labeled_vertex(&mut self, label: impl Into<String>) -> VertexId {
        let id = self.add_vertex();
        self.vertices.insert(id, Some(label.into()));
        id
    }

    pub fn insert_vertex(&mut self, id: VertexId, label: Option<String>) -> Result<()> {
        if self.vertices.contains_key(&id) {
            return Err(Error::DuplicateVertex(id));
        }
        self.vertices.insert(id, label);
        self.incidence.insert(id, BTreeSet::new());
        self.next_vertex = self.next_vertex.max(id.0 + 1);
        Ok(())
    }

    /// Inserts the vertex unless it is already present.
    pub fn ensure_vertex(&mut self, id: VertexId) {
        if !self.vertices.contains_key(&id) {
            self.insert_vertex(id, None).expect("checked absent");
        }
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) -> Result<()> {
        match self.vertices.get_mut(&v) {
            Some(slot) => {
                *slot = Some(label.into());
                Ok(())
            }
            None => Err(Error::UnknownVertex(v)),
        }
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.vertices.get(&v).and_then(|l| l.as_deref())
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = EdgeId(self.next_edge);
        self.insert_edge(id, u, v)?;
        Ok(id)
    }

    pub fn insert_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::Loop(u));
        }
        for w in [u, v] {
            if !self.vertices.contains_key(&w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, (u, v));
        self.incidence.get_mut(&u).unwrap().insert(id);
        self.incidence.get_mut(&v).unwrap().insert(id);
        self.next_edge = self.next_edge.max(id.0 + 1);
        Ok(())
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let (u, v) = self.edges.remove(&e).ok_or(Error::UnknownEdge(e))?;
        self.incidence.get_mut(&u).unwrap().remove(&e);
        self.incidence.get_mut(&v).unwrap().remove(&e);
        Ok((u, v))
    }

    /// Removes `v` and every edge at it.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let inc = self.incidence.remove(&v).ok_or(Error::UnknownVertex(v))?;
        for e in inc {
            let (a, b) = self.edges.remove(&e).unwrap();
            let other = if a == v { b } else { a };
            self.incidence.get_mut(&other).unwrap().remove(&e);
        }
        self.vertices.remove(&v);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.keys().copied().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Result<VertexId> {
        let (a, b) = self.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        if a == v {
            Ok(b)
        } else if b == v {
            Ok(a)
        } else {
            Err(Error::NotIncident { edge: e, vertex: v })
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn incident(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.incidence.get(&v).into_iter().flatten().copied()
    }

    /// `(edge, neighbour)` pairs at `v`, one per incident edge.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (EdgeId, VertexId)> + '_ {
        self.incident(v).map(move |e| {
            let (a, b) = self.edges[&e];
            (e, if a == v { b } else { a })
        })
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.neighbors(u).filter(|&(_, w)| w == v).count()
    }

    pub fn odd_vertices(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.degree(v) % 2 == 1).collect()
    }

    /// Edge boundary δ(X). Vertices of `side` not in the graph are ignored.
    pub fn boundary(&self, side: &VertexSet) -> EdgeSet {
        let mut out = EdgeSet::new();
        for &v in side {
            for (e, w) in self.neighbors(v) {
                if !side.contains(&w) {
                    out.insert(e);
                }
            }
        }
        out
    }

    /// E(X, Y): edges with one endpoint in each set.
    pub fn crossing(&self, x: &VertexSet, y: &VertexSet) -> EdgeSet {
        let mut out = EdgeSet::new();
        for &v in x {
            for (e, w) in self.neighbors(v) {
                if y.contains(&w) && !x.contains(&w) {
                    out.insert(e);
                }
            }
        }
        out
    }

    pub fn complement(&self, side: &VertexSet) -> VertexSet {
        self.vertices().filter(|v| !side.contains(v)).collect()
    }

    pub fn cut(&self, side: VertexSet) -> Cut {
        let boundary = self.boundary(&side);
        Cut { side, boundary }
    }

    /// Lifts `e1 = s x` and `e2 = s y`: both are deleted and a new edge `x y` is added.
    ///
    /// Returns the id of the new edge. Rejects `x == y`, which would create a loop.
    pub fn lift(&mut self, s: VertexId, e1: EdgeId, e2: EdgeId) -> Result<EdgeId> {
        let (x, y) = self.lift_ends(s, e1, e2)?;
        if x == y {
            return Err(Error::CoincidentEnds {
                e1,
                e2,
                vertex: x,
            });
        }
        self.remove_edge(e1)?;
        self.remove_edge(e2)?;
        self.add_edge(x, y)
    }

    /// Copy-on-write form of [`Multigraph::lift`].
    pub fn lifted(&self, s: VertexId, e1: EdgeId, e2: EdgeId) -> Result<(Multigraph, EdgeId)> {
        let mut g = self.clone();
        let e = g.lift(s, e1, e2)?;
        Ok((g, e))
    }

    /// Far endpoints of two distinct edges at `s`.
    pub fn lift_ends(&self, s: VertexId, e1: EdgeId, e2: EdgeId) -> Result<(VertexId, VertexId)> {
        if e1 == e2 {
            return Err(Error::SameEdge(e1, e2));
        }
        Ok((self.other_end(e1, s)?, self.other_end(e2, s)?))
    }

    /// Replaces `block` by one fresh vertex; edges leaving the block keep their ids,
    /// edges inside it disappear, parallels are kept.
    pub fn contract(&mut self, block: &VertexSet) -> Result<VertexId> {
        if block.is_empty() {
            return Err(Error::EmptyBlock);
        }
        for &v in block {
            if !self.has_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        let boundary: Vec<(EdgeId, VertexId)> = self
            .boundary(block)
            .into_iter()
            .map(|e| {
                let (a, b) = self.edges[&e];
                (e, if block.contains(&a) { b } else { a })
            })
            .collect();
        for &v in block {
            self.remove_vertex(v)?;
        }
        let c = self.add_vertex();
        for (e, outside) in boundary {
            self.insert_edge(e, c, outside)?;
        }
        Ok(c)
    }

    pub fn contracted(&self, block: &VertexSet) -> Result<(Multigraph, VertexId)> {
        let mut g = self.clone();
        let c = g.contract(block)?;
        Ok((g, c))
    }

    /// Induced subgraph on `side`, ids preserved.
    pub fn induced(&self, side: &VertexSet) -> Multigraph {
        let mut g = Multigraph {
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
            ..Default::default()
        };
        for &v in side {
            if let Some(label) = self.vertices.get(&v) {
                g.vertices.insert(v, label.clone());
                g.incidence.insert(v, BTreeSet::new());
            }
        }
        for (&e, &(u, v)) in &self.edges {
            if side.contains(&u) && side.contains(&v) {
                g.insert_edge(e, u, v).expect("endpoints present");
            }
        }
        g
    }

    /// Subgraph formed by the given edges and their endpoints, ids preserved.
    pub fn edge_subgraph(&self, edges: &EdgeSet) -> Multigraph {
        let mut g = Multigraph {
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
            ..Default::default()
        };
        for &e in edges {
            if let Some(&(u, v)) = self.edges.get(&e) {
                for w in [u, v] {
                    if !g.has_vertex(w) {
                        g.vertices.insert(w, self.vertices[&w].clone());
                        g.incidence.insert(w, BTreeSet::new());
                    }
                }
                g.insert_edge(e, u, v).expect("endpoints present");
            }
        }
        g
    }

    /// Connected components, each as a vertex set, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = VertexSet::new();
            let mut stack = vec![v];
            seen.insert(v);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for (_, w) in self.neighbors(u) {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() <= 1 || self.components().len() == 1
    }

    pub fn dense(&self) -> DenseGraph {
        DenseGraph::from_multigraph(self)
    }
}

/// A vertex side together with its edge boundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub side: VertexSet,
    pub boundary: EdgeSet,
}

impl Cut {
    pub fn size(&self) -> usize {
        self.boundary.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

/// A partial orientation of a multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    base: Multigraph,
    arcs: BTreeMap<EdgeId, Arc>,
}

impl Orientation {
    pub fn new(base: Multigraph) -> Self {
        Self {
            base,
            arcs: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> &Multigraph {
        &self.base
    }

    pub fn into_base(self) -> Multigraph {
        self.base
    }

    /// Directs `e` from `tail` to `head`. Re-assigning the same direction is a no-op.
    pub fn assign(&mut self, e: EdgeId, tail: VertexId, head: VertexId) -> Result<()> {
        let (u, v) = self.base.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        if !((u == tail && v == head) || (u == head && v == tail)) {
            return Err(Error::BadArc {
                edge: e,
                tail,
                head,
            });
        }
        match self.arcs.get(&e) {
            Some(a) if a.tail != tail => Err(Error::Reoriented(e)),
            _ => {
                self.arcs.insert(e, Arc { tail, head });
                Ok(())
            }
        }
    }

    pub fn arc(&self, e: EdgeId) -> Option<Arc> {
        self.arcs.get(&e).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (EdgeId, Arc)> + '_ {
        self.arcs.iter().map(|(&e, &a)| (e, a))
    }

    pub fn assigned_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_total(&self) -> bool {
        self.arcs.len() == self.base.edge_count()
    }

    pub fn unassigned(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.base.edge_ids().filter(|e| !self.arcs.contains_key(e))
    }

    pub fn require_total(&self) -> Result<()> {
        match self.unassigned().next() {
            Some(e) => Err(Error::PartialOrientation(e)),
            None => Ok(()),
        }
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.base
            .incident(v)
            .filter(|e| self.arcs.get(e).is_some_and(|a| a.tail == v))
            .count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.base
            .incident(v)
            .filter(|e| self.arcs.get(e).is_some_and(|a| a.head == v))
            .count()
    }

    /// Out-degree minus in-degree over assigned edges.
    pub fn imbalance(&self, v: VertexId) -> i64 {
        self.out_degree(v) as i64 - self.in_degree(v) as i64
    }

    /// Number of assigned edges directed from `x` into `y`.
    pub fn directed_crossing(&self, x: &VertexSet, y: &VertexSet) -> usize {
        self.arcs
            .values()
            .filter(|a| x.contains(&a.tail) && y.contains(&a.head))
            .count()
    }

    /// Orientation of the same edges on a different (super)graph; edges absent there are dropped.
    pub fn transplant(&self, base: Multigraph) -> Orientation {
        let arcs = self
            .arcs
            .iter()
            .filter(|(e, _)| base.has_edge(**e))
            .map(|(&e, &a)| (e, a))
            .collect();
        Orientation { base, arcs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u64) -> VertexId {
        VertexId(i)
    }

    fn set(ids: &[u64]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    fn cycle(n: u64) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    #[test]
    fn parallel_edges_get_distinct_ids() {
        let mut g = Multigraph::from_edges(2, &[]).unwrap();
        let e1 = g.add_edge(v(0), v(1)).unwrap();
        let e2 = g.add_edge(v(0), v(1)).unwrap();
        assert_ne!(e1, e2);
        assert_eq!(g.degree(v(0)), 2);
        assert_eq!(g.multiplicity(v(0), v(1)), 2);
    }

    #[test]
    fn loops_and_unknown_vertices_are_rejected() {
        let mut g = Multigraph::from_edges(2, &[]).unwrap();
        assert_eq!(g.add_edge(v(0), v(0)), Err(Error::Loop(v(0))));
        assert_eq!(g.add_edge(v(0), v(7)), Err(Error::UnknownVertex(v(7))));
    }

    #[test]
    fn triangle_plus_parallel_edge() {
        let mut g = cycle(3);
        g.add_edge(v(0), v(1)).unwrap();
        assert_eq!(g.degree(v(0)), 3);
    }

    #[test]
    fn lift_path_through_s() {
        // x - s - y
        let mut g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let new = g.lift(v(1), EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(v(1)), 0);
        let (a, b) = g.endpoints(new).unwrap();
        assert_eq!(set(&[a.0, b.0]), set(&[0, 2]));
    }

    #[test]
    fn lift_at_star_center() {
        let mut g = Multigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let e = g.lift(v(0), EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(g.degree(v(0)), 2);
        assert_eq!(g.degree(v(1)), 1);
        assert_eq!(g.degree(v(2)), 1);
        assert_eq!(g.endpoints(e), Some((v(1), v(2))));
    }

    #[test]
    fn lift_rejects_coincident_ends_and_foreign_edges() {
        let mut g = Multigraph::from_edges(3, &[(0, 1), (0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            g.lift(v(0), EdgeId(0), EdgeId(1)),
            Err(Error::CoincidentEnds { .. })
        ));
        assert!(matches!(
            g.lift(v(0), EdgeId(0), EdgeId(2)),
            Err(Error::NotIncident { .. })
        ));
        assert!(matches!(
            g.lift(v(0), EdgeId(0), EdgeId(0)),
            Err(Error::SameEdge(..))
        ));
    }

    #[test]
    fn contract_triangle_pair_keeps_parallels() {
        let g = cycle(3);
        let (h, c) = g.contracted(&set(&[0, 1])).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.multiplicity(c, v(2)), 2);
        // surviving edges keep ids: 1-2 and 2-0 were e1, e2
        assert!(h.has_edge(EdgeId(1)) && h.has_edge(EdgeId(2)));
        assert!(!h.has_edge(EdgeId(0)));
    }

    #[test]
    fn contract_everything() {
        let g = cycle(4);
        let (h, _) = g.contracted(&g.vertex_set()).unwrap();
        assert_eq!(h.vertex_count(), 1);
        assert_eq!(h.edge_count(), 0);
        assert_eq!(g.contracted(&VertexSet::new()), Err(Error::EmptyBlock));
    }

    #[test]
    fn contract_grid_middle_row() {
        // 3x3 grid, vertex r*3+c
        let mut edges = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let i = r * 3 + c;
                if c < 2 {
                    edges.push((i, i + 1));
                }
                if r < 2 {
                    edges.push((i, i + 3));
                }
            }
        }
        let g = Multigraph::from_edges(9, &edges).unwrap();
        let row = set(&[3, 4, 5]);
        let inside = g.induced(&row).edge_count();
        let (h, c) = g.contracted(&row).unwrap();
        assert_eq!(inside, 2);
        assert_eq!(h.edge_count(), 12 - 2);
        assert_eq!(h.degree(c), 6);
        assert_eq!(h.degree(v(0)), 2);
    }

    #[test]
    fn boundary_of_cycle_vertex() {
        let g = cycle(4);
        assert_eq!(g.boundary(&set(&[0])).len(), 2);
        assert!(g.boundary(&VertexSet::new()).is_empty());
        assert!(g.boundary(&g.vertex_set()).is_empty());
    }

    #[test]
    fn orientation_rejects_wrong_endpoints_and_flips() {
        let mut d = Orientation::new(cycle(3));
        d.assign(EdgeId(0), v(0), v(1)).unwrap();
        d.assign(EdgeId(0), v(0), v(1)).unwrap();
        assert_eq!(d.assign(EdgeId(0), v(1), v(0)), Err(Error::Reoriented(EdgeId(0))));
        assert!(matches!(
            d.assign(EdgeId(1), v(0), v(2)),
            Err(Error::BadArc { .. })
        ));
        assert!(!d.is_total());
        assert_eq!(d.imbalance(v(0)), 1);
    }
}
