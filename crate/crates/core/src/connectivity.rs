//! Local edge-connectivity λ, its even floor λ*, directed connectivity α, bridges, and
//! minimum separating cuts, all by unit-capacity max-flow.
//!
//! Every minimum cut reported here takes as its side the set of vertices reachable from the
//! source in the final residual network, i.e. the inclusion-minimal source side.

use crate::error::{Error, Result};
use crate::flow::{decompose_paths, FlowNetwork, INF};
use crate::multigraph::{Cut, DenseGraph, EdgeId, Multigraph, Orientation, VertexId, VertexSet};
use serde::{Deserialize, Serialize};

/// A maximum packing of edge-disjoint paths with a matching minimum cut.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    pub value: u32,
    pub paths: Vec<Vec<EdgeId>>,
    pub min_cut: Cut,
}

struct UndirectedFlow {
    net: FlowNetwork,
    /// forward arc index per dense edge position
    arcs: Vec<usize>,
}

fn undirected_network(dg: &DenseGraph, extra_nodes: usize) -> UndirectedFlow {
    let mut net = FlowNetwork::new(dg.n() + extra_nodes);
    let arcs = dg
        .edges
        .iter()
        .map(|&(_, u, v)| net.add_arc(u, v, 1, 1))
        .collect();
    UndirectedFlow { net, arcs }
}

impl UndirectedFlow {
    /// Net unit flow on each edge as directed arcs `(edge position, from, to)`.
    fn flow_arcs(&self, dg: &DenseGraph) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (pos, &(_, u, v)) in dg.edges.iter().enumerate() {
            match 1 - self.net.residual(self.arcs[pos]) {
                1 => out.push((pos, u, v)),
                -1 => out.push((pos, v, u)),
                _ => {}
            }
        }
        out
    }
}

fn require_pair(g: &Multigraph, x: VertexId, y: VertexId) -> Result<()> {
    if x == y {
        return Err(Error::SamePair(x));
    }
    for v in [x, y] {
        if !g.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    Ok(())
}

fn side_from_reach(dg: &DenseGraph, reach: &[bool]) -> VertexSet {
    (0..dg.n()).filter(|&i| reach[i]).map(|i| dg.ids[i]).collect()
}

/// λ(x, y) with a path packing and a minimum cut having `x` on its side.
pub fn lambda(g: &Multigraph, x: VertexId, y: VertexId) -> Result<FlowCertificate> {
    require_pair(g, x, y)?;
    let dg = g.dense();
    let (ix, iy) = (dg.index[&x], dg.index[&y]);
    let mut uf = undirected_network(&dg, 0);
    let value = uf.net.max_flow(ix, iy, u32::MAX);
    let arcs = uf.flow_arcs(&dg);
    let paths = decompose_paths(dg.n(), &arcs, ix, iy, value as usize)
        .into_iter()
        .map(|p| p.into_iter().map(|pos| dg.edges[pos].0).collect())
        .collect();
    let side = side_from_reach(&dg, &uf.net.residual_reachable(ix));
    Ok(FlowCertificate {
        value,
        paths,
        min_cut: g.cut(side),
    })
}

/// λ(x, y) without certificate.
pub fn lambda_value(g: &Multigraph, x: VertexId, y: VertexId) -> Result<u32> {
    lambda_capped(g, x, y, u32::MAX)
}

/// min(λ(x, y), cap); stops augmenting once `cap` is reached.
pub fn lambda_capped(g: &Multigraph, x: VertexId, y: VertexId, cap: u32) -> Result<u32> {
    require_pair(g, x, y)?;
    let dg = g.dense();
    Ok(lambda_capped_dense(&dg, dg.index[&x], dg.index[&y], cap))
}

pub(crate) fn lambda_capped_dense(dg: &DenseGraph, ix: usize, iy: usize, cap: u32) -> u32 {
    let mut uf = undirected_network(dg, 0);
    uf.net.max_flow(ix, iy, cap)
}

/// Greatest even number not exceeding `value`.
pub fn even_floor(value: u32) -> u32 {
    value & !1
}

/// λ*(x, y) = 2⌊λ(x, y)/2⌋.
pub fn lambda_star(g: &Multigraph, x: VertexId, y: VertexId) -> Result<u32> {
    Ok(even_floor(lambda_value(g, x, y)?))
}

/// All-pairs λ over the vertices of a graph.
#[derive(Clone, Debug)]
pub struct LambdaTable {
    pub ids: Vec<VertexId>,
    values: Vec<Vec<u32>>,
}

impl LambdaTable {
    pub fn compute(g: &Multigraph) -> Self {
        let dg = g.dense();
        let n = dg.n();
        let mut values = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let l = lambda_capped_dense(&dg, i, j, u32::MAX);
                values[i][j] = l;
                values[j][i] = l;
            }
        }
        Self {
            ids: dg.ids,
            values,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.values[i][j]
    }

    pub fn by_id(&self, x: VertexId, y: VertexId) -> Option<u32> {
        let i = self.ids.iter().position(|&v| v == x)?;
        let j = self.ids.iter().position(|&v| v == y)?;
        Some(self.values[i][j])
    }
}

fn directed_network(d: &Orientation, dg: &DenseGraph) -> FlowNetwork {
    let mut net = FlowNetwork::new(dg.n());
    for (e, a) in d.arcs() {
        let _ = e;
        net.add_arc(dg.index[&a.tail], dg.index[&a.head], 1, 0);
    }
    net
}

/// α(x, y): maximum number of arc-disjoint directed x→y paths in a total orientation.
pub fn alpha(d: &Orientation, x: VertexId, y: VertexId) -> Result<u32> {
    d.require_total()?;
    alpha_capped(d, x, y, u32::MAX)
}

/// min(α(x, y), cap), counting only the assigned arcs of `d`.
pub fn alpha_capped(d: &Orientation, x: VertexId, y: VertexId, cap: u32) -> Result<u32> {
    require_pair(d.base(), x, y)?;
    let dg = d.base().dense();
    let mut net = directed_network(d, &dg);
    Ok(net.max_flow(dg.index[&x], dg.index[&y], cap))
}

/// Whether every pair of distinct vertices has λ ≥ k. Graphs with fewer than two
/// vertices are vacuously k-edge-connected.
pub fn is_k_edge_connected(g: &Multigraph, k: u32) -> bool {
    edge_connectivity_violation(g, k).is_none()
}

/// A cut of size < k separating two vertices, if any.
///
/// Checking λ(r, v) ≥ k for one fixed root r suffices: any cut separating x from y
/// also separates r from one of them.
pub fn edge_connectivity_violation(g: &Multigraph, k: u32) -> Option<Cut> {
    let dg = g.dense();
    if dg.n() < 2 || k == 0 {
        return None;
    }
    for j in 1..dg.n() {
        let mut uf = undirected_network(&dg, 0);
        if uf.net.max_flow(0, j, k) < k {
            let side = side_from_reach(&dg, &uf.net.residual_reachable(0));
            return Some(g.cut(side));
        }
    }
    None
}

/// Whether the assigned arcs give k arc-disjoint paths between every ordered pair.
pub fn is_k_arc_connected(d: &Orientation, k: u32) -> bool {
    let all: Vec<VertexId> = d.base().vertices().collect();
    arc_connectivity_violation(d, &all, k).is_none()
}

/// An ordered terminal pair `(x, y, α(x, y))` with α < k, if any. Uses the same root
/// reduction as [`edge_connectivity_violation`] on the terminal set.
pub fn arc_connectivity_violation(
    d: &Orientation,
    terminals: &[VertexId],
    k: u32,
) -> Option<(VertexId, VertexId, u32)> {
    if terminals.len() < 2 || k == 0 {
        return None;
    }
    let dg = d.base().dense();
    let root = terminals[0];
    let ir = dg.index[&root];
    for &t in &terminals[1..] {
        let it = dg.index[&t];
        for (a, b, ia, ib) in [(root, t, ir, it), (t, root, it, ir)] {
            let mut net = directed_network(d, &dg);
            let f = net.max_flow(ia, ib, k);
            if f < k {
                return Some((a, b, f));
            }
        }
    }
    None
}

/// Bridges of a multigraph; an edge with a parallel twin is never a bridge.
pub fn bridges(g: &Multigraph) -> std::collections::BTreeSet<EdgeId> {
    let dg = g.dense();
    let n = dg.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut out = std::collections::BTreeSet::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // frame: (vertex, edge position used to enter, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(&mut (u, via, ref mut next)) = stack.last_mut() {
            if let Some(&(pos, w)) = dg.adj[u].get(*next) {
                *next += 1;
                if pos == via {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, pos, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        out.insert(dg.edges[via].0);
                    }
                }
            }
        }
    }
    out
}

/// Minimum edge cut with `sources` on its side and `sinks` off it, plus its size.
pub fn min_cut_separating(
    g: &Multigraph,
    sources: &VertexSet,
    sinks: &VertexSet,
) -> Result<(Cut, u32)> {
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::EmptyTerminals);
    }
    if let Some(&v) = sources.intersection(sinks).next() {
        return Err(Error::OverlappingTerminals(v));
    }
    let dg = g.dense();
    let mut uf = undirected_network(&dg, 2);
    let (src, snk) = (dg.n(), dg.n() + 1);
    for v in sources {
        let i = dg.idx(*v).ok_or(Error::UnknownVertex(*v))?;
        uf.net.add_arc(src, i, INF, 0);
    }
    for v in sinks {
        let i = dg.idx(*v).ok_or(Error::UnknownVertex(*v))?;
        uf.net.add_arc(i, snk, INF, 0);
    }
    let value = uf.net.max_flow(src, snk, u32::MAX);
    let reach = uf.net.residual_reachable(src);
    let side = side_from_reach(&dg, &reach);
    Ok((g.cut(side), value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::Arc;
    use std::collections::BTreeSet;

    fn v(i: u64) -> VertexId {
        VertexId(i)
    }

    fn cycle(n: u64) -> Multigraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    fn doubled_cycle(n: u64) -> Multigraph {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    fn complete(n: u64) -> Multigraph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Multigraph::from_edges(n as usize, &edges).unwrap()
    }

    fn directed_cycle(n: u64) -> Orientation {
        let mut d = Orientation::new(cycle(n));
        for i in 0..n {
            d.assign(EdgeId(i), v(i), v((i + 1) % n)).unwrap();
        }
        d
    }

    /// Independent oracle: minimum boundary over all vertex subsets separating x from y.
    fn brute_lambda(g: &Multigraph, x: VertexId, y: VertexId) -> usize {
        let dg = g.dense();
        let (ix, iy) = (dg.index[&x], dg.index[&y]);
        let mut best = usize::MAX;
        for mask in 0u64..(1 << dg.n()) {
            if (mask >> ix) & 1 == 1 && (mask >> iy) & 1 == 0 {
                best = best.min(dg.boundary_size_mask(mask));
            }
        }
        best
    }

    #[test]
    fn cycle_and_complete_graph_values() {
        assert_eq!(lambda_value(&cycle(4), v(0), v(1)).unwrap(), 2);
        assert_eq!(lambda_value(&complete(4), v(1), v(3)).unwrap(), 3);
        let dc = doubled_cycle(4);
        for (x, y) in [(0, 1), (0, 2), (1, 3)] {
            assert_eq!(lambda_value(&dc, v(x), v(y)).unwrap(), 4);
            assert_eq!(brute_lambda(&dc, v(x), v(y)), 4);
        }
    }

    #[test]
    fn certificate_is_consistent() {
        let g = complete(5);
        let cert = lambda(&g, v(0), v(3)).unwrap();
        assert_eq!(cert.value, 4);
        assert_eq!(cert.paths.len(), 4);
        assert_eq!(cert.min_cut.size(), 4);
        assert!(cert.min_cut.side.contains(&v(0)));
        assert!(!cert.min_cut.side.contains(&v(3)));
        let used: BTreeSet<EdgeId> = cert.paths.iter().flatten().copied().collect();
        assert_eq!(used.len(), cert.paths.iter().map(Vec::len).sum::<usize>());
        // minimal source side: only 0 itself
        assert_eq!(cert.min_cut.side, [v(0)].into_iter().collect());
    }

    #[test]
    fn lambda_star_floors_to_even() {
        assert_eq!(even_floor(5), 4);
        assert_eq!(even_floor(4), 4);
        assert_eq!(even_floor(1), 0);
        let p = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(lambda_star(&p, v(0), v(1)).unwrap(), 0);
        assert_eq!(lambda_value(&p, v(0), v(0)), Err(Error::SamePair(v(0))));
    }

    #[test]
    fn alpha_on_directed_cycles() {
        let d = directed_cycle(4);
        assert_eq!(alpha(&d, v(0), v(1)).unwrap(), 1);
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    let sum = alpha(&d, v(x), v(y)).unwrap() + alpha(&d, v(y), v(x)).unwrap();
                    assert_eq!(sum, 2);
                }
            }
        }
        assert!(is_k_arc_connected(&d, 1));
        assert!(!is_k_arc_connected(&d, 2));
    }

    #[test]
    fn alpha_on_opposite_doubled_cycle() {
        let g = doubled_cycle(4);
        let mut d = Orientation::new(g);
        for i in 0..4 {
            d.assign(EdgeId(i), v(i), v((i + 1) % 4)).unwrap();
            d.assign(EdgeId(4 + i), v((i + 1) % 4), v(i)).unwrap();
        }
        for i in 0..4 {
            let j = (i + 1) % 4;
            assert_eq!(alpha(&d, v(i), v(j)).unwrap(), 2);
            assert_eq!(alpha(&d, v(j), v(i)).unwrap(), 2);
        }
        assert!(is_k_arc_connected(&d, 2));
    }

    #[test]
    fn alpha_requires_total_orientation() {
        let d = Orientation::new(cycle(3));
        assert!(matches!(alpha(&d, v(0), v(1)), Err(Error::PartialOrientation(_))));
    }

    #[test]
    fn edge_connectivity_checks() {
        assert!(is_k_edge_connected(&cycle(4), 2));
        assert!(!is_k_edge_connected(&cycle(4), 3));
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let cut = edge_connectivity_violation(&p3, 1 + 1).unwrap();
        assert_eq!(cut.size(), 1);
    }

    #[test]
    fn doubled_cycle_has_two_arc_connected_orientation_by_enumeration() {
        let g = doubled_cycle(4);
        let edges: Vec<_> = g.edges().collect();
        let found = (0u32..(1 << edges.len())).any(|mask| {
            let mut d = Orientation::new(g.clone());
            for (i, &(e, a, b)) in edges.iter().enumerate() {
                let (t, h) = if (mask >> i) & 1 == 1 { (a, b) } else { (b, a) };
                d.assign(e, t, h).unwrap();
            }
            is_k_arc_connected(&d, 2)
        });
        assert!(found);
    }

    #[test]
    fn bridge_detection() {
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(bridges(&p3).len(), 2);
        assert!(bridges(&cycle(4)).is_empty());
        let twin = Multigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert!(bridges(&twin).is_empty());
        // two triangles joined by edge 6: 2-3
        let g = Multigraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)],
        )
        .unwrap();
        assert_eq!(bridges(&g), [EdgeId(6)].into_iter().collect());
    }

    #[test]
    fn min_cut_in_k4_and_errors() {
        let g = complete(4);
        let a: VertexSet = [v(0)].into_iter().collect();
        let b: VertexSet = [v(1)].into_iter().collect();
        let (cut, value) = min_cut_separating(&g, &a, &b).unwrap();
        assert_eq!((cut.size(), value), (3, 3));
        assert!(matches!(
            min_cut_separating(&g, &a, &a),
            Err(Error::OverlappingTerminals(_))
        ));
    }

    #[test]
    fn ladder_min_cut_is_two() {
        // ladder with 6 rungs: vertex 2*i + side
        let mut edges = Vec::new();
        for i in 0..6u64 {
            edges.push((2 * i, 2 * i + 1));
            if i < 5 {
                edges.push((2 * i, 2 * i + 2));
                edges.push((2 * i + 1, 2 * i + 3));
            }
        }
        let g = Multigraph::from_edges(12, &edges).unwrap();
        let src: VertexSet = [v(0), v(1)].into_iter().collect();
        let snk: VertexSet = [v(10), v(11)].into_iter().collect();
        let (cut, value) = min_cut_separating(&g, &src, &snk).unwrap();
        assert_eq!(value, 2);
        assert_eq!(cut.side, src);
    }

    #[test]
    fn arcs_are_used_not_edges() {
        let mut d = Orientation::new(cycle(3));
        d.assign(EdgeId(0), v(0), v(1)).unwrap();
        assert_eq!(alpha_capped(&d, v(0), v(1), 5).unwrap(), 1);
        assert_eq!(alpha_capped(&d, v(1), v(0), 5).unwrap(), 0);
        let _ = Arc {
            tail: v(0),
            head: v(1),
        };
    }
}
