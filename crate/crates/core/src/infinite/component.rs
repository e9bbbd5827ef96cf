//! Index-based view of one component of a truncation minus a finite set, with its boundary.

use crate::flow::{decompose_paths, FlowNetwork, INF};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};
use std::collections::{HashMap, VecDeque};

pub(crate) struct ComponentView {
    pub ids: Vec<VertexId>,
    pub index: HashMap<VertexId, usize>,
    /// internal edges `(id, u, v)`
    pub edges: Vec<(EdgeId, usize, usize)>,
    pub edge_pos: HashMap<EdgeId, usize>,
    pub adj: Vec<Vec<(usize, usize)>>,
    /// boundary edges `(id, outer end, inner end)`, sorted by id
    pub boundary: Vec<(EdgeId, VertexId, usize)>,
}

impl ComponentView {
    pub fn new(t: &Multigraph, comp: &VertexSet) -> Self {
        let ids: Vec<VertexId> = comp.iter().copied().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        let mut boundary = Vec::new();
        let mut adj = vec![Vec::new(); ids.len()];
        for (i, &v) in ids.iter().enumerate() {
            for (e, w) in t.neighbors(v) {
                match index.get(&w) {
                    Some(&j) if i < j => {
                        adj[i].push((edges.len(), j));
                        adj[j].push((edges.len(), i));
                        edges.push((e, i, j));
                    }
                    Some(_) => {}
                    None => boundary.push((e, w, i)),
                }
            }
        }
        boundary.sort();
        let edge_pos = edges.iter().enumerate().map(|(p, &(e, _, _))| (e, p)).collect();
        Self {
            ids,
            index,
            edges,
            edge_pos,
            adj,
            boundary,
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// BFS distances from `from` over the allowed edge positions.
    pub fn distances(&self, from: usize, allowed: &dyn Fn(usize) -> bool) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(p, w) in &self.adj[u] {
                if dist[w] == usize::MAX && allowed(p) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `from` to `to` as edge positions.
    pub fn shortest_path(
        &self,
        from: usize,
        to: usize,
        allowed: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut via = vec![usize::MAX; self.n()];
        let mut seen = vec![false; self.n()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &(p, w) in &self.adj[u] {
                if !seen[w] && allowed(p) {
                    seen[w] = true;
                    via[w] = p;
                    queue.push_back(w);
                }
            }
        }
        if !seen[to] {
            return None;
        }
        let mut path = Vec::new();
        let mut w = to;
        while w != from {
            let p = via[w];
            path.push(p);
            let (_, a, b) = self.edges[p];
            w = if a == w { b } else { a };
        }
        path.reverse();
        Some(path)
    }

    /// Edge-disjoint paths from the boundary edges listed in `starts` (boundary indices)
    /// into `sinks`, as many as exist. Each path begins with its boundary edge.
    pub fn packing(&self, starts: &[usize], sinks: &[usize]) -> Vec<Vec<EdgeId>> {
        let n = self.n();
        let (src, snk) = (n, n + 1);
        let mut net = FlowNetwork::new(n + 2);
        let start_arcs: Vec<usize> = starts
            .iter()
            .map(|&b| net.add_arc(src, self.boundary[b].2, 1, 0))
            .collect();
        let internal: Vec<usize> = self
            .edges
            .iter()
            .map(|&(_, u, v)| net.add_arc(u, v, 1, 1))
            .collect();
        let sink_arcs: Vec<(usize, usize)> = sinks
            .iter()
            .map(|&v| (v, net.add_arc(v, snk, INF, 0)))
            .collect();
        let value = net.max_flow(src, snk, starts.len() as u32) as usize;
        // labels: start arcs 0..k, internal edges k.., sink arcs usize::MAX
        let k = starts.len();
        let mut arcs = Vec::new();
        for (i, &a) in start_arcs.iter().enumerate() {
            if net.residual(a) == 0 {
                arcs.push((i, src, self.boundary[starts[i]].2));
            }
        }
        for (p, &a) in internal.iter().enumerate() {
            let (_, u, v) = self.edges[p];
            match 1 - net.residual(a) {
                1 => arcs.push((k + p, u, v)),
                -1 => arcs.push((k + p, v, u)),
                _ => {}
            }
        }
        for &(v, a) in &sink_arcs {
            for _ in 0..INF - net.residual(a) {
                arcs.push((usize::MAX, v, snk));
            }
        }
        decompose_paths(n + 2, &arcs, src, snk, value)
            .into_iter()
            .map(|labels| {
                let (first, rest) = labels.split_first().expect("path leaves the source");
                let mut path = vec![self.boundary[starts[*first]].0];
                path.extend(
                    rest.iter()
                        .filter(|&&l| l != usize::MAX)
                        .map(|&l| self.edges[l - k].0),
                );
                path
            })
            .collect()
    }

    /// Three (or `targets.len()`) edge-disjoint paths from `x`, the i-th ending at
    /// `targets[i]`, using allowed edges only. Paths are edge positions.
    pub fn fan(
        &self,
        x: usize,
        targets: &[usize],
        allowed: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<Vec<usize>>> {
        let n = self.n();
        let snk = n;
        let mut net = FlowNetwork::new(n + 1);
        let mut internal = Vec::new();
        for (p, &(_, u, v)) in self.edges.iter().enumerate() {
            if allowed(p) {
                internal.push((p, net.add_arc(u, v, 1, 1)));
            }
        }
        let target_arcs: Vec<usize> = targets.iter().map(|&t| net.add_arc(t, snk, 1, 0)).collect();
        let want = targets.len() as u32;
        if net.max_flow(x, snk, want) < want {
            return None;
        }
        let m = self.edges.len();
        let mut arcs = Vec::new();
        for &(p, a) in &internal {
            let (_, u, v) = self.edges[p];
            match 1 - net.residual(a) {
                1 => arcs.push((p, u, v)),
                -1 => arcs.push((p, v, u)),
                _ => {}
            }
        }
        for (i, &a) in target_arcs.iter().enumerate() {
            if net.residual(a) == 0 {
                arcs.push((m + i, targets[i], snk));
            }
        }
        let paths = decompose_paths(n + 1, &arcs, x, snk, targets.len());
        let mut out = vec![Vec::new(); targets.len()];
        for labels in paths {
            let (&last, body) = labels.split_last()?;
            out[last - m] = body.to_vec();
        }
        Some(out)
    }

    /// Vertex sequence of a walk given as edge positions starting at `from`.
    pub fn walk_vertices(&self, from: usize, path: &[usize]) -> Vec<usize> {
        let mut out = vec![from];
        let mut cur = from;
        for &p in path {
            let (_, a, b) = self.edges[p];
            cur = if a == cur { b } else { a };
            out.push(cur);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_and_fan_on_a_ladder_piece() {
        // outer vertex 0 joined to 1 and 2; component 1..=6 is a ladder 1-3-5 / 2-4-6
        let g = Multigraph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 3), (3, 5), (2, 4), (4, 6), (1, 2), (3, 4), (5, 6)],
        )
        .unwrap();
        let comp: VertexSet = (1..=6).map(VertexId).collect();
        let view = ComponentView::new(&g, &comp);
        assert_eq!(view.boundary.len(), 2);
        let sinks = [view.index[&VertexId(5)], view.index[&VertexId(6)]];
        let rays = view.packing(&[0, 1], &sinks);
        assert_eq!(rays.len(), 2);
        assert_eq!(rays[0][0], view.boundary[0].0);
        assert_eq!(rays[1][0], view.boundary[1].0);
        let all: Vec<EdgeId> = rays.concat();
        let distinct: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());

        // vertex 3 has three edge-disjoint routes to 1, 4 and 5
        let x = view.index[&VertexId(3)];
        let targets = [1, 4, 5].map(|i| view.index[&VertexId(i)]);
        let fan = view.fan(x, &targets, &|_| true).unwrap();
        for (i, p) in fan.iter().enumerate() {
            assert_eq!(*view.walk_vertices(x, p).last().unwrap(), targets[i]);
        }
        // vertex 6 has degree 2 inside, so no fan of three
        assert!(view.fan(view.index[&VertexId(6)], &targets, &|_| true).is_none());
    }
}
