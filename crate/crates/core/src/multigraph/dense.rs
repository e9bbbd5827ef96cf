use super::{EdgeId, Multigraph, VertexId};
use std::collections::HashMap;

/// Index-based snapshot of a [`Multigraph`] for the hot loops (flows, BFS, enumeration).
#[derive(Clone, Debug)]
pub struct DenseGraph {
    pub ids: Vec<VertexId>,
    pub index: HashMap<VertexId, usize>,
    /// `(id, u, v)` with `u`, `v` dense indices.
    pub edges: Vec<(EdgeId, usize, usize)>,
    /// Per vertex: `(edge position in `edges`, neighbour index)`.
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl DenseGraph {
    pub fn from_multigraph(g: &Multigraph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut adj = vec![Vec::new(); ids.len()];
        let mut edges = Vec::with_capacity(g.edge_count());
        for (pos, (e, u, v)) in g.edges().enumerate() {
            let (iu, iv) = (index[&u], index[&v]);
            edges.push((e, iu, iv));
            adj[iu].push((pos, iv));
            adj[iv].push((pos, iu));
        }
        Self {
            ids,
            index,
            edges,
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn idx(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    /// Bitmask boundary size for graphs with at most 64 vertices.
    pub fn boundary_size_mask(&self, mask: u64) -> usize {
        self.edges
            .iter()
            .filter(|&&(_, u, v)| ((mask >> u) & 1) != ((mask >> v) & 1))
            .count()
    }
}
