//! Integer max-flow by shortest augmenting paths, sized for desk-scale unit-capacity networks.

use std::collections::VecDeque;

pub(crate) const INF: i32 = 1 << 28;

#[derive(Clone, Debug, Default)]
pub(crate) struct FlowNetwork {
    to: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        Self {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }



    /// Adds arc `u -> v` with capacity `cap` and its partner `v -> u` with `rev_cap`.
    /// Returns the index of the forward arc; the partner is `index ^ 1`.
    pub fn add_arc(&mut self, u: usize, v: usize, cap: i32, rev_cap: i32) -> usize {
        let a = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.adj[u].push(a);
        self.to.push(u);
        self.cap.push(rev_cap);
        self.adj[v].push(a + 1);
        a
    }

    pub fn residual(&self, arc: usize) -> i32 {
        self.cap[arc]
    }



    /// Pushes flow from `s` to `t` until none remains or `limit` is reached.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let n = self.adj.len();
        let mut flow: u32 = 0;
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            queue.clear();
            queue.push_back(s);
            let mut seen = vec![false; n];
            seen[s] = true;
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let w = self.to[a];
                    if self.cap[a] > 0 && !seen[w] {
                        seen[w] = true;
                        parent[w] = a;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = (limit - flow).min(INF as u32) as i32;
            let mut w = t;
            while w != s {
                let a = parent[w];
                bottleneck = bottleneck.min(self.cap[a]);
                w = self.to[a ^ 1];
            }
            let mut w = t;
            while w != s {
                let a = parent[w];
                self.cap[a] -= bottleneck;
                self.cap[a ^ 1] += bottleneck;
                w = self.to[a ^ 1];
            }
            flow += bottleneck as u32;
        }
        flow
    }

    /// Nodes reachable from `s` through arcs with positive residual capacity.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &a in &self.adj[u] {
                let w = self.to[a];
                if self.cap[a] > 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Splits a unit flow, given as directed arcs `(label, from, to)`, into `count` paths from
/// `s` to `t`. Cycles met along the way are discarded.
pub(crate) fn decompose_paths(
    n: usize,
    arcs: &[(usize, usize, usize)],
    s: usize,
    t: usize,
    count: usize,
) -> Vec<Vec<usize>> {
    let mut out_arcs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &(label, from, to) in arcs {
        out_arcs[from].push((label, to));
    }
    let mut next = vec![0usize; n];
    let mut paths = Vec::with_capacity(count);
    for _ in 0..count {
        let mut verts = vec![s];
        let mut labels: Vec<usize> = Vec::new();
        let mut pos = vec![usize::MAX; n];
        pos[s] = 0;
        let mut u = s;
        while u != t {
            let Some(&(label, w)) = out_arcs[u].get(next[u]) else {
                // conservation broken; return what we have
                return paths;
            };
            next[u] += 1;
            if pos[w] != usize::MAX {
                let keep = pos[w];
                for &x in &verts[keep + 1..] {
                    pos[x] = usize::MAX;
                }
                verts.truncate(keep + 1);
                labels.truncate(keep);
            } else {
                pos[w] = verts.len();
                verts.push(w);
                labels.push(label);
            }
            u = w;
        }
        paths.push(labels);
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_parallel_routes() {
        // 0 -> 1 -> 3, 0 -> 2 -> 3
        let mut net = FlowNetwork::new(4);
        for (u, v) in [(0, 1), (1, 3), (0, 2), (2, 3)] {
            net.add_arc(u, v, 1, 0);
        }
        assert_eq!(net.max_flow(0, 3, u32::MAX), 2);
        let reach = net.residual_reachable(0);
        assert_eq!(reach, vec![true, false, false, false]);
    }

    #[test]
    fn limit_caps_the_flow() {
        let mut net = FlowNetwork::new(2);
        for _ in 0..5 {
            net.add_arc(0, 1, 1, 1);
        }
        assert_eq!(net.max_flow(0, 1, 3), 3);
    }

    #[test]
    fn decomposition_drops_cycles() {
        // path 0->1->2->3 plus a cycle 1->4->1 reached first
        let arcs = vec![(10, 0, 1), (11, 1, 4), (12, 4, 1), (13, 1, 2), (14, 2, 3)];
        let paths = decompose_paths(5, &arcs, 0, 3, 1);
        assert_eq!(paths, vec![vec![10, 13, 14]]);
    }
}
