//! Liftings at a vertex `s`: the target function τ_A, admissible pairs, the lifting graph,
//! dangerous sets, Frank matchings, and the structure classifier.
//!
//! A pair of `s`-edges whose far ends coincide is split off by deleting both edges, the
//! usual convention in splitting-off theory (the would-be loop is dropped).
//! [`Multigraph::lift`] itself still refuses such pairs.

mod classify;
mod dangerous;
pub mod properties;

pub use classify::{classify, LiftingClass};
pub use dangerous::{
    covering_dangerous_set, enumerate_dangerous_sets, enumerate_dangerous_sets_bounded,
    DangerousSet, DEFAULT_DANGEROUS_BOUND,
};

use crate::connectivity::{bridges, LambdaTable};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::multigraph::{DenseGraph, EdgeId, Multigraph, VertexId, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// τ_A: value `level` on pairs inside `terminals`, zero elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetFunction {
    terminals: VertexSet,
    level: u32,
}

impl TargetFunction {
    /// Checks that every terminal pair already has λ ≥ `level`.
    pub fn new(g: &Multigraph, terminals: VertexSet, level: u32) -> Result<Self> {
        for &a in &terminals {
            if !g.has_vertex(a) {
                return Err(Error::UnknownVertex(a));
            }
        }
        let tau = Self::unchecked(terminals, level);
        let dg = g.dense();
        let idx: Vec<usize> = tau.terminals.iter().map(|v| dg.index[v]).collect();
        if let Some((i, j, found)) = terminal_shortfall(&dg, &idx, level, None) {
            return Err(Error::TargetTooHigh {
                level,
                found,
                x: dg.ids[i],
                y: dg.ids[j],
            });
        }
        Ok(tau)
    }

    pub fn unchecked(terminals: VertexSet, level: u32) -> Self {
        Self { terminals, level }
    }

    pub fn terminals(&self) -> &VertexSet {
        &self.terminals
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn value(&self, x: VertexId, y: VertexId) -> u32 {
        if x != y && self.terminals.contains(&x) && self.terminals.contains(&y) {
            self.level
        } else {
            0
        }
    }

    /// Whether `side` and its complement both contain terminals.
    pub fn separates(&self, side: &VertexSet) -> bool {
        let inside = self.terminals.iter().filter(|a| side.contains(a)).count();
        inside > 0 && inside < self.terminals.len()
    }

    /// Whether λ ≥ level holds for every terminal pair of `g`.
    pub fn is_met_by(&self, g: &Multigraph) -> bool {
        let dg = g.dense();
        let idx: Vec<usize> = self.terminals.iter().filter_map(|v| dg.idx(*v)).collect();
        terminal_shortfall(&dg, &idx, self.level, None).is_none()
    }
}

/// Unit network of `dg` with the edges at positions `skip` removed and `extra` added.
fn network_with(dg: &DenseGraph, skip: &[usize], extra: Option<(usize, usize)>) -> FlowNetwork {
    let mut net = FlowNetwork::new(dg.n());
    for (pos, &(_, u, v)) in dg.edges.iter().enumerate() {
        if !skip.contains(&pos) {
            net.add_arc(u, v, 1, 1);
        }
    }
    if let Some((x, y)) = extra {
        net.add_arc(x, y, 1, 1);
    }
    net
}

/// First terminal pair `(root, t, λ)` with λ < level after an optional split-off.
/// One root suffices since λ(x, y) ≥ min(λ(x, r), λ(r, y)).
fn terminal_shortfall(
    dg: &DenseGraph,
    terminals: &[usize],
    level: u32,
    split: Option<(&[usize], Option<(usize, usize)>)>,
) -> Option<(usize, usize, u32)> {
    let (&root, rest) = terminals.split_first()?;
    for &t in rest {
        let mut net = match split {
            Some((skip, extra)) => network_with(dg, skip, extra),
            None => network_with(dg, &[], None),
        };
        let f = net.max_flow(root, t, level);
        if f < level {
            return Some((root, t, f));
        }
    }
    None
}

fn far_end(dg: &DenseGraph, pos: usize, s: usize) -> Option<usize> {
    let (_, u, v) = dg.edges[pos];
    if u == s {
        Some(v)
    } else if v == s {
        Some(u)
    } else {
        None
    }
}

fn edge_position(dg: &DenseGraph, e: EdgeId) -> Result<usize> {
    dg.edges
        .iter()
        .position(|&(id, _, _)| id == e)
        .ok_or(Error::UnknownEdge(e))
}

/// Splits off `e1`, `e2` at `s`: both are deleted and, when their far ends differ, joined
/// by a new edge. Returns the new graph and the new edge, if any.
pub fn split_off(
    g: &Multigraph,
    s: VertexId,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<(Multigraph, Option<EdgeId>)> {
    let (x, y) = g.lift_ends(s, e1, e2)?;
    let mut h = g.clone();
    if x == y {
        h.remove_edge(e1)?;
        h.remove_edge(e2)?;
        Ok((h, None))
    } else {
        let e = h.lift(s, e1, e2)?;
        Ok((h, Some(e)))
    }
}

/// Pair `(e1, e2)` at `s` is τ-admissible: after splitting it off, every terminal pair keeps
/// λ ≥ level.
pub fn is_admissible(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
    e1: EdgeId,
    e2: EdgeId,
) -> Result<bool> {
    g.lift_ends(s, e1, e2)?;
    let ctx = AdmissibilityContext::new(g, tau, s)?;
    Ok(ctx.admissible(edge_position(&ctx.dg, e1)?, edge_position(&ctx.dg, e2)?))
}

/// Pair `(e1, e2)` at `s` preserves λ(x, y) for every pair of vertices other than `s`.
pub fn is_lambda_admissible(g: &Multigraph, s: VertexId, e1: EdgeId, e2: EdgeId) -> Result<bool> {
    g.lift_ends(s, e1, e2)?;
    let ctx = LambdaContext::new(g, s)?;
    Ok(ctx.admissible(edge_position(&ctx.dg, e1)?, edge_position(&ctx.dg, e2)?))
}

pub(crate) struct AdmissibilityContext {
    dg: DenseGraph,
    s: usize,
    terminals: Vec<usize>,
    level: u32,
}

impl AdmissibilityContext {
    pub(crate) fn new(g: &Multigraph, tau: &TargetFunction, s: VertexId) -> Result<Self> {
        let dg = g.dense();
        let si = dg.idx(s).ok_or(Error::UnknownVertex(s))?;
        let terminals = tau
            .terminals
            .iter()
            .map(|v| dg.idx(*v).ok_or(Error::UnknownVertex(*v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            dg,
            s: si,
            terminals,
            level: tau.level,
        })
    }

    pub(crate) fn admissible_edges(&self, e1: EdgeId, e2: EdgeId) -> Result<bool> {
        Ok(self.admissible(edge_position(&self.dg, e1)?, edge_position(&self.dg, e2)?))
    }

    fn admissible(&self, p1: usize, p2: usize) -> bool {
        let x = far_end(&self.dg, p1, self.s).expect("incident with s");
        let y = far_end(&self.dg, p2, self.s).expect("incident with s");
        let extra = (x != y).then_some((x, y));
        terminal_shortfall(&self.dg, &self.terminals, self.level, Some((&[p1, p2], extra)))
            .is_none()
    }
}

struct LambdaContext {
    dg: DenseGraph,
    s: usize,
    table: Vec<(usize, usize, u32)>,
}

impl LambdaContext {
    fn new(g: &Multigraph, s: VertexId) -> Result<Self> {
        let dg = g.dense();
        let si = dg.idx(s).ok_or(Error::UnknownVertex(s))?;
        let full = LambdaTable::compute(g);
        let mut table = Vec::new();
        for i in 0..dg.n() {
            for j in i + 1..dg.n() {
                if i != si && j != si {
                    table.push((i, j, full.get(i, j)));
                }
            }
        }
        Ok(Self { dg, s: si, table })
    }

    fn admissible(&self, p1: usize, p2: usize) -> bool {
        let x = far_end(&self.dg, p1, self.s).expect("incident with s");
        let y = far_end(&self.dg, p2, self.s).expect("incident with s");
        let extra = (x != y).then_some((x, y));
        self.table.iter().all(|&(i, j, need)| {
            network_with(&self.dg, &[p1, p2], extra).max_flow(i, j, need) >= need
        })
    }
}

/// L(G, s, τ): nodes are the edges at `s`, adjacency is admissibility.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftingGraph {
    s: VertexId,
    nodes: Vec<EdgeId>,
    adj: Vec<Vec<bool>>,
}

impl LiftingGraph {
    /// Builds a lifting graph from an explicit symmetric adjacency; the diagonal is ignored.
    pub fn from_adjacency(s: VertexId, nodes: Vec<EdgeId>, mut adj: Vec<Vec<bool>>) -> Self {
        for (i, row) in adj.iter_mut().enumerate() {
            row[i] = false;
        }
        Self { s, nodes, adj }
    }

    pub fn s(&self) -> VertexId {
        self.s
    }

    pub fn nodes(&self) -> &[EdgeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn position(&self, e: EdgeId) -> Option<usize> {
        self.nodes.iter().position(|&n| n == e)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| self.adj[i][j])
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    /// Adjacent pairs `(e_i, e_j)` with `i < j` in node order.
    pub fn pairs(&self) -> Vec<(EdgeId, EdgeId)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adj[i][j] {
                    out.push((self.nodes[i], self.nodes[j]));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.pairs().len()
    }

    /// Lifting graph induced on a subset of node positions.
    pub fn restrict(&self, keep: &[usize]) -> LiftingGraph {
        let nodes = keep.iter().map(|&i| self.nodes[i]).collect();
        let adj = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.adj[i][j]).collect())
            .collect();
        LiftingGraph {
            s: self.s,
            nodes,
            adj,
        }
    }
}

/// Hypotheses of the structure theorem: `s` outside a proper terminal set, every edge has a
/// terminal endpoint, and `s` has at least two edges.
pub fn check_hypotheses(g: &Multigraph, tau: &TargetFunction, s: VertexId) -> Result<()> {
    if !g.has_vertex(s) {
        return Err(Error::UnknownVertex(s));
    }
    if tau.terminals.contains(&s) {
        return Err(Error::Hypothesis(format!("s = {s} is a terminal")));
    }
    if tau.terminals.len() >= g.vertex_count() {
        return Err(Error::Hypothesis("terminal set is not proper".into()));
    }
    if let Some((e, u, v)) = g
        .edges()
        .find(|(_, u, v)| !tau.terminals.contains(u) && !tau.terminals.contains(v))
    {
        return Err(Error::Hypothesis(format!(
            "edge {e} joins non-terminals {u} and {v}"
        )));
    }
    if g.degree(s) < 2 {
        return Err(Error::Hypothesis(format!("deg(s) = {} < 2", g.degree(s))));
    }
    Ok(())
}

/// Lifting graph under the structure-theorem hypotheses (checked first).
pub fn lifting_graph(g: &Multigraph, tau: &TargetFunction, s: VertexId) -> Result<LiftingGraph> {
    check_hypotheses(g, tau, s)?;
    lifting_graph_unchecked(g, tau, s)
}

/// Lifting graph without the hypothesis checks, for experiments off the theorem's domain.
pub fn lifting_graph_unchecked(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
) -> Result<LiftingGraph> {
    let ctx = AdmissibilityContext::new(g, tau, s)?;
    build(g, s, &ctx.dg, |p1, p2| ctx.admissible(p1, p2))
}

/// Lifting graph for full λ-preservation on `V − s`.
pub fn lambda_lifting_graph(g: &Multigraph, s: VertexId) -> Result<LiftingGraph> {
    let ctx = LambdaContext::new(g, s)?;
    build(g, s, &ctx.dg, |p1, p2| ctx.admissible(p1, p2))
}

fn build(
    g: &Multigraph,
    s: VertexId,
    dg: &DenseGraph,
    admissible: impl Fn(usize, usize) -> bool,
) -> Result<LiftingGraph> {
    let nodes: Vec<EdgeId> = g.incident(s).collect();
    let pos = nodes
        .iter()
        .map(|&e| edge_position(dg, e))
        .collect::<Result<Vec<_>>>()?;
    let n = nodes.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let a = admissible(pos[i], pos[j]);
            adj[i][j] = a;
            adj[j][i] = a;
        }
    }
    Ok(LiftingGraph { s, nodes, adj })
}

/// Preconditions of Frank's theorem: `deg(s) ≠ 3` and no bridge at `s`.
pub fn frank_preconditions(g: &Multigraph, s: VertexId) -> Result<()> {
    if g.degree(s) == 3 {
        return Err(Error::Hypothesis("deg(s) = 3".into()));
    }
    let br = bridges(g);
    if let Some(e) = g.incident(s).find(|e| br.contains(e)) {
        return Err(Error::Hypothesis(format!("s is incident with bridge {e}")));
    }
    Ok(())
}

/// A maximum matching of the lifting graph, as node positions.
pub fn maximum_matching(lg: &LiftingGraph) -> Vec<(usize, usize)> {
    fn size(lg: &LiftingGraph, free: u64, memo: &mut HashMap<u64, usize>) -> usize {
        if free.count_ones() < 2 {
            return 0;
        }
        if let Some(&v) = memo.get(&free) {
            return v;
        }
        let i = free.trailing_zeros() as usize;
        let rest = free & !(1 << i);
        let mut best = size(lg, rest, memo);
        for j in lg.neighbors(i) {
            if rest >> j & 1 == 1 {
                best = best.max(1 + size(lg, rest & !(1 << j), memo));
            }
        }
        memo.insert(free, best);
        best
    }
    assert!(lg.len() <= 64, "matching search supports at most 64 nodes");
    let mut memo = HashMap::new();
    let mut free: u64 = if lg.len() == 64 {
        u64::MAX
    } else {
        (1u64 << lg.len()) - 1
    };
    let mut out = Vec::new();
    while free.count_ones() >= 2 {
        let target = size(lg, free, &mut memo);
        if target == 0 {
            break;
        }
        let i = free.trailing_zeros() as usize;
        let rest = free & !(1 << i);
        match lg
            .neighbors(i)
            .find(|&j| rest >> j & 1 == 1 && 1 + size(lg, rest & !(1 << j), &mut memo) == target)
        {
            Some(j) => {
                out.push((i, j));
                free = rest & !(1 << j);
            }
            None => free = rest,
        }
    }
    out
}

/// ⌊deg(s)/2⌋ pairwise disjoint admissible pairs, after checking Frank's preconditions on `g`.
pub fn frank_matching(g: &Multigraph, lg: &LiftingGraph) -> Result<Vec<(EdgeId, EdgeId)>> {
    frank_preconditions(g, lg.s)?;
    let m = maximum_matching(lg);
    let want = lg.len() / 2;
    if m.len() < want {
        return Err(Error::Hypothesis(format!(
            "lifting graph has a maximum matching of size {} < {want}",
            m.len()
        )));
    }
    Ok(m.into_iter()
        .map(|(i, j)| (lg.nodes[i], lg.nodes[j]))
        .collect())
}

/// Both sides of the two-cut intersection identity, counted directly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutIdentity {
    pub lhs: usize,
    pub rhs: usize,
}

pub fn cut_identity_sides(g: &Multigraph, a1: &VertexSet, a2: &VertexSet) -> CutIdentity {
    let inter: VertexSet = a1.intersection(a2).copied().collect();
    let only1: VertexSet = a1.difference(a2).copied().collect();
    let only2: VertexSet = a2.difference(a1).copied().collect();
    let union: VertexSet = a1.union(a2).copied().collect();
    let outside = g.complement(&union);
    let lhs = 2
        * (g.boundary(a1).len() + g.boundary(a2).len()
            - g.crossing(&inter, &outside).len()
            - g.crossing(&only2, &only1).len());
    let rhs = g.boundary(&inter).len()
        + g.boundary(&only2).len()
        + g.boundary(&only1).len()
        + g.boundary(&outside).len();
    CutIdentity { lhs, rhs }
}

pub fn verify_cut_identity(g: &Multigraph, a1: &VertexSet, a2: &VertexSet) -> bool {
    let c = cut_identity_sides(g, a1, a2);
    c.lhs == c.rhs
}

/// Outcome of the admissibility monotonicity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneReport {
    pub holds: bool,
    pub pairs_checked: usize,
    /// `(first lift, pair admissible only after it)` when the property fails.
    pub witness: Option<((EdgeId, EdgeId), (EdgeId, EdgeId))>,
}

/// For every admissible pair p and every pair q admissible after splitting off p, checks
/// that q was admissible to begin with.
pub fn admissibility_monotone_check(
    g: &Multigraph,
    tau: &TargetFunction,
    s: VertexId,
) -> Result<MonotoneReport> {
    let before = lifting_graph_unchecked(g, tau, s)?;
    let mut checked = 0;
    for (p1, p2) in before.pairs() {
        let (after_graph, _) = split_off(g, s, p1, p2)?;
        if after_graph.degree(s) < 2 {
            continue;
        }
        let after = lifting_graph_unchecked(&after_graph, tau, s)?;
        for (q1, q2) in after.pairs() {
            checked += 1;
            let (i, j) = (before.position(q1).unwrap(), before.position(q2).unwrap());
            if !before.adjacent(i, j) {
                return Ok(MonotoneReport {
                    holds: false,
                    pairs_checked: checked,
                    witness: Some(((p1, p2), (q1, q2))),
                });
            }
        }
    }
    Ok(MonotoneReport {
        holds: true,
        pairs_checked: checked,
        witness: None,
    })
}
