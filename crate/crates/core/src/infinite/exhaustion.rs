//! The inductive orientation loop: nested finite oriented subgraphs W_0 ⊆ W_1 ⊆ … with
//! growing vertex sets A_n, each stage certified by flows.

use super::decompose::{decompose_with, ComponentSummary, DecomposeOptions};
use super::immersion::{
    build_immersion_with, verify_immersion, ImmersionCertificate, ImmersionCheck, ImmersionOptions,
    ImmersionStats,
};
use super::truncate::{truncate, truncate_bounded, DEFAULT_MAX_VERTICES};
use super::LazyGraph;
use crate::connectivity::{arc_connectivity_violation, lambda, lambda_capped};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, EdgeSet, Multigraph, Orientation, VertexId, VertexSet};
use crate::orientation::{extend_searching, ExtensionOptions};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, VecDeque};

#[derive(Clone, Debug)]
pub struct ExhaustionState {
    pub n: usize,
    pub a: VertexSet,
    /// Total orientation of W_n; its base graph is W_n.
    pub w: Orientation,
    /// v_0, …, v_n.
    pub order: Vec<VertexId>,
}

impl ExhaustionState {
    pub fn snapshot(&self) -> StateSnapshot {
        StateSnapshot {
            n: self.n,
            a: self.a.iter().copied().collect(),
            order: self.order.clone(),
            arcs: self.w.arcs().map(|(e, a)| (e, a.tail, a.head)).collect(),
        }
    }
}

/// Serializable form of a stage, enough to rebuild and re-check it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSnapshot {
    pub n: usize,
    pub a: Vec<VertexId>,
    pub order: Vec<VertexId>,
    pub arcs: Vec<(EdgeId, VertexId, VertexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub nested: bool,
    /// {v_0..v_n} ⊆ A_n ⊆ V(W_n)
    pub covers: bool,
    /// at most one unbalanced W_n-vertex, off by one, per component of G − A_n
    pub balanced: bool,
    /// k arc-disjoint paths both ways between all pairs of A_n
    pub connected: bool,
    pub detail: Option<String>,
}

impl InvariantReport {
    pub fn holds(&self) -> bool {
        self.nested && self.covers && self.balanced && self.connected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSummary {
    pub iterations: usize,
    pub work_depth: u32,
    pub certificate_depth: u32,
    pub components: Vec<ComponentSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionSummary {
    pub h_vertices: usize,
    pub h_edges: usize,
    pub x: Vec<VertexId>,
    pub stats: ImmersionStats,
    pub check: ImmersionCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCertificate {
    pub stage: usize,
    pub a_size: usize,
    pub w_vertices: usize,
    pub w_edges: usize,
    pub decomposition: Option<DecompositionSummary>,
    pub immersion: Option<ImmersionSummary>,
    pub invariants: InvariantReport,
}

impl StageCertificate {
    pub fn holds(&self) -> bool {
        self.invariants.holds() && self.immersion.as_ref().is_none_or(|i| i.check.holds())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimulationOptions {
    pub decompose: DecomposeOptions,
    pub immersion: ImmersionOptions,
    pub extension: ExtensionOptions,
}

#[derive(Clone, Debug)]
pub struct SimulationRun {
    pub stages: Vec<ExhaustionState>,
    pub certificates: Vec<StageCertificate>,
    /// The immersion built at each stage after the first (empty for k = 1).
    pub immersions: Vec<ImmersionCertificate>,
}

/// The first `count` vertices ordered by level, then id.
pub fn vertex_order(g: &dyn LazyGraph, count: usize) -> Result<Vec<VertexId>> {
    let mut depth = 0;
    loop {
        let t = truncate_bounded(g, depth, DEFAULT_MAX_VERTICES)?;
        if t.graph.vertex_count() >= count {
            let mut vs: Vec<VertexId> = t.graph.vertices().collect();
            vs.sort_by_key(|&v| (g.level(v), v));
            vs.truncate(count);
            return Ok(vs);
        }
        depth += 1;
    }
}

/// Flow check of λ ≥ 2k from the root to every vertex of level at most 2, on a truncation
/// deep enough for those cuts to be the true ones.
pub fn connectivity_gate(g: &dyn LazyGraph, k: u32) -> Result<()> {
    let t = truncate(g, 6);
    let root = g.root();
    for v in t.graph.vertices() {
        if v == root || g.level(v) > 2 {
            continue;
        }
        if lambda_capped(&t.graph, root, v, 2 * k)? < 2 * k {
            let cert = lambda(&t.graph, root, v)?;
            return Err(Error::NotEdgeConnected {
                required: 2 * k,
                found: cert.value,
                side: cert.min_cut.side.into_iter().collect(),
            });
        }
    }
    Ok(())
}

fn shortest_path_avoiding(
    g: &Multigraph,
    from: VertexId,
    targets: &VertexSet,
    blocked: &dyn Fn(EdgeId) -> bool,
) -> Option<Vec<(EdgeId, VertexId)>> {
    let mut via: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
    let mut queue = VecDeque::from([from]);
    let mut seen = VertexSet::from([from]);
    while let Some(u) = queue.pop_front() {
        if u != from && targets.contains(&u) {
            let mut path = Vec::new();
            let mut w = u;
            while w != from {
                let (e, p) = via[&w];
                path.push((e, w));
                w = p;
            }
            path.reverse();
            return Some(path);
        }
        for (e, w) in g.neighbors(u) {
            if !blocked(e) && seen.insert(w) {
                via.insert(w, (e, u));
                queue.push_back(w);
            }
        }
    }
    None
}

/// W_0: a directed cycle through the root; A_0 = {root}.
pub fn stage_zero(g: &dyn LazyGraph) -> Result<ExhaustionState> {
    let root = g.root();
    for depth in [2, 4, 8, 16] {
        let t = truncate(g, depth);
        for (e, w) in t.graph.neighbors(root) {
            let back = shortest_path_avoiding(&t.graph, w, &[root].into(), &|x| x == e);
            let Some(back) = back else { continue };
            let edges: EdgeSet = std::iter::once(e).chain(back.iter().map(|p| p.0)).collect();
            let mut d = Orientation::new(t.graph.edge_subgraph(&edges));
            d.assign(e, root, w)?;
            let mut cur = w;
            for (be, next) in back {
                d.assign(be, cur, next)?;
                cur = next;
            }
            return Ok(ExhaustionState {
                n: 0,
                a: [root].into(),
                w: d,
                order: vec![root],
            });
        }
    }
    Err(Error::Certificate(format!("no cycle through the root of {}", g.name())))
}

/// Checks (i)–(iii) for `state`; `components` are the components of G − A_n as vertex sets
/// of some truncation containing W_n.
pub fn check_invariants(state: &ExhaustionState, components: &[VertexSet], k: u32) -> InvariantReport {
    let mut detail = None;
    let w = state.w.base();
    let covers = state.order.iter().all(|v| state.a.contains(v))
        && state.a.iter().all(|&v| w.has_vertex(v));
    if !covers {
        detail = Some("A_n misses some v_i or some A_n-vertex is outside W_n".to_string());
    }
    let mut balanced = true;
    for comp in components {
        let unbalanced: Vec<(VertexId, i64)> = comp
            .iter()
            .filter(|v| w.has_vertex(**v))
            .map(|&v| (v, state.w.imbalance(v)))
            .filter(|&(_, b)| b != 0)
            .collect();
        if unbalanced.len() > 1 || unbalanced.iter().any(|&(_, b)| b.abs() != 1) {
            balanced = false;
            detail.get_or_insert_with(|| format!("unbalanced W-vertices {unbalanced:?} in one component"));
        }
    }
    let a: Vec<VertexId> = state.a.iter().copied().collect();
    let connected = match arc_connectivity_violation(&state.w, &a, k) {
        None => true,
        Some((x, y, f)) => {
            detail.get_or_insert_with(|| format!("α({x}, {y}) = {f} < {k} in W_n"));
            false
        }
    };
    InvariantReport {
        nested: true,
        covers,
        balanced,
        connected,
        detail,
    }
}

/// One round of the loop; `k = 1` grows W by ears instead of immersions.
pub fn inductive_step(
    g: &dyn LazyGraph,
    st: &ExhaustionState,
    k: u32,
    opts: SimulationOptions,
) -> Result<(ExhaustionState, StageCertificate)> {
    step(g, st, k, opts).map(|(state, cert, _)| (state, cert))
}

fn step(
    g: &dyn LazyGraph,
    st: &ExhaustionState,
    k: u32,
    opts: SimulationOptions,
) -> Result<(ExhaustionState, StageCertificate, Option<ImmersionCertificate>)> {
    if k == 0 {
        return Err(Error::Hypothesis("k must be positive".into()));
    }
    let order = vertex_order(g, st.n + 2)?;
    if order[..=st.n] != st.order[..] {
        return Err(Error::Invariant {
            stage: st.n,
            detail: "state does not follow the vertex enumeration".into(),
        });
    }
    let next = order[st.n + 1];
    if k == 1 {
        return ear_step(g, st, order).map(|(state, cert)| (state, cert, None));
    }
    let mut a_prime = st.w.base().vertex_set();
    a_prime.extend(st.a.iter().copied());
    a_prime.insert(next);

    let mut dopts = opts.decompose;
    let (dec, cert) = loop {
        let dec = decompose_with(g, &a_prime, dopts)?;
        match build_immersion_with(&dec, k, opts.immersion) {
            Ok(cert) => break (dec, cert),
            Err(Error::Certificate(_)) if dopts.relative_depth * 2 <= dopts.depth_cap => {
                dopts.relative_depth *= 2;
            }
            Err(e) => return Err(e),
        }
    };
    let stage = st.n + 1;
    let t = &dec.truncation.graph;
    let check = verify_immersion(&cert, t, k);
    if !check.holds() {
        return Err(Error::Invariant {
            stage,
            detail: format!("immersion certificate: {}", check.detail.clone().unwrap_or_default()),
        });
    }
    let dh = orient_immersion(&cert, st, k, opts.extension, stage)?;

    // pull back through the realizations
    let mut edges: EdgeSet = st.w.base().edge_ids().collect();
    for r in cert.realization.values() {
        edges.extend(r.path.iter().copied());
    }
    let mut w = Orientation::new(t.edge_subgraph(&edges));
    for (e, arc) in dh.arcs() {
        let r = &cert.realization[&e];
        let (start, path): (VertexId, Vec<EdgeId>) = if arc.tail == r.from {
            (r.from, r.path.clone())
        } else {
            (r.to, r.path.iter().rev().copied().collect())
        };
        let mut cur = start;
        for pe in path {
            let nxt = t.other_end(pe, cur)?;
            w.assign(pe, cur, nxt)?;
            cur = nxt;
        }
    }
    let nested = st.w.arcs().all(|(e, a)| w.arc(e) == Some(a));
    let state = ExhaustionState {
        n: stage,
        a: dec.a.clone(),
        w,
        order,
    };
    let comps: Vec<VertexSet> = dec.components.iter().map(|c| c.vertices.clone()).collect();
    let mut invariants = check_invariants(&state, &comps, k);
    invariants.nested = nested;
    if !nested {
        invariants.detail.get_or_insert_with(|| "W_n's orientation was not kept".into());
    }
    if !invariants.holds() {
        return Err(Error::Invariant {
            stage,
            detail: format!(
                "{}; state {}",
                invariants.detail.clone().unwrap_or_default(),
                serde_json::to_string(&state.snapshot()).unwrap_or_default()
            ),
        });
    }
    let certificate = StageCertificate {
        stage,
        a_size: state.a.len(),
        w_vertices: state.w.base().vertex_count(),
        w_edges: state.w.base().edge_count(),
        decomposition: Some(DecompositionSummary {
            iterations: dec.iterations,
            work_depth: dec.work_depth,
            certificate_depth: dec.truncation.depth,
            components: dec.summaries(),
        }),
        immersion: Some(ImmersionSummary {
            h_vertices: cert.h.vertex_count(),
            h_edges: cert.h.edge_count(),
            x: cert.x.iter().copied().collect(),
            stats: cert.stats.clone(),
            check,
        }),
        invariants,
    };
    Ok((state, certificate, Some(cert)))
}

/// Orientation of H: arcs of W_n are kept, edges inside A_n not in W_n run from the smaller
/// id, and each piece of H with A_n contracted is extended around the contracted vertex.
fn orient_immersion(
    cert: &ImmersionCertificate,
    st: &ExhaustionState,
    k: u32,
    ext: ExtensionOptions,
    stage: usize,
) -> Result<Orientation> {
    let h = &cert.h;
    let an = &st.a;
    let mut d = Orientation::new(h.clone());
    for (e, u, w) in h.edges() {
        if an.contains(&u) && an.contains(&w) {
            match st.w.arc(e) {
                Some(a) => d.assign(e, a.tail, a.head)?,
                None => d.assign(e, u.min(w), u.max(w))?,
            }
        }
    }
    let (ht, v) = h.contracted(an)?;
    let outside = ht.complement(&[v].into());
    for piece in ht.induced(&outside).components() {
        let mut side = piece.clone();
        side.insert(v);
        let sub = ht.induced(&side);
        if sub.edge_count() == 0 {
            continue;
        }
        let map = |x: VertexId| if an.contains(&x) { v } else { x };
        let mut hb = Orientation::new(sub.clone());
        for e in sub.edge_ids() {
            if let Some(a) = st.w.arc(e) {
                hb.assign(e, map(a.tail), map(a.head))?;
            }
        }
        let mut terminals = vec![v];
        terminals.extend(piece.intersection(&cert.a).copied());
        let xs: Vec<VertexId> = piece.intersection(&cert.x).copied().collect();
        let db = extend_searching(&sub, &hb, ext, |o| {
            arc_connectivity_violation(o, &terminals, k).is_none()
                && xs.iter().all(|&x| o.in_degree(x) >= 1 && o.out_degree(x) >= 1)
        })?;
        for (e, arc) in db.arcs() {
            let (u, w) = h.endpoints(e).ok_or(Error::UnknownEdge(e))?;
            let tail = if arc.tail == v {
                if an.contains(&u) {
                    u
                } else {
                    w
                }
            } else {
                arc.tail
            };
            let head = if tail == u { w } else { u };
            d.assign(e, tail, head)?;
        }
    }
    let a: Vec<VertexId> = cert.a.iter().copied().collect();
    if let Some((x, y, f)) = arc_connectivity_violation(&d, &a, k) {
        return Err(Error::Invariant {
            stage,
            detail: format!("orientation of H has α({x}, {y}) = {f} < {k}"),
        });
    }
    Ok(d)
}

/// k = 1: extend W by ears inside a slightly deeper truncation and take A = V(W).
fn ear_step(
    g: &dyn LazyGraph,
    st: &ExhaustionState,
    order: Vec<VertexId>,
) -> Result<(ExhaustionState, StageCertificate)> {
    let stage = st.n + 1;
    let next = order[stage];
    let depth = st
        .w
        .base()
        .vertices()
        .chain([next])
        .map(|v| g.level(v))
        .max()
        .unwrap_or(0)
        + 1;
    let t = truncate(g, depth);
    let mut arcs: BTreeMap<EdgeId, (VertexId, VertexId)> =
        st.w.arcs().map(|(e, a)| (e, (a.tail, a.head))).collect();
    let mut verts = st.w.base().vertex_set();
    loop {
        let mut progress = false;
        let pending: Vec<(EdgeId, VertexId, VertexId)> =
            t.graph.edges().filter(|(e, _, _)| !arcs.contains_key(e)).collect();
        for (e, u, x) in pending {
            if arcs.contains_key(&e) {
                continue;
            }
            let (p, q) = match (verts.contains(&u), verts.contains(&x)) {
                (true, true) => {
                    arcs.insert(e, (u, x));
                    progress = true;
                    continue;
                }
                (true, false) => (u, x),
                (false, true) => (x, u),
                (false, false) => continue,
            };
            let blocked = |f: EdgeId| f == e || arcs.contains_key(&f);
            if let Some(ear) = shortest_path_avoiding(&t.graph, q, &verts, &blocked) {
                arcs.insert(e, (p, q));
                let mut cur = q;
                for (f, nxt) in ear {
                    arcs.insert(f, (cur, nxt));
                    verts.insert(cur);
                    cur = nxt;
                }
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let edges: EdgeSet = arcs.keys().copied().collect();
    let mut w = Orientation::new(t.graph.edge_subgraph(&edges));
    for (&e, &(tail, head)) in &arcs {
        w.assign(e, tail, head)?;
    }
    let state = ExhaustionState {
        n: stage,
        a: w.base().vertex_set(),
        w,
        order,
    };
    let mut invariants = check_invariants(&state, &[], 1);
    invariants.nested = st.w.arcs().all(|(e, a)| state.w.arc(e) == Some(a));
    if !invariants.holds() {
        return Err(Error::Invariant {
            stage,
            detail: invariants.detail.unwrap_or_else(|| "orientation not nested".into()),
        });
    }
    let certificate = StageCertificate {
        stage,
        a_size: state.a.len(),
        w_vertices: state.w.base().vertex_count(),
        w_edges: state.w.base().edge_count(),
        decomposition: None,
        immersion: None,
        invariants,
    };
    Ok((state, certificate))
}

/// Gate, stage 0, then `rounds` inductive steps.
pub fn run_simulation(
    g: &dyn LazyGraph,
    k: u32,
    rounds: usize,
    opts: SimulationOptions,
) -> Result<SimulationRun> {
    connectivity_gate(g, k)?;
    let st = stage_zero(g)?;
    let cycle_vertices: VertexSet = st.w.base().complement(&st.a);
    let invariants = check_invariants(&st, &[cycle_vertices], k.min(1));
    let mut certificates = vec![StageCertificate {
        stage: 0,
        a_size: 1,
        w_vertices: st.w.base().vertex_count(),
        w_edges: st.w.base().edge_count(),
        decomposition: None,
        immersion: None,
        invariants,
    }];
    let mut stages = vec![st];
    let mut immersions = Vec::new();
    for _ in 0..rounds {
        let (next, cert, imm) = step(g, stages.last().expect("stage 0"), k, opts)?;
        stages.push(next);
        certificates.push(cert);
        immersions.extend(imm);
    }
    Ok(SimulationRun {
        stages,
        certificates,
        immersions,
    })
}
