//! Seeded instance generators, brute-force oracles, and the property suites run over them.
//!
//! Every instance is drawn from its own ChaCha stream (seed, index), so a suite is
//! deterministic for a given seed regardless of how rayon schedules it. Reports are merged
//! in digest order.

use crate::connectivity::{is_k_arc_connected, is_k_edge_connected};
use crate::error::{Error, Result};
use crate::lifting::{
    admissibility_monotone_check, check_hypotheses, classify, enumerate_dangerous_sets,
    frank_matching, frank_preconditions, is_lambda_admissible, lambda_lifting_graph,
    lifting_graph, verify_cut_identity, LiftingClass, TargetFunction,
};
use crate::multigraph::{GraphDocument, Multigraph, Orientation, VertexId, VertexSet};
use crate::orientation::{extend_to_well_balanced, extends, k_arc_orientation, verify_well_balanced};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::str::FromStr;

/// Largest edge count the brute-force orientation oracle accepts.
pub const BRUTE_FORCE_MAX_EDGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LiftingStructure,
    Frank,
    DangerousEquiv,
    CutIdentity,
    Wellbalanced,
    OrientationExhaustive,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::LiftingStructure,
        Suite::Frank,
        Suite::DangerousEquiv,
        Suite::CutIdentity,
        Suite::Wellbalanced,
        Suite::OrientationExhaustive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LiftingStructure => "lifting-structure",
            Suite::Frank => "frank",
            Suite::DangerousEquiv => "dangerous-equiv",
            Suite::CutIdentity => "cut-identity",
            Suite::Wellbalanced => "wellbalanced",
            Suite::OrientationExhaustive => "orientation-exhaustive",
        }
    }

    /// Instances, vertex bound and edge bound used when none are given.
    pub fn defaults(self) -> CorpusOptions {
        let (instances, max_n, max_m) = match self {
            Suite::LiftingStructure => (1000, 9, 40),
            Suite::Frank => (500, 7, 14),
            Suite::DangerousEquiv => (300, 10, 40),
            Suite::CutIdentity => (500, 8, 16),
            Suite::Wellbalanced => (2000, 6, 12),
            Suite::OrientationExhaustive => (2000, 6, 12),
        };
        CorpusOptions {
            seed: 1,
            instances,
            max_n,
            max_m,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Format(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusOptions {
    pub seed: u64,
    /// Instances drawn (not all are admitted).
    pub instances: usize,
    pub max_n: usize,
    pub max_m: usize,
}

/// The random stream for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Hex digest of a graph plus any extra context, stable across runs.
pub fn digest(g: &Multigraph, extra: &str) -> String {
    let mut h = DefaultHasher::new();
    GraphDocument::from_graph(g).to_json().hash(&mut h);
    extra.hash(&mut h);
    format!("{:016x}", h.finish())
}

// ---------------------------------------------------------------------------------------
// generators

/// Connected multigraph on `n` vertices with `m ≥ n − 1` edges: a random tree plus random
/// non-loop edges.
pub fn random_multigraph(rng: &mut impl Rng, n: usize, m: usize) -> Multigraph {
    assert!(n >= 1 && m + 1 >= n, "need n ≥ 1 and m ≥ n − 1");
    let mut edges = Vec::with_capacity(m);
    for v in 1..n as u64 {
        edges.push((rng.gen_range(0..v), v));
    }
    while edges.len() < m && n >= 2 {
        let u = rng.gen_range(0..n as u64);
        let v = rng.gen_range(0..n as u64);
        if u != v {
            edges.push((u, v));
        }
    }
    Multigraph::from_edges(n, &edges).expect("endpoints in range")
}

/// Edges of a random Hamiltonian cycle on `vertices` (a double edge when there are two).
pub fn random_cycle(rng: &mut impl Rng, vertices: &[u64]) -> Vec<(u64, u64)> {
    let mut order = vertices.to_vec();
    order.shuffle(rng);
    (0..order.len())
        .map(|i| (order[i], order[(i + 1) % order.len()]))
        .collect()
}

/// Union of `cycles` random Hamiltonian cycles on `n ≥ 2` vertices plus `noise` random
/// edges; 2·cycles-edge-connected by construction.
pub fn trail_union(rng: &mut impl Rng, n: usize, cycles: usize, noise: usize) -> Multigraph {
    let vs: Vec<u64> = (0..n as u64).collect();
    let mut edges = Vec::new();
    for _ in 0..cycles {
        edges.extend(random_cycle(rng, &vs));
    }
    let mut added = 0;
    while added < noise {
        let u = rng.gen_range(0..n as u64);
        let v = rng.gen_range(0..n as u64);
        if u != v {
            edges.push((u, v));
            added += 1;
        }
    }
    Multigraph::from_edges(n, &edges).expect("endpoints in range")
}

/// A connected multigraph with 2..=max_n vertices and at most `max_m` edges, drawn half the
/// time as a plain random graph and half the time as a union of closed trails, so that
/// both connectivity levels are well represented.
pub fn orientation_instance(rng: &mut impl Rng, max_n: usize, max_m: usize) -> Multigraph {
    let n = rng.gen_range(2..=max_n.max(2));
    let max_m = max_m.max(n);
    if rng.gen_bool(0.5) {
        let m = rng.gen_range(n - 1..=max_m);
        random_multigraph(rng, n, m)
    } else {
        let per = if n == 2 { 2 } else { n };
        let cycles = rng.gen_range(1..=(max_m / per).max(1));
        let room = max_m.saturating_sub(cycles * per);
        let noise = rng.gen_range(0..=room.min(3));
        trail_union(rng, n, cycles, noise)
    }
}

/// A random trail of `g`, oriented along its traversal; open or closed, possibly empty.
pub fn random_trail(rng: &mut impl Rng, g: &Multigraph) -> Orientation {
    let mut h = Orientation::new(g.clone());
    let vs: Vec<VertexId> = g.vertices().collect();
    if vs.is_empty() || g.edge_count() == 0 {
        return h;
    }
    let length = rng.gen_range(0..=g.edge_count());
    let mut at = *vs.choose(rng).expect("nonempty");
    for _ in 0..length {
        let free: Vec<(crate::EdgeId, VertexId)> =
            g.neighbors(at).filter(|(e, _)| h.arc(*e).is_none()).collect();
        let Some(&(e, w)) = free.choose(rng) else {
            break;
        };
        h.assign(e, at, w).expect("edge of the base");
        at = w;
    }
    h
}

/// An instance for the lifting-graph theorems: terminals A, the vertex s, and τ_A.
#[derive(Clone, Debug)]
pub struct LiftingInstance {
    pub g: Multigraph,
    pub s: VertexId,
    pub tau: TargetFunction,
}

impl LiftingInstance {
    pub fn witness(&self) -> serde_json::Value {
        serde_json::json!({
            "graph": GraphDocument::from_graph(&self.g),
            "s": self.s.0,
            "terminals": self.tau.terminals().iter().map(|v| v.0).collect::<Vec<_>>(),
            "level": self.tau.level(),
        })
    }
}

/// Draws an instance with `deg(s) = deg` and level `level`: A carries level/2 Hamiltonian
/// cycles, some cycle edges are subdivided through s, the rest of s's edges and up to two
/// extra non-terminals attach to A. Returns `None` when the draw violates the hypotheses
/// (λ ≥ level on A, no edge outside A, s ∉ A, A proper).
pub fn lifting_instance(
    rng: &mut impl Rng,
    max_n: usize,
    level: u32,
    deg: usize,
) -> Option<LiftingInstance> {
    let extras = rng.gen_range(0..=max_n.saturating_sub(4).min(2));
    let a_max = max_n.saturating_sub(1 + extras);
    if a_max < 2 {
        return None;
    }
    let a = rng.gen_range(2..=a_max) as u64;
    let terminals: Vec<u64> = (0..a).collect();
    let s = a;
    let mut edges = Vec::new();
    for _ in 0..level / 2 {
        edges.extend(random_cycle(rng, &terminals));
    }
    edges.shuffle(rng);
    let subdivide = rng.gen_range(0..=(deg / 2).min(edges.len()));
    for i in 0..subdivide {
        let (u, v) = edges[i];
        edges[i] = (u, s);
        edges.push((s, v));
    }
    for _ in 0..deg - 2 * subdivide {
        edges.push((s, rng.gen_range(0..a)));
    }
    for x in 0..extras as u64 {
        for _ in 0..rng.gen_range(2..=4) {
            edges.push((s + 1 + x, rng.gen_range(0..a)));
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let (u, v) = (rng.gen_range(0..a), rng.gen_range(0..a));
        if u != v {
            edges.push((u, v));
        }
    }
    let n = (a + 1) as usize + extras;
    let g = Multigraph::from_edges(n, &edges).ok()?;
    let s = VertexId(s);
    let tau = TargetFunction::new(&g, terminals.into_iter().map(VertexId).collect(), level).ok()?;
    check_hypotheses(&g, &tau, s).ok()?;
    (g.degree(s) == deg).then_some(LiftingInstance { g, s, tau })
}

/// A lifting instance with deg(s) ∈ 4..=8 and level ∈ {4, 6}, retried until admitted.
pub fn admitted_lifting_instance(rng: &mut impl Rng, max_n: usize) -> (LiftingInstance, usize) {
    let mut draws = 0;
    loop {
        draws += 1;
        let level = *[4, 6].choose(rng).expect("nonempty");
        let deg = rng.gen_range(4..=8);
        if let Some(inst) = lifting_instance(rng, max_n, level, deg) {
            return (inst, draws);
        }
    }
}

// ---------------------------------------------------------------------------------------
// brute force

/// An orientation of `g` with at least `k` arcs leaving every nonempty proper vertex set,
/// found by enumerating all 2^m orientations; `None` if there is none.
pub fn brute_force_k_arc_orientation(g: &Multigraph, k: u32) -> Result<Option<Orientation>> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    let m = g.edge_count();
    if m > BRUTE_FORCE_MAX_EDGES || n > 16 {
        return Err(Error::BoundExceeded {
            what: "brute-force orientation size",
            found: m.max(n),
            bound: BRUTE_FORCE_MAX_EDGES,
        });
    }
    if n < 2 {
        return Ok(Some(Orientation::new(g.clone())));
    }
    let bit = |v: VertexId| 1u32 << ids.iter().position(|&x| x == v).expect("vertex of g");
    let ends: Vec<(crate::EdgeId, u32, u32)> =
        g.edges().map(|(e, u, v)| (e, bit(u), bit(v))).collect();
    // singletons first: they fail most orientations quickly
    let full = (1u32 << n) - 1;
    let mut sides: Vec<u32> = (1..full).collect();
    sides.sort_by_key(|s| s.count_ones());
    for o in 0u64..1 << m {
        let ok = sides.iter().all(|&side| {
            let out = ends
                .iter()
                .enumerate()
                .filter(|&(i, &(_, u, v))| {
                    let (t, h) = if o >> i & 1 == 0 { (u, v) } else { (v, u) };
                    side & t != 0 && side & h == 0
                })
                .count();
            out as u32 >= k
        });
        if ok {
            let mut d = Orientation::new(g.clone());
            for (i, &(e, _, _)) in ends.iter().enumerate() {
                let (u, v) = g.endpoints(e).expect("edge of g");
                let (t, h) = if o >> i & 1 == 0 { (u, v) } else { (v, u) };
                d.assign(e, t, h)?;
            }
            return Ok(Some(d));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------------------
// suites

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub digest: String,
    pub check: String,
    pub detail: String,
    /// Enough to replay the case.
    pub witness: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub options: CorpusOptions,
    pub admitted: usize,
    pub passed: usize,
    pub failures: Vec<CaseFailure>,
    /// Counters by outcome kind, e.g. lifting classes seen.
    pub tally: BTreeMap<String, usize>,
}

impl SuiteReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Default)]
struct Case {
    digest: String,
    admitted: bool,
    tags: Vec<String>,
    failures: Vec<CaseFailure>,
}

impl Case {
    fn new(digest: String) -> Self {
        Self {
            digest,
            admitted: true,
            ..Self::default()
        }
    }

    fn fail(&mut self, check: &str, detail: impl Into<String>, witness: &serde_json::Value) {
        self.failures.push(CaseFailure {
            digest: self.digest.clone(),
            check: check.into(),
            detail: detail.into(),
            witness: witness.clone(),
        });
    }

    fn tag(&mut self, t: impl Into<String>) {
        self.tags.push(t.into());
    }
}

pub fn run_suite(suite: Suite, opts: CorpusOptions) -> SuiteReport {
    let one = |i: usize| -> Case {
        let mut rng = instance_rng(opts.seed, i as u64);
        match suite {
            Suite::LiftingStructure => lifting_structure_case(&mut rng, opts),
            Suite::Frank => frank_case(&mut rng, opts),
            Suite::DangerousEquiv => dangerous_case(&mut rng, opts),
            Suite::CutIdentity => cut_identity_case(&mut rng, opts),
            Suite::Wellbalanced => wellbalanced_case(&mut rng, opts),
            Suite::OrientationExhaustive => orientation_case(&mut rng, opts),
        }
    };
    let mut cases: Vec<Case> = (0..opts.instances).into_par_iter().map(one).collect();
    cases.sort_by(|a, b| a.digest.cmp(&b.digest));
    let mut report = SuiteReport {
        suite,
        options: opts,
        admitted: 0,
        passed: 0,
        failures: Vec::new(),
        tally: BTreeMap::new(),
    };
    for c in cases {
        if !c.admitted {
            *report.tally.entry("rejected".into()).or_default() += 1;
            continue;
        }
        report.admitted += 1;
        if c.failures.is_empty() {
            report.passed += 1;
        }
        for t in c.tags {
            *report.tally.entry(t).or_default() += 1;
        }
        report.failures.extend(c.failures);
    }
    report
}

fn class_name(c: &LiftingClass) -> &'static str {
    match c {
        LiftingClass::CompleteMultipartite { .. } => "complete-multipartite",
        LiftingClass::IsolatedPlusBalancedBipartite { .. } => "isolated-plus-bipartite",
        LiftingClass::Other { .. } => "other",
    }
}

fn lifting_structure_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let (inst, _) = admitted_lifting_instance(rng, opts.max_n);
    let w = inst.witness();
    let mut case = Case::new(digest(&inst.g, &w.to_string()));
    let lg = match lifting_graph(&inst.g, &inst.tau, inst.s) {
        Ok(lg) => lg,
        Err(e) => {
            case.fail("lifting-graph", e.to_string(), &w);
            return case;
        }
    };
    let class = classify(&lg);
    let deg = inst.g.degree(inst.s);
    case.tag(format!("{}/deg{deg}", class_name(&class)));
    match &class {
        LiftingClass::Other { witness } => {
            case.fail("classify", format!("non-transitive non-adjacency at {witness:?}"), &w)
        }
        LiftingClass::IsolatedPlusBalancedBipartite { .. } if deg % 2 == 0 => {
            case.fail("classify", "isolated node with even deg(s)", &w)
        }
        _ => {}
    }
    if inst.g.vertex_count() <= 8 {
        match admissibility_monotone_check(&inst.g, &inst.tau, inst.s) {
            Ok(r) if r.holds => case.tag("monotone-checked"),
            Ok(r) => case.fail("monotone", format!("{:?}", r.witness), &w),
            Err(e) => case.fail("monotone", e.to_string(), &w),
        }
    }
    case
}

fn frank_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let n = rng.gen_range(3..=opts.max_n.max(3));
    let m = rng.gen_range(n - 1..=opts.max_m.max(n));
    let g = random_multigraph(rng, n, m);
    let s = VertexId(rng.gen_range(0..n as u64));
    let w = serde_json::json!({ "graph": GraphDocument::from_graph(&g), "s": s.0 });
    let mut case = Case::new(digest(&g, &s.to_string()));
    if frank_preconditions(&g, s).is_err() || g.degree(s) < 2 {
        case.admitted = false;
        return case;
    }
    let result = lambda_lifting_graph(&g, s).and_then(|lg| frank_matching(&g, &lg));
    match result {
        Ok(pairs) => {
            case.tag(format!("deg{}", g.degree(s)));
            for (e1, e2) in pairs {
                if !is_lambda_admissible(&g, s, e1, e2).unwrap_or(false) {
                    case.fail("frank", format!("pair ({e1}, {e2}) not admissible"), &w);
                }
            }
        }
        Err(e) => case.fail("frank", e.to_string(), &w),
    }
    case
}

fn dangerous_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let (inst, _) = admitted_lifting_instance(rng, opts.max_n.min(10));
    let w = inst.witness();
    let mut case = Case::new(digest(&inst.g, &w.to_string()));
    let run = || -> Result<(usize, usize, Option<Vec<u64>>)> {
        let lg = lifting_graph(&inst.g, &inst.tau, inst.s)?;
        let sets = enumerate_dangerous_sets(&inst.g, &inst.tau, inst.s)?;
        let ends: Vec<VertexId> = lg
            .nodes()
            .iter()
            .map(|&e| inst.g.other_end(e, inst.s))
            .collect::<Result<_>>()?;
        let (mut independent, mut checked) = (0, 0);
        for mask in 0u32..1 << lg.len() {
            if mask.count_ones() < 2 {
                continue;
            }
            checked += 1;
            let f: Vec<usize> = (0..lg.len()).filter(|i| mask >> i & 1 == 1).collect();
            let pairwise_bad = f
                .iter()
                .all(|&i| f.iter().all(|&j| i == j || !lg.adjacent(i, j)));
            let need: VertexSet = f.iter().map(|&i| ends[i]).collect();
            let covered = sets.iter().any(|d| need.is_subset(&d.set));
            if pairwise_bad {
                independent += 1;
            }
            if pairwise_bad != covered {
                let edges = f.iter().map(|&i| lg.nodes()[i].0).collect();
                return Ok((independent, checked, Some(edges)));
            }
        }
        Ok((independent, checked, None))
    };
    match run() {
        Ok((independent, _, None)) => {
            case.tag(if independent > 0 { "has-independent-set" } else { "no-independent-set" })
        }
        Ok((_, _, Some(f))) => case.fail("dangerous-equiv", format!("edge set {f:?}"), &w),
        Err(e) => case.fail("dangerous-equiv", e.to_string(), &w),
    }
    case
}

fn cut_identity_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let n = rng.gen_range(2..=opts.max_n.max(2));
    let m = rng.gen_range(n - 1..=opts.max_m.max(n));
    let g = random_multigraph(rng, n, m);
    let pick = |rng: &mut ChaCha8Rng| -> VertexSet {
        g.vertices().filter(|_| rng.gen_bool(0.5)).collect()
    };
    let (a1, a2) = (pick(rng), pick(rng));
    let w = serde_json::json!({
        "graph": GraphDocument::from_graph(&g),
        "a1": a1.iter().map(|v| v.0).collect::<Vec<_>>(),
        "a2": a2.iter().map(|v| v.0).collect::<Vec<_>>(),
    });
    let mut case = Case::new(digest(&g, &w.to_string()));
    if !verify_cut_identity(&g, &a1, &a2) {
        case.fail("cut-identity", "sides differ", &w);
    }
    case
}

fn wellbalanced_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let g = orientation_instance(rng, opts.max_n, opts.max_m);
    let h = random_trail(rng, &g);
    let w = serde_json::json!({ "graph": GraphDocument::from_orientation(&h) });
    let mut case = Case::new(digest(&g, &w.to_string()));
    case.tag(if h.assigned_count() == 0 { "empty-trail" } else { "trail" });
    match extend_to_well_balanced(&g, &h) {
        Ok(d) => {
            if !d.is_total() || !extends(&d, &h) {
                case.fail("extension", "result is partial or disagrees with h", &w);
            }
            let r = verify_well_balanced(&d);
            if !r.holds {
                case.fail("well-balanced", format!("{:?}", r.worst), &w);
            }
        }
        Err(e) => case.fail("extension", e.to_string(), &w),
    }
    case
}

fn orientation_case(rng: &mut ChaCha8Rng, opts: CorpusOptions) -> Case {
    let g = orientation_instance(rng, opts.max_n, opts.max_m);
    let w = serde_json::json!({ "graph": GraphDocument::from_graph(&g) });
    let mut case = Case::new(digest(&g, ""));
    for k in 1..=2u32 {
        let connected = is_k_edge_connected(&g, 2 * k);
        let pipeline = match k_arc_orientation(&g, k) {
            Ok(d) => {
                if !is_k_arc_connected(&d, k) {
                    case.fail("k-arc", format!("k = {k}: output not k-arc-connected"), &w);
                }
                true
            }
            Err(Error::NotEdgeConnected { .. }) => false,
            Err(e) => {
                case.fail("k-arc", format!("k = {k}: {e}"), &w);
                false
            }
        };
        if g.edge_count() <= opts.max_m.min(BRUTE_FORCE_MAX_EDGES) {
            match brute_force_k_arc_orientation(&g, k) {
                Ok(b) => {
                    let exists = b.is_some();
                    if exists != pipeline || exists != connected {
                        case.fail(
                            "feasibility",
                            format!("k = {k}: brute {exists}, pipeline {pipeline}, 2k-connected {connected}"),
                            &w,
                        );
                    }
                }
                Err(e) => case.fail("feasibility", e.to_string(), &w),
            }
        }
        case.tag(format!("k{k}/{}", if connected { "feasible" } else { "infeasible" }));
    }
    case
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::lambda_value;

    #[test]
    fn generators_are_deterministic() {
        let a = random_multigraph(&mut instance_rng(7, 3), 6, 10);
        let b = random_multigraph(&mut instance_rng(7, 3), 6, 10);
        assert_eq!(GraphDocument::from_graph(&a), GraphDocument::from_graph(&b));
        assert!(a.is_connected());
        assert_eq!(a.edge_count(), 10);
    }

    #[test]
    fn trail_union_is_connected_enough() {
        let mut rng = instance_rng(1, 0);
        for n in 2..=6 {
            let g = trail_union(&mut rng, n, 2, 0);
            assert!(is_k_edge_connected(&g, 4), "n = {n}");
        }
    }

    #[test]
    fn random_trail_is_a_trail() {
        let mut rng = instance_rng(2, 0);
        for _ in 0..50 {
            let g = orientation_instance(&mut rng, 6, 12);
            let h = random_trail(&mut rng, &g);
            let unbalanced: Vec<i64> = g
                .vertices()
                .map(|v| h.imbalance(v))
                .filter(|&x| x != 0)
                .collect();
            assert!(unbalanced.is_empty() || (unbalanced.len() == 2 && unbalanced.iter().sum::<i64>() == 0));
        }
    }

    #[test]
    fn lifting_instances_meet_hypotheses() {
        let mut rng = instance_rng(3, 0);
        for _ in 0..20 {
            let (inst, _) = admitted_lifting_instance(&mut rng, 9);
            let a: Vec<VertexId> = inst.tau.terminals().iter().copied().collect();
            for i in 0..a.len() {
                for j in i + 1..a.len() {
                    assert!(lambda_value(&inst.g, a[i], a[j]).unwrap() >= inst.tau.level());
                }
            }
            assert!((4..=8).contains(&inst.g.degree(inst.s)));
        }
    }

    #[test]
    fn brute_force_matches_small_cases() {
        let c4 = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(brute_force_k_arc_orientation(&c4, 1).unwrap().is_some());
        assert!(brute_force_k_arc_orientation(&c4, 2).unwrap().is_none());
        let p3 = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(brute_force_k_arc_orientation(&p3, 1).unwrap().is_none());
        let d = brute_force_k_arc_orientation(&c4, 1).unwrap().unwrap();
        assert!(is_k_arc_connected(&d, 1));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass_and_are_deterministic() {
        for suite in Suite::ALL {
            let opts = CorpusOptions {
                instances: 12,
                ..suite.defaults()
            };
            let r = run_suite(suite, opts);
            assert!(r.holds(), "{suite}: {:?}", r.failures);
            assert_eq!(r, run_suite(suite, opts));
        }
    }
}
