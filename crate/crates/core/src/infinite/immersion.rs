//! Immersions of a finite 3-edge-connected multigraph H on A ∪ X into G.
//!
//! Each component of G − A is contracted to a vertex s whose edges are lifted in admissible
//! pairs, every lift being realized by a path through the component that uses the two rays
//! of the lifted edges plus free edges, never touching the rays still in play. A component
//! left with three edges gets a vertex x joined to them by three edge-disjoint paths.

use super::component::ComponentView;
use super::decompose::{BoundaryLinkedComponent, Decomposition};
use super::raygraph::{Rays, DEFAULT_RAY_THRESHOLD};
use crate::connectivity::{is_k_edge_connected, lambda_capped};
use crate::error::{Error, Result};
use crate::lifting::{lifting_graph_unchecked, AdmissibilityContext, TargetFunction};
use crate::multigraph::{EdgeId, Multigraph, VertexId, VertexSet};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// Ids at or above this are synthetic: contracted components and lifted edges.
pub const SYNTHETIC_FLOOR: u64 = 1 << 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionOptions {
    pub ray_threshold: u32,
    /// Admissible candidates tested against the ray graph before settling for one that is
    /// only admissible.
    pub join_candidates: usize,
    /// Vertices tried as the centre of a three-path fan.
    pub fan_candidates: usize,
}

impl Default for ImmersionOptions {
    fn default() -> Self {
        Self {
            ray_threshold: DEFAULT_RAY_THRESHOLD,
            join_candidates: 4,
            fan_candidates: 400,
        }
    }
}

/// A path in G realizing one edge of H, listed from `from` to `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub from: VertexId,
    pub to: VertexId,
    pub path: Vec<EdgeId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionStats {
    pub lifted_pairs: usize,
    /// Lifts whose two rays were adjacent in the ray graph.
    pub joined_pairs: usize,
    /// Lifts accepted on admissibility alone.
    pub unjoined_pairs: usize,
    /// Lifts whose two edges met the same vertex of A, leaving no edge behind.
    pub dropped_loops: usize,
    pub three_remaining: usize,
    pub isolated_node: usize,
}

#[derive(Clone, Debug)]
pub struct ImmersionCertificate {
    pub h: Multigraph,
    pub a: VertexSet,
    pub x: VertexSet,
    pub realization: BTreeMap<EdgeId, Realization>,
    pub stats: ImmersionStats,
}

pub fn build_immersion(dec: &Decomposition, k: u32) -> Result<ImmersionCertificate> {
    build_immersion_with(dec, k, ImmersionOptions::default())
}

fn terminal_shortfall(g: &Multigraph, terminals: &VertexSet, need: u32) -> Option<(VertexId, VertexId, u32)> {
    let mut it = terminals.iter();
    let root = *it.next()?;
    for &t in it {
        let l = lambda_capped(g, root, t, need).expect("vertices present");
        if l < need {
            return Some((root, t, l));
        }
    }
    None
}

pub fn build_immersion_with(
    dec: &Decomposition,
    k: u32,
    opts: ImmersionOptions,
) -> Result<ImmersionCertificate> {
    if k < 2 {
        return Err(Error::Hypothesis(format!("immersion building needs k ≥ 2, got {k}")));
    }
    let t = &dec.truncation.graph;
    let a = &dec.a;
    let mut gc = Multigraph::new();
    let mut realization = BTreeMap::new();
    for &v in a {
        gc.insert_vertex(v, t.label(v).map(String::from))?;
    }
    for (e, u, v) in t.edges() {
        if a.contains(&u) && a.contains(&v) {
            gc.insert_edge(e, u, v)?;
            realization.insert(
                e,
                Realization {
                    from: u,
                    to: v,
                    path: vec![e],
                },
            );
        }
    }
    gc.reserve_ids(SYNTHETIC_FLOOR, SYNTHETIC_FLOOR);
    let mut contracted = Vec::new();
    for comp in &dec.components {
        let s = gc.add_vertex();
        for &e in &comp.boundary {
            let (u, v) = t.endpoints(e).ok_or(Error::UnknownEdge(e))?;
            gc.insert_edge(e, if a.contains(&u) { u } else { v }, s)?;
        }
        contracted.push(s);
    }
    if let Some((x, y, found)) = terminal_shortfall(&gc, a, 2 * k) {
        return Err(Error::TargetTooHigh {
            level: 2 * k,
            found,
            x,
            y,
        });
    }
    let tau = TargetFunction::unchecked(a.clone(), 2 * k);
    let mut stats = ImmersionStats::default();
    let mut fans = Vec::new();
    for (comp, &s) in dec.components.iter().zip(&contracted) {
        let mut run = ComponentRun::new(t, comp, s, opts)?;
        let fan = run.lift_all(&mut gc, &tau, &mut realization, &mut stats)?;
        fans.push(fan);
    }

    let mut h = gc;
    let mut x = VertexSet::new();
    for (fan, &s) in fans.into_iter().zip(&contracted) {
        if let Some((xv, legs)) = fan {
            h.insert_vertex(xv, t.label(xv).map(String::from))?;
            for (e, mut path) in legs {
                let outer = h.other_end(e, s)?;
                h.remove_edge(e)?;
                let ne = h.add_edge(xv, outer)?;
                path.push(e);
                realization.insert(
                    ne,
                    Realization {
                        from: xv,
                        to: outer,
                        path,
                    },
                );
            }
            x.insert(xv);
        }
        if h.degree(s) != 0 {
            return Err(Error::Certificate(format!(
                "contracted vertex {s} kept {} unlifted edges",
                h.degree(s)
            )));
        }
        h.remove_vertex(s)?;
    }
    Ok(ImmersionCertificate {
        h,
        a: a.clone(),
        x,
        realization,
        stats,
    })
}

type Fan = Option<(VertexId, Vec<(EdgeId, Vec<EdgeId>)>)>;

/// Lifting state of one component.
struct ComponentRun {
    view: ComponentView,
    rays: Rays,
    s: VertexId,
    live: Vec<bool>,
    used: Vec<bool>,
    opts: ImmersionOptions,
}

impl ComponentRun {
    fn new(t: &Multigraph, comp: &BoundaryLinkedComponent, s: VertexId, opts: ImmersionOptions) -> Result<Self> {
        let view = ComponentView::new(t, &comp.vertices);
        if view.boundary.iter().map(|b| b.0).ne(comp.boundary.iter().copied()) {
            return Err(Error::Certificate(format!(
                "component at {} has a boundary different from its certificate",
                comp.vertices.first().expect("nonempty")
            )));
        }
        let rays = Rays::new(&view, comp)?;
        let nb = view.boundary.len();
        let m = view.edges.len();
        Ok(Self {
            view,
            rays,
            s,
            live: vec![true; nb],
            used: vec![false; m],
            opts,
        })
    }

    fn live_indices(&self) -> Vec<usize> {
        (0..self.live.len()).filter(|&b| self.live[b]).collect()
    }

    /// Free edges, plus the rays of `own`; rays of other live boundary edges are reserved.
    fn allowed<'a>(&'a self, own: &'a [usize]) -> impl Fn(usize) -> bool + 'a {
        move |p| {
            !self.used[p]
                && match self.rays.owner.get(&p) {
                    Some(&r) => !self.live[r] || own.contains(&r),
                    None => true,
                }
        }
    }

    fn edge(&self, b: usize) -> EdgeId {
        self.view.boundary[b].0
    }

    fn inner(&self, b: usize) -> usize {
        self.view.boundary[b].2
    }

    fn joined(&self, i: usize, j: usize) -> bool {
        let free = |p: usize| !self.used[p];
        self.rays
            .joined(&self.view, i, j, &self.live, &free, self.opts.ray_threshold)
    }

    fn lift_all(
        &mut self,
        gc: &mut Multigraph,
        tau: &TargetFunction,
        realization: &mut BTreeMap<EdgeId, Realization>,
        stats: &mut ImmersionStats,
    ) -> Result<Fan> {
        let mut fan: Fan = None;
        loop {
            let live = self.live_indices();
            if live.is_empty() {
                break;
            }
            if live.len() == 3 && fan.is_none() {
                let found = self.attach(&live)?.ok_or_else(|| {
                    Error::Certificate(format!(
                        "no vertex with three edge-disjoint paths to the last edges at {}",
                        self.s
                    ))
                })?;
                stats.three_remaining += 1;
                fan = Some(found);
                break;
            }
            match self.find_pair(gc, tau, &live)? {
                Some((ba, bb, path, joined)) => {
                    self.realize(gc, ba, bb, &path, realization, stats)?;
                    if joined {
                        stats.joined_pairs += 1;
                    } else {
                        stats.unjoined_pairs += 1;
                    }
                }
                None if fan.is_none() && live.len() % 2 == 1 && live.len() >= 5 => {
                    fan = Some(self.isolated_case(gc, tau, &live)?);
                    stats.isolated_node += 1;
                }
                None => {
                    return Err(Error::Certificate(format!(
                        "no admissible, realizable pair among {} edges at {} (frozen: {})",
                        live.len(),
                        self.s,
                        fan.is_some()
                    )))
                }
            }
        }
        Ok(fan)
    }

    fn find_pair(
        &self,
        gc: &Multigraph,
        tau: &TargetFunction,
        live: &[usize],
    ) -> Result<Option<(usize, usize, Vec<usize>, bool)>> {
        let ctx = AdmissibilityContext::new(gc, tau, self.s)?;
        for &ba in live {
            let mut cands = Vec::new();
            for &bb in live {
                if bb == ba {
                    continue;
                }
                let own = [ba, bb];
                let allowed = self.allowed(&own);
                if let Some(path) = self.view.shortest_path(self.inner(ba), self.inner(bb), &allowed) {
                    cands.push((path.len(), bb, path));
                }
            }
            cands.sort();
            let mut fallback = None;
            let mut tested = 0;
            for (_, bb, path) in cands {
                if !ctx.admissible_edges(self.edge(ba), self.edge(bb))? {
                    continue;
                }
                if tested < self.opts.join_candidates {
                    tested += 1;
                    if self.joined(ba, bb) {
                        return Ok(Some((ba, bb, path, true)));
                    }
                }
                if fallback.is_none() {
                    fallback = Some((ba, bb, path, false));
                }
                if tested >= self.opts.join_candidates {
                    break;
                }
            }
            if fallback.is_some() {
                return Ok(fallback);
            }
        }
        Ok(None)
    }

    fn realize(
        &mut self,
        gc: &mut Multigraph,
        ba: usize,
        bb: usize,
        path: &[usize],
        realization: &mut BTreeMap<EdgeId, Realization>,
        stats: &mut ImmersionStats,
    ) -> Result<()> {
        let (ea, eb) = (self.edge(ba), self.edge(bb));
        let (xa, xb) = gc.lift_ends(self.s, ea, eb)?;
        for &p in path {
            self.used[p] = true;
        }
        self.live[ba] = false;
        self.live[bb] = false;
        stats.lifted_pairs += 1;
        if xa == xb {
            gc.remove_edge(ea)?;
            gc.remove_edge(eb)?;
            stats.dropped_loops += 1;
            return Ok(());
        }
        let ne = gc.lift(self.s, ea, eb)?;
        let mut edges = vec![ea];
        edges.extend(path.iter().map(|&p| self.view.edges[p].0));
        edges.push(eb);
        realization.insert(
            ne,
            Realization {
                from: xa,
                to: xb,
                path: edges,
            },
        );
        Ok(())
    }

    /// A vertex with edge-disjoint paths to the inner ends of `targets`; the paths are
    /// reserved and the targets leave the live set.
    fn attach(&mut self, targets: &[usize]) -> Result<Fan> {
        let allowed = self.allowed(targets);
        let inner: Vec<usize> = targets.iter().map(|&b| self.inner(b)).collect();
        let dists: Vec<Vec<usize>> = inner
            .iter()
            .map(|&c| self.view.distances(c, &allowed))
            .collect();
        let mut cands: Vec<(usize, usize)> = (0..self.view.n())
            .filter(|&v| dists.iter().all(|d| d[v] != usize::MAX))
            .map(|v| (dists.iter().map(|d| d[v]).sum(), v))
            .collect();
        cands.sort();
        let mut found = None;
        for &(_, v) in cands.iter().take(self.opts.fan_candidates) {
            if let Some(paths) = self.view.fan(v, &inner, &allowed) {
                found = Some((v, paths));
                break;
            }
        }
        drop(allowed);
        let Some((v, paths)) = found else {
            return Ok(None);
        };
        let mut legs = Vec::new();
        for (&b, path) in targets.iter().zip(&paths) {
            for &p in path {
                self.used[p] = true;
            }
            self.live[b] = false;
            legs.push((self.edge(b), path.iter().map(|&p| self.view.edges[p].0).collect()));
        }
        Ok(Some((self.view.ids[v], legs)))
    }

    /// No pair can be lifted: freeze an isolated node of the lifting graph together with one
    /// admissible pair, joined at a new vertex, and carry on with the rest.
    fn isolated_case(
        &mut self,
        gc: &Multigraph,
        tau: &TargetFunction,
        live: &[usize],
    ) -> Result<(VertexId, Vec<(EdgeId, Vec<EdgeId>)>)> {
        let lg = lifting_graph_unchecked(gc, tau, self.s)?;
        let node = |b: usize| {
            lg.nodes()
                .iter()
                .position(|&e| e == self.edge(b))
                .expect("live edge at s")
        };
        let isolated = live
            .iter()
            .copied()
            .find(|&b| live.iter().all(|&c| c == b || !lg.adjacent(node(b), node(c))));
        let Some(star) = isolated else {
            return Err(Error::Certificate(format!(
                "no admissible, realizable pair at {} and the lifting graph has no isolated node: {:?}",
                self.s,
                live.iter().map(|&b| self.edge(b)).collect::<Vec<_>>()
            )));
        };
        let mut pairs = Vec::new();
        for (i, &b1) in live.iter().enumerate() {
            for &b2 in &live[i + 1..] {
                if b1 != star && b2 != star && lg.adjacent(node(b1), node(b2)) {
                    let score = usize::from(self.joined(star, b1)) + usize::from(self.joined(star, b2));
                    pairs.push((std::cmp::Reverse(score), b1, b2));
                }
            }
        }
        pairs.sort();
        for (_, b1, b2) in pairs {
            if let Some(found) = self.attach(&[star, b1, b2])? {
                return Ok(found);
            }
        }
        Err(Error::Certificate(format!(
            "isolated edge {} at {} cannot be joined to an admissible pair",
            self.edge(star),
            self.s
        )))
    }
}

/// Outcome of checking an immersion certificate against the truncation it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionCheck {
    pub paths_valid: bool,
    pub paths_disjoint: bool,
    pub x_degree_three: bool,
    pub lambda_on_a: bool,
    pub three_edge_connected: bool,
    pub a_edges_kept: bool,
    pub detail: Option<String>,
}

impl ImmersionCheck {
    pub fn holds(&self) -> bool {
        self.paths_valid
            && self.paths_disjoint
            && self.x_degree_three
            && self.lambda_on_a
            && self.three_edge_connected
            && self.a_edges_kept
    }
}

pub fn verify_immersion(cert: &ImmersionCertificate, t: &Multigraph, k: u32) -> ImmersionCheck {
    let mut detail = None;
    let mut note = |s: String| {
        if detail.is_none() {
            detail = Some(s);
        }
    };
    let mut paths_valid = true;
    let mut seen = BTreeSet::new();
    let mut paths_disjoint = true;
    for (e, u, v) in cert.h.edges() {
        let Some(r) = cert.realization.get(&e) else {
            paths_valid = false;
            note(format!("H-edge {e} has no realization"));
            continue;
        };
        if !((r.from == u && r.to == v) || (r.from == v && r.to == u)) {
            paths_valid = false;
            note(format!("H-edge {e} joins {u}, {v} but is realized from {} to {}", r.from, r.to));
        }
        let mut cur = r.from;
        for &pe in &r.path {
            match t.other_end(pe, cur) {
                Ok(w) => cur = w,
                Err(_) => {
                    paths_valid = false;
                    note(format!("realization of {e} breaks at {pe}"));
                    break;
                }
            }
            if !seen.insert(pe) {
                paths_disjoint = false;
                note(format!("edge {pe} is used twice"));
            }
        }
        if cur != r.to {
            paths_valid = false;
            note(format!("realization of {e} ends at {cur}, not {}", r.to));
        }
    }
    let x_degree_three = cert.x.iter().all(|&x| cert.h.degree(x) == 3);
    if !x_degree_three {
        note("some vertex of X does not have degree 3".into());
    }
    let lambda_on_a = match terminal_shortfall(&cert.h, &cert.a, 2 * k) {
        None => true,
        Some((x, y, l)) => {
            note(format!("λ_H({x}, {y}) = {l} < {}", 2 * k));
            false
        }
    };
    let three_edge_connected = is_k_edge_connected(&cert.h, 3);
    if !three_edge_connected {
        note("H is not 3-edge-connected".into());
    }
    let a_edges_kept = t.edges().all(|(e, u, v)| {
        !(cert.a.contains(&u) && cert.a.contains(&v))
            || (cert.h.endpoints(e).is_some()
                && cert.realization.get(&e).is_some_and(|r| r.path == [e]))
    });
    if !a_edges_kept {
        note("an edge of G inside A is missing from H".into());
    }
    ImmersionCheck {
        paths_valid,
        paths_disjoint,
        x_degree_three,
        lambda_on_a,
        three_edge_connected,
        a_edges_kept,
        detail,
    }
}
