//! Checkable consequences of the structure theory, used as corpus oracles.

use super::dangerous::census;
use super::{LiftingGraph, TargetFunction, DEFAULT_DANGEROUS_BOUND};
use crate::error::Result;
use crate::multigraph::{EdgeId, Multigraph, VertexId};
use serde::{Deserialize, Serialize};

/// All maximal independent sets, as sorted node positions (Bron–Kerbosch on the complement).
pub fn maximal_independent_sets(lg: &LiftingGraph) -> Vec<Vec<usize>> {
    fn expand(
        lg: &LiftingGraph,
        r: &mut Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut set = r.clone();
            set.sort_unstable();
            out.push(set);
            return;
        }
        // pivot with most non-neighbours in p
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| w != u && !lg.adjacent(u, w)).count())
            .expect("p or x nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| v == pivot || lg.adjacent(pivot, v))
            .collect();
        for v in candidates {
            let keep = |w: &usize| *w != v && !lg.adjacent(v, *w);
            r.push(v);
            expand(
                lg,
                r,
                p.iter().copied().filter(keep).collect(),
                x.iter().copied().filter(keep).collect(),
                out,
            );
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    expand(lg, &mut Vec::new(), (0..lg.len()).collect(), Vec::new(), &mut out);
    out.sort();
    out
}

pub fn independence_number(lg: &LiftingGraph) -> usize {
    maximal_independent_sets(lg)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// With four nodes: K4, K2,2 or two disjoint edges.
pub fn degree_four_shape_holds(lg: &LiftingGraph) -> bool {
    if lg.len() != 4 {
        return false;
    }
    // complementary pairs are admissible together
    let matchings = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let present: Vec<bool> = matchings
        .iter()
        .map(|m| lg.adjacent(m[0].0, m[0].1))
        .collect();
    let consistent = matchings
        .iter()
        .all(|m| lg.adjacent(m[0].0, m[0].1) == lg.adjacent(m[1].0, m[1].1));
    let count = present.iter().filter(|&&p| p).count();
    consistent && count >= 1
}

/// Independent sets never exceed ⌈deg(s)/2⌉ nodes.
pub fn independent_set_bound_holds(lg: &LiftingGraph) -> bool {
    independence_number(lg) <= lg.len().div_ceil(2)
}

/// Violation of the maximal-independent-set intersection properties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionViolation {
    pub first: Vec<EdgeId>,
    pub second: Vec<EdgeId>,
    pub reason: String,
}

/// Two distinct maximal independent sets of size ≥ 2 share at most one node, and when they
/// share one their union is everything unless `level` is odd.
pub fn maximal_independent_intersections(
    lg: &LiftingGraph,
    level: u32,
) -> Option<IntersectionViolation> {
    let sets: Vec<Vec<usize>> = maximal_independent_sets(lg)
        .into_iter()
        .filter(|s| s.len() >= 2)
        .collect();
    let ids = |s: &[usize]| s.iter().map(|&i| lg.nodes()[i]).collect::<Vec<_>>();
    for (a, i1) in sets.iter().enumerate() {
        for i2 in &sets[a + 1..] {
            let common = i1.iter().filter(|x| i2.contains(x)).count();
            let union = i1.len() + i2.len() - common;
            let reason = if common > 1 {
                format!("intersection of size {common}")
            } else if common == 1 && union < lg.len() && level % 2 == 0 {
                format!("single common node, union {union} of {} nodes", lg.len())
            } else {
                continue;
            };
            return Some(IntersectionViolation {
                first: ids(i1),
                second: ids(i2),
                reason,
            });
        }
    }
    None
}

/// Outcome of checking r1 + r2 ≤ ⌊deg(s)/2⌋ + 2 over pairs of dangerous sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DangerousPairReport {
    pub pairs_checked: usize,
    pub hypotheses_met: usize,
    pub truncated: bool,
    pub violation: Option<(Vec<VertexId>, Vec<VertexId>)>,
}

/// For dangerous D1, D2 whose `s`-edges F1, F2 are independent, with F1 ∩ F2 nonempty and
/// strictly smaller than both, and with terminals outside D1 ∪ D2 ∪ {s}: r1 + r2 is bounded.
/// At most `max_pairs` pairs are examined.
pub fn dangerous_pair_bound(
    g: &Multigraph,
    tau: &TargetFunction,
    lg: &LiftingGraph,
    max_pairs: usize,
) -> Result<DangerousPairReport> {
    let s = lg.s();
    let c = census(g, tau, s, DEFAULT_DANGEROUS_BOUND)?;
    let edge_masks: Vec<u64> = lg
        .nodes()
        .iter()
        .map(|&e| c.ends_mask(g, s, &[e]))
        .collect::<Result<_>>()?;
    let independent = |f: u64| {
        (0..lg.len()).all(|i| {
            f >> i & 1 == 0 || (i + 1..lg.len()).all(|j| f >> j & 1 == 0 || !lg.adjacent(i, j))
        })
    };
    // s-edge set of each dangerous set, kept only when independent and nonempty
    let sets: Vec<(u64, u64)> = c
        .sets
        .iter()
        .filter_map(|&(d, _)| {
            let f = edge_masks
                .iter()
                .enumerate()
                .filter(|(_, &m)| m & d != 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
            (f != 0 && independent(f)).then_some((d, f))
        })
        .collect();
    let terminal_mask = c
        .order
        .iter()
        .enumerate()
        .filter(|(_, v)| tau.terminals().contains(v))
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    let cap = lg.len() / 2 + 2;
    let mut report = DangerousPairReport {
        pairs_checked: 0,
        hypotheses_met: 0,
        truncated: false,
        violation: None,
    };
    for (a, &(d1, f1)) in sets.iter().enumerate() {
        for &(d2, f2) in &sets[a + 1..] {
            if report.pairs_checked == max_pairs {
                report.truncated = true;
                return Ok(report);
            }
            report.pairs_checked += 1;
            let common = (f1 & f2).count_ones();
            let (r1, r2) = (f1.count_ones(), f2.count_ones());
            if common == 0 || r1 <= common || r2 <= common || terminal_mask & !(d1 | d2) == 0 {
                continue;
            }
            report.hypotheses_met += 1;
            if (r1 + r2) as usize > cap {
                report.violation = Some((
                    c.to_set(d1).into_iter().collect(),
                    c.to_set(d2).into_iter().collect(),
                ));
                return Ok(report);
            }
        }
    }
    Ok(report)
}
