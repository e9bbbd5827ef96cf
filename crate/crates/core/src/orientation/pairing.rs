use crate::connectivity::{even_floor, LambdaTable};
use crate::error::{Error, Result};
use crate::multigraph::{DenseGraph, Multigraph, VertexId, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub const DEFAULT_PAIRING_BOUND: usize = 12;

/// A perfect pairing of the odd-degree vertices, each pair with the smaller id first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddVertexPairing {
    pub pairs: Vec<(VertexId, VertexId)>,
}

impl OddVertexPairing {
    fn from_pairs(mut pairs: Vec<(VertexId, VertexId)>) -> Self {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        Self { pairs }
    }

    /// Whether the pairs partition exactly the odd-degree vertices of `g`.
    pub fn covers_odd_vertices(&self, g: &Multigraph) -> bool {
        let mut seen: Vec<VertexId> = self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        seen.sort_unstable();
        let len = seen.len();
        seen.dedup();
        seen.len() == len && seen == g.odd_vertices()
    }
}

/// A bipartition where the pairing uses more than the available slack.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarViolation {
    pub side: VertexSet,
    pub cut: usize,
    pub pairing_cut: usize,
    pub lambda_star: u32,
}

/// Slack |E(X, Y)| − max λ*(x, y) over every bipartition, indexed by the bitmask of X over
/// all vertices but the last (which always lies in Y).
struct SlackTable {
    dg: DenseGraph,
    slack: Vec<i64>,
    lambda: LambdaTable,
}

impl SlackTable {
    fn new(g: &Multigraph, bound: usize) -> Result<Self> {
        let n = g.vertex_count();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "vertex count for pairing search",
                found: n,
                bound,
            });
        }
        let dg = g.dense();
        let lambda = LambdaTable::compute(g);
        let half = if n == 0 { 0 } else { 1usize << (n - 1) };
        let mut slack = vec![i64::MAX; half];
        for (mask, s) in slack.iter_mut().enumerate().skip(1) {
            let mask = mask as u64;
            let mut need = 0;
            for x in (0..n).filter(|&i| mask >> i & 1 == 1) {
                for y in (0..n).filter(|&i| mask >> i & 1 == 0) {
                    need = need.max(even_floor(lambda.get(x, y)));
                }
            }
            *s = dg.boundary_size_mask(mask) as i64 - need as i64;
        }
        Ok(Self { dg, slack, lambda })
    }

    fn need(&self, mask: u64) -> u32 {
        let n = self.dg.n();
        let mut need = 0;
        for x in (0..n).filter(|&i| mask >> i & 1 == 1) {
            for y in (0..n).filter(|&i| mask >> i & 1 == 0) {
                need = need.max(even_floor(self.lambda.get(x, y)));
            }
        }
        need
    }
}

fn crossing(mask: u64, a: usize, b: usize) -> bool {
    (mask >> a & 1) != (mask >> b & 1)
}

/// Checks |E(X,Y)| − |P(X,Y)| ≥ λ*(x,y) for every bipartition and every x ∈ X, y ∈ Y.
pub fn check_star_condition(
    g: &Multigraph,
    pairing: &OddVertexPairing,
) -> Result<Option<StarViolation>> {
    check_star_condition_bounded(g, pairing, DEFAULT_PAIRING_BOUND)
}

pub fn check_star_condition_bounded(
    g: &Multigraph,
    pairing: &OddVertexPairing,
    bound: usize,
) -> Result<Option<StarViolation>> {
    let table = SlackTable::new(g, bound)?;
    let idx: Vec<(usize, usize)> = pairing
        .pairs
        .iter()
        .map(|&(a, b)| {
            let ia = table.dg.idx(a).ok_or(Error::UnknownVertex(a))?;
            let ib = table.dg.idx(b).ok_or(Error::UnknownVertex(b))?;
            Ok((ia, ib))
        })
        .collect::<Result<_>>()?;
    for (mask, &slack) in table.slack.iter().enumerate().skip(1) {
        let mask = mask as u64;
        let p = idx.iter().filter(|&&(a, b)| crossing(mask, a, b)).count();
        if p as i64 > slack {
            let side = (0..table.dg.n())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| table.dg.ids[i])
                .collect();
            return Ok(Some(StarViolation {
                side,
                cut: table.dg.boundary_size_mask(mask),
                pairing_cut: p,
                lambda_star: table.need(mask),
            }));
        }
    }
    Ok(None)
}

/// An odd-vertex pairing satisfying (★), by exhaustive search over pairings.
pub fn find_odd_pairing(g: &Multigraph) -> Result<OddVertexPairing> {
    find_odd_pairing_bounded(g, DEFAULT_PAIRING_BOUND)
}

/// As [`find_odd_pairing`] with a configurable vertex bound. Partners of each odd vertex are
/// tried in order of decreasing λ, then increasing id.
pub fn find_odd_pairing_bounded(g: &Multigraph, bound: usize) -> Result<OddVertexPairing> {
    let table = SlackTable::new(g, bound)?;
    let odd: Vec<usize> = g
        .odd_vertices()
        .iter()
        .map(|v| table.dg.index[v])
        .collect();
    let mut used = vec![0i64; table.slack.len()];
    let mut paired = vec![false; odd.len()];
    let mut chosen = Vec::new();
    if search(&table, &odd, &mut paired, &mut used, &mut chosen) {
        Ok(OddVertexPairing::from_pairs(
            chosen
                .into_iter()
                .map(|(a, b)| (table.dg.ids[a], table.dg.ids[b]))
                .collect(),
        ))
    } else {
        Err(Error::PairingExhausted)
    }
}

fn search(
    table: &SlackTable,
    odd: &[usize],
    paired: &mut [bool],
    used: &mut [i64],
    chosen: &mut Vec<(usize, usize)>,
) -> bool {
    let Some(i) = paired.iter().position(|&p| !p) else {
        return true;
    };
    let a = odd[i];
    let mut partners: Vec<usize> = (i + 1..odd.len()).filter(|&j| !paired[j]).collect();
    partners.sort_by_key(|&j| (std::cmp::Reverse(table.lambda.get(a, odd[j])), odd[j]));
    paired[i] = true;
    for j in partners {
        let b = odd[j];
        let mut ok = true;
        for (mask, u) in used.iter_mut().enumerate().skip(1) {
            if crossing(mask as u64, a, b) {
                *u += 1;
                ok &= *u <= table.slack[mask];
            }
        }
        if ok {
            paired[j] = true;
            chosen.push((a, b));
            if search(table, odd, paired, used, chosen) {
                return true;
            }
            chosen.pop();
            paired[j] = false;
        }
        for (mask, u) in used.iter_mut().enumerate().skip(1) {
            if crossing(mask as u64, a, b) {
                *u -= 1;
            }
        }
    }
    paired[i] = false;
    false
}

/// Greedy pairing without the (★) check: each odd vertex takes the free partner of
/// highest λ. Used where exhaustive search is out of reach.
pub fn greedy_pairing(g: &Multigraph) -> OddVertexPairing {
    let odd = g.odd_vertices();
    if odd.is_empty() {
        return OddVertexPairing::default();
    }
    let sub: Vec<VertexId> = odd.clone();
    let dg = g.dense();
    let lam = |a: VertexId, b: VertexId| {
        crate::connectivity::lambda_capped_dense(&dg, dg.index[&a], dg.index[&b], u32::MAX)
    };
    let mut free: Vec<VertexId> = sub;
    let mut pairs = Vec::new();
    while let Some(a) = free.first().copied() {
        free.remove(0);
        let (pos, _) = free
            .iter()
            .enumerate()
            .map(|(p, &b)| (p, lam(a, b)))
            .max_by_key(|&(p, l)| (l, std::cmp::Reverse(p)))
            .expect("odd count is even");
        pairs.push((a, free.remove(pos)));
    }
    OddVertexPairing::from_pairs(pairs)
}

/// A uniformly shuffled pairing of the odd vertices.
pub fn random_pairing(g: &Multigraph, seed: u64) -> OddVertexPairing {
    let mut odd = g.odd_vertices();
    odd.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    OddVertexPairing::from_pairs(odd.chunks(2).map(|c| (c[0], c[1])).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u64) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn eulerian_graph_needs_no_pairs() {
        let g = Multigraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let p = find_odd_pairing(&g).unwrap();
        assert!(p.pairs.is_empty());
        assert_eq!(check_star_condition(&g, &p).unwrap(), None);
    }

    #[test]
    fn single_edge_pairs_its_ends() {
        let g = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let p = find_odd_pairing(&g).unwrap();
        assert_eq!(p.pairs, vec![(v(0), v(1))]);
    }

    #[test]
    fn path_pairs_leaves() {
        let g = Multigraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let p = find_odd_pairing(&g).unwrap();
        assert_eq!(p.pairs, vec![(v(0), v(2))]);
        assert!(p.covers_odd_vertices(&g));
        assert_eq!(check_star_condition(&g, &p).unwrap(), None);
    }

    /// Independent oracle: explicit sets, explicit λ* per pair.
    fn star_holds(g: &Multigraph, p: &OddVertexPairing) -> bool {
        let vs: Vec<VertexId> = g.vertices().collect();
        let n = vs.len();
        for mask in 1u64..(1 << n) - 1 {
            let x: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            let cut = g.boundary(&x).len() as i64;
            let pc = p
                .pairs
                .iter()
                .filter(|(a, b)| x.contains(a) != x.contains(b))
                .count() as i64;
            for &a in &x {
                for &b in vs.iter().filter(|b| !x.contains(b)) {
                    let ls = crate::connectivity::lambda_star(g, a, b).unwrap() as i64;
                    if cut - pc < ls {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn found_pairing_satisfies_star_by_direct_check() {
        // K4 with a triangle hung off vertex 3 and a chord back to 0
        let g = Multigraph::from_edges(
            6,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 3), (0, 5)],
        )
        .unwrap();
        let p = find_odd_pairing(&g).unwrap();
        assert!(p.covers_odd_vertices(&g));
        assert!(star_holds(&g, &p));
    }

    #[test]
    fn bad_pairing_is_caught() {
        // two disjoint triple bonds 0≡1 and 2≡3; pairing across the bonds burns the empty cut
        let g = Multigraph::from_edges(
            4,
            &[(0, 1), (0, 1), (0, 1), (2, 3), (2, 3), (2, 3)],
        )
        .unwrap();
        let bad = OddVertexPairing::from_pairs(vec![(v(0), v(2)), (v(1), v(3))]);
        let viol = check_star_condition(&g, &bad).unwrap().unwrap();
        assert_eq!(viol.side, [v(0), v(1)].into_iter().collect());
        assert_eq!((viol.cut, viol.pairing_cut, viol.lambda_star), (0, 2, 0));
        assert!(!star_holds(&g, &bad));
        let good = find_odd_pairing(&g).unwrap();
        assert_eq!(good.pairs, vec![(v(0), v(1)), (v(2), v(3))]);
        assert!(star_holds(&g, &good));
    }

    #[test]
    fn bound_is_enforced() {
        let edges: Vec<(u64, u64)> = (0..13).map(|i| (i, (i + 1) % 13)).collect();
        let g = Multigraph::from_edges(13, &edges).unwrap();
        assert!(matches!(
            find_odd_pairing(&g),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn heuristics_cover_odd_vertices() {
        let g = Multigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)])
            .unwrap();
        assert!(greedy_pairing(&g).covers_odd_vertices(&g));
        assert!(random_pairing(&g, 7).covers_odd_vertices(&g));
    }
}
