//! Built-in locally finite graphs, each with an exact end oracle.
//!
//! Vertices and edges get ids computed from generator coordinates, so the same vertex has
//! the same id in every truncation. All ids stay below 2^48.

use super::{EndCount, EndId, LazyGraph};
use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, VertexId};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

fn zigzag(i: i64) -> u64 {
    if i >= 0 {
        2 * i as u64
    } else {
        (-2 * i - 1) as u64
    }
}

fn unzigzag(c: u64) -> i64 {
    if c % 2 == 0 {
        (c / 2) as i64
    } else {
        -((c / 2) as i64) - 1
    }
}

/// Szudzik pairing.
fn pair(a: u64, b: u64) -> u64 {
    if a >= b {
        a * a + a + b
    } else {
        b * b + a
    }
}

fn unpair(z: u64) -> (u64, u64) {
    let s = z.isqrt();
    let r = z - s * s;
    if r < s {
        (r, s)
    } else {
        (s, r - s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// The square grid Z².
    Grid,
    /// One-way infinite ladder.
    Ladder,
    /// Two-way infinite path.
    DoubleRay,
    /// Two binary trees joined by rungs between twin vertices.
    TreeRungs,
    /// Tree-rungs plus the cross edges (t0, 0)(t1, 1).
    Figure1,
    /// A ray with an infinite tooth (ray) hanging from each of its vertices.
    Comb,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 6] = [
        GeneratorKind::Grid,
        GeneratorKind::Ladder,
        GeneratorKind::DoubleRay,
        GeneratorKind::TreeRungs,
        GeneratorKind::Figure1,
        GeneratorKind::Comb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::Grid => "grid",
            GeneratorKind::Ladder => "ladder",
            GeneratorKind::DoubleRay => "double-ray",
            GeneratorKind::TreeRungs => "tree-rungs",
            GeneratorKind::Figure1 => "figure1",
            GeneratorKind::Comb => "comb",
        }
    }
}

/// Default prefix length used to split the end space of the tree generators into regions.
pub const DEFAULT_REGION_RESOLUTION: u32 = 3;

/// A built-in generator with every edge replaced by `multiplicity` parallel copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub multiplicity: u32,
    /// Tree generators only: ends are grouped by their address prefix of this length.
    pub resolution: u32,
}

impl Generator {
    pub fn new(kind: GeneratorKind, multiplicity: u32) -> Self {
        Self {
            kind,
            multiplicity: multiplicity.max(1),
            resolution: DEFAULT_REGION_RESOLUTION,
        }
    }

    pub fn doubled(kind: GeneratorKind) -> Self {
        Self::new(kind, 2)
    }

    pub fn with_resolution(mut self, resolution: u32) -> Self {
        self.resolution = resolution;
        self
    }

    fn edge(&self, u: u64, v: u64, copy: u32) -> EdgeId {
        EdgeId(pair(u.min(v), u.max(v)) * self.multiplicity as u64 + copy as u64)
    }

    /// Neighbour codes with multiplicity one.
    fn simple_neighbors(&self, c: u64) -> Vec<u64> {
        match self.kind {
            GeneratorKind::Grid => {
                let (a, b) = unpair(c);
                let (x, y) = (unzigzag(a), unzigzag(b));
                [(1, 0), (-1, 0), (0, 1), (0, -1)]
                    .iter()
                    .map(|(dx, dy)| pair(zigzag(x + dx), zigzag(y + dy)))
                    .collect()
            }
            GeneratorKind::Ladder => {
                let (i, s) = (c / 2, c % 2);
                let mut out = vec![2 * (i + 1) + s, 2 * i + (1 - s)];
                if i > 0 {
                    out.push(2 * (i - 1) + s);
                }
                out
            }
            GeneratorKind::DoubleRay => {
                let i = unzigzag(c);
                vec![zigzag(i - 1), zigzag(i + 1)]
            }
            GeneratorKind::Comb => {
                let (i, t) = unpair(c);
                let mut out = vec![pair(i, t + 1)];
                if t == 0 {
                    out.push(pair(i + 1, 0));
                    if i > 0 {
                        out.push(pair(i - 1, 0));
                    }
                } else {
                    out.push(pair(i, t - 1));
                }
                out
            }
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => {
                let (h, side) = (c / 2, c % 2);
                let mut out = vec![2 * (2 * h) + side, 2 * (2 * h + 1) + side, 2 * h + (1 - side)];
                if h > 1 {
                    out.push(2 * (h / 2) + side);
                }
                if self.kind == GeneratorKind::Figure1 && h > 1 {
                    if side == 0 && h % 2 == 0 {
                        out.push(2 * (h + 1) + 1);
                    } else if side == 1 && h % 2 == 1 {
                        out.push(2 * (h - 1));
                    }
                }
                out
            }
        }
    }

    fn tree_address(h: u64) -> String {
        let bits = 63 - h.leading_zeros();
        if bits == 0 {
            return "ε".to_string();
        }
        (0..bits)
            .rev()
            .map(|i| if h >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity == 1 {
            write!(f, "{}", self.kind.name())
        } else {
            write!(f, "{}:{}", self.kind.name(), self.multiplicity)
        }
    }
}

/// Accepts `name`, `name:m` and `doubled-name`.
impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (base, mult) = match s.split_once(':') {
            Some((b, m)) => {
                let m: u32 = m
                    .parse()
                    .ok()
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| Error::Format(format!("bad multiplicity in {s:?}")))?;
                (b, m)
            }
            None => (s, 1),
        };
        let (base, mult) = match base.strip_prefix("doubled-") {
            Some(b) => (b, mult * 2),
            None => (base, mult),
        };
        let kind = GeneratorKind::ALL
            .into_iter()
            .find(|k| k.name() == base)
            .ok_or_else(|| Error::Format(format!("unknown generator {base:?}")))?;
        Ok(Generator::new(kind, mult))
    }
}

impl LazyGraph for Generator {
    fn name(&self) -> String {
        self.to_string()
    }

    fn root(&self) -> VertexId {
        match self.kind {
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => VertexId(2),
            _ => VertexId(0),
        }
    }

    fn neighbors(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        let mut out = Vec::new();
        for w in self.simple_neighbors(v.0) {
            for copy in 0..self.multiplicity {
                out.push((self.edge(v.0, w, copy), VertexId(w)));
            }
        }
        out
    }

    fn level(&self, v: VertexId) -> u32 {
        let c = v.0;
        match self.kind {
            GeneratorKind::Grid => {
                let (a, b) = unpair(c);
                unzigzag(a).unsigned_abs().max(unzigzag(b).unsigned_abs()) as u32
            }
            GeneratorKind::Ladder => (c / 2) as u32,
            GeneratorKind::DoubleRay => unzigzag(c).unsigned_abs() as u32,
            GeneratorKind::Comb => {
                let (i, t) = unpair(c);
                (i + t) as u32
            }
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => 63 - (c / 2).leading_zeros(),
        }
    }

    fn label(&self, v: VertexId) -> String {
        let c = v.0;
        match self.kind {
            GeneratorKind::Grid => {
                let (a, b) = unpair(c);
                format!("({},{})", unzigzag(a), unzigzag(b))
            }
            GeneratorKind::Ladder => format!("({},{})", c / 2, c % 2),
            GeneratorKind::DoubleRay => unzigzag(c).to_string(),
            GeneratorKind::Comb => {
                let (i, t) = unpair(c);
                format!("({i},{t})")
            }
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => {
                format!("({},{})", Self::tree_address(c / 2), c % 2)
            }
        }
    }

    fn end_count(&self) -> EndCount {
        match self.kind {
            GeneratorKind::Grid | GeneratorKind::Ladder => EndCount::Finite(1),
            GeneratorKind::DoubleRay => EndCount::Finite(2),
            GeneratorKind::Comb => EndCount::Countable,
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => EndCount::Uncountable,
        }
    }

    fn region(&self, v: VertexId) -> EndId {
        let c = v.0;
        match self.kind {
            GeneratorKind::Grid | GeneratorKind::Ladder => EndId(0),
            GeneratorKind::DoubleRay => EndId(u64::from(unzigzag(c) >= 0)),
            GeneratorKind::Comb => {
                let (i, t) = unpair(c);
                EndId(if t == 0 { 0 } else { i + 1 })
            }
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => {
                let h = c / 2;
                let level = 63 - h.leading_zeros();
                EndId(h >> level.saturating_sub(self.resolution))
            }
        }
    }

    fn region_level(&self) -> u32 {
        match self.kind {
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => self.resolution,
            GeneratorKind::Comb => 1,
            _ => 0,
        }
    }

    fn canonical_ray(&self, end: EndId, len: usize) -> Result<Vec<VertexId>> {
        let bad = || Error::Hypothesis(format!("{} has no end {}", self.name(), end.0));
        let codes: Vec<u64> = match self.kind {
            GeneratorKind::Grid | GeneratorKind::Ladder => {
                if end.0 != 0 {
                    return Err(bad());
                }
                (0..len as u64)
                    .map(|i| {
                        if self.kind == GeneratorKind::Grid {
                            pair(zigzag(i as i64), 0)
                        } else {
                            2 * i
                        }
                    })
                    .collect()
            }
            GeneratorKind::DoubleRay => match end.0 {
                0 => (0..len as i64).map(|i| zigzag(-i)).collect(),
                1 => (0..len as i64).map(zigzag).collect(),
                _ => return Err(bad()),
            },
            GeneratorKind::Comb => match end.0 {
                0 => (0..len as u64).map(|i| pair(i, 0)).collect(),
                j => (0..len as u64).map(|t| pair(j - 1, t)).collect(),
            },
            GeneratorKind::TreeRungs | GeneratorKind::Figure1 => {
                if end.0 == 0 {
                    return Err(bad());
                }
                // the leftmost branch below the region's address, in copy 0
                let start = end.0;
                let mut out = Vec::with_capacity(len);
                let mut h = start;
                for _ in 0..len {
                    out.push(2 * h);
                    h = h.checked_mul(2).ok_or_else(bad)?;
                }
                out
            }
        };
        Ok(codes.into_iter().map(VertexId).collect())
    }
}
