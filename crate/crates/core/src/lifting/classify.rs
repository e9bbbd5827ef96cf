use super::LiftingGraph;
use crate::multigraph::EdgeId;
use serde::{Deserialize, Serialize};

/// Shape of a lifting graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LiftingClass {
    /// Non-adjacency is an equivalence relation; `parts` are its classes. An edgeless graph
    /// is the single-part case.
    CompleteMultipartite { parts: Vec<Vec<EdgeId>> },
    /// One isolated node plus K_{j,j} on the rest.
    IsolatedPlusBalancedBipartite {
        isolated: EdgeId,
        left: Vec<EdgeId>,
        right: Vec<EdgeId>,
    },
    /// `a`–`b` and `b`–`c` are non-adjacent but `a`–`c` is adjacent.
    Other { witness: [EdgeId; 3] },
}

impl LiftingClass {
    pub fn is_other(&self) -> bool {
        matches!(self, LiftingClass::Other { .. })
    }
}

/// Classes of non-adjacency when it is transitive, else a violating triple of positions.
fn non_adjacency_classes(
    lg: &LiftingGraph,
    nodes: &[usize],
) -> Result<Vec<Vec<usize>>, [usize; 3]> {
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &i in nodes {
        match parts.iter_mut().find(|p| !lg.adjacent(p[0], i)) {
            Some(p) => p.push(i),
            None => parts.push(vec![i]),
        }
    }
    for p in &parts {
        for (a, &i) in p.iter().enumerate() {
            for &j in &p[a + 1..] {
                if lg.adjacent(i, j) {
                    return Err([i, p[0], j]);
                }
            }
        }
    }
    for (a, p) in parts.iter().enumerate() {
        for q in &parts[a + 1..] {
            for &i in p {
                for &j in q {
                    if !lg.adjacent(i, j) {
                        // j skipped part p, so j is adjacent to p[0] while i is not
                        return Err([j, i, p[0]]);
                    }
                }
            }
        }
    }
    Ok(parts)
}

pub fn classify(lg: &LiftingGraph) -> LiftingClass {
    let all: Vec<usize> = (0..lg.len()).collect();
    let ids = |v: &[usize]| v.iter().map(|&i| lg.nodes()[i]).collect::<Vec<_>>();
    let witness = match non_adjacency_classes(lg, &all) {
        Ok(parts) => {
            return LiftingClass::CompleteMultipartite {
                parts: parts.iter().map(|p| ids(p)).collect(),
            }
        }
        Err(w) => w,
    };
    let isolated: Vec<usize> = all.iter().copied().filter(|&i| lg.degree(i) == 0).collect();
    if isolated.len() == 1 {
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != isolated[0]).collect();
        if let Ok(parts) = non_adjacency_classes(lg, &rest) {
            if parts.len() == 2 && parts[0].len() == parts[1].len() {
                return LiftingClass::IsolatedPlusBalancedBipartite {
                    isolated: lg.nodes()[isolated[0]],
                    left: ids(&parts[0]),
                    right: ids(&parts[1]),
                };
            }
        }
    }
    LiftingClass::Other {
        witness: witness.map(|i| lg.nodes()[i]),
    }
}
