use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::{Graph, Vertex};
use crate::patterns::{contains_join_k1, find_union, has_clique, has_path_of_order};
use crate::saturation::family::{ForbiddenFamily, Member};
use crate::saturation::fast;
use crate::witness::Witness;

/// Below this many non-edges the checker stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SaturationVerdict {
    Saturated,
    /// The graph already contains member number `member` of the family.
    ContainsMember {
        member: usize,
        witness: Witness,
    },
    /// Adding this non-edge creates no member.
    MissingEdge {
        u: Vertex,
        v: Vertex,
    },
}

impl SaturationVerdict {
    pub fn is_saturated(&self) -> bool {
        matches!(self, SaturationVerdict::Saturated)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SaturationError {
    #[error("graph already contains family member {member}")]
    ContainsMember { member: usize, witness: Witness },
}

pub fn member_witness(g: &Graph, m: &Member) -> Option<Witness> {
    match m {
        Member::Clique(p) => has_clique(g, *p),
        Member::Path(k) => has_path_of_order(g, *k),
        Member::DisjointUnion(parts) => {
            let mut cliques = Vec::new();
            let mut paths = Vec::new();
            for part in parts {
                match part {
                    Member::Clique(p) => cliques.push(*p),
                    Member::Path(k) => paths.push(*k),
                    _ => unreachable!("validated: unions hold cliques and paths only"),
                }
            }
            find_union(g, &VertexSet::full(g.order()), &cliques, &paths)
        }
        Member::JoinK1(orders) => contains_join_k1(g, orders),
    }
}

fn first_member(g: &Graph, fam: &ForbiddenFamily) -> Option<(usize, Witness)> {
    fam.members().iter().enumerate().find_map(|(i, m)| member_witness(g, m).map(|w| (i, w)))
}

/// Witness for the first member (in family order) that `g` contains.
pub fn contains_member(g: &Graph, fam: &ForbiddenFamily) -> Option<Witness> {
    first_member(g, fam).map(|(_, w)| w)
}

fn creates_member(g: &Graph, fam: &ForbiddenFamily, u: Vertex, v: Vertex) -> bool {
    let h = g.with_edge(u, v).expect("caller passes non-edges");
    first_member(&h, fam).is_some()
}

fn failing_non_edges(g: &Graph, fam: &ForbiddenFamily, first_only: bool) -> Vec<(Vertex, Vertex)> {
    let candidates: Vec<(Vertex, Vertex)> = g.non_edges().collect();
    let fails = |&(u, v): &(Vertex, Vertex)| !creates_member(g, fam, u, v);
    if candidates.len() < PARALLEL_THRESHOLD {
        if first_only {
            candidates.into_iter().find(fails).into_iter().collect()
        } else {
            candidates.into_iter().filter(fails).collect()
        }
    } else if first_only {
        candidates.par_iter().copied().find_first(fails).into_iter().collect()
    } else {
        candidates.par_iter().copied().filter(fails).collect()
    }
}

/// Decides saturation. Failures report the smallest non-edge (in
/// ascending `(u, v)` order) whose addition creates no member, regardless
/// of how the work was split across threads.
pub fn check_saturated(g: &Graph, fam: &ForbiddenFamily) -> SaturationVerdict {
    if let Some(fast) = fast::forest_verdict(g, fam) {
        return match fast {
            fast::Fast::Saturated => SaturationVerdict::Saturated,
            fast::Fast::Missing(u, v) => SaturationVerdict::MissingEdge { u, v },
            fast::Fast::ContainsMember => {
                let (member, witness) = first_member(g, fam).expect("fast path saw a member");
                SaturationVerdict::ContainsMember { member, witness }
            }
        };
    }
    check_saturated_generic(g, fam)
}

/// `check_saturated` without the forest shortcut; kept public so the two
/// can be compared.
pub fn check_saturated_generic(g: &Graph, fam: &ForbiddenFamily) -> SaturationVerdict {
    if let Some((member, witness)) = first_member(g, fam) {
        return SaturationVerdict::ContainsMember { member, witness };
    }
    match failing_non_edges(g, fam, true).first() {
        Some(&(u, v)) => SaturationVerdict::MissingEdge { u, v },
        None => SaturationVerdict::Saturated,
    }
}

/// Every non-edge whose addition creates no member, ascending.
pub fn saturation_gap(g: &Graph, fam: &ForbiddenFamily) -> Result<Vec<(Vertex, Vertex)>, SaturationError> {
    if let Some((member, witness)) = first_member(g, fam) {
        return Err(SaturationError::ContainsMember { member, witness });
    }
    Ok(failing_non_edges(g, fam, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str) -> ForbiddenFamily {
        s.parse().unwrap()
    }

    #[test]
    fn small_verdicts() {
        let k4 = Graph::complete(4);
        assert_eq!(contains_member(&k4, &fam("K3")), Some(Witness::clique(vec![0, 1, 2])));
        match check_saturated(&k4, &fam("P5,K3")) {
            SaturationVerdict::ContainsMember { member, .. } => assert_eq!(member, 1),
            v => panic!("{v:?}"),
        }
        assert_eq!(check_saturated(&Graph::cycle(6), &fam("K3")), SaturationVerdict::MissingEdge { u: 0, v: 3 });
        let star: Vec<_> = (1..10).map(|v| (0, v)).collect();
        let star = Graph::new(10, &star).unwrap();
        assert!(check_saturated(&star, &fam("K3,P10")).is_saturated());
        assert!(check_saturated_generic(&star, &fam("K3,P10")).is_saturated());
    }

    #[test]
    fn gap_lists_failures() {
        let gap = saturation_gap(&Graph::path(5), &fam("K3,P10")).unwrap();
        assert!(gap.contains(&(0, 4)));
        assert!(!gap.contains(&(0, 2)));
        assert!(matches!(
            saturation_gap(&Graph::complete(3), &fam("K3")),
            Err(SaturationError::ContainsMember { member: 0, .. })
        ));
    }

    #[test]
    fn parallel_and_sequential_agree() {
        // C_14 has 77 non-edges, enough to take the parallel branch.
        let c = Graph::cycle(14);
        assert_eq!(check_saturated(&c, &fam("K3")), SaturationVerdict::MissingEdge { u: 0, v: 3 });
        let gap = saturation_gap(&c, &fam("K3")).unwrap();
        assert_eq!(gap.len(), 77 - 14);
        assert!(gap.windows(2).all(|w| w[0] < w[1]));
    }
}
