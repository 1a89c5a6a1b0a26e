//! Exact canonical forms by partition refinement and individualization.
//!
//! The search tree is the usual one: refine an ordered partition to an
//! equitable one, individualize each vertex of the first smallest
//! non-singleton cell, recurse. Leaves are discrete partitions, i.e.
//! relabelings; the canonical labeling is the leaf with the largest
//! adjacency bit string. Automorphisms discovered from leaves with equal
//! strings prune siblings in the same orbit, and a leaf equivalent to the
//! first leaf unwinds to the node where it left the first path.

use std::fmt;

use crate::graph::{Graph, Vertex};
use crate::io::graph6_encode;

/// Byte string identifying an isomorphism class: the graph6 encoding of the
/// canonically relabeled graph, followed by the colour sequence when the
/// form was computed for a vertex-coloured graph.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalCode {
    let lab = canonical_labeling(g, None);
    CanonicalCode(graph6_encode(&relabel(g, &lab)).into_bytes())
}

/// Canonical form of a vertex-coloured graph. Two coloured graphs get equal
/// codes iff some isomorphism preserves colours.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalCode {
    let lab = canonical_labeling(g, Some(colors));
    let mut bytes = graph6_encode(&relabel(g, &lab)).into_bytes();
    bytes.push(b'|');
    for &v in &lab {
        bytes.extend_from_slice(&colors[v].to_le_bytes());
    }
    CanonicalCode(bytes)
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    relabel(g, &canonical_labeling(g, None))
}

fn relabel(g: &Graph, lab: &[Vertex]) -> Graph {
    let mut perm = vec![0; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        perm[v] = i;
    }
    g.permute(&perm)
}

/// `lab[i]` is the vertex placed at canonical position `i`.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Vec<Vertex> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    let cells = match colors {
        None => vec![(0..n).collect::<Vec<_>>()],
        Some(colors) => {
            assert_eq!(colors.len(), n, "one colour per vertex");
            let mut distinct: Vec<u32> = colors.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.iter().map(|&c| (0..n).filter(|&v| colors[v] == c).collect()).collect()
        }
    };
    let mut search = Search { g, first: None, best: None, auts: Vec::new() };
    let root = refine(g, cells);
    search.descend(root, &mut Vec::new());
    search.best.expect("search reaches at least one leaf").1
}

type Cells = Vec<Vec<Vertex>>;

/// Splits cells by neighbour counts into every current cell until stable.
/// Cell order stays a function of the isomorphism class of the input.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let n = g.order();
    let mut cell_of = vec![0usize; n];
    loop {
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = ci;
            }
        }
        let k = cells.len();
        if k == n {
            return cells;
        }
        let mut next: Cells = Vec::with_capacity(k);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, Vertex)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = vec![0u32; k];
                    for &w in g.neighbors(v) {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == k {
            return next;
        }
        cells = next;
    }
}

fn individualize(cells: &Cells, target: usize, v: Vertex) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for (ci, cell) in cells.iter().enumerate() {
        if ci == target {
            out.push(vec![v]);
            out.push(cell.iter().copied().filter(|&w| w != v).collect());
        } else {
            out.push(cell.clone());
        }
    }
    out
}

fn leaf_bits(g: &Graph, lab: &[Vertex]) -> Vec<u64> {
    let n = lab.len();
    let mut bits = vec![0u64; (n * n.saturating_sub(1) / 2).div_ceil(64).max(1)];
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(lab[i], lab[j]) {
                bits[idx / 64] |= 1 << (63 - idx % 64);
            }
            idx += 1;
        }
    }
    bits
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<(Vec<u64>, Vec<Vertex>, Vec<Vertex>)>,
    best: Option<(Vec<u64>, Vec<Vertex>)>,
    auts: Vec<Vec<Vertex>>,
}

impl Search<'_> {
    /// Returns `Some(depth)` when the caller chain must unwind to the node
    /// at `depth`.
    fn descend(&mut self, cells: Cells, prefix: &mut Vec<Vertex>) -> Option<usize> {
        let depth = prefix.len();
        let target =
            cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i);
        let Some(target) = target else {
            let lab: Vec<Vertex> = cells.into_iter().flatten().collect();
            if !self.leaf(lab, prefix) {
                return None;
            }
            let first_prefix = &self.first.as_ref().expect("set at first leaf").2;
            let diverge = prefix.iter().zip(first_prefix).position(|(a, b)| a != b).unwrap_or(0);
            return Some(diverge);
        };
        let candidates = cells[target].clone();
        let mut explored: Vec<Vertex> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.same_orbit(prefix, &explored, v) {
                continue;
            }
            explored.push(v);
            prefix.push(v);
            let child = refine(self.g, individualize(&cells, target, v));
            let unwind = self.descend(child, prefix);
            prefix.pop();
            if let Some(level) = unwind {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    /// Records a leaf; true iff it is equivalent to (but not) the first
    /// leaf.
    fn leaf(&mut self, lab: Vec<Vertex>, prefix: &[Vertex]) -> bool {
        let bits = leaf_bits(self.g, &lab);
        let Some((first_bits, first_lab, _)) = &self.first else {
            self.first = Some((bits.clone(), lab.clone(), prefix.to_vec()));
            self.best = Some((bits, lab));
            return false;
        };
        if *first_bits == bits {
            self.auts.push(compose(first_lab, &lab));
            return true;
        }
        let (best_bits, best_lab) = self.best.as_ref().expect("set with first");
        match bits.cmp(best_bits) {
            std::cmp::Ordering::Greater => self.best = Some((bits, lab)),
            std::cmp::Ordering::Equal => self.auts.push(compose(best_lab, &lab)),
            std::cmp::Ordering::Less => {}
        }
        false
    }

    fn same_orbit(&self, prefix: &[Vertex], explored: &[Vertex], v: Vertex) -> bool {
        let n = self.g.order();
        let mut parent: Vec<Vertex> = (0..n).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for aut in &self.auts {
            if prefix.iter().all(|&p| aut[p] == p) {
                for (x, &y) in aut.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }
}

/// Maps `from[i]` to `to[i]`.
fn compose(from: &[Vertex], to: &[Vertex]) -> Vec<Vertex> {
    let mut aut = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        aut[a] = b;
    }
    aut
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p4_labelings_agree() {
        let a = Graph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let b = Graph::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
        let star = Graph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_ne!(canonical_form(&a), canonical_form(&star));
    }

    #[test]
    fn symmetric_graphs_terminate() {
        for n in [0, 1, 12, 24] {
            let e = Graph::empty(n);
            assert_eq!(canonical_form(&e), canonical_form(&e.permute(&(0..n).rev().collect::<Vec<_>>())));
            let k = Graph::complete(n);
            assert_eq!(canonical_graph(&k), k);
        }
        let star = crate::constructions::make_star(20).unwrap();
        assert_eq!(canonical_graph(&star).edge_count(), 19);
    }

    #[test]
    fn colours_distinguish_orbits() {
        let p3 = Graph::path(3);
        let end = canonical_form_colored(&p3, &[1, 0, 0]);
        let other_end = canonical_form_colored(&p3, &[0, 0, 1]);
        let middle = canonical_form_colored(&p3, &[0, 1, 0]);
        assert_eq!(end, other_end);
        assert_ne!(end, middle);
    }
}
