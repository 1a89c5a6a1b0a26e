//! Deterministic builders for the extremal graphs.
//!
//! Layered trees are labeled layer-major: layer 1 first, and within a
//! layer children follow the order of their parents.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::formulas::{order_constant, FormulaError, OrderKind};
use crate::graph::{Graph, Vertex};
use crate::saturation::{check_saturated, ForbiddenFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("k = {k} is outside the constructor range (k >= {min})")]
    KOutOfRange { k: usize, min: usize },
    #[error("n = {n} is below the threshold {min}")]
    NTooSmall { n: usize, min: usize },
    #[error("p = {p} must satisfy 3 <= p <= n = {n}")]
    BadClique { n: usize, p: usize },
    #[error("no saturated tree of order {n} for k = {k} found within the search budget")]
    NoSaturatedTree { n: usize, k: usize },
    #[error("attachment vertex {attachment} is not a vertex of T1_k (order {order})")]
    BadAttachment { attachment: Vertex, order: usize },
    #[error("no attachment vertex yields a certified H0 for n = {n}, k = {k}")]
    NotCertified { n: usize, k: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TreeKind {
    /// `T_k`
    Full,
    /// `T⁰_k`
    Zero,
    /// `T¹_k`
    One,
}

impl TreeKind {
    pub fn min_k(self, k: usize) -> usize {
        match self {
            TreeKind::Full | TreeKind::Zero => 6,
            TreeKind::One => OrderKind::A1.min_k(k),
        }
    }

    pub fn order_kind(self) -> OrderKind {
        match self {
            TreeKind::Full => OrderKind::A,
            TreeKind::Zero => OrderKind::A0,
            TreeKind::One => OrderKind::A1,
        }
    }
}

/// Shape of a layered tree: layer sizes, target degrees and the θ vertices
/// (layer `⌊k/2⌋ − 2` vertices of degree 3 in `T¹_k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeBlueprint {
    pub kind: TreeKind,
    pub k: usize,
    pub layer_sizes: Vec<usize>,
    pub degrees: Vec<usize>,
    pub theta: Vec<Vertex>,
    /// The vertex identified with a `K_4` corner when building `H_0`.
    pub attachment: Vertex,
    parents: Vec<Vertex>,
}

impl TreeBlueprint {
    pub fn new(kind: TreeKind, k: usize) -> Result<Self, ConstructionError> {
        let min = kind.min_k(k);
        if k < min {
            return Err(ConstructionError::KOutOfRange { k, min });
        }
        let even = k.is_multiple_of(2);
        let (core, layers) = match kind {
            TreeKind::Full | TreeKind::One => (if even { 1 } else { 2 }, k / 2),
            TreeKind::Zero => (if even { 2 } else { 1 }, (k - 2).div_ceil(2)),
        };
        // Vertices at layer `i` of T_k / T⁰_k get this many children.
        let full_children = |layer: usize| -> usize {
            let degree = match kind {
                TreeKind::Full => 3,
                TreeKind::Zero if layer + 1 == layers => 2,
                TreeKind::Zero => 3,
                TreeKind::One => unreachable!(),
            };
            degree - if layer == 1 { core - 1 } else { 1 }
        };

        let mut parents: Vec<Vertex> = vec![usize::MAX; core];
        let mut by_layer: Vec<Vec<Vertex>> = vec![(0..core).collect()];
        let mut theta = Vec::new();
        for layer in 1..layers {
            let current = by_layer[layer - 1].clone();
            let mut next = Vec::new();
            for (pos, &v) in current.iter().enumerate() {
                let count = match kind {
                    TreeKind::Full | TreeKind::Zero => full_children(layer),
                    TreeKind::One => {
                        let base = if layer == 1 { 3 - (core - 1) } else { 2 };
                        if layer + 2 < layers {
                            base
                        } else if layer + 2 == layers {
                            if theta.contains(&v) {
                                2
                            } else {
                                1
                            }
                        } else {
                            // Layer L−1: only the first child of a θ vertex continues.
                            let p = parents[v];
                            let first_child = by_layer[layer - 1].iter().position(|&w| parents[w] == p) == Some(pos);
                            usize::from(theta.contains(&p) && first_child)
                        }
                    }
                };
                for _ in 0..count {
                    let w = parents.len();
                    parents.push(v);
                    next.push(w);
                }
            }
            by_layer.push(next);
            // T¹_k has at least four layers, so this fires once layer L−2 exists.
            if kind == TreeKind::One && layer + 1 == layers - 2 {
                theta = Self::place_theta(&by_layer, &parents, core);
            }
        }

        let n = parents.len();
        let mut degrees = vec![0; n];
        if core == 2 {
            degrees[0] += 1;
            degrees[1] += 1;
        }
        for (v, &p) in parents.iter().enumerate() {
            if p != usize::MAX {
                degrees[v] += 1;
                degrees[p] += 1;
            }
        }
        let attachment = if kind == TreeKind::One && !even { 1 } else { 0 };
        Ok(TreeBlueprint {
            kind,
            k,
            layer_sizes: by_layer.iter().map(Vec::len).collect(),
            degrees,
            theta,
            attachment,
            parents,
        })
    }

    /// θ vertices: the first layer-(L−2) descendant of each of the first
    /// two layer-2 vertices (even k), or of the first three (odd k: two
    /// below the first core vertex, one below the second).
    fn place_theta(by_layer: &[Vec<Vertex>], parents: &[Vertex], core: usize) -> Vec<Vertex> {
        let branches = if core == 1 { 2 } else { 3 };
        let top = &by_layer[1];
        let deepest = by_layer.last().expect("layers exist");
        (0..branches)
            .map(|i| {
                let anchor = top[i];
                *deepest
                    .iter()
                    .find(|&&v| {
                        let mut x = v;
                        while x != usize::MAX && x != anchor {
                            x = parents[x];
                        }
                        x == anchor
                    })
                    .expect("every anchor has descendants")
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.parents.len()
    }

    pub fn build(&self) -> Graph {
        let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(self.order());
        if self.layer_sizes[0] == 2 {
            edges.push((0, 1));
        }
        for (v, &p) in self.parents.iter().enumerate() {
            if p != usize::MAX {
                edges.push((p, v));
            }
        }
        Graph::new(self.order(), &edges).expect("blueprint edges are in range")
    }
}

pub fn make_tk(k: usize) -> Result<Graph, ConstructionError> {
    Ok(TreeBlueprint::new(TreeKind::Full, k)?.build())
}

pub fn make_t0k(k: usize) -> Result<Graph, ConstructionError> {
    Ok(TreeBlueprint::new(TreeKind::Zero, k)?.build())
}

pub fn make_t1k(k: usize) -> Result<Graph, ConstructionError> {
    Ok(TreeBlueprint::new(TreeKind::One, k)?.build())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SmallTree {
    T1,
    T2,
    T3,
}

impl FromStr for SmallTree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(SmallTree::T1),
            "T2" => Ok(SmallTree::T2),
            "T3" => Ok(SmallTree::T3),
            _ => Err(format!("unknown small tree `{s}` (expected T1, T2 or T3)")),
        }
    }
}

impl fmt::Display for SmallTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The three small trees used for `k = 5, 6`:
/// `T1` is a spider with legs 1, 1, 2; `T2` the double star with two
/// adjacent degree-3 centers; `T3` a `P_5` with a pendant at its middle.
pub fn make_small_tree(id: SmallTree) -> Graph {
    let edges: &[(Vertex, Vertex)] = match id {
        SmallTree::T1 => &[(0, 1), (0, 2), (0, 3), (3, 4)],
        SmallTree::T2 => &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
        SmallTree::T3 => &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)],
    };
    Graph::new(edges.len() + 1, edges).expect("fixed edges")
}

/// `K_{1,n−1}` with center 0.
pub fn make_star(n: usize) -> Result<Graph, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::NTooSmall { n, min: 1 });
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Ok(Graph::new(n, &edges).expect("star edges"))
}

/// `K_{p−2} ∨ \overline{K}_{n−p+2}`.
pub fn make_erdos_kp(n: usize, p: usize) -> Result<Graph, ConstructionError> {
    if p < 3 || n < p {
        return Err(ConstructionError::BadClique { n, p });
    }
    Ok(Graph::complete(p - 2).join(&Graph::empty(n - p + 2)))
}

/// `K_1 ∨ h` with the hub as vertex 0.
pub fn make_join_extremal(h: &Graph) -> Graph {
    Graph::complete(1).join(h)
}

/// Leaves attached per backtracking step before the search gives up.
const TREE_SEARCH_BUDGET: usize = 10_000;

/// A non-star `{K_3, P_k}`-saturated tree on exactly `n` vertices, grown
/// from `T¹_k` by pendant attachments, each certified by the checker.
/// The attachment site is the smallest vertex that keeps the tree
/// saturated; when no site works the search backtracks.
pub fn saturated_tree_of_order(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    if k < 9 {
        return Err(ConstructionError::KOutOfRange { k, min: 9 });
    }
    let base = make_t1k(k)?;
    if n < base.order() {
        return Err(ConstructionError::NTooSmall { n, min: base.order() });
    }
    let fam = ForbiddenFamily::triangle_and_path(k);
    let mut budget = TREE_SEARCH_BUDGET;
    grow(base, n, &fam, &mut budget).ok_or(ConstructionError::NoSaturatedTree { n, k })
}

fn grow(t: Graph, n: usize, fam: &ForbiddenFamily, budget: &mut usize) -> Option<Graph> {
    if t.order() == n {
        return Some(t);
    }
    let m = t.order();
    for site in 0..m {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let mut edges: Vec<_> = t.edges().collect();
        edges.push((site, m));
        let bigger = Graph::new(m + 1, &edges).expect("in range");
        if check_saturated(&bigger, fam).is_saturated() {
            if let Some(done) = grow(bigger, n, fam, budget) {
                return Some(done);
            }
        }
    }
    None
}

fn a1(k: usize) -> Result<usize, ConstructionError> {
    Ok(order_constant(OrderKind::A1, k)?)
}

fn check_range(k: usize, min_k: usize, n: usize, min_n: usize) -> Result<(), ConstructionError> {
    if k < min_k {
        return Err(ConstructionError::KOutOfRange { k, min: min_k });
    }
    if n < min_n {
        return Err(ConstructionError::NTooSmall { n, min: min_n });
    }
    Ok(())
}

/// One saturated tree on `a¹_k + (n mod a¹_k)` vertices followed by
/// `⌊n/a¹_k⌋ − 1` copies of `T¹_k`.
pub fn make_g0(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    check_range(k, 10, 0, 0)?;
    let a = a1(k)?;
    check_range(k, 10, n, a)?;
    let t1 = make_t1k(k)?;
    let mut g = saturated_tree_of_order(a + n % a, k)?;
    for _ in 1..n / a {
        g = g.disjoint_union(&t1);
    }
    Ok(g)
}

/// `Q_1` (four copies of `T¹_k` whose attachment vertices form a `K_4`),
/// then `Q_2` (a saturated tree on `a¹_k + (n mod a¹_k)` vertices), then
/// `⌊n/a¹_k⌋ − 5` copies of `T¹_k`. `attachment` is a vertex id of `T¹_k`.
pub fn make_h0_at(n: usize, k: usize, attachment: Vertex) -> Result<Graph, ConstructionError> {
    check_range(k, 10, 0, 0)?;
    let a = a1(k)?;
    check_range(k, 10, n, 6 * a)?;
    if attachment >= a {
        return Err(ConstructionError::BadAttachment { attachment, order: a });
    }
    let t1 = make_t1k(k)?;
    let mut q1 = Graph::empty(0);
    for _ in 0..4 {
        q1 = q1.disjoint_union(&t1);
    }
    let corners: Vec<Vertex> = (0..4).map(|i| i * a + attachment).collect();
    let mut edges: Vec<_> = q1.edges().collect();
    for i in 0..4 {
        for j in i + 1..4 {
            edges.push((corners[i], corners[j]));
        }
    }
    let mut g = Graph::new(4 * a, &edges).expect("in range");
    g = g.disjoint_union(&saturated_tree_of_order(a + n % a, k)?);
    for _ in 5..n / a {
        g = g.disjoint_union(&t1);
    }
    Ok(g)
}

/// The attachment vertex used by [`make_h0`] and the resulting graph.
///
/// Candidates are tried in order — the 1-layer vertex of the blueprint,
/// then the leaves of `T¹_k`, then every other vertex, each ascending —
/// and the first whose `H_0` the checker certifies `(K_3 ∪ P_k)`-saturated
/// wins. Internal vertices fail because an edge from a corner to a vertex
/// two steps below another corner closes neither a triangle nor a long
/// enough path; a leaf corner starts a path spanning the whole diameter.
pub fn h0_with_attachment(n: usize, k: usize) -> Result<(Vertex, Graph), ConstructionError> {
    check_range(k, 10, 0, 0)?;
    let a = a1(k)?;
    check_range(k, 10, n, 6 * a)?;
    let blueprint = TreeBlueprint::new(TreeKind::One, k)?;
    let mut candidates = vec![blueprint.attachment];
    candidates.extend((0..a).filter(|&v| blueprint.degrees[v] == 1));
    candidates.extend((0..a).filter(|&v| blueprint.degrees[v] != 1 && v != blueprint.attachment));
    let fam = ForbiddenFamily::triangle_union_path(k);
    for v in candidates {
        let g = make_h0_at(n, k, v)?;
        if check_saturated(&g, &fam).is_saturated() {
            return Ok((v, g));
        }
    }
    Err(ConstructionError::NotCertified { n, k })
}

pub fn make_h0(n: usize, k: usize) -> Result<Graph, ConstructionError> {
    h0_with_attachment(n, k).map(|(_, g)| g)
}
