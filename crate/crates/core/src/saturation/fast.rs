//! Exact shortcut for forests against `{P_k}` or `{K_3, P_k}`.
//!
//! In a forest, adding `uv` either joins two components (the longest new
//! path runs through `uv` and has `ecc(u) + ecc(v) + 2` vertices) or closes
//! a single cycle `p_0 = u, ..., p_m = v`. A path through the new edge
//! leaves the cycle at two positions `j < j'` and has
//! `(h_j + j + 1) + (h_j' + m - j' + 1)` vertices, where `h_j` is the
//! depth of the deepest branch hanging off `p_j`. Paths avoiding `uv`
//! already existed.

use crate::graph::{Graph, Vertex};
use crate::saturation::family::{ForbiddenFamily, Member};

pub(crate) enum Fast {
    Saturated,
    ContainsMember,
    Missing(Vertex, Vertex),
}

/// `(k, has_triangle)` when the family is `{P_k}` or `{K_3, P_k}`.
fn shape(fam: &ForbiddenFamily) -> Option<(usize, bool)> {
    let mut k = None;
    let mut triangle = false;
    for m in fam.members() {
        match m {
            Member::Path(p) if k.is_none() => k = Some(*p),
            Member::Clique(3) if !triangle => triangle = true,
            _ => return None,
        }
    }
    k.map(|k| (k, triangle))
}

fn is_forest(g: &Graph) -> bool {
    g.edge_count() + g.connected_components().len() == g.order()
}

/// Rooted view of the component of `root`: BFS order, parents, heights.
struct Rooted {
    dist: Vec<usize>,
    parent: Vec<Vertex>,
    height: Vec<usize>,
}

fn root_at(g: &Graph, root: Vertex) -> Rooted {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    dist[root] = 0;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in g.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut height = vec![0; n];
    for &x in order.iter().skip(1).rev() {
        let p = parent[x];
        height[p] = height[p].max(height[x] + 1);
    }
    Rooted { dist, parent, height }
}

/// Branch depth below `x` in the rooted view, ignoring child `skip`.
fn branch_depth(g: &Graph, r: &Rooted, x: Vertex, skip: Vertex) -> usize {
    g.neighbors(x).iter().filter(|&&c| c != skip && r.parent[c] == x).map(|&c| r.height[c] + 1).max().unwrap_or(0)
}

fn closes_long_cycle_path(g: &Graph, r: &Rooted, v: Vertex, k: usize) -> bool {
    // p_0 = root (u), ..., p_m = v, recovered by walking parents from v.
    let mut path = vec![v];
    while r.dist[*path.last().unwrap()] > 0 {
        path.push(r.parent[*path.last().unwrap()]);
    }
    path.reverse();
    let m = path.len() - 1;
    let mut best_a = 0;
    for jp in 0..=m {
        let next = if jp < m { path[jp + 1] } else { usize::MAX };
        let h = branch_depth(g, r, path[jp], next);
        if jp > 0 && best_a + h + m - jp + 1 >= k {
            return true;
        }
        best_a = best_a.max(h + jp + 1);
    }
    false
}

/// `None` when the shortcut does not apply.
pub(crate) fn forest_verdict(g: &Graph, fam: &ForbiddenFamily) -> Option<Fast> {
    let (k, triangle) = shape(fam)?;
    if !is_forest(g) {
        return None;
    }
    let n = g.order();
    let rooted: Vec<Rooted> = (0..n).map(|v| root_at(g, v)).collect();
    let ecc: Vec<usize> =
        rooted.iter().map(|r| r.dist.iter().filter(|&&d| d != usize::MAX).copied().max().unwrap_or(0)).collect();
    if ecc.iter().any(|&e| e + 1 >= k) {
        return Some(Fast::ContainsMember);
    }
    for u in 0..n {
        let r = &rooted[u];
        for v in u + 1..n {
            let d = r.dist[v];
            let created = match d {
                1 => continue,
                usize::MAX => ecc[u] + ecc[v] + 2 >= k,
                2 if triangle => true,
                _ => closes_long_cycle_path(g, r, v, k),
            };
            if !created {
                return Some(Fast::Missing(u, v));
            }
        }
    }
    Some(Fast::Saturated)
}
