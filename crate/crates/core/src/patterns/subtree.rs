//! Tree-in-tree subgraph isomorphism.
//!
//! The host is rooted at vertex 0. For each choice of pattern root `q`
//! (the pattern vertex mapped highest in the host), `fits[h][p]` records
//! whether the pattern subtree below `p` embeds into the host subtree
//! below `h` with `p ↦ h`. A vertex fits when its pattern children can be
//! matched injectively onto host children they fit into, which is a
//! bipartite matching problem.

use crate::graph::{Graph, Vertex};
use crate::patterns::PatternError;
use crate::witness::Witness;

struct Rooted {
    children: Vec<Vec<Vertex>>,
    postorder: Vec<Vertex>,
}

fn root_at(t: &Graph, root: Vertex) -> Rooted {
    let n = t.order();
    let mut children = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![root];
    parent[root] = root;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &w in t.neighbors(v) {
            if parent[w] == usize::MAX {
                parent[w] = v;
                children[v].push(w);
                stack.push(w);
            }
        }
    }
    order.reverse();
    Rooted { children, postorder: order }
}

/// Kuhn's augmenting-path matching of `left` into `right`; returns the
/// partner of each left vertex when every left vertex is matched.
fn saturating_matching(left: &[Vertex], right: &[Vertex], fits: impl Fn(Vertex, Vertex) -> bool) -> Option<Vec<usize>> {
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    fn augment(
        i: usize,
        left: &[Vertex],
        right: &[Vertex],
        fits: &dyn Fn(Vertex, Vertex) -> bool,
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for j in 0..right.len() {
            if seen[j] || !fits(right[j], left[i]) {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|o| augment(o, left, right, fits, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(i, left, right, &fits, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut partner = vec![0; left.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            partner[*i] = j;
        }
    }
    Some(partner)
}

/// An embedding of `pattern` into `host` (both trees), or `None`.
/// `vertices[i]` of the witness is the host image of pattern vertex `i`.
pub fn subtree_contains(host: &Graph, pattern: &Graph) -> Result<Option<Witness>, PatternError> {
    if !host.is_tree() || !pattern.is_tree() {
        return Err(PatternError::NotATree);
    }
    let (nh, np) = (host.order(), pattern.order());
    if np > nh {
        return Ok(None);
    }
    let h = root_at(host, 0);
    for q in 0..np {
        let p = root_at(pattern, q);
        let mut fits = vec![vec![false; np]; nh];
        for &hv in &h.postorder {
            for &pv in &p.postorder {
                let pc = &p.children[pv];
                let hc = &h.children[hv];
                let ok = pc.len() <= hc.len() && saturating_matching(pc, hc, |a, b| fits[a][b]).is_some();
                fits[hv][pv] = ok;
            }
        }
        if let Some(top) = (0..nh).find(|&hv| fits[hv][q]) {
            let mut map = vec![usize::MAX; np];
            let mut stack = vec![(q, top)];
            while let Some((pv, hv)) = stack.pop() {
                map[pv] = hv;
                let pc = &p.children[pv];
                let hc = &h.children[hv];
                let partner = saturating_matching(pc, hc, |a, b| fits[a][b]).expect("fits implies a matching");
                for (i, &c) in pc.iter().enumerate() {
                    stack.push((c, hc[partner[i]]));
                }
            }
            return Ok(Some(Witness::embedding(map)));
        }
    }
    Ok(None)
}
