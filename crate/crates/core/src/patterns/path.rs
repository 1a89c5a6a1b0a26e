//! Exact path detection.
//!
//! Acyclic components are answered in linear time by the double-BFS
//! diameter walk. Components with cycles fall back to backtracking from
//! every start vertex, pruned by the size of the region still reachable
//! from the tip of the current path.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::graph::{Graph, Vertex};
use crate::patterns::PatternError;
use crate::witness::Witness;

/// A simple path on at least `k` vertices; the witness lists exactly `k`.
pub fn has_path_of_order(g: &Graph, k: usize) -> Option<Witness> {
    find_path_in(g, &VertexSet::full(g.order()), k).map(Witness::path)
}

/// A maximum-order simple path starting at `v`.
pub fn longest_path_from(g: &Graph, v: Vertex) -> Result<Witness, PatternError> {
    g.check_vertex(v)?;
    let comp = component_of(g, &VertexSet::full(g.order()), v);
    let path = if is_acyclic(g, &comp) {
        let (dist, parent) = bfs(g, &comp, v);
        let far = farthest(&comp, &dist);
        trace(&parent, far)
    } else {
        let mut best = vec![v];
        let mut path = vec![v];
        let mut on_path = VertexSet::empty(g.order());
        on_path.insert(v);
        longest_dfs(g, &comp, &mut path, &mut on_path, &mut best);
        best
    };
    Ok(Witness::path(path))
}

pub(crate) fn find_path_in(g: &Graph, allowed: &VertexSet, k: usize) -> Option<Vec<Vertex>> {
    if k == 0 {
        return Some(Vec::new());
    }
    for comp in components(g, allowed) {
        if comp.len() < k {
            continue;
        }
        let found = if is_acyclic(g, &comp) {
            let start = comp.first().expect("components are nonempty");
            let (dist, _) = bfs(g, &comp, start);
            let a = farthest(&comp, &dist);
            let (dist, parent) = bfs(g, &comp, a);
            let b = farthest(&comp, &dist);
            let mut path = trace(&parent, b);
            path.reverse();
            (path.len() >= k).then(|| {
                path.truncate(k);
                path
            })
        } else {
            search_cyclic(g, &comp, k)
        };
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Calls `f` on every simple path with exactly `k` vertices inside
/// `allowed`. Each path is reported once, oriented so that its first
/// vertex is smaller than its last.
pub(crate) fn for_each_path<F>(g: &Graph, allowed: &VertexSet, k: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if k == 0 {
        return f(&[]);
    }
    let mut path = Vec::with_capacity(k);
    let mut on_path = VertexSet::empty(g.order());
    for s in allowed.iter() {
        path.push(s);
        on_path.insert(s);
        let r = enumerate_from(g, allowed, k, &mut path, &mut on_path, f);
        on_path.remove(s);
        path.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn enumerate_from<F>(
    g: &Graph,
    allowed: &VertexSet,
    k: usize,
    path: &mut Vec<Vertex>,
    on_path: &mut VertexSet,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if path.len() == k {
        if k == 1 || path[0] < path[k - 1] {
            return f(path);
        }
        return ControlFlow::Continue(());
    }
    let tip = *path.last().expect("path starts nonempty");
    for &w in g.neighbors(tip) {
        if !allowed.contains(w) || on_path.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        let r = enumerate_from(g, allowed, k, path, on_path, f);
        on_path.remove(w);
        path.pop();
        r?;
    }
    ControlFlow::Continue(())
}

fn search_cyclic(g: &Graph, region: &VertexSet, k: usize) -> Option<Vec<Vertex>> {
    let mut path = Vec::with_capacity(k);
    let mut on_path = VertexSet::empty(g.order());
    for s in region.iter() {
        path.push(s);
        on_path.insert(s);
        if extend_to(g, region, k, &mut path, &mut on_path) {
            return Some(path);
        }
        on_path.remove(s);
        path.pop();
    }
    None
}

fn extend_to(g: &Graph, region: &VertexSet, k: usize, path: &mut Vec<Vertex>, on_path: &mut VertexSet) -> bool {
    if path.len() >= k {
        return true;
    }
    let tip = *path.last().expect("path starts nonempty");
    if path.len() + reachable(g, region, on_path, tip) < k {
        return false;
    }
    for &w in g.neighbors(tip) {
        if !region.contains(w) || on_path.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        if extend_to(g, region, k, path, on_path) {
            return true;
        }
        on_path.remove(w);
        path.pop();
    }
    false
}

fn longest_dfs(g: &Graph, region: &VertexSet, path: &mut Vec<Vertex>, on_path: &mut VertexSet, best: &mut Vec<Vertex>) {
    if path.len() > best.len() {
        best.clone_from(path);
    }
    if best.len() == region.len() {
        return;
    }
    let tip = *path.last().expect("path starts nonempty");
    if path.len() + reachable(g, region, on_path, tip) <= best.len() {
        return;
    }
    for &w in g.neighbors(tip) {
        if !region.contains(w) || on_path.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        longest_dfs(g, region, path, on_path, best);
        on_path.remove(w);
        path.pop();
    }
}

/// Vertices reachable from `tip` without touching the path (tip excluded).
fn reachable(g: &Graph, region: &VertexSet, on_path: &VertexSet, tip: Vertex) -> usize {
    let mut seen = on_path.clone();
    let mut stack = vec![tip];
    let mut count = 0;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if region.contains(w) && !seen.contains(w) {
                seen.insert(w);
                count += 1;
                stack.push(w);
            }
        }
    }
    count
}

pub(crate) fn components(g: &Graph, allowed: &VertexSet) -> Vec<VertexSet> {
    let mut seen = VertexSet::empty(g.order());
    let mut out = Vec::new();
    for s in allowed.iter() {
        if seen.contains(s) {
            continue;
        }
        let comp = component_of(g, allowed, s);
        for v in comp.iter() {
            seen.insert(v);
        }
        out.push(comp);
    }
    out
}

fn component_of(g: &Graph, allowed: &VertexSet, s: Vertex) -> VertexSet {
    let mut comp = VertexSet::empty(g.order());
    comp.insert(s);
    let mut stack = vec![s];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if allowed.contains(w) && !comp.contains(w) {
                comp.insert(w);
                stack.push(w);
            }
        }
    }
    comp
}

fn is_acyclic(g: &Graph, comp: &VertexSet) -> bool {
    let mut twice = 0;
    for v in comp.iter() {
        twice += g.neighbors(v).iter().filter(|&&w| comp.contains(w)).count();
    }
    twice / 2 + 1 == comp.len()
}

fn bfs(g: &Graph, region: &VertexSet, s: Vertex) -> (Vec<usize>, Vec<Vertex>) {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if region.contains(w) && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Farthest vertex of `region`, smallest id on ties.
fn farthest(region: &VertexSet, dist: &[usize]) -> Vertex {
    let mut best = region.first().expect("region is nonempty");
    for v in region.iter() {
        if dist[v] > dist[best] {
            best = v;
        }
    }
    best
}

/// Path from the BFS root to `end`, root first.
fn trace(parent: &[Vertex], end: Vertex) -> Vec<Vertex> {
    let mut path = vec![end];
    let mut v = end;
    while parent[v] != usize::MAX {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(w: &Witness) -> usize {
        w.parts[0].vertices.len()
    }

    #[test]
    fn path_examples() {
        let k2 = Graph::complete(2);
        assert!(has_path_of_order(&k2, 2).is_some());
        assert!(has_path_of_order(&k2, 3).is_none());
        let p5 = Graph::path(5);
        assert_eq!(order(&longest_path_from(&p5, 0).unwrap()), 5);
        assert_eq!(order(&longest_path_from(&p5, 2).unwrap()), 3);
        assert!(longest_path_from(&p5, 5).is_err());
    }

    #[test]
    fn cyclic_components() {
        let c6 = Graph::cycle(6);
        let w = has_path_of_order(&c6, 6).unwrap();
        assert!(w.validates(&c6));
        assert!(has_path_of_order(&c6, 7).is_none());
        assert_eq!(order(&longest_path_from(&c6, 3).unwrap()), 6);
        // K_{2,5}: the longest path alternates and has 5 vertices.
        let mut e = Vec::new();
        for a in 0..2 {
            for b in 2..7 {
                e.push((a, b));
            }
        }
        let k25 = Graph::new(7, &e).unwrap();
        assert!(has_path_of_order(&k25, 5).is_some());
        assert!(has_path_of_order(&k25, 6).is_none());
    }

    #[test]
    fn witnesses_have_exactly_k_vertices() {
        let g = Graph::path(9).disjoint_union(&Graph::cycle(4));
        for k in 1..=9 {
            let w = has_path_of_order(&g, k).unwrap();
            assert_eq!(order(&w), k);
            assert!(w.validates(&g));
        }
    }

    #[test]
    fn enumerates_each_path_once() {
        let mut n = 0;
        let _ = for_each_path(&Graph::complete(4), &VertexSet::full(4), 3, &mut |_| {
            n += 1;
            ControlFlow::Continue(())
        });
        // 4·3·2 ordered sequences, each path counted once.
        assert_eq!(n, 12);
    }
}
