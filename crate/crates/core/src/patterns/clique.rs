use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::graph::{Graph, Vertex};
use crate::witness::Witness;

/// Lexicographically least set of `p` mutually adjacent vertices.
pub fn has_clique(g: &Graph, p: usize) -> Option<Witness> {
    let mut found = None;
    let _ = for_each_clique(g, &VertexSet::full(g.order()), p, &mut |c| {
        found = Some(c.to_vec());
        ControlFlow::Break(())
    });
    found.map(Witness::clique)
}

/// Calls `f` on every `p`-clique inside `allowed`, as ascending vertex
/// lists, in lexicographic order.
pub fn for_each_clique<F>(g: &Graph, allowed: &VertexSet, p: usize, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if p == 0 {
        return f(&[]);
    }
    let mut stack = Vec::with_capacity(p);
    extend(g, allowed.clone(), p, &mut stack, f)
}

fn extend<F>(g: &Graph, candidates: VertexSet, p: usize, stack: &mut Vec<Vertex>, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex]) -> ControlFlow<()>,
{
    if candidates.len() + stack.len() < p {
        return ControlFlow::Continue(());
    }
    for v in candidates.iter() {
        stack.push(v);
        if stack.len() == p {
            f(stack)?;
        } else {
            let mut next = candidates.clone();
            next.intersect_row(g.row(v));
            next.retain_above(v);
            extend(g, next, p, stack, f)?;
        }
        stack.pop();
    }
    ControlFlow::Continue(())
}
