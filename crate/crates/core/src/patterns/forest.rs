//! Disjoint unions of cliques and paths, and `K_1 ∨ F` for linear forests.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::graph::{Graph, Vertex};
use crate::patterns::clique::for_each_clique;
use crate::patterns::path::{find_path_in, for_each_path};
use crate::witness::Witness;

/// Vertex-disjoint `K_p` and path on at least `k` vertices.
pub fn contains_disjoint_clique_path(g: &Graph, p: usize, k: usize) -> Option<Witness> {
    find_union(g, &VertexSet::full(g.order()), &[p], &[k])
}

/// Pairwise vertex-disjoint paths with the given orders.
pub fn contains_linear_forest(g: &Graph, orders: &[usize]) -> Option<Witness> {
    find_union(g, &VertexSet::full(g.order()), &[], orders)
}

/// A hub `v` whose neighbourhood contains the linear forest.
pub fn contains_join_k1(g: &Graph, orders: &[usize]) -> Option<Witness> {
    let needed: usize = orders.iter().sum();
    (0..g.order()).find_map(|hub| {
        if g.degree(hub) < needed {
            return None;
        }
        let nbhd = VertexSet::from_vertices(g.order(), g.neighbors(hub).iter().copied());
        find_union(g, &nbhd, &[], orders).map(|forest| Witness::with_hub(hub, forest))
    })
}

/// Vertex-disjoint cliques of the given sizes and paths of the given
/// orders, all inside `allowed`. Witness parts follow the argument order:
/// cliques first, then paths.
pub(crate) fn find_union(g: &Graph, allowed: &VertexSet, cliques: &[usize], paths: &[usize]) -> Option<Witness> {
    let total: usize = cliques.iter().chain(paths).sum();
    if allowed.len() < total {
        return None;
    }
    let mut clique_order: Vec<usize> = (0..cliques.len()).collect();
    clique_order.sort_by_key(|&i| std::cmp::Reverse(cliques[i]));
    let mut path_order: Vec<usize> = (0..paths.len()).collect();
    path_order.sort_by_key(|&i| std::cmp::Reverse(paths[i]));

    let mut search = UnionSearch {
        g,
        cliques,
        paths,
        clique_order,
        path_order,
        chosen_cliques: vec![Vec::new(); cliques.len()],
        chosen_paths: vec![Vec::new(); paths.len()],
    };
    if search.place_clique(0, allowed.clone(), 0) {
        let mut parts: Vec<Witness> = search.chosen_cliques.into_iter().map(Witness::clique).collect();
        parts.extend(search.chosen_paths.into_iter().map(Witness::path));
        Some(Witness::concat(parts))
    } else {
        None
    }
}

struct UnionSearch<'a> {
    g: &'a Graph,
    cliques: &'a [usize],
    paths: &'a [usize],
    clique_order: Vec<usize>,
    path_order: Vec<usize>,
    chosen_cliques: Vec<Vec<Vertex>>,
    chosen_paths: Vec<Vec<Vertex>>,
}

impl UnionSearch<'_> {
    fn remaining(&self, clique_step: usize, path_step: usize) -> usize {
        self.clique_order[clique_step..].iter().map(|&i| self.cliques[i]).sum::<usize>()
            + self.path_order[path_step..].iter().map(|&i| self.paths[i]).sum::<usize>()
    }

    /// Equal-size parts are placed with increasing minimum vertex, which
    /// removes permutations of interchangeable parts.
    fn place_clique(&mut self, step: usize, allowed: VertexSet, floor: Vertex) -> bool {
        if step == self.clique_order.len() {
            return self.place_path(0, allowed, 0);
        }
        if allowed.len() < self.remaining(step, 0) {
            return false;
        }
        let idx = self.clique_order[step];
        let size = self.cliques[idx];
        let same_as_next =
            |s: &Self, step: usize| step + 1 < s.clique_order.len() && s.cliques[s.clique_order[step + 1]] == size;
        let chain = same_as_next(self, step);
        let mut candidates = allowed.clone();
        if floor > 0 {
            candidates.retain_above(floor - 1);
        }
        let mut ok = false;
        let g = self.g;
        let _ = for_each_clique(g, &candidates, size, &mut |c| {
            let mut rest = allowed.clone();
            for &v in c {
                rest.remove(v);
            }
            let next_floor = if chain { c[0] + 1 } else { 0 };
            if self.place_clique(step + 1, rest, next_floor) {
                self.chosen_cliques[idx] = c.to_vec();
                ok = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        ok
    }

    fn place_path(&mut self, step: usize, allowed: VertexSet, floor: Vertex) -> bool {
        if step == self.path_order.len() {
            return true;
        }
        if allowed.len() < self.remaining(self.clique_order.len(), step) {
            return false;
        }
        let idx = self.path_order[step];
        let k = self.paths[idx];
        if step + 1 == self.path_order.len() && floor == 0 {
            return match find_path_in(self.g, &allowed, k) {
                Some(p) => {
                    self.chosen_paths[idx] = p;
                    true
                }
                None => false,
            };
        }
        let chain = step + 1 < self.path_order.len() && self.paths[self.path_order[step + 1]] == k;
        let mut ok = false;
        let g = self.g;
        let _ = for_each_path(g, &allowed, k, &mut |p| {
            let min = *p.iter().min().expect("paths are nonempty");
            if min < floor {
                return ControlFlow::Continue(());
            }
            let mut rest = allowed.clone();
            for &v in p {
                rest.remove(v);
            }
            let next_floor = if chain { min + 1 } else { 0 };
            if self.place_path(step + 1, rest, next_floor) {
                self.chosen_paths[idx] = p.to_vec();
                ok = true;
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        ok
    }
}
