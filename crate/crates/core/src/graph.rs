//! Immutable simple undirected graphs on the vertex set `0..n`.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("graph is not a tree")]
    NotATree,
    #[error("edge ({0}, {1}) already present")]
    EdgePresent(Vertex, Vertex),
}

/// Distance between the farthest pair of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Infinite => None,
        }
    }
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("inf"),
        }
    }
}

/// A simple graph with packed adjacency rows.
///
/// Each vertex owns a row of `u64` words; bit `w` of row `v` is set iff
/// `vw` is an edge. Sorted neighbour lists are kept alongside the rows so
/// sparse traversals do not have to scan words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    rows: Vec<u64>,
    adj: Vec<Vec<Vertex>>,
    edges: usize,
}

fn words_for(order: usize) -> usize {
    order.div_ceil(64).max(1)
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn new(order: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(order);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.set_bit(u, v);
        }
        g.rebuild_lists();
        Ok(g)
    }

    pub fn empty(order: usize) -> Self {
        let words = words_for(order);
        Graph { order, words, rows: vec![0; order * words], adj: vec![Vec::new(); order], edges: 0 }
    }

    pub fn complete(order: usize) -> Self {
        let mut g = Graph::empty(order);
        for u in 0..order {
            for v in u + 1..order {
                g.set_bit(u, v);
            }
        }
        g.rebuild_lists();
        g
    }

    pub fn path(order: usize) -> Self {
        let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        Graph::new(order, &edges).expect("path edges are in range")
    }

    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "a cycle needs at least three vertices");
        let mut edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        edges.push((0, order - 1));
        Graph::new(order, &edges).expect("cycle edges are in range")
    }

    /// Builds a graph from a parent array (`parents[0]` is ignored, every
    /// other vertex is joined to its parent).
    pub fn from_parents(parents: &[Vertex]) -> Result<Self, GraphError> {
        let edges: Vec<_> = parents.iter().enumerate().skip(1).map(|(v, &p)| (p, v)).collect();
        Graph::new(parents.len(), &edges)
    }

    fn set_bit(&mut self, u: Vertex, v: Vertex) {
        let w = self.words;
        self.rows[u * w + v / 64] |= 1 << (v % 64);
        self.rows[v * w + u / 64] |= 1 << (u % 64);
    }

    fn rebuild_lists(&mut self) {
        let mut total = 0;
        for v in 0..self.order {
            let list = &mut self.adj[v];
            list.clear();
            let row = &self.rows[v * self.words..(v + 1) * self.words];
            for (wi, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    list.push(wi * 64 + b);
                    bits &= bits - 1;
                }
            }
            total += list.len();
        }
        self.edges = total / 2;
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.rows[u * self.words + v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    /// The packed adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order).flat_map(move |u| self.adj[u].iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Non-adjacent pairs `(u, v)` with `u < v`, in ascending order.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order)
            .flat_map(move |u| (u + 1..self.order).map(move |v| (u, v)))
            .filter(move |&(u, v)| !self.has_edge(u, v))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.order {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.order })
        }
    }

    /// `self + uv`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u, v));
        }
        let mut g = self.clone();
        g.set_bit(u, v);
        let pos = g.adj[u].partition_point(|&x| x < v);
        g.adj[u].insert(pos, v);
        let pos = g.adj[v].partition_point(|&x| x < u);
        g.adj[v].insert(pos, u);
        g.edges += 1;
        Ok(g)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.order);
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.order, &edges).expect("permutation keeps vertices in range")
    }

    /// Subgraph induced on `vertices`; vertex `i` of the result is
    /// `vertices[i]` of `self`.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.order];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.set_bit(i, j);
                }
            }
        }
        g.rebuild_lists();
        g
    }

    /// `G ∪ H`, with `other` shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order;
        let mut g = Graph::empty(self.order + other.order);
        for (u, v) in self.edges() {
            g.set_bit(u, v);
        }
        for (u, v) in other.edges() {
            g.set_bit(u + shift, v + shift);
        }
        g.rebuild_lists();
        g
    }

    /// `G ∨ H`: the disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Graph {
        let shift = self.order;
        let mut g = Graph::empty(self.order + other.order);
        for (u, v) in self.edges() {
            g.set_bit(u, v);
        }
        for (u, v) in other.edges() {
            g.set_bit(u + shift, v + shift);
        }
        for u in 0..self.order {
            for v in 0..other.order {
                g.set_bit(u, v + shift);
            }
        }
        g.rebuild_lists();
        g
    }

    /// Components ordered by their minimum vertex; each component sorted.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.order];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.order {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order <= 1 || self.connected_components().len() == 1
    }

    /// At least three vertices, connected, and no cut vertex.
    pub fn is_two_connected(&self) -> bool {
        if self.order < 3 || !self.is_connected() {
            return false;
        }
        (0..self.order).all(|cut| {
            let rest: Vec<_> = (0..self.order).filter(|&v| v != cut).collect();
            self.induced(&rest).is_connected()
        })
    }

    pub fn is_tree(&self) -> bool {
        self.order >= 1 && self.edges + 1 == self.order && self.is_connected()
    }

    /// BFS distances from `s`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, s: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order];
        let mut queue = VecDeque::new();
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for s in 0..self.order {
            for d in self.distances_from(s) {
                if d == usize::MAX {
                    return Diameter::Infinite;
                }
                best = best.max(d);
            }
        }
        Diameter::Finite(best)
    }

    /// A vertex adjacent to every other vertex (the whole graph is a star
    /// or contains a universal vertex).
    pub fn center_vertex(&self) -> Option<Vertex> {
        (0..self.order).find(|&v| self.adj[v].len() + 1 == self.order)
    }

    /// True for trees with a vertex adjacent to all others (`K_{1,n-1}`,
    /// including `K_1` and `K_2`).
    pub fn is_star(&self) -> bool {
        self.is_tree() && self.center_vertex().is_some()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph").field("order", &self.order).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_connectivity() {
        assert!(Graph::cycle(5).is_two_connected());
        assert!(Graph::complete(3).is_two_connected());
        assert!(!Graph::path(4).is_two_connected());
        assert!(!Graph::complete(2).is_two_connected());
        let bowtie = Graph::new(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(!bowtie.is_two_connected());
    }

    #[test]
    fn triangle_and_path() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        let p5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p5.diameter(), Diameter::Finite(4));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(4, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::VertexOutOfRange { vertex: 3, order: 3 }));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn union_and_join() {
        let k2 = Graph::complete(2);
        let u = k2.disjoint_union(&k2);
        assert_eq!((u.order(), u.edge_count()), (4, 2));
        assert_eq!(u.connected_components().len(), 2);
        assert_eq!(u.diameter(), Diameter::Infinite);

        let g = Graph::path(4);
        assert_eq!(g.disjoint_union(&Graph::empty(0)), g);
        assert_eq!(Graph::empty(0).join(&g), g);

        let wheel = Graph::complete(1).join(&Graph::cycle(5));
        assert_eq!((wheel.order(), wheel.edge_count()), (6, 10));
        let k2e4 = Graph::complete(2).join(&Graph::empty(4));
        assert_eq!((k2e4.order(), k2e4.edge_count()), (6, 9));
    }

    #[test]
    fn diameter_small_orders() {
        assert_eq!(Graph::empty(0).diameter(), Diameter::Finite(0));
        assert_eq!(Graph::empty(1).diameter(), Diameter::Finite(0));
        assert_eq!(Graph::complete(3).connected_components().len(), 1);
    }

    #[test]
    fn with_edge_keeps_lists_sorted() {
        let g = Graph::path(5).with_edge(0, 4).unwrap();
        assert_eq!(g.neighbors(0), &[1, 4]);
        assert_eq!(g.neighbors(4), &[0, 3]);
        assert_eq!(g.edge_count(), 5);
        assert!(Graph::path(3).with_edge(0, 1).is_err());
    }

    #[test]
    fn wide_rows() {
        let g = Graph::path(130);
        assert!(g.has_edge(64, 65) && g.has_edge(127, 128));
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }
}
