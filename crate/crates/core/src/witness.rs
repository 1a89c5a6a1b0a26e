//! Certificates for pattern occurrences.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartKind {
    /// Pairwise adjacent vertices.
    Clique,
    /// Vertices listed in path order.
    Path,
    /// The universal vertex of a `K_1 ∨ F` copy; adjacent to every vertex
    /// of the other parts.
    Hub,
    /// `vertices[i]` is the image of pattern vertex `i`.
    Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessPart {
    pub kind: PartKind,
    pub vertices: Vec<Vertex>,
}

/// A concrete vertex embedding certifying that a pattern occurs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub parts: Vec<WitnessPart>,
}

impl Witness {
    pub fn clique(vertices: Vec<Vertex>) -> Self {
        Witness { parts: vec![WitnessPart { kind: PartKind::Clique, vertices }] }
    }

    pub fn path(vertices: Vec<Vertex>) -> Self {
        Witness { parts: vec![WitnessPart { kind: PartKind::Path, vertices }] }
    }

    pub fn paths(paths: Vec<Vec<Vertex>>) -> Self {
        Witness { parts: paths.into_iter().map(|vertices| WitnessPart { kind: PartKind::Path, vertices }).collect() }
    }

    pub fn embedding(vertices: Vec<Vertex>) -> Self {
        Witness { parts: vec![WitnessPart { kind: PartKind::Embedding, vertices }] }
    }

    /// Concatenates the parts of several witnesses (for disjoint unions).
    pub fn concat(witnesses: impl IntoIterator<Item = Witness>) -> Self {
        Witness { parts: witnesses.into_iter().flat_map(|w| w.parts).collect() }
    }

    pub fn with_hub(hub: Vertex, forest: Witness) -> Self {
        let mut parts = vec![WitnessPart { kind: PartKind::Hub, vertices: vec![hub] }];
        parts.extend(forest.parts);
        Witness { parts }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.parts.iter().flat_map(|p| p.vertices.iter().copied())
    }

    /// Maps every vertex through `map` (used to lift witnesses found in an
    /// induced subgraph back to the host).
    pub fn relabel(mut self, map: &[Vertex]) -> Self {
        for part in &mut self.parts {
            for v in &mut part.vertices {
                *v = map[*v];
            }
        }
        self
    }

    /// Checks the structural claims of each part against `g`: vertices in
    /// range and pairwise distinct, clique/path/hub adjacencies present.
    /// Embedding parts only get the distinctness check; use
    /// [`Witness::validates_embedding`] for those.
    pub fn validates(&self, g: &Graph) -> bool {
        let mut seen = vec![false; g.order()];
        for v in self.vertices() {
            if v >= g.order() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        let hubs: Vec<Vertex> =
            self.parts.iter().filter(|p| p.kind == PartKind::Hub).flat_map(|p| p.vertices.iter().copied()).collect();
        for part in &self.parts {
            let vs = &part.vertices;
            let ok = match part.kind {
                PartKind::Clique => vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&w| g.has_edge(u, w))),
                PartKind::Path => vs.windows(2).all(|e| g.has_edge(e[0], e[1])),
                PartKind::Hub => vs.len() == 1,
                PartKind::Embedding => true,
            };
            if !ok {
                return false;
            }
            if part.kind != PartKind::Hub && !hubs.iter().all(|&h| vs.iter().all(|&v| g.has_edge(h, v))) {
                return false;
            }
        }
        true
    }

    /// True iff the first embedding part maps every edge of `pattern` onto
    /// an edge of `host` injectively.
    pub fn validates_embedding(&self, host: &Graph, pattern: &Graph) -> bool {
        let Some(part) = self.parts.iter().find(|p| p.kind == PartKind::Embedding) else {
            return false;
        };
        let map = &part.vertices;
        map.len() == pattern.order()
            && self.validates(host)
            && pattern.edges().all(|(a, b)| host.has_edge(map[a], map[b]))
    }
}
