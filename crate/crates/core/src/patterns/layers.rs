use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::patterns::PatternError;

/// Layer numbers of a tree: the middle vertex (or two) of a longest path
/// form layer 1, every other vertex sits one layer below its distance to
/// that set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerMap {
    layers: Vec<usize>,
    reference_path: Vec<Vertex>,
}

impl LayerMap {
    pub fn layer(&self, v: Vertex) -> usize {
        self.layers[v]
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    /// The longest path the decomposition was taken from: the
    /// lexicographically least vertex sequence among all longest paths.
    pub fn reference_path(&self) -> &[Vertex] {
        &self.reference_path
    }

    pub fn max_layer(&self) -> usize {
        self.layers.iter().copied().max().unwrap_or(0)
    }

    /// `sizes[i]` is the number of vertices on layer `i + 1`.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.max_layer()];
        for &l in &self.layers {
            sizes[l - 1] += 1;
        }
        sizes
    }

    pub fn layer_members(&self, layer: usize) -> Vec<Vertex> {
        (0..self.layers.len()).filter(|&v| self.layers[v] == layer).collect()
    }
}

pub fn layer_decompose(t: &Graph) -> Result<LayerMap, PatternError> {
    if !t.is_tree() {
        return Err(PatternError::NotATree);
    }
    let n = t.order();
    let ecc: Vec<usize> = (0..n).map(|v| t.distances_from(v).into_iter().max().unwrap_or(0)).collect();
    let diam = ecc.iter().copied().max().unwrap_or(0);
    if diam < 2 {
        return Err(PatternError::DiameterTooSmall(diam));
    }
    let start = (0..n).find(|&v| ecc[v] == diam).expect("some vertex attains the diameter");

    // Root at `start`; `reach[v]` is the deepest depth below `v`.
    let depth = t.distances_from(start);
    let mut by_depth: Vec<Vertex> = (0..n).collect();
    by_depth.sort_by_key(|&v| std::cmp::Reverse(depth[v]));
    let mut reach = depth.clone();
    for &v in &by_depth {
        for &w in t.neighbors(v) {
            if depth[w] + 1 == depth[v] {
                reach[w] = reach[w].max(reach[v]);
            }
        }
    }
    let mut path = vec![start];
    let mut cur = start;
    while depth[cur] < diam {
        cur = t
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| depth[w] == depth[cur] + 1 && reach[w] == diam)
            .expect("a diameter path continues");
        path.push(cur);
    }

    let middle: Vec<Vertex> = if path.len() % 2 == 1 {
        vec![path[path.len() / 2]]
    } else {
        vec![path[path.len() / 2 - 1], path[path.len() / 2]]
    };
    let mut layers = vec![usize::MAX; n];
    for &m in &middle {
        for (v, d) in t.distances_from(m).into_iter().enumerate() {
            layers[v] = layers[v].min(d + 1);
        }
    }
    Ok(LayerMap { layers, reference_path: path })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths() {
        let p5 = layer_decompose(&Graph::path(5)).unwrap();
        assert_eq!(p5.layer_sizes(), vec![1, 2, 2]);
        assert_eq!(p5.reference_path(), &[0, 1, 2, 3, 4]);
        let p4 = layer_decompose(&Graph::path(4)).unwrap();
        assert_eq!(p4.layer_members(1), vec![1, 2]);
        assert_eq!(p4.max_layer(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(layer_decompose(&Graph::path(2)), Err(PatternError::DiameterTooSmall(1)));
        assert_eq!(layer_decompose(&Graph::cycle(5)), Err(PatternError::NotATree));
    }
}
