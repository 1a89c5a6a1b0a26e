use crate::graph::Vertex;

/// Fixed-capacity vertex set packed into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { words: vec![0; n.div_ceil(64).max(1)] }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_vertices(n: usize, vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = VertexSet::empty(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Keeps only members also set in `row` (a packed adjacency row).
    pub fn intersect_row(&mut self, row: &[u64]) {
        for (a, b) in self.words.iter_mut().zip(row) {
            *a &= b;
        }
    }

    /// Removes every member `<= v`.
    pub fn retain_above(&mut self, v: Vertex) {
        let (wi, bit) = (v / 64, v % 64);
        for w in &mut self.words[..wi] {
            *w = 0;
        }
        if wi < self.words.len() {
            self.words[wi] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
    }

    pub fn first(&self) -> Option<Vertex> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i * 64 + b)
            })
        })
    }
}
