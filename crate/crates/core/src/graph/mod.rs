//! Simple undirected graphs on vertices `1..=n`.
//!
//! Adjacency is stored densely as one bit row per vertex, which keeps
//! graphs with tens of thousands of vertices cheap to hold and lets block
//! checks run on whole words.

mod edge_list;
mod generate;

pub use edge_list::{parse_edge_list, serialize_edge_list};
pub use generate::{generate, Family};

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        let words = n.div_ceil(WORD);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds a graph from 1-based unordered vertex pairs. Duplicate and
    /// reversed pairs collapse into one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.link(u - 1, v - 1);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Panics if either label is out of range.
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(
            u >= 1 && u <= self.n && v >= 1 && v <= self.n,
            "vertex out of range"
        );
        self.adjacent(u - 1, v - 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!(v >= 1 && v <= self.n, "vertex out of range");
        self.degree_idx(v - 1)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree_idx(i)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        assert!(v >= 1 && v <= self.n, "vertex out of range");
        self.neighbors_idx(v - 1).map(|i| i + 1)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors_idx(u)
                .filter(move |&v| v > u)
                .map(move |v| (u + 1, v + 1))
        })
    }

    /// `L = D - A`.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let mut l = SymmetricMatrix::zeros(self.n);
        for u in 0..self.n {
            l.set(u, u, self.degree_idx(u) as f64);
            for v in self.neighbors_idx(u).filter(|&v| v > u) {
                l.set(u, v, -1.0);
            }
        }
        l
    }

    /// Subgraph induced by `vertices` (1-based), relabelled `1..=len` in the
    /// order given.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        for &v in vertices {
            self.check_vertex(v)?;
        }
        let mut sub = Graph::edgeless(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.adjacent(u - 1, v - 1) {
                    sub.link(a, b);
                }
            }
        }
        Ok(sub)
    }

    /// Vertices adjacent to every other vertex.
    pub fn dominating_vertices(&self) -> Vec<usize> {
        let target = self.n.saturating_sub(1);
        (0..self.n)
            .filter(|&i| self.degree_idx(i) == target)
            .map(|i| i + 1)
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for v in self.neighbors_idx(u) {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    // 0-based internals

    #[inline]
    pub(crate) fn adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD] >> (v % WORD) & 1 == 1
    }

    #[inline]
    pub(crate) fn row_bits(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub(crate) fn degree_idx(&self, u: usize) -> usize {
        self.row_bits(u)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub(crate) fn neighbors_idx(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row_bits(u).iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + bit)
            })
        })
    }

    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert_ne!(u, v);
        self.bits[u * self.words + v / WORD] |= 1 << (v % WORD);
        self.bits[v * self.words + u / WORD] |= 1 << (u % WORD);
    }

    /// Bit mask over all vertices with the given 0-based members set.
    pub(crate) fn mask_of(&self, members: &[usize]) -> Vec<u64> {
        let mut mask = vec![0u64; self.words];
        for &v in members {
            mask[v / WORD] |= 1 << (v % WORD);
        }
        mask
    }

    /// Number of neighbours of `u` inside `mask`.
    pub(crate) fn neighbors_in(&self, u: usize, mask: &[u64]) -> usize {
        self.row_bits(u)
            .iter()
            .zip(mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

/// Disjoint union plus every edge between the two vertex sets. Vertices of
/// `g2` are shifted by `g1.n()`.
pub fn join(g1: &Graph, g2: &Graph) -> Graph {
    let mut g = disjoint_union(g1, g2);
    for u in 0..g1.n {
        for v in 0..g2.n {
            g.link(u, g1.n + v);
        }
    }
    g
}

/// Union with no edges between the two vertex sets. Vertices of `g2` are
/// shifted by `g1.n()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let mut g = Graph::edgeless(g1.n + g2.n);
    for (u, v) in g1.edges() {
        g.link(u - 1, v - 1);
    }
    for (u, v) in g2.edges() {
        g.link(g1.n + u - 1, g1.n + v - 1);
    }
    g
}
