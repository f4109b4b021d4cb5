use std::fmt;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`, stored as a dense bit matrix.
///
/// Row `v` occupies `words` consecutive `u64`s. For `n <= 64` every row is a
/// single word and [`Graph::mask`] exposes it directly; the hot loops in the
/// enumerator and the distance code take that path.
///
/// Vertices are 0-based inside the library. Every textual surface (edge
/// lists, records, DOT, the CLI) prints them as `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        Self {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// Builds a graph from an edge list over external labels `1..=n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u - 1, v - 1);
        }
        Ok(g)
    }

    /// Same as [`Graph::from_edges`] but over 0-based indices.
    pub fn from_index_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let shifted: Vec<_> = edges.iter().map(|&(u, v)| (u + 1, v + 1)).collect();
        Self::from_edges(n, &shifted)
    }

    /// Builds a graph on at most 64 vertices from per-vertex neighbor masks.
    /// Masks are symmetrized and the diagonal is cleared.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        assert!(n <= 64, "from_masks needs n <= 64");
        let mut g = Self::empty(n);
        for (v, &m) in masks.iter().enumerate() {
            let mut m = m & !(1u64 << v);
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                if u < n {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    #[inline]
    pub fn is_small(&self) -> bool {
        self.n <= 64
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbor mask of `v`; only valid when the graph has at most 64 vertices.
    #[inline]
    pub fn mask(&self, v: usize) -> u64 {
        debug_assert!(self.is_small());
        self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> Neighbors<'_> {
        Neighbors {
            row: self.row(v),
            word: 0,
            cur: self.row(v).first().copied().unwrap_or(0),
        }
    }

    /// Edges as 0-based pairs `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Appends a new vertex adjacent to the given 0-based vertices and
    /// returns its index.
    pub fn with_vertex(&self, nbrs: impl IntoIterator<Item = usize>) -> Graph {
        let mut g = Graph::empty(self.n + 1);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for u in nbrs {
            g.add_edge(u, self.n);
        }
        g
    }

    /// Induced subgraph on `keep` (in the given order; vertex `keep[i]`
    /// becomes `i`).
    pub fn induced(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::empty(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// Relabels with `perm`: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.component_of(0, None).len() == self.n
    }

    /// Vertices reachable from `start` while avoiding `skip`.
    pub(crate) fn component_of(&self, start: usize, skip: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        if let Some(s) = skip {
            seen[s] = true;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                    out.push(u);
                }
            }
        }
        out
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::EmptyGraph);
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Closed neighbourhoods equal.
    pub fn true_twins(&self, u: usize, v: usize) -> bool {
        u != v && self.has_edge(u, v) && self.same_row_except(u, v)
    }

    /// Open neighbourhoods equal.
    pub fn false_twins(&self, u: usize, v: usize) -> bool {
        u != v && !self.has_edge(u, v) && self.same_row_except(u, v)
    }

    fn same_row_except(&self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.row(u), self.row(v));
        ru.iter().zip(rv).enumerate().all(|(w, (&a, &b))| {
            let mut ignore = 0u64;
            if u / 64 == w {
                ignore |= 1 << (u % 64);
            }
            if v / 64 == w {
                ignore |= 1 << (v % 64);
            }
            a & !ignore == b & !ignore
        })
    }

    /// Edge list with 1-based labels, e.g. `1-2 2-3`.
    pub fn edge_string(&self) -> String {
        self.edges()
            .iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}; {})", self.n, self.edge_string())
    }
}

pub struct Neighbors<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.word * 64 + b);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

/// Common small graphs, handy in tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.add_edge(0, v);
        }
        g
    }

    /// P4 on 0..4 plus an apex (vertex 4) adjacent to all of them.
    pub fn gem() -> Graph {
        let mut g = Graph::empty(5);
        for v in 1..4 {
            g.add_edge(v - 1, v);
        }
        for v in 0..4 {
            g.add_edge(v, 4);
        }
        g
    }

    /// Two triangles sharing vertex 0.
    pub fn bowtie() -> Graph {
        Graph::from_index_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_path_and_triangle() {
        let p4 = Graph::from_edges(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(p4, path(4));
        assert_eq!(p4.size(), 3);
        let k3 = Graph::from_edges(3, &[(1, 2), (1, 3), (2, 3), (2, 1)]).unwrap();
        assert_eq!(k3, complete(3));
        assert_eq!(k3.size(), 3);
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert!(matches!(
            Graph::from_edges(2, &[(1, 1)]),
            Err(Error::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(1, 4)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert!(Graph::from_edges(3, &[(0, 1)]).is_err());
    }

    #[test]
    fn large_graphs_use_several_words() {
        let g = path(130);
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert!(g.has_edge(128, 129));
        assert!(g.is_connected());
        assert_eq!(g.size(), 129);
    }

    #[test]
    fn twins() {
        let k3 = complete(3);
        assert!(k3.true_twins(0, 1));
        let c4 = cycle(4);
        assert!(c4.false_twins(0, 2));
        assert!(!c4.true_twins(0, 1));
    }
}
