//! Immutable simple graphs with bit-parallel neighborhoods.
//!
//! Row `v` of the adjacency matrix is a packed bit-set of the neighbors of
//! `v`. All rows share one stride so row intersections are straight
//! word-wise `AND`s.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::{self, words_for, Ones, VertexSet, WORD};
use crate::error::{input_err, Result};

/// Largest vertex count a [`Graph`] accepts.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

/// Mutable staging area for a [`Graph`].
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(input_err!("vertex count {n} exceeds {MAX_VERTICES}"));
        }
        let stride = words_for(n);
        Ok(GraphBuilder {
            n,
            stride,
            rows: vec![0; n * stride],
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Adds the edge `uv`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(input_err!("edge ({u},{v}) out of range for {} vertices", self.n));
        }
        if u == v {
            return Err(input_err!("loop at vertex {u}"));
        }
        self.set(u, v);
        Ok(())
    }

    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        let s = self.stride;
        bitset::set_bit(&mut self.rows[u * s..(u + 1) * s], v);
        bitset::set_bit(&mut self.rows[v * s..(v + 1) * s], u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let s = self.stride;
        bitset::test_bit(&self.rows[u * s..(u + 1) * s], v)
    }

    pub fn build(self) -> Graph {
        let degree_sum = bitset::popcount(&self.rows);
        Graph {
            n: self.n,
            stride: self.stride,
            rows: self.rows,
            edge_count: degree_sum / 2,
        }
    }
}

impl Graph {
    /// Simple graph on `n` vertices with the given edges; duplicates collapse.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(n)?;
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).expect("vertex count within cap").build()
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("vertex count within cap");
        for u in 0..n {
            for v in u + 1..n {
                b.set(u, v);
            }
        }
        b.build()
    }

    /// The cycle `0-1-...-(n-1)-0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut b = GraphBuilder::new(n).expect("vertex count within cap");
        for u in 0..n {
            b.set(u, (u + 1) % n);
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n).expect("vertex count within cap");
        for u in 1..n {
            b.set(u - 1, u);
        }
        b.build()
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = GraphBuilder::new(a + b).expect("vertex count within cap");
        for u in 0..a {
            for v in a..a + b {
                g.set(u, v);
            }
        }
        g.build()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Packed neighbor bit-set of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u64] {
        &self.rows[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.neighbors(v).to_vec())
    }

    pub fn neighbor_iter(&self, v: usize) -> Ones<'_> {
        Ones::new(self.neighbors(v))
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && bitset::test_bit(self.neighbors(u), v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        bitset::popcount(self.neighbors(v))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `|N(u) ∩ N(v)|`.
    #[inline]
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        bitset::popcount_and(self.neighbors(u), self.neighbors(v))
    }

    /// `|N(v) ∩ s|`.
    pub fn degree_into(&self, v: usize, s: &VertexSet) -> usize {
        bitset::popcount_and(self.neighbors(v), s.words())
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order. The position of an
    /// edge in this sequence is its canonical edge index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| Ones::after(self.neighbors(u), u).map(move |v| (u, v)))
    }

    pub fn edge_vec(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Intersection of the neighborhoods of the members of `s`, minus `s`.
    pub fn common_neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        if s.universe() != self.n {
            return Err(input_err!(
                "vertex set universe {} does not match graph order {}",
                s.universe(),
                self.n
            ));
        }
        let mut members = s.iter();
        let first = members
            .next()
            .ok_or_else(|| input_err!("common neighborhood of an empty set"))?;
        let mut acc = self.neighbors(first).to_vec();
        for v in members {
            bitset::and_assign(&mut acc, self.neighbors(v));
        }
        for (a, m) in acc.iter_mut().zip(s.words()) {
            *a &= !m;
        }
        Ok(VertexSet::from_words(self.n, acc))
    }

    /// Streams every `k`-clique once, in lexicographic order of sorted
    /// vertex tuples. For `k = 1` every vertex is a clique; `k = 0` yields
    /// nothing.
    pub fn cliques(&self, k: usize) -> CliqueIter<'_> {
        CliqueIter::new(self, k)
    }

    /// Exact triangle count `(1/3) Σ_{uv∈E} |N(u) ∩ N(v)|`.
    pub fn triangle_count(&self) -> u64 {
        let mut sum = 0u64;
        for u in 0..self.n {
            let nu = self.neighbors(u);
            for v in Ones::after(nu, u) {
                sum += bitset::popcount_and(nu, self.neighbors(v)) as u64;
            }
        }
        debug_assert_eq!(sum % 3, 0);
        sum / 3
    }

    /// `G[s]` relabeled `0..|s|` in increasing order; the returned vector maps
    /// new indices back to original ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let map: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut b = GraphBuilder::new(map.len()).expect("subgraph is no larger than host");
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    b.set(i, j);
                }
            }
        }
        (b.build(), map)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(input_err!("permutation length {} != {}", perm.len(), self.n));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || seen[p] {
                return Err(input_err!("not a permutation"));
            }
            seen[p] = true;
        }
        let mut b = GraphBuilder::new(self.n)?;
        for (u, v) in self.edges() {
            b.set(perm[u], perm[v]);
        }
        Ok(b.build())
    }

    /// Bit-set with every vertex of the graph.
    pub(crate) fn all_vertices(&self) -> Vec<u64> {
        let mut w = vec![0u64; self.stride];
        for i in 0..self.n {
            bitset::set_bit(&mut w, i);
        }
        w
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.n)
            .field("edges", &self.edge_count)
            .finish()
    }
}

/// Clears every bit `<= v`.
#[inline]
pub(crate) fn clear_through(words: &mut [u64], v: usize) {
    let w = v / WORD;
    for x in words.iter_mut().take(w) {
        *x = 0;
    }
    if w < words.len() {
        let b = v % WORD;
        words[w] &= if b == WORD - 1 { 0 } else { u64::MAX << (b + 1) };
    }
}

/// A clique given by its sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Clique {
    pub vertices: Vec<usize>,
}

impl Clique {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True when the vertices are distinct, sorted and pairwise adjacent in `g`.
    pub fn is_clique_in(&self, g: &Graph) -> bool {
        self.vertices.windows(2).all(|w| w[0] < w[1])
            && self
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &u)| self.vertices[i + 1..].iter().all(|&v| g.has_edge(u, v)))
    }
}

struct Frame {
    cand: Vec<u64>,
    last: Option<usize>,
}

/// Lazy lexicographic `k`-clique stream; see [`Graph::cliques`].
pub struct CliqueIter<'g> {
    g: &'g Graph,
    k: usize,
    stack: Vec<Frame>,
    current: Vec<usize>,
}

impl<'g> CliqueIter<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        let stack = if k == 0 || g.n < k {
            Vec::new()
        } else {
            vec![Frame {
                cand: g.all_vertices(),
                last: None,
            }]
        };
        CliqueIter {
            g,
            k,
            stack,
            current: Vec::with_capacity(k),
        }
    }
}

impl Iterator for CliqueIter<'_> {
    type Item = Clique;

    fn next(&mut self) -> Option<Clique> {
        loop {
            let depth = self.stack.len();
            let top = self.stack.last_mut()?;
            let next = match top.last {
                None => Ones::new(&top.cand).next(),
                Some(l) => Ones::after(&top.cand, l).next(),
            };
            let Some(v) = next else {
                self.stack.pop();
                continue;
            };
            top.last = Some(v);
            self.current.truncate(depth - 1);
            self.current.push(v);
            if self.current.len() == self.k {
                return Some(Clique {
                    vertices: self.current.clone(),
                });
            }
            let mut cand = top.cand.clone();
            bitset::and_assign(&mut cand, self.g.neighbors(v));
            clear_through(&mut cand, v);
            if bitset::popcount(&cand) >= self.k - self.current.len() {
                self.stack.push(Frame { cand, last: None });
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn from_edge_list_examples() {
        let k3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(Graph::from_edge_list(4, &[]).unwrap().edge_count(), 0);
        let dup = Graph::from_edge_list(3, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(dup.edge_count(), 1);
    }

    #[test]
    fn from_edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list(3, &[(0, 3)]),
            Err(crate::Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edge_list(3, &[(1, 1)]),
            Err(crate::Error::Input(_))
        ));
    }

    #[test]
    fn common_neighborhood_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(k5.common_neighborhood(&set(5, &[0, 1])).unwrap().to_vec(), vec![2, 3, 4]);
        let p3 = Graph::path(3);
        assert_eq!(p3.common_neighborhood(&set(3, &[0, 2])).unwrap().to_vec(), vec![1]);
        let e = Graph::empty(3);
        assert!(e.common_neighborhood(&set(3, &[0])).unwrap().is_empty());
        assert!(k5.common_neighborhood(&VertexSet::empty(5)).is_err());
    }

    #[test]
    fn clique_counts() {
        assert_eq!(Graph::complete(4).cliques(3).count(), 4);
        assert_eq!(Graph::cycle(5).cliques(3).count(), 0);
        assert_eq!(Graph::complete(5).cliques(2).count(), 10);
        assert_eq!(Graph::complete(5).cliques(1).count(), 5);
        assert_eq!(Graph::complete(3).cliques(4).count(), 0);
        assert_eq!(Graph::complete(3).cliques(0).count(), 0);
    }

    #[test]
    fn cliques_are_lexicographic() {
        let got: Vec<_> = Graph::complete(4).cliques(2).map(|c| c.vertices).collect();
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(Graph::complete(5).triangle_count(), 10);
        // C(16,3) and the clique stream agree.
        let k16 = Graph::complete(16);
        assert_eq!(k16.triangle_count(), 560);
        assert_eq!(k16.cliques(3).count(), 560);
        assert_eq!(Graph::cycle(6).triangle_count(), 0);
    }

    #[test]
    fn induced_subgraph_examples() {
        let (g, map) = Graph::complete(5).induced_subgraph(&set(5, &[0, 1, 2]));
        assert_eq!(g, Graph::complete(3));
        assert_eq!(map, vec![0, 1, 2]);
        let (g, _) = Graph::cycle(5).induced_subgraph(&VertexSet::empty(5));
        assert_eq!(g.vertex_count(), 0);
        let (g, map) = Graph::cycle(5).induced_subgraph(&set(5, &[2, 3]));
        assert_eq!(g.edge_count(), 1);
        assert_eq!(map, vec![2, 3]);
    }

    #[test]
    fn wide_graph_rows() {
        // Crosses word boundaries.
        let g = Graph::complete(130);
        assert_eq!(g.degree(129), 129);
        assert_eq!(g.edge_count(), 130 * 129 / 2);
        assert_eq!(g.cliques(2).count(), g.edge_count());
        assert_eq!(g.triangle_count(), 130 * 129 * 128 / 6);
    }
}
