//! Analysis of a fixed red/blue edge coloring: monochromatic books and
//! bicliques, and the exact triangle accounting `M_r + M_b + M_rb = T`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::bitset::{self, Ones, VertexSet};
use crate::error::{input_err, Error, Result};
use crate::graph::{clear_through, Graph, GraphBuilder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

/// Target family: book `B_n^(k)` (spine is a `k`-clique) or biclique
/// `K_{k,n}` (spine is any `k`-set).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Shape {
    Book,
    Biclique,
}

/// A red/blue assignment to the edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoColoring {
    host: Graph,
    /// Bit `i` set iff canonical edge `i` is red.
    red_edges: Vec<u64>,
    red: Graph,
    blue: Graph,
}

impl TwoColoring {
    /// Colors edge `(u, v)`, `u < v`, by `f(u, v)`, visiting edges in
    /// canonical order.
    pub fn from_fn<F: FnMut(usize, usize) -> Color>(host: &Graph, mut f: F) -> TwoColoring {
        let n = host.vertex_count();
        let mut red = GraphBuilder::new(n).expect("host order is valid");
        let mut blue = GraphBuilder::new(n).expect("host order is valid");
        let mut red_edges = vec![0u64; bitset::words_for(host.edge_count())];
        for (i, (u, v)) in host.edges().enumerate() {
            match f(u, v) {
                Color::Red => {
                    bitset::set_bit(&mut red_edges, i);
                    red.set(u, v);
                }
                Color::Blue => blue.set(u, v),
            }
        }
        TwoColoring {
            host: host.clone(),
            red_edges,
            red: red.build(),
            blue: blue.build(),
        }
    }

    pub fn monochromatic(host: &Graph, color: Color) -> TwoColoring {
        Self::from_fn(host, |_, _| color)
    }

    /// `colors[i]` is the color of canonical edge `i`.
    pub fn from_edge_colors(host: &Graph, colors: &[Color]) -> Result<TwoColoring> {
        if colors.len() != host.edge_count() {
            return Err(input_err!(
                "{} colors for {} edges",
                colors.len(),
                host.edge_count()
            ));
        }
        let mut it = colors.iter();
        Ok(Self::from_fn(host, |_, _| *it.next().expect("length checked")))
    }

    /// Host and coloring from `(u, v, color)` triples; a pair listed twice
    /// must carry the same color.
    pub fn from_colored_edges(n: usize, edges: &[(usize, usize, Color)]) -> Result<TwoColoring> {
        let mut host = GraphBuilder::new(n)?;
        let mut red = GraphBuilder::new(n)?;
        for &(u, v, c) in edges {
            let seen = host.has_edge_checked(u, v)?;
            if seen && red.has_edge(u, v) != (c == Color::Red) {
                return Err(input_err!("edge ({u},{v}) listed with both colors"));
            }
            host.add_edge(u, v)?;
            if c == Color::Red {
                red.add_edge(u, v)?;
            }
        }
        let host = host.build();
        let red = red.build();
        Ok(Self::from_fn(&host, |u, v| {
            if red.has_edge(u, v) {
                Color::Red
            } else {
                Color::Blue
            }
        }))
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    /// Color of edge `uv`, `None` when `uv` is not a host edge.
    pub fn color_of(&self, u: usize, v: usize) -> Option<Color> {
        if self.red.has_edge(u, v) {
            Some(Color::Red)
        } else if self.blue.has_edge(u, v) {
            Some(Color::Blue)
        } else {
            None
        }
    }

    /// Colors in canonical edge order.
    pub fn edge_colors(&self) -> Vec<Color> {
        (0..self.host.edge_count())
            .map(|i| {
                if bitset::test_bit(&self.red_edges, i) {
                    Color::Red
                } else {
                    Color::Blue
                }
            })
            .collect()
    }

    pub fn red_edge_count(&self) -> usize {
        self.red.edge_count()
    }

    /// The red subgraph `R` or blue subgraph `B` on the host's vertex set.
    pub fn color_subgraph(&self, color: Color) -> &Graph {
        match color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        }
    }

    pub fn swapped(&self) -> TwoColoring {
        Self::from_fn(&self.host, |u, v| {
            self.color_of(u, v).expect("host edge").flip()
        })
    }
}

impl GraphBuilder {
    fn has_edge_checked(&self, u: usize, v: usize) -> Result<bool> {
        let n = self.vertex_count();
        if u >= n || v >= n || u == v {
            return Err(input_err!("invalid edge ({u},{v}) for {n} vertices"));
        }
        Ok(self.has_edge(u, v))
    }
}

/// Triangle accounting of one coloring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ColoringCounts {
    /// `T`, triangles of the host.
    pub triangles: u64,
    /// `M_r`.
    pub red_mono: u64,
    /// `M_b`.
    pub blue_mono: u64,
    /// `M_rb`, triangles seeing both colors.
    pub bichromatic: u64,
    /// `M = M_r + M_b`.
    pub mono: u64,
}

fn same_color_triangles(g: &Graph) -> Result<u64> {
    let mut sum = 0u64;
    for (u, v) in g.edges() {
        sum += g.codegree(u, v) as u64;
    }
    if sum % 3 != 0 {
        return Err(Error::Internal(format!("codegree sum {sum} not divisible by 3")));
    }
    Ok(sum / 3)
}

/// `M_r`, `M_b` from same-color codegree sums over monochromatic edges and
/// `M_rb = (1/2) Σ_v e(N_R(v), N_B(v))`; fails if `M_r + M_b + M_rb != T`.
pub fn goodman_counts(c: &TwoColoring) -> Result<ColoringCounts> {
    let host = &c.host;
    let triangles = host.triangle_count();
    let red_mono = same_color_triangles(&c.red)?;
    let blue_mono = same_color_triangles(&c.blue)?;
    let mut twice_bichromatic = 0u64;
    for v in 0..host.vertex_count() {
        let blue_nbrs = c.blue.neighbors(v);
        for x in c.red.neighbor_iter(v) {
            twice_bichromatic += bitset::popcount_and(host.neighbors(x), blue_nbrs) as u64;
        }
    }
    if twice_bichromatic % 2 != 0 {
        return Err(Error::Internal(format!(
            "bichromatic vertex sum {twice_bichromatic} is odd"
        )));
    }
    let bichromatic = twice_bichromatic / 2;
    if red_mono + blue_mono + bichromatic != triangles {
        return Err(Error::Internal(format!(
            "M_r {red_mono} + M_b {blue_mono} + M_rb {bichromatic} != T {triangles}"
        )));
    }
    Ok(ColoringCounts {
        triangles,
        red_mono,
        blue_mono,
        bichromatic,
        mono: red_mono + blue_mono,
    })
}

/// A monochromatic book or biclique: every spine–page pair (and, for books,
/// every spine pair) is an edge of `color`. Pages need not be adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoWitness {
    pub shape: Shape,
    pub color: Color,
    pub spine: Vec<usize>,
    pub pages: VertexSet,
}

impl MonoWitness {
    /// Re-checks the witness against a coloring for target size `(k, n)`.
    pub fn verify(&self, c: &TwoColoring, k: usize, n: usize) -> bool {
        let g = c.color_subgraph(self.color);
        let spine_ok = self.spine.len() == k
            && self.spine.windows(2).all(|w| w[0] < w[1])
            && self.spine.iter().all(|&s| s < g.vertex_count());
        if !spine_ok || self.pages.len() < n || self.pages.universe() != g.vertex_count() {
            return false;
        }
        if self.shape == Shape::Book {
            for (i, &a) in self.spine.iter().enumerate() {
                if self.spine[i + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                    return false;
                }
            }
        }
        self.pages.iter().all(|p| {
            !self.spine.contains(&p) && self.spine.iter().all(|&s| g.has_edge(s, p))
        })
    }
}

/// Visits every `k`-structure of `shape` in the graph given by `rows` that
/// contains the vertices of `fixed` (pairwise adjacent for books) and whose
/// remaining members come from `allowed`, reporting those whose common
/// neighborhood has at least `min_common` vertices. Remaining members are
/// chosen in increasing order so each structure is reported once.
#[allow(clippy::too_many_arguments)]
pub(crate) fn visit_structures<F>(
    rows: &[u64],
    stride: usize,
    n_vertices: usize,
    shape: Shape,
    k: usize,
    fixed: &[usize],
    allowed: &[u64],
    min_common: usize,
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[u64]) -> ControlFlow<()>,
{
    if fixed.len() > k {
        return ControlFlow::Continue(());
    }
    let mut common = vec![0u64; stride];
    for i in 0..n_vertices {
        bitset::set_bit(&mut common, i);
    }
    let mut allowed = allowed.to_vec();
    for &v in fixed {
        bitset::and_assign(&mut common, &rows[v * stride..(v + 1) * stride]);
        bitset::clear_bit(&mut allowed, v);
    }
    if shape == Shape::Book {
        // Fixed members must form a clique; their common neighborhood is
        // then disjoint from them.
        let row = |v: usize| &rows[v * stride..(v + 1) * stride];
        let pairwise = fixed
            .iter()
            .all(|&v| fixed.iter().all(|&w| w == v || bitset::test_bit(row(v), w)));
        if !pairwise {
            return ControlFlow::Continue(());
        }
    }
    let mut prefix = fixed.to_vec();
    let mut s = Walk {
        rows,
        stride,
        shape,
        allowed: &allowed,
        min_common,
        f,
    };
    s.rec(k - fixed.len(), &mut prefix, &common, None)
}

struct Walk<'a, F> {
    rows: &'a [u64],
    stride: usize,
    shape: Shape,
    allowed: &'a [u64],
    min_common: usize,
    f: &'a mut F,
}

impl<F> Walk<'_, F>
where
    F: FnMut(&[usize], &[u64]) -> ControlFlow<()>,
{
    fn rec(
        &mut self,
        remaining: usize,
        prefix: &mut Vec<usize>,
        common: &[u64],
        last: Option<usize>,
    ) -> ControlFlow<()> {
        let size = bitset::popcount(common);
        if remaining == 0 {
            return if size >= self.min_common {
                let mut sorted = prefix.clone();
                sorted.sort_unstable();
                (self.f)(&sorted, common)
            } else {
                ControlFlow::Continue(())
            };
        }
        let reserved = if self.shape == Shape::Book { remaining } else { 0 };
        if size < self.min_common + reserved {
            return ControlFlow::Continue(());
        }
        let mut cand = self.allowed.to_vec();
        if self.shape == Shape::Book {
            bitset::and_assign(&mut cand, common);
        }
        if let Some(l) = last {
            clear_through(&mut cand, l);
        }
        if bitset::popcount(&cand) < remaining {
            return ControlFlow::Continue(());
        }
        for w in Ones::new(&cand) {
            let mut next = vec![0u64; self.stride];
            let row = &self.rows[w * self.stride..(w + 1) * self.stride];
            for ((n, c), r) in next.iter_mut().zip(common).zip(row) {
                *n = c & r;
            }
            prefix.push(w);
            let r = self.rec(remaining - 1, prefix, &next, Some(w));
            prefix.pop();
            r?;
        }
        ControlFlow::Continue(())
    }
}

fn first_structure(g: &Graph, shape: Shape, color: Color, k: usize, n: usize) -> Option<MonoWitness> {
    let mut found = None;
    let all = g.all_vertices();
    let _ = visit_structures(
        g.rows(),
        g.stride(),
        g.vertex_count(),
        shape,
        k,
        &[],
        &all,
        n,
        &mut |spine, common| {
            found = Some(MonoWitness {
                shape,
                color,
                spine: spine.to_vec(),
                pages: VertexSet::from_words(g.vertex_count(), common.to_vec()),
            });
            ControlFlow::Break(())
        },
    );
    found
}

fn find_mono(c: &TwoColoring, shape: Shape, k: usize, n: usize) -> Option<MonoWitness> {
    if k == 0 || n == 0 {
        return None;
    }
    Color::BOTH.into_iter().find_map(|color| {
        first_structure(c.color_subgraph(color), shape, color, k, n)
    })
}

/// A monochromatic `B_n^(k)`: a same-color `k`-clique with at least `n`
/// same-color common neighbors. Exhaustive over both colors.
pub fn find_mono_book(c: &TwoColoring, k: usize, n: usize) -> Option<MonoWitness> {
    find_mono(c, Shape::Book, k, n)
}

/// A monochromatic `K_{k,n}`: `k` vertices with at least `n` common
/// neighbors in one color.
pub fn find_mono_biclique(c: &TwoColoring, k: usize, n: usize) -> Option<MonoWitness> {
    find_mono(c, Shape::Biclique, k, n)
}

/// Either family, by shape.
pub fn find_mono_target(c: &TwoColoring, shape: Shape, k: usize, n: usize) -> Option<MonoWitness> {
    find_mono(c, shape, k, n)
}

fn max_structure(g: &Graph, shape: Shape, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    let mut best = 0usize;
    let all = g.all_vertices();
    let _ = visit_structures(
        g.rows(),
        g.stride(),
        g.vertex_count(),
        shape,
        k,
        &[],
        &all,
        0,
        &mut |_, common| {
            best = best.max(bitset::popcount(common));
            ControlFlow::Continue(())
        },
    );
    best
}

/// Largest same-color common neighborhood of a same-color `k`-clique; 0 when
/// there is no such clique.
pub fn max_book_size(c: &TwoColoring, color: Color, k: usize) -> usize {
    max_structure(c.color_subgraph(color), Shape::Book, k)
}

/// Largest common same-color neighborhood of any `k`-set.
pub fn max_biclique_size(c: &TwoColoring, color: Color, k: usize) -> usize {
    max_structure(c.color_subgraph(color), Shape::Biclique, k)
}
