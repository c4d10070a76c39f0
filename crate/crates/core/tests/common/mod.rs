#![allow(dead_code)]

use bookramsey::witness::{Color, Shape, TwoColoring};
use bookramsey::Graph;
use proptest::prelude::*;

/// Graphs on `1..=max_n` vertices with independent fair edge bits.
pub fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| from_bits(n, &bits))
    })
}

/// A graph with a coloring bit for each of its edges.
pub fn colored_graphs(max_n: usize) -> impl Strategy<Value = TwoColoring> {
    graphs(max_n).prop_flat_map(|g| {
        let m = g.edge_count();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let colors: Vec<Color> = bits.iter().map(|&b| if b { Color::Red } else { Color::Blue }).collect();
            TwoColoring::from_edge_colors(&g, &colors).unwrap()
        })
    })
}

pub fn from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edge_list(n, &edges).unwrap()
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect()
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest common neighborhood of a `k`-set (a `k`-clique for books) in the
/// graph given by adjacency matrix `a`, by enumeration.
pub fn brute_max_structure(a: &[Vec<bool>], shape: Shape, k: usize) -> Option<usize> {
    let n = a.len();
    let mut best = None;
    for s in subsets(n, k) {
        if shape == Shape::Book && !s.iter().all(|&x| s.iter().all(|&y| x == y || a[x][y])) {
            continue;
        }
        let common = (0..n).filter(|&v| s.iter().all(|&x| a[x][v])).count();
        best = Some(best.map_or(common, |b: usize| b.max(common)));
    }
    best
}

pub fn brute_contains(a: &[Vec<bool>], shape: Shape, k: usize, n: usize) -> bool {
    brute_max_structure(a, shape, k).is_some_and(|m| m >= n)
}

/// `G → H` by trying all `2^m` colorings.
pub fn brute_arrows(g: &Graph, shape: Shape, k: usize, n: usize) -> bool {
    let edges = g.edge_vec();
    let nv = g.vertex_count();
    for mask in 0u64..1 << edges.len() {
        let mut red = vec![vec![false; nv]; nv];
        let mut blue = vec![vec![false; nv]; nv];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let side = if mask >> i & 1 == 1 { &mut red } else { &mut blue };
            side[u][v] = true;
            side[v][u] = true;
        }
        if !brute_contains(&red, shape, k, n) && !brute_contains(&blue, shape, k, n) {
            return false;
        }
    }
    true
}
