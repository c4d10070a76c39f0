//! `G → K_{1,n}` (the book `B_n^(1)`) in polynomial time.
//!
//! An avoiding coloring needs every vertex to keep at most `n - 1` edges of
//! each color. That is impossible when some degree is at least `2n - 1`,
//! and also when a component is `(2n-2)`-regular with an odd number of
//! edges: every vertex would need red degree exactly `n - 1`, and the red
//! degree sum of the component would be odd. Otherwise alternating colors
//! along Euler circuits gives every vertex red/blue degrees within one of
//! each other (within two at the start of an odd circuit, which is placed on
//! a vertex with slack).

use alloc::vec;
use alloc::vec::Vec;

use super::{ArrowMethod, ArrowingVerdict, Outcome};
use crate::graph::Graph;
use crate::witness::{find_mono_book, Color, TwoColoring};

const NONE: usize = usize::MAX;

pub fn decide_star_fast(g: &Graph, n: usize) -> ArrowingVerdict {
    let verdict = |outcome| ArrowingVerdict { outcome, nodes: 0 };
    if n == 0 || g.max_degree() + 1 >= 2 * n {
        return verdict(Outcome::Arrows(ArrowMethod::StarDegree));
    }
    let comps = components(g);
    let cap = 2 * n - 2;
    for comp in &comps {
        let edges: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges % 2 == 1 && comp.iter().all(|&v| g.degree(v) == cap) {
            return verdict(Outcome::Arrows(ArrowMethod::StarParity));
        }
    }
    let coloring = euler_alternating(g, &comps, cap);
    assert!(
        find_mono_book(&coloring, 1, n).is_none(),
        "Euler alternation left a color degree above n - 1"
    );
    verdict(Outcome::NotArrows(coloring))
}

fn components(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] || g.degree(s) == 0 {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for w in g.neighbor_iter(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

fn euler_alternating(g: &Graph, comps: &[Vec<usize>], cap: usize) -> TwoColoring {
    let n = g.vertex_count();
    let edges = g.edge_vec();
    let m = edges.len();
    // Vertex `n` is virtual and joined to every odd-degree vertex.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    let mut next_id = m;
    for v in 0..n {
        if g.degree(v) % 2 == 1 {
            adj[v].push((n, next_id));
            adj[n].push((v, next_id));
            next_id += 1;
        }
    }
    let mut used = vec![false; next_id];
    let mut ptr = vec![0usize; n + 1];
    let mut color = vec![Color::Red; m];

    let mut starts = Vec::new();
    if !adj[n].is_empty() {
        starts.push(n);
    }
    for comp in comps {
        if comp.iter().any(|&v| g.degree(v) % 2 == 1) {
            continue;
        }
        let edges_in: usize = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        let start = if edges_in % 2 == 1 {
            *comp
                .iter()
                .find(|&&v| g.degree(v) + 2 <= cap)
                .expect("odd all-even component has a vertex with slack")
        } else {
            comp[0]
        };
        starts.push(start);
    }

    for s in starts {
        let mut circuit = Vec::new();
        let mut stack = vec![(s, NONE)];
        while let Some(&(v, via)) = stack.last() {
            while ptr[v] < adj[v].len() && used[adj[v][ptr[v]].1] {
                ptr[v] += 1;
            }
            if let Some(&(w, id)) = adj[v].get(ptr[v]) {
                used[id] = true;
                stack.push((w, id));
            } else {
                stack.pop();
                if via != NONE {
                    circuit.push(via);
                }
            }
        }
        for (pos, &id) in circuit.iter().enumerate() {
            if id < m {
                color[id] = if pos % 2 == 0 { Color::Red } else { Color::Blue };
            }
        }
    }
    debug_assert!(used[..m].iter().all(|&u| u));
    TwoColoring::from_edge_colors(g, &color).expect("one color per edge")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let v = decide_star_fast(&Graph::complete_bipartite(1, 3), 2);
        assert_eq!(v.outcome, Outcome::Arrows(ArrowMethod::StarDegree));
        let v = decide_star_fast(&Graph::cycle(4), 2);
        let Outcome::NotArrows(c) = v.outcome else { panic!() };
        assert_eq!(c.red_edge_count(), 2);
        assert!((0..4).all(|x| c.color_subgraph(Color::Red).degree(x) == 1));
        assert!(decide_star_fast(&Graph::complete(4), 2).is_arrows());
    }

    #[test]
    fn odd_regular_component_arrows() {
        assert_eq!(
            decide_star_fast(&Graph::complete(3), 2).outcome,
            Outcome::Arrows(ArrowMethod::StarParity)
        );
        // K_{2n-1} with n even.
        assert_eq!(
            decide_star_fast(&Graph::complete(7), 4).outcome,
            Outcome::Arrows(ArrowMethod::StarParity)
        );
        // n odd: an (n-1)-regular red graph on 2n-1 vertices exists.
        assert!(decide_star_fast(&Graph::complete(5), 3).is_not_arrows());
    }

    #[test]
    fn odd_cycle_with_slack_is_avoidable() {
        // Degree 2 = 2n-2 everywhere with 5 edges for n = 2; slack for n = 3.
        assert!(decide_star_fast(&Graph::cycle(5), 3).is_not_arrows());
        assert!(decide_star_fast(&Graph::cycle(5), 2).is_arrows());
    }

    #[test]
    fn large_sparse_graph() {
        let g = crate::sample_gnp(400, 0.05, crate::Seed::new(11)).unwrap();
        let n = (g.max_degree() + 1) / 2 + 1;
        assert!(2 * n - 1 > g.max_degree());
        assert!(decide_star_fast(&g, n).is_not_arrows());
    }
}
