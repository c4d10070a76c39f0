use alloc::vec;
use alloc::vec::Vec;
use rand::Rng;

use super::state::ColorRows;
use super::{DeciderLimits, TargetSpec};
use crate::graph::Graph;
use crate::sampler::Seed;
use crate::witness::{Color, TwoColoring};

const TABU_TENURE: usize = 3;
const RANDOM_WALK: f64 = 0.1;
/// Conflict edges scored per greedy step; larger conflict sets are sampled.
const CANDIDATES: usize = 16;

/// Randomized local search for a coloring with no monochromatic target.
///
/// Minimizes `Σ max(0, common − (n − 1))` over monochromatic spines by
/// single-edge recolorings restricted to edges of violating structures.
/// The best of at most 16 sampled conflict edges wins (ties to the first
/// sampled, short tabu), with an occasional random conflict move. Restart `r` is seeded by
/// `seed.derive(r)`; the first restart to succeed is reported.
pub fn search_avoiding_coloring(
    g: &Graph,
    t: TargetSpec,
    lim: &DeciderLimits,
    seed: Seed,
) -> Option<TwoColoring> {
    search(g, t, lim, seed).0
}

pub(super) fn search(
    g: &Graph,
    t: TargetSpec,
    lim: &DeciderLimits,
    seed: Seed,
) -> (Option<TwoColoring>, u64) {
    let edges = g.edge_vec();
    let mut nodes = 0u64;
    for r in 0..lim.local_search_restarts as u64 {
        let mut rng = seed.derive(r).rng();
        let mut colors: Vec<Color> = edges
            .iter()
            .map(|_| if rng.random_bool(0.5) { Color::Red } else { Color::Blue })
            .collect();
        let mut rows = ColorRows::new(g.vertex_count());
        for (&(u, v), &c) in edges.iter().zip(&colors) {
            rows.set(c, u, v);
        }
        let mut penalty = rows.total_penalty(t) as i64;
        let mut last_flip = vec![usize::MAX; edges.len()];
        for step in 0..=lim.local_search_steps {
            if penalty == 0 {
                let c = TwoColoring::from_edge_colors(g, &colors).expect("one color per edge");
                if !t.present_in(&c) {
                    return (Some(c), nodes);
                }
                break;
            }
            if step == lim.local_search_steps {
                break;
            }
            nodes += 1;
            let mut conflicts: Vec<usize> = rows
                .conflict_pairs(t)
                .into_iter()
                .filter_map(|p| edges.binary_search(&p).ok())
                .collect();
            if conflicts.is_empty() {
                break;
            }
            let (pick, delta) = if rng.random_bool(RANDOM_WALK) {
                let e = conflicts[rng.random_range(0..conflicts.len())];
                (e, flip_delta(&mut rows, &edges, &colors, e, t))
            } else {
                let m = conflicts.len().min(CANDIDATES);
                for i in 0..m {
                    let j = rng.random_range(i..conflicts.len());
                    conflicts.swap(i, j);
                }
                let mut best: Option<(usize, i64)> = None;
                for &e in &conflicts[..m] {
                    let d = flip_delta(&mut rows, &edges, &colors, e, t);
                    let tabu = last_flip[e] != usize::MAX && step - last_flip[e] < TABU_TENURE;
                    if tabu && penalty + d > 0 {
                        continue;
                    }
                    if best.is_none_or(|(_, bd)| d < bd) {
                        best = Some((e, d));
                    }
                }
                match best {
                    Some(b) => b,
                    None => {
                        let e = conflicts[rng.random_range(0..conflicts.len())];
                        (e, flip_delta(&mut rows, &edges, &colors, e, t))
                    }
                }
            };
            let (u, v) = edges[pick];
            rows.unset(colors[pick], u, v);
            colors[pick] = colors[pick].flip();
            rows.set(colors[pick], u, v);
            last_flip[pick] = step;
            penalty += delta;
        }
    }
    (None, nodes)
}

fn touching(rows: &ColorRows, u: usize, v: usize, t: TargetSpec) -> i64 {
    Color::BOTH
        .into_iter()
        .map(|c| rows.penalty_touching(c, u, v, t) as i64)
        .sum()
}

/// Penalty change from recoloring edge `e`; leaves `rows` unchanged.
fn flip_delta(
    rows: &mut ColorRows,
    edges: &[(usize, usize)],
    colors: &[Color],
    e: usize,
    t: TargetSpec,
) -> i64 {
    let (u, v) = edges[e];
    let c = colors[e];
    let before = touching(rows, u, v, t);
    rows.unset(c, u, v);
    rows.set(c.flip(), u, v);
    let after = touching(rows, u, v, t);
    rows.unset(c.flip(), u, v);
    rows.set(c, u, v);
    after - before
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_pentagon_coloring_of_k5() {
        let t = TargetSpec::book(2, 1).unwrap();
        let lim = DeciderLimits::default();
        let mut hits = 0;
        for s in 0..100 {
            if let Some(c) = search_avoiding_coloring(&Graph::complete(5), t, &lim, Seed::new(s)) {
                assert!(!t.present_in(&c));
                hits += 1;
            }
        }
        assert!(hits >= 99, "{hits}/100");
    }

    #[test]
    fn nothing_to_find_on_k6() {
        let t = TargetSpec::book(2, 1).unwrap();
        let lim = DeciderLimits {
            local_search_restarts: 2,
            local_search_steps: 300,
            ..DeciderLimits::default()
        };
        assert!(search_avoiding_coloring(&Graph::complete(6), t, &lim, Seed::new(9)).is_none());
    }

    #[test]
    fn empty_graph_gives_empty_coloring() {
        for t in [TargetSpec::book(2, 3).unwrap(), TargetSpec::biclique(2, 1).unwrap()] {
            let c = search_avoiding_coloring(&Graph::empty(5), t, &DeciderLimits::default(), Seed::new(0))
                .unwrap();
            assert_eq!(c.host().edge_count(), 0);
        }
    }

    #[test]
    fn deterministic_in_seed() {
        let t = TargetSpec::book(2, 2).unwrap();
        let g = crate::sample_gnp(12, 0.6, Seed::new(4)).unwrap();
        let lim = DeciderLimits::default();
        let a = search_avoiding_coloring(&g, t, &lim, Seed::new(77));
        let b = search_avoiding_coloring(&g, t, &lim, Seed::new(77));
        assert_eq!(a, b);
    }
}
