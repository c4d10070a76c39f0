mod common;

use bookramsey::regularity::{
    case_split, conlon_inequality_lhs, counting_lemma_check, labeled_clique_count, min_side, p_density,
    red_branch_holds, test_regularity, Case, ExtensionProfile, Strategy, Verdict,
};
use bookramsey::{sample_gnp, Graph, Seed, VertexSet};
use common::{graphs, subsets};
use proptest::prelude::*;
use rand::Rng;

fn set(n: usize, it: impl IntoIterator<Item = usize>) -> VertexSet {
    VertexSet::from_indices(n, it).unwrap()
}

/// Every admissible sub-pair, by enumeration.
fn brute_regular(g: &Graph, u: &[usize], w: &[usize], eps: f64) -> bool {
    let n = g.vertex_count();
    let d = p_density(g, &set(n, u.iter().copied()), &set(n, w.iter().copied()), 1.0).unwrap();
    for a in min_side(eps, u.len())..=u.len() {
        for b in min_side(eps, w.len())..=w.len() {
            for us in subsets(u.len(), a) {
                for ws in subsets(w.len(), b) {
                    let e: usize = us
                        .iter()
                        .map(|&i| ws.iter().filter(|&&j| g.has_edge(u[i], w[j])).count())
                        .sum();
                    if (e as f64 / (a * b) as f64 - d).abs() > eps {
                        return false;
                    }
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn exhaustive_matches_enumeration(g in graphs(10), split in 1usize..9, eps in 0.15f64..0.6, overlap in any::<bool>()) {
        let n = g.vertex_count();
        prop_assume!(n >= 2);
        let split = split.min(n - 1);
        let u: Vec<usize> = (0..split).collect();
        let w: Vec<usize> = if overlap { (0..n).collect() } else { (split..n).collect() };
        let r = test_regularity(
            &g, &set(n, u.iter().copied()), &set(n, w.iter().copied()), eps, 1.0, Strategy::Exhaustive, 0, Seed::new(0),
        ).unwrap();
        prop_assert_eq!(r.verdict == Verdict::Regular, brute_regular(&g, &u, &w, eps));
    }

    #[test]
    fn density_is_symmetric(g in graphs(12), a in any::<u16>(), b in any::<u16>(), p in 0.05f64..1.0) {
        let n = g.vertex_count();
        let u = set(n, (0..n).filter(|i| a >> i & 1 == 1));
        let w = set(n, (0..n).filter(|i| b >> i & 1 == 1));
        prop_assume!(!u.is_empty() && !w.is_empty());
        prop_assert_eq!(p_density(&g, &u, &w, p).unwrap(), p_density(&g, &w, &u, p).unwrap());
    }

    #[test]
    fn labeled_triangles_match_enumeration(g in graphs(9), a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let n = g.vertex_count();
        let parts: Vec<VertexSet> = [a, b, c].iter().map(|m| set(n, (0..n).filter(|i| m >> i & 1 == 1))).collect();
        let mut expect = 0u64;
        for x in parts[0].iter() {
            for y in parts[1].iter() {
                for z in parts[2].iter() {
                    if g.has_edge(x, y) && g.has_edge(x, z) && g.has_edge(y, z) {
                        expect += 1;
                    }
                }
            }
        }
        prop_assert_eq!(labeled_clique_count(&g, &parts), expect);
    }

    #[test]
    fn case_split_is_total(x in proptest::collection::vec(0.0f64..=1.0, 2..=6), slack in proptest::collection::vec(0.0f64..0.5, 6)) {
        let red: Vec<f64> = x.iter().zip(&slack).map(|(v, s)| 1.0 - v + s).collect();
        let prof = ExtensionProfile { p0: 0.5, x, red };
        prop_assert!(prof.is_complementary());
        prop_assert!(case_split(&prof) == Case::Case1 || red_branch_holds(&prof));
    }
}

#[test]
fn conlon_random_points() {
    let mut rng = Seed::new(5).rng();
    for k in 2..=6usize {
        let floor = 2f64.powi(1 - k as i32) - 1e-12;
        for _ in 0..100_000 {
            let x: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..=1.0)).collect();
            assert!(conlon_inequality_lhs(&x).unwrap() >= floor, "{x:?}");
        }
    }
}

#[test]
fn counting_lemma_on_certified_pairs() {
    let mut rng = Seed::new(8).rng();
    let (mut certified, mut tries) = (0, 0);
    while certified < 50 {
        tries += 1;
        assert!(tries < 200_000, "only {certified} certified instances");
        let sizes: Vec<usize> = (0..3).map(|_| rng.random_range(4..=12)).collect();
        let n: usize = sizes.iter().sum();
        let g = sample_gnp(n, rng.random_range(0.6..0.97), Seed::new(rng.random())).unwrap();
        let eps = rng.random_range(0.2..0.5);
        let mut start = 0;
        let parts: Vec<VertexSet> = sizes
            .iter()
            .map(|&s| {
                start += s;
                set(n, start - s..start)
            })
            .collect();
        let regular = [(0, 1), (0, 2), (1, 2)].iter().all(|&(i, j)| {
            test_regularity(&g, &parts[i], &parts[j], eps, 1.0, Strategy::Exhaustive, 0, Seed::new(0))
                .unwrap()
                .verdict
                == Verdict::Regular
        });
        if regular {
            certified += 1;
            let r = counting_lemma_check(&g, &parts, eps).unwrap();
            assert!(r.holds, "{} < {}", r.actual, r.bound);
        }
    }
}
