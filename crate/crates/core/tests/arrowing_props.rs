mod common;

use bookramsey::{
    decide_exact, decide_sandwich, decide_star_fast, sample_gnp, DeciderLimits, Outcome, Seed, Shape, TargetSpec,
};
use common::{brute_arrows, graphs};
use proptest::prelude::*;
use rand::Rng;

fn check_verdict(g: &bookramsey::Graph, t: TargetSpec, outcome: &Outcome) -> bool {
    match outcome {
        Outcome::Arrows(_) => brute_arrows(g, t.shape, t.k, t.n),
        Outcome::NotArrows(c) => c.host() == g && !t.present_in(c),
        Outcome::Unknown => true,
    }
}

#[test]
fn exact_matches_enumeration() {
    let lim = DeciderLimits::default();
    let mut rng = Seed::new(2024).rng();
    let mut done = 0;
    let mut arrows = 0;
    while done < 200 {
        let nv = rng.random_range(3..=8);
        let p = rng.random_range(0.3..0.9);
        let g = sample_gnp(nv, p, Seed::new(rng.random())).unwrap();
        if g.edge_count() > 12 {
            continue;
        }
        let shape = if rng.random_bool(0.5) { Shape::Book } else { Shape::Biclique };
        let t = TargetSpec::new(shape, rng.random_range(1..=3), rng.random_range(1..=3)).unwrap();
        let v = decide_exact(&g, t, &lim).unwrap();
        assert!(!v.is_unknown());
        assert_eq!(v.is_arrows(), brute_arrows(&g, t.shape, t.k, t.n), "{:?} on {:?}", t, g.edge_vec());
        if let Outcome::NotArrows(c) = &v.outcome {
            assert!(!t.present_in(c));
        }
        arrows += usize::from(v.is_arrows());
        done += 1;
    }
    // Both answers should be exercised.
    assert!(arrows > 10 && arrows < 190, "{arrows}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn star_rule_matches_exact(g in graphs(8), n in 1usize..=3) {
        prop_assume!(g.edge_count() <= 16);
        let t = TargetSpec::book(1, n).unwrap();
        let fast = decide_star_fast(&g, n);
        let exact = decide_exact(&g, t, &DeciderLimits::default()).unwrap();
        prop_assert_eq!(fast.is_arrows(), exact.is_arrows());
        if let Outcome::NotArrows(c) = &fast.outcome {
            prop_assert!(!t.present_in(c));
        }
    }

    #[test]
    fn sandwich_is_sound(g in graphs(7), k in 1usize..=2, n in 1usize..=3, biclique in any::<bool>(), s in any::<u64>()) {
        let shape = if biclique { Shape::Biclique } else { Shape::Book };
        let t = TargetSpec::new(shape, k, n).unwrap();
        let v = decide_sandwich(&g, t, &DeciderLimits::default(), Seed::new(s)).unwrap();
        prop_assert!(check_verdict(&g, t, &v.outcome));
    }
}

#[test]
fn sandwich_beyond_exhaustive_budget_is_sound() {
    // Too many edges for exhaustion; verdicts come from the certificate or
    // from a verified coloring.
    let lim = DeciderLimits::default();
    for i in 0..20u64 {
        let g = sample_gnp(14, 0.5, Seed::new(i)).unwrap();
        assert!(g.edge_count() > lim.max_edges_exhaustive);
        let t = TargetSpec::book(2, 2).unwrap();
        let v = decide_sandwich(&g, t, &lim, Seed::new(i)).unwrap();
        if let Outcome::NotArrows(c) = &v.outcome {
            assert!(!t.present_in(c));
        }
    }
}

#[test]
fn arrowing_is_monotone_under_coupling() {
    let lim = DeciderLimits::default();
    let t = TargetSpec::book(2, 1).unwrap();
    for i in 0..50u64 {
        let seed = Seed::new(i);
        let sparse = sample_gnp(7, 0.45, seed).unwrap();
        let dense = sample_gnp(7, 0.6, seed).unwrap();
        assert!(sparse.edges().all(|(u, v)| dense.has_edge(u, v)));
        if sparse.edge_count() > lim.max_edges_exhaustive || dense.edge_count() > lim.max_edges_exhaustive {
            continue;
        }
        let a = decide_exact(&sparse, t, &lim).unwrap();
        let b = decide_exact(&dense, t, &lim).unwrap();
        assert!(!a.is_arrows() || b.is_arrows());
    }
}
