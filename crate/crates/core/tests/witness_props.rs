mod common;

use bookramsey::witness::{
    find_mono_biclique, find_mono_book, goodman_counts, max_biclique_size, max_book_size, Shape,
};
use bookramsey::{sample_gnp, sample_uniform_coloring, Color, Seed, TwoColoring};
use common::{brute_max_structure, colored_graphs, matrix, subsets};
use proptest::prelude::*;

fn brute_goodman(c: &TwoColoring) -> (u64, u64, u64) {
    let a = matrix(c.host());
    let (mut r, mut b, mut rb) = (0, 0, 0);
    for t in subsets(a.len(), 3) {
        let (x, y, z) = (t[0], t[1], t[2]);
        if !(a[x][y] && a[x][z] && a[y][z]) {
            continue;
        }
        let cols = [c.color_of(x, y), c.color_of(x, z), c.color_of(y, z)];
        if cols.iter().all(|&k| k == Some(Color::Red)) {
            r += 1;
        } else if cols.iter().all(|&k| k == Some(Color::Blue)) {
            b += 1;
        } else {
            rb += 1;
        }
    }
    (r, b, rb)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn goodman_matches_classification(c in colored_graphs(10)) {
        let counts = goodman_counts(&c).unwrap();
        prop_assert_eq!((counts.red_mono, counts.blue_mono, counts.bichromatic), brute_goodman(&c));
        prop_assert_eq!(counts.mono + counts.bichromatic, counts.triangles);
    }

    #[test]
    fn max_sizes_match_enumeration(c in colored_graphs(8), k in 1usize..4) {
        for color in Color::BOTH {
            let a = matrix(c.color_subgraph(color));
            prop_assert_eq!(max_book_size(&c, color, k), brute_max_structure(&a, Shape::Book, k).unwrap_or(0));
            prop_assert_eq!(max_biclique_size(&c, color, k), brute_max_structure(&a, Shape::Biclique, k).unwrap_or(0));
        }
    }

    #[test]
    fn star_is_max_color_degree(c in colored_graphs(12)) {
        for color in Color::BOTH {
            let h = c.color_subgraph(color);
            prop_assert_eq!(max_book_size(&c, color, 1), h.max_degree());
            prop_assert_eq!(max_biclique_size(&c, color, 1), h.max_degree());
        }
    }

    #[test]
    fn witnesses_verify_and_are_monotone(c in colored_graphs(10), k in 1usize..4, n in 1usize..5) {
        let book = find_mono_book(&c, k, n);
        if let Some(w) = &book {
            prop_assert!(w.verify(&c, k, n));
            // A smaller book is witnessed by the same structure.
            prop_assert!(w.verify(&c, k, n - 1));
            prop_assert!(find_mono_biclique(&c, k, n).is_some());
        }
        let best = Color::BOTH.iter().map(|&col| max_book_size(&c, col, k)).max().unwrap();
        prop_assert_eq!(book.is_some(), best >= n);
        if n > 1 {
            prop_assert!(book.is_none() || find_mono_book(&c, k, n - 1).is_some());
        }
        if let Some(w) = find_mono_biclique(&c, k, n) {
            prop_assert!(w.verify(&c, k, n));
        }
    }

    #[test]
    fn color_swap_symmetry(c in colored_graphs(9), k in 1usize..4) {
        let s = c.swapped();
        for color in Color::BOTH {
            prop_assert_eq!(max_book_size(&c, color, k), max_book_size(&s, color.flip(), k));
            prop_assert_eq!(max_biclique_size(&c, color, k), max_biclique_size(&s, color.flip(), k));
        }
        let (a, b) = (goodman_counts(&c).unwrap(), goodman_counts(&s).unwrap());
        prop_assert_eq!((a.red_mono, a.blue_mono, a.bichromatic), (b.blue_mono, b.red_mono, b.bichromatic));
    }
}

#[test]
fn goodman_on_random_colorings_of_gnp() {
    for i in 0..200u64 {
        let n = 10 + (i % 31) as usize;
        let g = sample_gnp(n, 0.5, Seed::new(i)).unwrap();
        let c = sample_uniform_coloring(&g, Seed::new(i).with_stream(1));
        let counts = goodman_counts(&c).unwrap();
        assert_eq!((counts.red_mono, counts.blue_mono, counts.bichromatic), brute_goodman(&c));
    }
}
