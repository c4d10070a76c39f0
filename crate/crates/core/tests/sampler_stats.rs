use bookramsey::sampler::edge_indicator;
use bookramsey::{sample_gnp, sample_uniform_coloring, Color, Graph, Seed};

/// Passes when `observed` is within `z` standard errors of `mean`.
fn within(observed: f64, mean: f64, sd: f64, z: f64) -> bool {
    (observed - mean).abs() <= z * sd
}

#[test]
fn edge_count_mean() {
    let (n, p, reps) = (30usize, 0.3, 2000);
    let pairs = (n * (n - 1) / 2) as f64;
    let total: usize = (0..reps).map(|i| sample_gnp(n, p, Seed::new(i)).unwrap().edge_count()).sum();
    let mean = total as f64 / reps as f64;
    let se = (pairs * p * (1.0 - p) / reps as f64).sqrt();
    assert!(within(mean, pairs * p, se, 4.0), "{mean}");
}

#[test]
fn streams_are_independent() {
    // 2x2 contingency of the same pair's indicator in two streams.
    let n = 200;
    let a = sample_gnp(n, 0.5, Seed::new(7)).unwrap();
    let b = sample_gnp(n, 0.5, Seed::new(7).with_stream(1)).unwrap();
    let mut table = [[0f64; 2]; 2];
    for u in 0..n {
        for v in u + 1..n {
            table[usize::from(a.has_edge(u, v))][usize::from(b.has_edge(u, v))] += 1.0;
        }
    }
    let total: f64 = table.iter().flatten().sum();
    let mut chi2 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let expect = (table[i][0] + table[i][1]) * (table[0][j] + table[1][j]) / total;
            chi2 += (table[i][j] - expect).powi(2) / expect;
        }
    }
    // 1 degree of freedom; 15.1 is the 0.9999 quantile.
    assert!(chi2 < 15.1, "chi2 = {chi2}");
}

#[test]
fn indicator_frequency_per_pair() {
    let (p, reps) = (0.37, 20_000u64);
    let hits = (0..reps).filter(|&i| edge_indicator(50, p, Seed::new(i), 17, 42).unwrap()).count();
    let sd = (p * (1.0 - p) / reps as f64).sqrt();
    assert!(within(hits as f64 / reps as f64, p, sd, 4.0));
}

#[test]
fn red_subgraph_has_half_density() {
    let (n, p, reps) = (40usize, 0.6, 500u64);
    let pairs = (n * (n - 1) / 2) as f64;
    let mut red = 0usize;
    for i in 0..reps {
        let g = sample_gnp(n, p, Seed::new(i)).unwrap();
        red += sample_uniform_coloring(&g, Seed::new(i).with_stream(9)).red_edge_count();
    }
    let q = p / 2.0;
    let mean = red as f64 / reps as f64;
    let se = (pairs * q * (1.0 - q) / reps as f64).sqrt();
    assert!(within(mean, pairs * q, se, 4.0), "{mean}");
}

#[test]
fn single_edge_is_red_half_the_time() {
    let g = Graph::complete(2);
    let reps = 10_000u64;
    let red = (0..reps)
        .filter(|&i| sample_uniform_coloring(&g, Seed::new(i)).color_of(0, 1) == Some(Color::Red))
        .count();
    let sd = (0.25 / reps as f64).sqrt();
    assert!(within(red as f64 / reps as f64, 0.5, sd, 4.0), "{red}");
}
