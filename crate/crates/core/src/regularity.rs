//! Regularity checks on user-supplied partitions.
//!
//! Densities follow the convention that `e(U,W) = Σ_{u∈U} |N(u) ∩ W|`, so
//! an edge inside `U ∩ W` is counted twice and `d(U,U)` is
//! `2e(U) / (p|U|²)`. A single part `V_i` is called regular when the pair
//! `(V_i, V_i)` is, under this convention.
//!
//! Regularity is verified exhaustively only when both sides have at most
//! [`EXHAUSTIVE_SIDE_CAP`] vertices. Larger pairs can be refuted by random
//! sub-pairs, never certified.

use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bitset::VertexSet;
use crate::error::{input_err, limits_err, Error, Result};
use crate::graph::{Clique, Graph};
use crate::sampler::Seed;
use crate::witness::{Color, TwoColoring};

pub const EXHAUSTIVE_SIDE_CAP: usize = 14;

/// A partition of `{0, ..., n-1}` into non-empty parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<VertexSet>,
    equitable: bool,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Partition> {
        let mut seen = VertexSet::empty(n);
        for (i, part) in parts.iter().enumerate() {
            if part.universe() != n {
                return Err(input_err!("part {i} lives in a universe of {} vertices, not {n}", part.universe()));
            }
            if part.is_empty() {
                return Err(input_err!("part {i} is empty"));
            }
            if !part.is_disjoint(&seen) {
                return Err(input_err!("part {i} overlaps an earlier part"));
            }
            for v in part.iter() {
                seen.insert(v);
            }
        }
        if seen.len() != n {
            return Err(input_err!("parts cover {} of {n} vertices", seen.len()));
        }
        let sizes = parts.iter().map(VertexSet::len);
        let equitable = sizes.clone().max().unwrap_or(0) - sizes.min().unwrap_or(0) <= 1;
        Ok(Partition { parts, equitable })
    }

    /// Consecutive blocks of sizes `⌈n/m⌉` and `⌊n/m⌋`.
    pub fn equitable(n: usize, m: usize) -> Result<Partition> {
        if m == 0 || m > n {
            return Err(input_err!("cannot split {n} vertices into {m} non-empty parts"));
        }
        let (q, r) = (n / m, n % m);
        let mut start = 0;
        let parts = (0..m)
            .map(|i| {
                let len = q + usize::from(i < r);
                let s = VertexSet::from_indices(n, start..start + len).expect("in range");
                start += len;
                s
            })
            .collect();
        Partition::new(n, parts)
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_equitable(&self) -> bool {
        self.equitable
    }
}

fn check_set(g: &Graph, s: &VertexSet, name: &str) -> Result<()> {
    if s.universe() != g.vertex_count() {
        return Err(input_err!("{name} has universe {} but the graph has {} vertices", s.universe(), g.vertex_count()));
    }
    if s.is_empty() {
        return Err(input_err!("{name} is empty"));
    }
    Ok(())
}

fn check_p(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(input_err!("p must lie in (0, 1], got {p}"))
    }
}

/// `Σ_{u∈U} |N(u) ∩ W|`.
pub fn edges_between(g: &Graph, u: &VertexSet, w: &VertexSet) -> u64 {
    u.iter().map(|x| g.degree_into(x, w) as u64).sum()
}

fn density(e: u64, a: usize, b: usize, p: f64) -> f64 {
    e as f64 / (p * (a * b) as f64)
}

/// `e(U,W) / (p|U||W|)`.
pub fn p_density(g: &Graph, u: &VertexSet, w: &VertexSet, p: f64) -> Result<f64> {
    check_set(g, u, "U")?;
    check_set(g, w, "W")?;
    check_p(p)?;
    Ok(density(edges_between(g, u, w), u.len(), w.len(), p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Strategy {
    Exhaustive,
    Sampled,
}

impl Strategy {
    /// Exhaustive when both sides fit under the cap.
    pub fn auto(u: &VertexSet, w: &VertexSet) -> Strategy {
        if u.len().max(w.len()) <= EXHAUSTIVE_SIDE_CAP {
            Strategy::Exhaustive
        } else {
            Strategy::Sampled
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Verdict {
    Regular,
    Refuted,
    Undetermined,
}

/// A sub-pair whose p-density is more than `ε` away from the pair's.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegWitness {
    pub u: Vec<usize>,
    pub w: Vec<usize>,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegPairReport {
    pub density: f64,
    pub verdict: Verdict,
    pub witness: Option<RegWitness>,
    pub strategy: Strategy,
    /// Sub-pairs drawn (sampled) or sets `U'` examined (exhaustive).
    pub trials: usize,
}

/// Smallest admissible size of a sub-pair side: `⌈ε·s⌉`, at least 1.
pub fn min_side(epsilon: f64, s: usize) -> usize {
    let x = libm::ceil(epsilon * s as f64 - 1e-9);
    (x.max(1.0) as usize).min(s)
}

/// Tests whether `(U, W)` is `(ε,p)`-regular: every `U' ⊆ U`, `W' ⊆ W`
/// with `|U'| ≥ ε|U|` and `|W'| ≥ ε|W|` has `|d(U',W') − d(U,W)| ≤ ε`.
///
/// Exhaustive mode enumerates `U'` and, for each size of `W'`, only the
/// two extreme choices (the `|W'|` vertices of `W` with most and fewest
/// neighbors in `U'`). Sampled mode draws `trials` uniform sub-pairs of
/// uniform admissible sizes; sub-pair `t` uses `seed.derive(t)`.
#[allow(clippy::too_many_arguments)]
pub fn test_regularity(
    g: &Graph,
    u: &VertexSet,
    w: &VertexSet,
    epsilon: f64,
    p: f64,
    strategy: Strategy,
    trials: usize,
    seed: Seed,
) -> Result<RegPairReport> {
    check_set(g, u, "U")?;
    check_set(g, w, "W")?;
    check_p(p)?;
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(input_err!("epsilon must lie in (0, 1], got {epsilon}"));
    }
    let d = density(edges_between(g, u, w), u.len(), w.len(), p);
    let (found, examined) = match strategy {
        Strategy::Exhaustive => {
            if u.len().max(w.len()) > EXHAUSTIVE_SIDE_CAP {
                return Err(limits_err!(
                    "exhaustive regularity testing is capped at {EXHAUSTIVE_SIDE_CAP} vertices per side, got {} and {}",
                    u.len(),
                    w.len()
                ));
            }
            exhaustive(g, u, w, epsilon, p, d)
        }
        Strategy::Sampled => sampled(g, u, w, epsilon, p, d, trials, seed),
    };
    let verdict = match (&found, strategy) {
        (Some(_), _) => Verdict::Refuted,
        (None, Strategy::Exhaustive) => Verdict::Regular,
        (None, Strategy::Sampled) => Verdict::Undetermined,
    };
    if let Some(wit) = &found {
        let n = g.vertex_count();
        let us = VertexSet::from_indices(n, wit.u.iter().copied()).expect("in range");
        let ws = VertexSet::from_indices(n, wit.w.iter().copied()).expect("in range");
        let ok = us.len() >= min_side(epsilon, u.len())
            && ws.len() >= min_side(epsilon, w.len())
            && us.is_subset(u)
            && ws.is_subset(w)
            && libm::fabs(p_density(g, &us, &ws, p)? - d) > epsilon;
        if !ok {
            return Err(Error::Internal("regularity witness failed re-verification".into()));
        }
    }
    Ok(RegPairReport {
        density: d,
        verdict,
        witness: found,
        strategy,
        trials: examined,
    })
}

fn exhaustive(g: &Graph, u: &VertexSet, w: &VertexSet, epsilon: f64, p: f64, d: f64) -> (Option<RegWitness>, usize) {
    let ua = u.to_vec();
    let wa = w.to_vec();
    let (a0, b0) = (min_side(epsilon, ua.len()), min_side(epsilon, wa.len()));
    let adj: Vec<u32> = wa
        .iter()
        .map(|&y| {
            ua.iter()
                .enumerate()
                .filter(|&(_, &x)| g.has_edge(x, y))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let mut order: Vec<(u32, usize)> = Vec::with_capacity(wa.len());
    let mut examined = 0;
    for mask in 1u32..1 << ua.len() {
        let a = mask.count_ones() as usize;
        if a < a0 {
            continue;
        }
        examined += 1;
        order.clear();
        order.extend(adj.iter().enumerate().map(|(j, &m)| ((m & mask).count_ones(), j)));
        order.sort_unstable_by(|x, y| y.cmp(x));
        let (mut top, mut bottom) = (0u64, 0u64);
        for s in 1..=wa.len() {
            top += order[s - 1].0 as u64;
            bottom += order[wa.len() - s].0 as u64;
            if s < b0 {
                continue;
            }
            for (e, from_top) in [(top, true), (bottom, false)] {
                let dd = density(e, a, s, p);
                if libm::fabs(dd - d) > epsilon {
                    let picked = if from_top { &order[..s] } else { &order[wa.len() - s..] };
                    let mut wv: Vec<usize> = picked.iter().map(|&(_, j)| wa[j]).collect();
                    wv.sort_unstable();
                    let uv = (0..ua.len()).filter(|i| mask >> i & 1 == 1).map(|i| ua[i]).collect();
                    return (Some(RegWitness { u: uv, w: wv, density: dd }), examined);
                }
            }
        }
    }
    (None, examined)
}

#[allow(clippy::too_many_arguments)]
fn sampled(
    g: &Graph,
    u: &VertexSet,
    w: &VertexSet,
    epsilon: f64,
    p: f64,
    d: f64,
    trials: usize,
    seed: Seed,
) -> (Option<RegWitness>, usize) {
    let n = g.vertex_count();
    let mut ua = u.to_vec();
    let mut wa = w.to_vec();
    let (a0, b0) = (min_side(epsilon, ua.len()), min_side(epsilon, wa.len()));
    for t in 0..trials {
        let mut rng = seed.derive(t as u64).rng();
        let a = rng.random_range(a0..=ua.len());
        let b = rng.random_range(b0..=wa.len());
        let (us, _) = ua.partial_shuffle(&mut rng, a);
        let us = VertexSet::from_indices(n, us.iter().copied()).expect("in range");
        let (ws, _) = wa.partial_shuffle(&mut rng, b);
        let ws = VertexSet::from_indices(n, ws.iter().copied()).expect("in range");
        let dd = density(edges_between(g, &us, &ws), a, b, p);
        if libm::fabs(dd - d) > epsilon {
            return (
                Some(RegWitness {
                    u: us.to_vec(),
                    w: ws.to_vec(),
                    density: dd,
                }),
                t + 1,
            );
        }
        ua.sort_unstable();
        wa.sort_unstable();
    }
    (None, trials)
}

/// The reduced graph `Γ_B` of a colored graph and a partition.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ReducedGraph {
    pub m: usize,
    /// `d_{B,p}(V_i, V_j)`, diagonal included.
    pub blue_density: Vec<Vec<f64>>,
    pub red_density: Vec<Vec<f64>>,
    /// Pairs `i < j` refuted as `(ε,p)`-regular in red or in blue.
    pub refuted: Vec<(usize, usize)>,
    /// Pairs `i < j` not refuted and with blue p-density at least `δ`.
    pub edges: Vec<(usize, usize)>,
    /// Parts with internal red p-density `d_{R,p}(V_i,V_i) ≥ 1/2`.
    pub red_mask: Vec<bool>,
}

impl ReducedGraph {
    pub fn gamma_b(&self) -> Graph {
        Graph::from_edge_list(self.m, &self.edges).expect("pairs of parts")
    }

    /// `Γ_B'`, the subgraph of `Γ_B` induced by the masked parts, with the
    /// part index of each of its vertices.
    pub fn gamma_b_prime(&self) -> (Graph, Vec<usize>) {
        let keep = VertexSet::from_indices(self.m, (0..self.m).filter(|&i| self.red_mask[i])).expect("in range");
        self.gamma_b().induced_subgraph(&keep)
    }
}

/// Builds `Γ_B`. Each pair is tested in both color classes with
/// [`Strategy::auto`]; a pair joins `Γ_B` unless one test refutes it, and
/// only if its blue p-density is at least `δ`.
#[allow(clippy::too_many_arguments)]
pub fn build_reduced_graph(
    c: &TwoColoring,
    partition: &Partition,
    epsilon: f64,
    p: f64,
    delta: f64,
    trials: usize,
    seed: Seed,
) -> Result<ReducedGraph> {
    let g = c.host();
    let parts = partition.parts();
    if parts.first().is_some_and(|s| s.universe() != g.vertex_count()) {
        return Err(input_err!("partition and coloring disagree on the vertex count"));
    }
    let m = parts.len();
    let red = c.color_subgraph(Color::Red);
    let blue = c.color_subgraph(Color::Blue);
    let mut red_density = vec![vec![0.0; m]; m];
    let mut blue_density = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let r = p_density(red, &parts[i], &parts[j], p)?;
            let b = p_density(blue, &parts[i], &parts[j], p)?;
            red_density[i][j] = r;
            red_density[j][i] = r;
            blue_density[i][j] = b;
            blue_density[j][i] = b;
        }
    }
    let mut refuted = Vec::new();
    let mut edges = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let strategy = Strategy::auto(&parts[i], &parts[j]);
            let mut bad = false;
            for (ci, h) in [red, blue].into_iter().enumerate() {
                let s = seed.derive(((i * m + j) * 2 + ci) as u64);
                let rep = test_regularity(h, &parts[i], &parts[j], epsilon, p, strategy, trials, s)?;
                bad |= rep.verdict == Verdict::Refuted;
            }
            if bad {
                refuted.push((i, j));
            } else if blue_density[i][j] >= delta {
                edges.push((i, j));
            }
        }
    }
    let red_mask = (0..m).map(|i| red_density[i][i] >= 0.5).collect();
    Ok(ReducedGraph {
        m,
        blue_density,
        red_density,
        refuted,
        edges,
        red_mask,
    })
}

/// Number of tuples `(w_1, ..., w_k)` with `w_i ∈ W_i` that span a clique.
pub fn labeled_clique_count(g: &Graph, parts: &[VertexSet]) -> u64 {
    fn go(g: &Graph, parts: &[VertexSet], cand: &[Vec<u64>]) -> u64 {
        let Some((first, rest)) = cand.split_first() else { return 1 };
        if rest.is_empty() {
            return first.iter().map(|w| w.count_ones() as u64).sum();
        }
        let mut total = 0;
        for v in crate::bitset::Ones::new(first) {
            let next: Vec<Vec<u64>> = rest
                .iter()
                .map(|s| s.iter().zip(g.neighbors(v)).map(|(a, b)| a & b).collect())
                .collect();
            total += go(g, parts, &next);
        }
        total
    }
    let cand: Vec<Vec<u64>> = parts.iter().map(|s| s.words().to_vec()).collect();
    go(g, parts, &cand)
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountingLemmaReport {
    pub actual: u64,
    /// `(∏_{i<j} d(W_i,W_j) − ε·C(k,2))·∏|W_i|` with plain densities.
    pub bound: f64,
    pub density_product: f64,
    pub holds: bool,
}

/// Labeled `K_k` count across `W_1..W_k` (parts may repeat) against the
/// counting-lemma lower bound.
pub fn counting_lemma_check(g: &Graph, parts: &[VertexSet], epsilon: f64) -> Result<CountingLemmaReport> {
    let k = parts.len();
    if k < 2 {
        return Err(input_err!("counting lemma needs k >= 2 parts, got {k}"));
    }
    for s in parts {
        check_set(g, s, "part")?;
    }
    let mut product = 1.0;
    for i in 0..k {
        for j in i + 1..k {
            product *= p_density(g, &parts[i], &parts[j], 1.0)?;
        }
    }
    let size: f64 = parts.iter().map(|s| s.len() as f64).product();
    let bound = (product - epsilon * (k * (k - 1) / 2) as f64) * size;
    let actual = labeled_clique_count(g, parts);
    Ok(CountingLemmaReport {
        actual,
        bound,
        density_product: product,
        holds: actual as f64 >= bound,
    })
}

/// True when `u` is adjacent to every vertex of `spine`.
pub fn extends(g: &Graph, spine: &Clique, u: usize) -> bool {
    spine.vertices.iter().all(|&v| g.has_edge(u, v))
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionCheck {
    /// Labeled cliques with one vertex in each part.
    pub spines: u64,
    pub extended: u64,
    /// `extended / spines`; `None` without spines.
    pub frequency: Option<f64>,
    /// `∏ d(u, U_i) − 4δ`.
    pub bound: f64,
    pub holds: bool,
}

/// Probability that `u` extends a uniform labeled `K_k` with one vertex in
/// each `U_i`, counted exactly, against `∏ d(u,U_i) − 4δ`. Pass a color
/// class to count monochromatic extensions.
pub fn extension_bound_check(g: &Graph, parts: &[VertexSet], u: usize, delta: f64) -> Result<ExtensionCheck> {
    if u >= g.vertex_count() {
        return Err(input_err!("vertex {u} out of range"));
    }
    for s in parts {
        check_set(g, s, "part")?;
    }
    let nu = g.neighbor_set(u);
    let bound = parts
        .iter()
        .map(|s| s.intersection_len(&nu) as f64 / s.len() as f64)
        .product::<f64>()
        - 4.0 * delta;
    let spines = labeled_clique_count(g, parts);
    let inside: Vec<VertexSet> = parts
        .iter()
        .map(|s| {
            let mut t = s.clone();
            t.intersect_with(nu.words());
            t
        })
        .collect();
    let extended = labeled_clique_count(g, &inside);
    let frequency = (spines > 0).then(|| extended as f64 / spines as f64);
    Ok(ExtensionCheck {
        spines,
        extended,
        frequency,
        bound,
        holds: frequency.is_none_or(|f| f >= bound),
    })
}

/// `x_i(v) = deg_B(v,W_i) / (p0|W_i|)` and the red counterparts, for one vertex.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtensionProfile {
    pub p0: f64,
    pub x: Vec<f64>,
    pub red: Vec<f64>,
}

impl ExtensionProfile {
    pub fn of_vertex(c: &TwoColoring, v: usize, parts: &[VertexSet], p0: f64) -> Result<ExtensionProfile> {
        check_p(p0)?;
        let g = c.host();
        if v >= g.vertex_count() {
            return Err(input_err!("vertex {v} out of range"));
        }
        for s in parts {
            check_set(g, s, "part")?;
        }
        let norm = |h: &Graph, s: &VertexSet| h.degree_into(v, s) as f64 / (p0 * s.len() as f64);
        Ok(ExtensionProfile {
            p0,
            x: parts.iter().map(|s| norm(c.color_subgraph(Color::Blue), s)).collect(),
            red: parts.iter().map(|s| norm(c.color_subgraph(Color::Red), s)).collect(),
        })
    }

    /// `x_i + d_{R,p}(v,W_i) ≥ 1` for every `i`.
    pub fn is_complementary(&self) -> bool {
        self.x.iter().zip(&self.red).all(|(x, r)| x + r >= 1.0)
    }
}

/// `∏ x_i + (1/k) Σ (1 − x_i)^k`, which is at least `2^{1−k}` on `[0,1]^k`.
pub fn conlon_inequality_lhs(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(input_err!("need at least one coordinate"));
    }
    if let Some(bad) = x.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(input_err!("coordinate {bad} outside [0, 1]"));
    }
    let k = x.len() as f64;
    let prod: f64 = x.iter().product();
    let sum: f64 = x.iter().map(|v| libm::pow(1.0 - v, k)).sum();
    Ok(prod + sum / k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Case {
    /// `∏ x_i ≥ 2^{−k}`: many blue extensions.
    Case1,
    /// Otherwise; on `[0,1]^k` this forces `(1/k) Σ (1 − x_i)^k ≥ 2^{−k}`.
    Case2,
}

pub fn case_split(profile: &ExtensionProfile) -> Case {
    let k = profile.x.len() as i32;
    if profile.x.iter().product::<f64>() >= libm::ldexp(1.0, -k) {
        Case::Case1
    } else {
        Case::Case2
    }
}

/// `(1/k) Σ (1 − x_i)^k ≥ 2^{−k}` with `x` clipped to `[0, 1]`.
pub fn red_branch_holds(profile: &ExtensionProfile) -> bool {
    let k = profile.x.len();
    let s: f64 = profile
        .x
        .iter()
        .map(|v| libm::pow(1.0 - v.clamp(0.0, 1.0), k as f64))
        .sum();
    s / k as f64 >= libm::ldexp(1.0, -(k as i32))
}
