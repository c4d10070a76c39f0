//! Executable versions of the threshold analysis: the sharp threshold
//! `1/c^{1/k}`, the Chernoff/union-bound lower-threshold report, the
//! upper-threshold parameter recipe, the quasirandomness audit, and the
//! coloring-independent counting certificate for `G → B_n^(2)`.
//!
//! Probability bounds are evaluated in log space with `f64`; binomial
//! coefficients go through `lgamma`, so `N` up to `10^6` and beyond is fine.

use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::arrowing::DeciderLimits;
use crate::bitset::VertexSet;
use crate::error::{input_err, Result};
use crate::graph::Graph;
use crate::maxcut::maxcut_exact_capped;
use crate::sampler::Seed;

fn check_k_c(k: usize, c: f64) -> Result<()> {
    if k == 0 {
        return Err(input_err!("k must be at least 1"));
    }
    if !(c > 1.0) || !c.is_finite() {
        return Err(input_err!("c must be a finite real > 1, got {c}"));
    }
    Ok(())
}

/// `1 / c^{1/k}`.
pub fn sharp_threshold(k: usize, c: f64) -> Result<f64> {
    check_k_c(k, c)?;
    Ok(1.0 / libm::pow(c, 1.0 / k as f64))
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    let (n, k) = (n as f64, k as f64);
    libm::lgamma(n + 1.0) - libm::lgamma(k + 1.0) - libm::lgamma(n - k + 1.0)
}

/// Parameters of one `(k, c, n, γ)` instance with `N = ⌊c·2^k·n⌋`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ThresholdParams {
    pub k: usize,
    pub c: f64,
    pub n: u64,
    /// `N`.
    pub vertices: u64,
    pub gamma: f64,
    pub p_sharp: f64,
    /// `(1/c^{1/k})·(1−γ)^{1/k}`.
    pub p_lower: f64,
    /// `p_lower / 2`, the density of each color class of a random coloring.
    pub p0_lower: f64,
    /// `(1/c^{1/k})·(1+γ/2)`.
    pub p0_upper: f64,
}

/// `⌊c·2^k·n⌋`, robust to the last-ulp error of the product.
pub fn vertices_for(k: usize, c: f64, n: u64) -> u64 {
    let x = c * libm::ldexp(1.0, k as i32) * n as f64;
    let r = libm::round(x);
    if libm::fabs(x - r) <= 1e-9 * x.max(1.0) {
        r as u64
    } else {
        libm::floor(x) as u64
    }
}

impl ThresholdParams {
    /// Needs `k ≥ 1`, `c > 1`, `n ≥ 1` and `0 ≤ γ < 1`.
    pub fn new(k: usize, c: f64, n: u64, gamma: f64) -> Result<ThresholdParams> {
        check_k_c(k, c)?;
        if n == 0 {
            return Err(input_err!("n must be at least 1"));
        }
        if !(0.0..1.0).contains(&gamma) {
            return Err(input_err!("gamma must lie in [0, 1), got {gamma}"));
        }
        let p_sharp = sharp_threshold(k, c)?;
        let p_lower = p_sharp * libm::pow(1.0 - gamma, 1.0 / k as f64);
        Ok(ThresholdParams {
            k,
            c,
            n,
            vertices: vertices_for(k, c, n),
            gamma,
            p_sharp,
            p_lower,
            p0_lower: p_lower / 2.0,
            p0_upper: p_sharp * (1.0 + gamma / 2.0),
        })
    }
}

/// Chernoff tail for the number of common neighbors of a fixed `k`-set in
/// `G(N, p_lower/2)`, and the union bound over all `C(N,k)` sets.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ChernoffReport {
    /// `δ = (γ + k/(N−k)) / (c·2^k)`.
    pub delta: f64,
    pub log_tail: f64,
    /// `exp{−(N−k)δ² / (3 p0^k (1 − p0^k))}`.
    pub tail: f64,
    pub log_union_bound: f64,
    pub union_bound: f64,
    pub log_doubled_union_bound: f64,
    /// Bound on the probability that a uniformly random coloring of
    /// `G(N, p_lower)` has a monochromatic `K_{k,n}`.
    pub doubled_union_bound: f64,
    /// The doubled bound is not below 1, so it says nothing.
    pub gamma_too_small: bool,
}

pub fn lower_threshold_report(params: &ThresholdParams) -> Result<ChernoffReport> {
    let k = params.k as u64;
    let big_n = params.vertices;
    if big_n <= k {
        return Err(input_err!("N = {big_n} must exceed k = {k}"));
    }
    let rest = (big_n - k) as f64;
    let scale = params.c * libm::ldexp(1.0, params.k as i32);
    let delta = (params.gamma + k as f64 / rest) / scale;
    let p0k = libm::pow(params.p0_lower, params.k as f64);
    let log_tail = -rest * delta * delta / (3.0 * p0k * (1.0 - p0k));
    let log_union_bound = ln_binomial(big_n, k) + log_tail;
    let log_doubled_union_bound = core::f64::consts::LN_2 + log_union_bound;
    Ok(ChernoffReport {
        delta,
        log_tail,
        tail: libm::exp(log_tail),
        log_union_bound,
        union_bound: libm::exp(log_union_bound),
        log_doubled_union_bound,
        doubled_union_bound: libm::exp(log_doubled_union_bound),
        gamma_too_small: log_doubled_union_bound >= 0.0,
    })
}

/// Smallest `n` in `1..=n_max` whose doubled union bound is below `target`.
pub fn doubled_bound_crossing(k: usize, c: f64, gamma: f64, target: f64, n_max: u64) -> Result<Option<u64>> {
    let log_target = libm::log(target);
    for n in 1..=n_max {
        let p = ThresholdParams::new(k, c, n, gamma)?;
        if p.vertices <= k as u64 {
            continue;
        }
        if lower_threshold_report(&p)?.log_doubled_union_bound < log_target {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Parameters of the upper-threshold argument for `k ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct UpperParams {
    /// `(1/c^{1/k})(1+γ)`.
    pub p: f64,
    /// `(1/c^{1/k})(1+γ/2)`.
    pub p0: f64,
    /// `min{γ/(4c), p0^k γ / 2^{k+5}}`.
    pub delta: f64,
    /// `min{(δp)^k / k², (p0/2)^{C(k,2)} / k²}`.
    pub epsilon: f64,
}

pub fn upper_params(k: usize, c: f64, gamma: f64) -> Result<UpperParams> {
    if k < 2 {
        return Err(input_err!("upper-threshold parameters need k >= 2, got {k}"));
    }
    check_k_c(k, c)?;
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(input_err!("gamma must be > 0, got {gamma}"));
    }
    let base = sharp_threshold(k, c)?;
    let p = base * (1.0 + gamma);
    let p0 = base * (1.0 + gamma / 2.0);
    let kf = k as f64;
    let delta = (gamma / (4.0 * c)).min(libm::pow(p0, kf) * gamma / libm::ldexp(1.0, k as i32 + 5));
    let pairs = (k * (k - 1) / 2) as f64;
    let epsilon = (libm::pow(delta * p, kf) / (kf * kf)).min(libm::pow(p0 / 2.0, pairs) / (kf * kf));
    Ok(UpperParams {
        p,
        p0,
        delta,
        epsilon,
    })
}

/// The deterministic `k = 2` arrowing certificate.
///
/// In any coloring, `M_rb = (1/2) Σ_v e(N_R(v), N_B(v)) ≤ (1/2) Σ_v maxcut(G[N(v)])`,
/// and a coloring without a monochromatic `B_n` has at most
/// `(n−1)·e(G)/3` monochromatic triangles. So `T − mrb_upper > (n−1)e(G)/3`
/// forces `G → B_n^(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CountingCertificate {
    pub n: u64,
    pub edges: u64,
    pub triangles: u64,
    pub maxcut_sum: u64,
    /// `⌊maxcut_sum / 2⌋`.
    pub mrb_upper: u64,
    /// `T − mrb_upper` (may be negative).
    pub mono_lower: i64,
    /// `(n−1)·e(G)`; the budget is this over 3.
    pub budget_times_three: u64,
    pub fires: bool,
}

impl CountingCertificate {
    /// Assembles the certificate from a precomputed `Σ_v maxcut(G[N(v)])`.
    pub fn from_maxcut_sum(g: &Graph, n: u64, maxcut_sum: u64) -> CountingCertificate {
        let triangles = g.triangle_count();
        let edges = g.edge_count() as u64;
        let mrb_upper = maxcut_sum / 2;
        let mono_lower = triangles as i64 - mrb_upper as i64;
        let budget_times_three = n.saturating_sub(1) * edges;
        CountingCertificate {
            n,
            edges,
            triangles,
            maxcut_sum,
            mrb_upper,
            mono_lower,
            budget_times_three,
            fires: 3 * mono_lower > budget_times_three as i64,
        }
    }

    pub fn budget(&self) -> f64 {
        self.budget_times_three as f64 / 3.0
    }
}

/// `maxcut(G[N(v)])`.
pub fn neighborhood_maxcut(g: &Graph, v: usize, cap: usize) -> Result<u64> {
    let (sub, _) = g.induced_subgraph(&g.neighbor_set(v));
    maxcut_exact_capped(&sub, cap)
}

pub fn counting_certificate_b2(g: &Graph, n: usize, lim: &DeciderLimits) -> Result<CountingCertificate> {
    if n == 0 {
        return Err(input_err!("book size n must be at least 1"));
    }
    let mut sum = 0u64;
    for v in 0..g.vertex_count() {
        sum += neighborhood_maxcut(g, v, lim.maxcut_vertex_cap)?;
    }
    Ok(CountingCertificate::from_maxcut_sum(g, n as u64, sum))
}

/// Observed deviations from the quasirandom profile of `G(N, p)`.
///
/// Centers are the exact finite-`N` expectations: `p·|U∖{v}|` for
/// `deg(v,U)`, `p²(N−2)` for codegrees, `p·C(|U|,2)` for `e(U)` and
/// `p|U||W|` for `e(U,W)`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AuditReport {
    pub vertices: usize,
    pub p: f64,
    pub subset_samples: usize,
    pub degree_max_dev: f64,
    pub codegree_max_dev: f64,
    pub internal_edges_max_dev: f64,
    pub cross_edges_max_dev: f64,
    /// Degree and codegree deviations over `N`.
    pub degree_normalized: f64,
    pub codegree_normalized: f64,
    /// Edge-count deviations over `N²`.
    pub internal_edges_normalized: f64,
    pub cross_edges_normalized: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
    /// The `o(N)` error terms carry no constants; the tolerance is a user
    /// choice, not a derived bound.
    pub tolerance_is_engineering_choice: bool,
}

pub const DEFAULT_AUDIT_TOLERANCE: f64 = 0.1;

pub fn quasirandom_audit(
    g: &Graph,
    p: f64,
    subset_samples: usize,
    seed: Seed,
    tolerance: f64,
) -> Result<AuditReport> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(input_err!("p must lie in (0, 1], got {p}"));
    }
    let n = g.vertex_count();
    let nf = n as f64;

    let mut codeg = 0.0f64;
    let center = p * p * (nf - 2.0);
    for u in 0..n {
        for v in u + 1..n {
            codeg = codeg.max(libm::fabs(g.codegree(u, v) as f64 - center));
        }
    }

    let mut rng = seed.rng();
    let mut order: Vec<usize> = (0..n).collect();
    let (lo, hi) = ((n / 4).max(1), (n / 2).max(1));
    let (mut deg, mut internal, mut cross) = (0.0f64, 0.0f64, 0.0f64);
    if n >= 2 {
        for _ in 0..subset_samples {
            order.shuffle(&mut rng);
            let a = rng.random_range(lo..=hi);
            let b = rng.random_range(lo..=hi).min(n - a);
            let u_set = VertexSet::from_indices(n, order[..a].iter().copied()).expect("in range");
            let w_set = VertexSet::from_indices(n, order[a..a + b].iter().copied()).expect("in range");

            let mut twice_internal = 0usize;
            for v in 0..n {
                let d = g.degree_into(v, &u_set);
                let size = a - usize::from(u_set.contains(v));
                deg = deg.max(libm::fabs(d as f64 - p * size as f64));
                if u_set.contains(v) {
                    twice_internal += d;
                }
            }
            let e_u = (twice_internal / 2) as f64;
            let pairs = (a * (a - 1) / 2) as f64;
            internal = internal.max(libm::fabs(e_u - p * pairs));
            if b > 0 {
                let e_uw: usize = u_set.iter().map(|v| g.degree_into(v, &w_set)).sum();
                cross = cross.max(libm::fabs(e_uw as f64 - p * (a * b) as f64));
            }
        }
    }
    let (n1, n2) = (nf.max(1.0), (nf * nf).max(1.0));
    let normalized = [deg / n1, codeg / n1, internal / n2, cross / n2];
    Ok(AuditReport {
        vertices: n,
        p,
        subset_samples,
        degree_max_dev: deg,
        codegree_max_dev: codeg,
        internal_edges_max_dev: internal,
        cross_edges_max_dev: cross,
        degree_normalized: normalized[0],
        codegree_normalized: normalized[1],
        internal_edges_normalized: normalized[2],
        cross_edges_normalized: normalized[3],
        tolerance,
        within_tolerance: normalized.iter().all(|&x| x <= tolerance),
        tolerance_is_engineering_choice: true,
    })
}
