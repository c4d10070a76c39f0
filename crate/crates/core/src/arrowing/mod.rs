//! Deciding `G → H` for `H = B_n^(k)` or `K_{k,n}`.
//!
//! Every `Arrows` verdict comes from a sound argument (exhaustion, the star
//! degree/parity rule, or the counting certificate) and every `NotArrows`
//! verdict carries a coloring that has been re-checked by [`crate::witness`].

mod exact;
mod local;
mod star;
mod state;

pub use exact::decide_exact;
pub use local::search_avoiding_coloring;
pub use star::decide_star_fast;

use crate::certificates::counting_certificate_b2;
use crate::error::{input_err, Result};
use crate::graph::Graph;
use crate::sampler::Seed;
pub use crate::witness::Shape;
use crate::witness::TwoColoring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TargetSpec {
    pub shape: Shape,
    pub k: usize,
    pub n: usize,
}

impl TargetSpec {
    pub fn new(shape: Shape, k: usize, n: usize) -> Result<TargetSpec> {
        if k == 0 || n == 0 {
            return Err(input_err!("target needs k >= 1 and n >= 1, got k={k} n={n}"));
        }
        Ok(TargetSpec { shape, k, n })
    }

    pub fn book(k: usize, n: usize) -> Result<TargetSpec> {
        Self::new(Shape::Book, k, n)
    }

    pub fn biclique(k: usize, n: usize) -> Result<TargetSpec> {
        Self::new(Shape::Biclique, k, n)
    }

    /// True when `c` has a monochromatic copy of the target.
    pub fn present_in(&self, c: &TwoColoring) -> bool {
        crate::witness::find_mono_target(c, self.shape, self.k, self.n).is_some()
    }
}

/// How an `Arrows` verdict was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ArrowMethod {
    /// Every coloring was covered by the backtracking search.
    Exhaustive,
    /// Some vertex has degree at least `2n - 1`.
    StarDegree,
    /// Some component is `(2n-2)`-regular with an odd number of edges, so no
    /// color class can have every degree exactly `n - 1`.
    StarParity,
    /// The `k = 2` counting certificate fired.
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Arrows(ArrowMethod),
    NotArrows(TwoColoring),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowingVerdict {
    pub outcome: Outcome,
    /// Search nodes spent (edge assignments or local-search moves).
    pub nodes: u64,
}

impl ArrowingVerdict {
    pub fn is_arrows(&self) -> bool {
        matches!(self.outcome, Outcome::Arrows(_))
    }

    pub fn is_not_arrows(&self) -> bool {
        matches!(self.outcome, Outcome::NotArrows(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self.outcome, Outcome::Unknown)
    }
}

/// Budgets for the deciders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeciderLimits {
    pub max_edges_exhaustive: usize,
    pub max_search_nodes: u64,
    pub local_search_restarts: usize,
    pub local_search_steps: usize,
    /// Vertex cap for the per-neighborhood max-cut of the certificate.
    pub maxcut_vertex_cap: usize,
}

impl Default for DeciderLimits {
    fn default() -> Self {
        DeciderLimits {
            max_edges_exhaustive: 26,
            max_search_nodes: 20_000_000,
            local_search_restarts: 4,
            local_search_steps: 1_500,
            maxcut_vertex_cap: crate::maxcut::DEFAULT_MAXCUT_CAP,
        }
    }
}

impl DeciderLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_edges_exhaustive == 0
            || self.max_search_nodes == 0
            || self.local_search_restarts == 0
            || self.local_search_steps == 0
            || self.maxcut_vertex_cap == 0
        {
            return Err(input_err!("decider limits must all be positive"));
        }
        Ok(())
    }
}

/// Star fast path, then exhaustive search, then the `k = 2` counting
/// certificate, then heuristic search for an avoiding coloring.
pub fn decide_sandwich(
    g: &Graph,
    t: TargetSpec,
    lim: &DeciderLimits,
    seed: Seed,
) -> Result<ArrowingVerdict> {
    lim.validate()?;
    if t.shape == Shape::Book && t.k == 1 {
        return Ok(decide_star_fast(g, t.n));
    }
    let mut nodes = 0;
    if g.edge_count() <= lim.max_edges_exhaustive {
        let v = decide_exact(g, t, lim)?;
        if !v.is_unknown() {
            return Ok(v);
        }
        nodes += v.nodes;
    }
    if t.shape == Shape::Book && t.k == 2 {
        if let Ok(cert) = counting_certificate_b2(g, t.n, lim) {
            if cert.fires {
                return Ok(ArrowingVerdict {
                    outcome: Outcome::Arrows(ArrowMethod::Certificate),
                    nodes,
                });
            }
        }
    }
    let (found, spent) = local::search(g, t, lim, seed);
    nodes += spent;
    Ok(ArrowingVerdict {
        outcome: match found {
            Some(c) => Outcome::NotArrows(c),
            None => Outcome::Unknown,
        },
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sandwich_examples() {
        let lim = DeciderLimits::default();
        let v = decide_sandwich(&Graph::complete(16), TargetSpec::book(2, 3).unwrap(), &lim, Seed::new(1))
            .unwrap();
        assert_eq!(v.outcome, Outcome::Arrows(ArrowMethod::Certificate));

        let v = decide_sandwich(&Graph::complete(5), TargetSpec::book(2, 1).unwrap(), &lim, Seed::new(1))
            .unwrap();
        let Outcome::NotArrows(c) = v.outcome else { panic!("expected NotArrows") };
        assert!(crate::witness::find_mono_book(&c, 2, 1).is_none());
    }

    #[test]
    fn sandwich_star_path_on_sparse_sample() {
        let g = crate::sample_gnp(40, 0.2, Seed::new(3)).unwrap();
        assert!(g.max_degree() < 39);
        let v = decide_sandwich(&g, TargetSpec::book(1, 20).unwrap(), &DeciderLimits::default(), Seed::new(0))
            .unwrap();
        assert!(v.is_not_arrows());
    }

    #[test]
    fn target_validation() {
        assert!(TargetSpec::book(0, 1).is_err());
        assert!(TargetSpec::biclique(1, 0).is_err());
    }

    #[test]
    fn limits_validation() {
        let lim = DeciderLimits { local_search_steps: 0, ..DeciderLimits::default() };
        assert!(lim.validate().is_err());
    }
}
