//! Seed-reproducible sampling of `G(N,p)` and of uniform edge 2-colorings.
//!
//! Randomness is counter-addressable: the indicator of the pair with
//! canonical index `i` (pairs `u < v` in lexicographic order) is decided by
//! the 64-bit ChaCha8 output at word position `2i` of the stream selected by
//! [`Seed::stream`]. Sampling the whole graph walks the stream in order, and
//! [`edge_indicator`] jumps straight to one pair. Because every `p` compares
//! the same draw against its own threshold, `G(N,p) ⊆ G(N,p')` for `p ≤ p'`
//! under a common seed.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{input_err, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::witness::{Color, TwoColoring};

/// Seed of every random choice in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Seed {
    pub value: u64,
    pub stream: u64,
}

impl Seed {
    pub const fn new(value: u64) -> Seed {
        Seed { value, stream: 0 }
    }

    pub const fn with_stream(self, stream: u64) -> Seed {
        Seed {
            value: self.value,
            stream,
        }
    }

    /// Per-item seed `mix(value, index)`, keeping the stream. Independent of
    /// the order in which items are processed.
    pub fn derive(self, index: u64) -> Seed {
        Seed {
            value: mix64(self.value, index),
            stream: self.stream,
        }
    }

    /// Generator positioned at the start of this seed's stream.
    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.value);
        rng.set_stream(self.stream);
        rng
    }
}

/// SplitMix64 finalizer applied to `a + φ·(b+1)`.
pub fn mix64(a: u64, b: u64) -> u64 {
    let mut z = a.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(b.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy)]
enum Threshold {
    Never,
    Always,
    Below(u64),
}

impl Threshold {
    fn new(p: f64) -> Result<Threshold> {
        if !(0.0..=1.0).contains(&p) {
            return Err(input_err!("edge probability {p} outside [0,1]"));
        }
        Ok(if p == 0.0 {
            Threshold::Never
        } else if p == 1.0 {
            Threshold::Always
        } else {
            Threshold::Below((p * 18_446_744_073_709_551_616.0) as u64)
        })
    }

    #[inline]
    fn hit(self, draw: u64) -> bool {
        match self {
            Threshold::Never => false,
            Threshold::Always => true,
            Threshold::Below(t) => draw < t,
        }
    }
}

/// Canonical index of the pair `u < v` among the `C(n,2)` pairs.
pub fn pair_index(n: usize, u: usize, v: usize) -> u64 {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let (n, u, v) = (n as u64, u as u64, v as u64);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Each of the `C(n,2)` pairs becomes an edge independently with probability `p`.
pub fn sample_gnp(n: usize, p: f64, seed: Seed) -> Result<Graph> {
    let threshold = Threshold::new(p)?;
    let mut b = GraphBuilder::new(n)?;
    if matches!(threshold, Threshold::Never) {
        return Ok(b.build());
    }
    let mut rng = seed.rng();
    for u in 0..n {
        for v in u + 1..n {
            if threshold.hit(rng.next_u64()) {
                b.set(u, v);
            }
        }
    }
    Ok(b.build())
}

/// The indicator `sample_gnp(n, p, seed)` uses for the pair `{u, v}`,
/// computed without generating the other pairs.
pub fn edge_indicator(n: usize, p: f64, seed: Seed, u: usize, v: usize) -> Result<bool> {
    let threshold = Threshold::new(p)?;
    if u == v || u >= n || v >= n {
        return Err(input_err!("pair ({u},{v}) invalid for {n} vertices"));
    }
    let mut rng = seed.rng();
    rng.set_word_pos(2 * pair_index(n, u, v) as u128);
    Ok(threshold.hit(rng.next_u64()))
}

/// Colors each edge of `g` red or blue with probability 1/2, in canonical
/// edge order.
pub fn sample_uniform_coloring(g: &Graph, seed: Seed) -> TwoColoring {
    let mut rng = seed.rng();
    TwoColoring::from_fn(g, |_, _| {
        if rng.next_u64() >> 63 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    })
}
