use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::TargetSpec;
use crate::bitset::{self, words_for};
use crate::witness::{visit_structures, Color};

/// Red and blue adjacency rows of a (possibly partial) coloring.
pub(crate) struct ColorRows {
    n: usize,
    stride: usize,
    rows: [Vec<u64>; 2],
    all: Vec<u64>,
}

fn slot(c: Color) -> usize {
    match c {
        Color::Red => 0,
        Color::Blue => 1,
    }
}

impl ColorRows {
    pub(crate) fn new(n: usize) -> Self {
        let stride = words_for(n);
        let mut all = vec![0u64; stride];
        for i in 0..n {
            bitset::set_bit(&mut all, i);
        }
        ColorRows {
            n,
            stride,
            rows: [vec![0; n * stride], vec![0; n * stride]],
            all,
        }
    }

    pub(crate) fn set(&mut self, c: Color, u: usize, v: usize) {
        let (s, r) = (self.stride, &mut self.rows[slot(c)]);
        bitset::set_bit(&mut r[u * s..(u + 1) * s], v);
        bitset::set_bit(&mut r[v * s..(v + 1) * s], u);
    }

    pub(crate) fn unset(&mut self, c: Color, u: usize, v: usize) {
        let (s, r) = (self.stride, &mut self.rows[slot(c)]);
        bitset::clear_bit(&mut r[u * s..(u + 1) * s], v);
        bitset::clear_bit(&mut r[v * s..(v + 1) * s], u);
    }

    /// Visits target-sized structures of color `c` that contain `u` or `v`,
    /// each once, with the size of their common neighborhood.
    fn visit_touching<F>(&self, c: Color, u: usize, v: usize, t: TargetSpec, f: &mut F) -> ControlFlow<()>
    where
        F: FnMut(usize) -> ControlFlow<()>,
    {
        let rows = &self.rows[slot(c)];
        let mut g = |_: &[usize], common: &[u64]| f(bitset::popcount(common));
        visit_structures(rows, self.stride, self.n, t.shape, t.k, &[u], &self.all, t.n, &mut g)?;
        let mut without_u = self.all.clone();
        bitset::clear_bit(&mut without_u, u);
        visit_structures(rows, self.stride, self.n, t.shape, t.k, &[v], &without_u, t.n, &mut g)
    }

    /// Whether a monochromatic target of color `c` uses `u` or `v`.
    pub(crate) fn target_touching(&self, c: Color, u: usize, v: usize, t: TargetSpec) -> bool {
        self.visit_touching(c, u, v, t, &mut |_| ControlFlow::Break(())).is_break()
    }

    /// Σ max(0, common − (n − 1)) over color-`c` structures touching `u` or `v`.
    pub(crate) fn penalty_touching(&self, c: Color, u: usize, v: usize, t: TargetSpec) -> u64 {
        let mut sum = 0u64;
        let _ = self.visit_touching(c, u, v, t, &mut |common| {
            sum += (common + 1 - t.n) as u64;
            ControlFlow::Continue(())
        });
        sum
    }

    /// Penalty summed over every structure of both colors.
    pub(crate) fn total_penalty(&self, t: TargetSpec) -> u64 {
        let mut sum = 0u64;
        for c in Color::BOTH {
            let _ = visit_structures(
                &self.rows[slot(c)],
                self.stride,
                self.n,
                t.shape,
                t.k,
                &[],
                &self.all,
                t.n,
                &mut |_, common| {
                    sum += (bitset::popcount(common) + 1 - t.n) as u64;
                    ControlFlow::Continue(())
                },
            );
        }
        sum
    }

    /// Edges of violating structures of both colors (spine–spine pairs for
    /// books, spine–page pairs always), as `(min, max)` pairs.
    pub(crate) fn conflict_pairs(&self, t: TargetSpec) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for c in Color::BOTH {
            let _ = visit_structures(
                &self.rows[slot(c)],
                self.stride,
                self.n,
                t.shape,
                t.k,
                &[],
                &self.all,
                t.n,
                &mut |spine, common| {
                    for (i, &a) in spine.iter().enumerate() {
                        if t.shape == crate::witness::Shape::Book {
                            for &b in &spine[i + 1..] {
                                out.push((a, b));
                            }
                        }
                        for p in bitset::Ones::new(common) {
                            out.push((a.min(p), a.max(p)));
                        }
                    }
                    ControlFlow::Continue(())
                },
            );
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}
