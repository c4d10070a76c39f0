//! Ramsey arrowing of book graphs `B_n^(k)` and bicliques `K_{k,n}` inside
//! random graphs `G(N,p)`.
//!
//! The crate is `no_std` with `alloc`. Everything here is a pure function of
//! its inputs and a [`Seed`]; file formats, timing, parallel Monte Carlo and
//! the command line live in the `bookramsey-lab` crate.
//!
//! Modules:
//! - [`graph`]: bit-set adjacency, clique enumeration, triangle counts, exact max-cut.
//! - [`sampler`]: counter-addressable sampling of `G(N,p)` and uniform 2-colorings.
//! - [`witness`]: monochromatic book/biclique search and exact triangle accounting.
//! - [`arrowing`]: exact, star, heuristic and combined arrowing deciders.
//! - [`certificates`]: threshold formulas, Chernoff report, the `k = 2` counting
//!   certificate and the quasirandomness audit.
//! - [`regularity`]: p-densities, `(ε,p)`-regularity refutation, reduced graphs,
//!   counting-lemma and extension bounds.
//! - [`stats`]: Wilson score intervals.
#![no_std]

extern crate alloc;

pub mod arrowing;
pub mod bitset;
pub mod certificates;
mod error;
pub mod graph;
pub mod maxcut;
pub mod regularity;
pub mod sampler;
pub mod stats;
pub mod witness;

pub use arrowing::{
    decide_exact, decide_sandwich, decide_star_fast, search_avoiding_coloring, ArrowMethod,
    ArrowingVerdict, DeciderLimits, Outcome, Shape, TargetSpec,
};
pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Clique, Graph, GraphBuilder};
pub use sampler::{sample_gnp, sample_uniform_coloring, Seed};
pub use witness::{Color, ColoringCounts, MonoWitness, TwoColoring};
