//! Exact-arithmetic multiplicative convolutions of noncommutative
//! probability, the matching loop products of rooted colored graphs, and
//! walk-count verification tying the two together.
//!
//! A distribution is represented by its truncated moment sequence
//! ([`Dist`]); its first-return series `eta = psi/(1 + psi)` drives five
//! multiplicative convolutions (monotone, boolean, orthogonal, s-free,
//! free), each computable by transform algebra or by independent
//! combinatorial sums ([`convolve`]). On the graph side, every convolution
//! is realized by a product of rooted 2-colored graphs ([`graph`]) on which
//! alternating double-return walk counts reproduce the convolution's
//! first-return moments ([`walks`], [`verify`]). Continued-fraction
//! coefficients of the first-return series live in [`jacobi`], and the
//! stable JSON encodings used by the `freeconv` binary in [`json`].
//!
//! All coefficients are exact rationals with arbitrary-precision integer
//! parts; there is no floating point anywhere.
//!
//! The `book/` directory of the repository holds a narrative guide; its code
//! blocks are compiled and run as part of `cargo test` via the doctest
//! modules at the bottom of this file.

pub mod convolve;
pub mod error;
pub mod graph;
pub mod jacobi;
pub mod json;
pub mod rational;
pub mod series;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};
pub use rational::Rat;
pub use series::{Dist, FormalSeries};

// Keep the guide's code blocks honest: each chapter is attached to a hidden
// module so `cargo test` runs them as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/transforms.md")]
    pub struct Transforms;
    #[doc = include_str!("../../../book/src/convolutions.md")]
    pub struct Convolutions;
    #[doc = include_str!("../../../book/src/jacobi.md")]
    pub struct Jacobi;
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub struct Graphs;
    #[doc = include_str!("../../../book/src/walks.md")]
    pub struct Walks;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct CommandLine;
}
