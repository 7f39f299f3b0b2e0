//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors reported by series, convolution, Jacobi and graph operations.
#[derive(Debug, Error)]
pub enum Error {
    /// A moment sequence must contain at least one moment.
    #[error("a distribution needs at least one moment")]
    EmptyMoments,

    /// Series division where every retained coefficient of the divisor vanishes.
    #[error("division by a series that vanishes up to its truncation order")]
    DivisorVanishes,

    /// Series division where the numerator has a lower-order term than the divisor.
    #[error("series quotient is not a power series: numerator valuation {num} is below divisor valuation {den}")]
    NotDivisible { num: usize, den: usize },

    /// Composition or an eta-style operation applied to a series with a
    /// nonzero constant term.
    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    /// Compositional inversion of a series with vanishing linear coefficient.
    #[error("series has no compositional inverse: linear coefficient vanishes")]
    ZeroLinearCoefficient,

    /// S-transform of a distribution whose first moment vanishes.
    #[error("S-transform undefined: first moment vanishes")]
    FirstMomentVanishes,

    /// Rescaled dilation by zero.
    #[error("scale factor must be nonzero")]
    ZeroScale,

    /// Moment sequence that admits no terminating Jacobi recursion.
    #[error("non-quasi-definite moment sequence")]
    NonQuasiDefinite,

    /// A string failed to parse as an exact rational.
    #[error("invalid rational literal {literal:?}")]
    InvalidRational { literal: String },

    /// An unknown product-kind or method token.
    #[error("unknown {what} {token:?} (expected one of {expected})")]
    UnknownToken {
        what: &'static str,
        token: String,
        expected: &'static str,
    },

    /// A ball product was requested without a radius, or with radius zero.
    #[error("product kind {kind:?} requires a radius of at least 1")]
    RadiusRequired { kind: String },

    /// A finite product was requested for a kind that needs ball truncation.
    #[error("product kind {kind:?} is an infinite product; use a ball truncation radius")]
    NotFinite { kind: String },

    /// A ball product was requested for a kind that is already finite.
    #[error("product kind {kind:?} is finite; radius does not apply")]
    NotBall { kind: String },

    /// Verification was requested for a kind with no matching convolution.
    #[error("product kind {kind:?} has no associated convolution; use one of comb_loop, star_loop, ortho_loop, sfree_loop, free")]
    KindNotVerifiable { kind: String },

    /// Graph construction with a duplicate vertex name.
    #[error("duplicate vertex name {name:?}")]
    DuplicateVertex { name: String },

    /// Graph construction referencing an unknown vertex.
    #[error("unknown vertex {name:?}")]
    UnknownVertex { name: String },

    /// Graph construction with no vertices, an out-of-range root, or a zero
    /// edge multiplicity.
    #[error("malformed graph: {reason}")]
    MalformedGraph { reason: String },

    /// A JSON document whose fields disagree with each other.
    #[error("{reason}")]
    Schema { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
