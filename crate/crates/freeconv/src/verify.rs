//! Cross-checks the convolution of two spectral distributions against walk
//! counts on the matching product graph.
//!
//! Each loop product (and the free product) realizes one multiplicative
//! convolution: the alternating double-return counts on the product equal the
//! first-return moments of the convolution of the factors' spectral
//! distributions. A verification run computes four columns per order —
//! convolution by transform, convolution by combinatorial sums, matrix walk
//! counts, and brute-force walk counts — and reports exact agreement.

use num_bigint::BigInt;

use crate::convolve::{
    boolean_mult, free_mult, monotone_mult, orthogonal_mult, sfree_mult, ConvResult, Method,
};
use crate::error::{Error, Result};
use crate::graph::{product, ColoredRootedGraph, ProductKind};
use crate::rational::Rat;
use crate::series::Dist;
use crate::walks;

/// Per-order values from every computation path, with exact-agreement flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub kind: ProductKind,
    pub max_n: usize,
    pub transform: Vec<Rat>,
    pub combinatorial: Vec<Rat>,
    pub matrix: Vec<BigInt>,
    pub brute_force: Vec<BigInt>,
    pub status: Vec<bool>,
}

impl VerifyReport {
    /// True when every order agrees across all four columns.
    pub fn all_pass(&self) -> bool {
        self.status.iter().all(|&s| s)
    }

    fn from_columns(
        kind: ProductKind,
        transform: Vec<Rat>,
        combinatorial: Vec<Rat>,
        matrix: Vec<BigInt>,
        brute_force: Vec<BigInt>,
    ) -> Self {
        let max_n = transform.len();
        let status = (0..max_n)
            .map(|i| {
                let m = Rat::from_integer(matrix[i].clone());
                let b = Rat::from_integer(brute_force[i].clone());
                transform[i] == combinatorial[i] && transform[i] == m && transform[i] == b
            })
            .collect();
        VerifyReport {
            kind,
            max_n,
            transform,
            combinatorial,
            matrix,
            brute_force,
            status,
        }
    }
}

/// Signature shared by the five convolution operations.
pub type ConvFn = fn(&Dist, &Dist, usize, Method) -> ConvResult;

/// The convolution a product kind realizes, if any.
fn convolution_for(kind: ProductKind) -> Option<ConvFn> {
    match kind {
        ProductKind::CombLoop => Some(monotone_mult),
        ProductKind::StarLoop => Some(boolean_mult),
        ProductKind::OrthoLoop => Some(orthogonal_mult),
        ProductKind::SfreeLoop => Some(sfree_mult),
        ProductKind::Free => Some(free_mult),
        ProductKind::Comb | ProductKind::Star | ProductKind::Ortho => None,
    }
}

/// Builds the product of the factors (ball radius `max_n` for the infinite
/// kinds), convolves the factors' spectral distributions along both paths,
/// counts d-walks on the product along both routes, and reports per-order
/// agreement.
pub fn verify_product(
    kind: ProductKind,
    g1: &ColoredRootedGraph,
    g2: &ColoredRootedGraph,
    max_n: usize,
) -> Result<VerifyReport> {
    assert!(max_n >= 1, "verification needs at least order 1");
    let conv = convolution_for(kind).ok_or_else(|| Error::KindNotVerifiable {
        kind: kind.as_str().to_string(),
    })?;

    let radius = kind.needs_radius().then_some(max_n);
    let prod = product(kind, g1, g2, radius)?;

    let dist = |g: &ColoredRootedGraph| {
        let moments = walks::spectral_moments(g, max_n)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        Dist::new(moments).expect("max_n is at least one")
    };
    let mu1 = dist(g1);
    let mu2 = dist(g2);

    let transform = conv(&mu1, &mu2, max_n, Method::Transform).first_return;
    let combinatorial = conv(&mu1, &mu2, max_n, Method::Combinatorial).first_return;
    let matrix = walks::dwalk_counts_matrix(&prod, max_n);
    let brute_force = walks::dwalk_counts_bruteforce(&prod, max_n);

    Ok(VerifyReport::from_columns(
        kind,
        transform,
        combinatorial,
        matrix,
        brute_force,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn fig_g1() -> ColoredRootedGraph {
        ColoredRootedGraph::from_parts(
            &["e", "x", "x'"],
            0,
            &[(0, 0, 1, 1), (0, 1, 1, 1), (1, 2, 1, 1)],
        )
        .unwrap()
    }

    fn fig_g2() -> ColoredRootedGraph {
        ColoredRootedGraph::from_parts(
            &["f", "y", "u", "v"],
            0,
            &[(0, 0, 1, 1), (0, 1, 1, 1), (1, 2, 1, 1), (1, 3, 1, 1)],
        )
        .unwrap()
    }

    fn h1() -> ColoredRootedGraph {
        ColoredRootedGraph::from_parts(
            &["e", "a", "b"],
            0,
            &[(0, 0, 1, 1), (0, 1, 1, 1), (0, 2, 1, 1)],
        )
        .unwrap()
    }

    fn h2() -> ColoredRootedGraph {
        ColoredRootedGraph::from_parts(&["c", "l", "r"], 0, &[(0, 1, 1, 1), (0, 2, 1, 1)]).unwrap()
    }

    #[test]
    fn comb_loop_pipeline_agrees() {
        let r = verify_product(ProductKind::CombLoop, &fig_g1(), &fig_g2(), 4).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.transform, vec![int(1), int(2), int(2), int(4)]);
    }

    #[test]
    fn free_pipeline_agrees() {
        let r = verify_product(ProductKind::Free, &h1(), &h2(), 4).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.transform, vec![int(0), int(2), int(0), int(16)]);
    }

    #[test]
    fn sfree_pipeline_agrees() {
        let r = verify_product(ProductKind::SfreeLoop, &h1(), &h2(), 4).unwrap();
        assert!(r.all_pass());
        assert_eq!(r.transform, vec![int(1), int(0), int(4), int(0)]);
    }

    #[test]
    fn plain_products_are_not_verifiable() {
        assert!(matches!(
            verify_product(ProductKind::Comb, &fig_g1(), &fig_g2(), 4),
            Err(Error::KindNotVerifiable { .. })
        ));
    }

    #[test]
    fn mismatched_columns_fail() {
        let mut r = verify_product(ProductKind::OrthoLoop, &fig_g1(), &fig_g2(), 4).unwrap();
        assert!(r.all_pass());
        r.matrix[2] += 1;
        let broken = VerifyReport::from_columns(
            r.kind,
            r.transform.clone(),
            r.combinatorial.clone(),
            r.matrix.clone(),
            r.brute_force.clone(),
        );
        assert!(!broken.all_pass());
        assert_eq!(broken.status, vec![true, true, false, true]);
    }
}
