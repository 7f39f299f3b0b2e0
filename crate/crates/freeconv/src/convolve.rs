//! The five multiplicative convolutions on truncated moment data, each with a
//! transform path and an independent combinatorial-sum path.
//!
//! Writing `N_mu(n)` for the first-return moments (coefficients of `eta_mu`):
//!
//! * monotone: `eta = eta_1 ∘ eta_2`
//! * boolean: `rho = rho_1 · rho_2`
//! * orthogonal: `rho = rho_1 ∘ eta_2`
//! * s-free: the stabilized limit of the alternating orthogonal iteration
//! * free: monotone composition with the s-free convolution of the swapped
//!   pair, with the S-transform product law as an external cross-check
//!
//! The combinatorial path expands the same identities as explicit sums over
//! integer compositions and never touches series algebra, so the two paths
//! check each other.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{pow, Rat};
use crate::series::{rho_from_eta, Dist, FormalSeries};

/// Which computation path a convolution should take.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Method {
    /// Series algebra on the transforms (the default).
    #[default]
    Transform,
    /// Explicit sums over integer compositions of first-return moments.
    Combinatorial,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Transform => "transform",
            Method::Combinatorial => "combinatorial",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transform" => Ok(Method::Transform),
            "combinatorial" => Ok(Method::Combinatorial),
            _ => Err(Error::UnknownToken {
                what: "method",
                token: s.to_string(),
                expected: "transform, combinatorial",
            }),
        }
    }
}

/// The outcome of a convolution: the moment sequence together with its
/// first-return moments and the path that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvResult {
    pub dist: Dist,
    pub first_return: Vec<Rat>,
    pub method: Method,
}

impl ConvResult {
    fn from_eta(eta: &FormalSeries, method: Method) -> Self {
        let dist = Dist::from_eta(eta).expect("convolution eta has zero constant term");
        ConvResult {
            first_return: eta.tail(),
            dist,
            method,
        }
    }

    fn from_first_return(first_return: Vec<Rat>, method: Method) -> Self {
        let order = first_return.len();
        let eta = FormalSeries::from_low(1, first_return.clone(), order);
        let dist = Dist::from_eta(&eta).expect("eta built with zero constant term");
        ConvResult {
            dist,
            first_return,
            method,
        }
    }
}

fn check_orders(mu1: &Dist, mu2: &Dist, order: usize) {
    assert!(order >= 1, "convolution order must be at least 1");
    assert!(
        mu1.order() >= order && mu2.order() >= order,
        "inputs must carry at least {order} moments (have {} and {})",
        mu1.order(),
        mu2.order()
    );
}

/// Sum over all compositions of `total` into exactly `parts` positive
/// integers of the products `weights[k_1] ... weights[k_parts]` (weights are
/// 1-based: `weights[0]` is the weight of part size 1).
fn composition_sum(total: usize, parts: usize, weights: &[Rat]) -> Rat {
    if parts == 0 {
        return if total == 0 { Rat::one() } else { Rat::zero() };
    }
    if total < parts {
        return Rat::zero();
    }
    let mut acc = Rat::zero();
    for first in 1..=(total - parts + 1) {
        let w = &weights[first - 1];
        if w.is_zero() {
            continue;
        }
        acc += w * composition_sum(total - first, parts - 1, weights);
    }
    acc
}

/// Monotone multiplicative convolution: `eta = eta_1 ∘ eta_2`.
///
/// The combinatorial path sums `N_1(r)` times products of `N_2` over all
/// compositions of `n` into `r` positive parts.
pub fn monotone_mult(mu1: &Dist, mu2: &Dist, order: usize, method: Method) -> ConvResult {
    check_orders(mu1, mu2, order);
    let (mu1, mu2) = (mu1.truncated(order), mu2.truncated(order));
    match method {
        Method::Transform => {
            let eta = mu1
                .eta()
                .compose(&mu2.eta())
                .expect("eta has zero constant term");
            ConvResult::from_eta(&eta, method)
        }
        Method::Combinatorial => {
            let n1 = mu1.first_return();
            let n2 = mu2.first_return();
            let fr = (1..=order)
                .map(|n| {
                    (1..=n)
                        .map(|r| &n1[r - 1] * composition_sum(n, r, &n2))
                        .sum()
                })
                .collect();
            ConvResult::from_first_return(fr, method)
        }
    }
}

/// Boolean multiplicative convolution: `rho = rho_1 · rho_2`.
///
/// The combinatorial path is `N(n) = sum_{j+k=n+1} N_1(j) N_2(k)`.
pub fn boolean_mult(mu1: &Dist, mu2: &Dist, order: usize, method: Method) -> ConvResult {
    check_orders(mu1, mu2, order);
    let (mu1, mu2) = (mu1.truncated(order), mu2.truncated(order));
    match method {
        Method::Transform => {
            let rho1 = rho_from_eta(&mu1.eta()).expect("eta has zero constant term");
            let rho2 = rho_from_eta(&mu2.eta()).expect("eta has zero constant term");
            ConvResult::from_eta(&rho1.mul(&rho2).shift_up(1), method)
        }
        Method::Combinatorial => {
            let n1 = mu1.first_return();
            let n2 = mu2.first_return();
            let fr = (1..=order)
                .map(|n| (1..=n).map(|j| &n1[j - 1] * &n2[n - j]).sum())
                .collect();
            ConvResult::from_first_return(fr, method)
        }
    }
}

/// Orthogonal multiplicative convolution: `rho = rho_1 ∘ eta_2`.
///
/// This form is total: when `eta_2` vanishes identically it degenerates to
/// `eta(z) = m_1(mu_1) z`, the point mass at the first moment. The
/// combinatorial path sums `N_1(m)` times products of `N_2` over compositions
/// of `n - 1` into `m - 1` positive parts.
pub fn orthogonal_mult(mu1: &Dist, mu2: &Dist, order: usize, method: Method) -> ConvResult {
    check_orders(mu1, mu2, order);
    let (mu1, mu2) = (mu1.truncated(order), mu2.truncated(order));
    match method {
        Method::Transform => {
            let rho1 = rho_from_eta(&mu1.eta()).expect("eta has zero constant term");
            let composed = rho1
                .compose(&mu2.eta())
                .expect("eta has zero constant term");
            ConvResult::from_eta(&composed.shift_up(1), method)
        }
        Method::Combinatorial => {
            let n1 = mu1.first_return();
            let n2 = mu2.first_return();
            let fr = (1..=order)
                .map(|n| {
                    (1..=n)
                        .map(|m| &n1[m - 1] * composition_sum(n - 1, m - 1, &n2))
                        .sum()
                })
                .collect();
            ConvResult::from_first_return(fr, method)
        }
    }
}

/// The alternating orthogonal iteration: step 1 is `mu1 ∠ mu2`, and step `n`
/// is `mu1 ∠ (step n-1 of the swapped pair)`. Coefficient `m` of the result
/// is final once `n >= m`.
pub fn orthogonal_iterate(
    mu1: &Dist,
    mu2: &Dist,
    n: usize,
    order: usize,
    method: Method,
) -> ConvResult {
    assert!(n >= 1, "the iteration starts at n = 1");
    check_orders(mu1, mu2, order);
    if n == 1 {
        orthogonal_mult(mu1, mu2, order, method)
    } else {
        let inner = orthogonal_iterate(mu2, mu1, n - 1, order, method);
        orthogonal_mult(mu1, &inner.dist, order, method)
    }
}

/// S-free multiplicative convolution, computed as the stabilized limit of the
/// orthogonal iteration: `order` steps pin every stored coefficient.
///
/// Point-mass-at-zero rules: if `mu2` has all moments zero the result is the
/// point mass at `m_1(mu1)`; if `mu1` does, the result is the point mass at
/// zero. The result is the fixed point of `sigma = mu1 ∠ sigma'` with
/// `sigma'` the swapped convolution.
pub fn sfree_mult(mu1: &Dist, mu2: &Dist, order: usize, method: Method) -> ConvResult {
    check_orders(mu1, mu2, order);
    if mu1.is_dirac_zero() {
        let eta = FormalSeries::zero(order);
        return ConvResult::from_eta(&eta, method);
    }
    if mu2.is_dirac_zero() {
        let dirac = Dist::dirac(mu1.moment(1), order);
        let first_return = dirac.first_return();
        return ConvResult {
            dist: dirac,
            first_return,
            method,
        };
    }
    orthogonal_iterate(mu1, mu2, order, order, method)
}

/// Free multiplicative convolution, decomposed as the monotone convolution of
/// `mu1` with the s-free convolution of the swapped pair. If either input has
/// all moments zero the result is the point mass at zero. When both first
/// moments are nonzero the S-transform of the result is the product of the
/// inputs' S-transforms.
pub fn free_mult(mu1: &Dist, mu2: &Dist, order: usize, method: Method) -> ConvResult {
    check_orders(mu1, mu2, order);
    if mu1.is_dirac_zero() || mu2.is_dirac_zero() {
        return ConvResult::from_eta(&FormalSeries::zero(order), method);
    }
    let sigma2 = sfree_mult(mu2, mu1, order, method);
    monotone_mult(mu1, &sigma2.dist, order, method)
}

/// Dilation: `m_n` becomes `a^n m_n`, so `eta` becomes `eta(az)`.
pub fn dilate(mu: &Dist, a: &Rat) -> Dist {
    let moments = mu
        .moments()
        .iter()
        .enumerate()
        .map(|(i, m)| m * pow(a, i + 1))
        .collect();
    Dist::new(moments).expect("input carries at least one moment")
}

/// Dilation by `a` with the first-return series rescaled by `1/a`:
/// `eta(z)` becomes `eta(az)/a`. This is the result of the s-free convolution
/// with the point mass at `a` on the right. Fails for `a = 0`.
pub fn scaled_dilation(mu: &Dist, a: &Rat) -> Result<Dist> {
    if a.is_zero() {
        return Err(Error::ZeroScale);
    }
    let eta = dilate(mu, a).eta().scale(&(Rat::one() / a));
    Dist::from_eta(&eta)
}
