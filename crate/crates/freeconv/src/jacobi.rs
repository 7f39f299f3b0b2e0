//! Jacobi parameters: the continued-fraction form of the first-return series
//! and its extraction from moments.
//!
//! A pair of coefficient sequences `(alpha, omega)` encodes
//!
//! ```text
//! eta(z) = alpha_0 z + omega_0 z^2 / (1 - alpha_1 z - omega_1 z^2 / (1 - ...))
//! ```
//!
//! Level `k` first contributes at degree `2k + 1` (alpha) and `2k + 2`
//! (omega), so `ceil(N/2)` levels determine the expansion to order `N`. When
//! some `omega_k` vanishes the fraction terminates and deeper levels are
//! irrelevant; the canonical form stores zeros there. Extraction from moments
//! runs the classical three-term orthogonalization recursion with exact
//! rational arithmetic.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::series::{Dist, FormalSeries};

/// Coefficients of the continued-fraction form of a first-return series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiParams {
    alpha: Vec<Rat>,
    omega: Vec<Rat>,
}

impl JacobiParams {
    /// Wraps the two coefficient sequences in canonical form: once some
    /// `omega_k` is zero, every deeper entry is stored as zero.
    pub fn new(mut alpha: Vec<Rat>, mut omega: Vec<Rat>) -> Self {
        if let Some(k) = omega.iter().position(|w| w.is_zero()) {
            for w in omega[k..].iter_mut() {
                *w = Rat::zero();
            }
            for a in alpha[k + 1..].iter_mut() {
                *a = Rat::zero();
            }
        }
        JacobiParams { alpha, omega }
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn omega(&self) -> &[Rat] {
        &self.omega
    }

    fn alpha_at(&self, k: usize) -> Rat {
        self.alpha.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    fn omega_at(&self, k: usize) -> Rat {
        self.omega.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    /// Expands the continued fraction to a first-return series of the given
    /// order. Missing tail levels are treated as zeros; levels beyond
    /// `ceil(order/2)` cannot influence the result.
    pub fn eta(&self, order: usize) -> FormalSeries {
        assert!(order >= 1, "series order must be at least 1");
        let levels = order / 2 + 1;
        // Bottom-up: tail(k) = 1 - alpha_k z - omega_k z^2 / tail(k+1).
        let mut tail = FormalSeries::one(order);
        for k in (1..levels).rev() {
            let mut t = FormalSeries::one(order);
            t = t.sub(&FormalSeries::monomial(self.alpha_at(k), 1, order));
            let w = self.omega_at(k);
            if !w.is_zero() {
                let frac = FormalSeries::monomial(w, 2, order)
                    .div(&tail)
                    .expect("tail is a unit");
                t = t.sub(&frac);
            }
            tail = t;
        }
        let mut eta = FormalSeries::monomial(self.alpha_at(0), 1, order);
        let w0 = self.omega_at(0);
        if !w0.is_zero() {
            let frac = FormalSeries::monomial(w0, 2, order)
                .div(&tail)
                .expect("tail is a unit");
            eta = eta.add(&frac);
        }
        eta
    }

    /// Extracts Jacobi parameters from a moment sequence by the three-term
    /// orthogonalization recursion, so that [`JacobiParams::eta`] reproduces
    /// the first-return series exactly at `order`.
    ///
    /// The recursion terminates early when the squared norm of an orthogonal
    /// polynomial vanishes; if the remaining moments are inconsistent with
    /// that termination the sequence is not quasi-definite and an error is
    /// returned.
    pub fn from_moments(mu: &Dist, order: usize) -> Result<Self> {
        assert!(order >= 1, "order must be at least 1");
        assert!(
            mu.order() >= order,
            "input must carry at least {order} moments"
        );
        let mu = mu.truncated(order);
        let n_alpha = order.div_ceil(2);
        let n_omega = order / 2;

        // Moment functional on polynomials of degree <= order.
        let lf = |p: &[Rat]| -> Rat {
            let mut s = Rat::zero();
            for (k, c) in p.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                s += if k == 0 { c.clone() } else { c * mu.moment(k) };
            }
            s
        };
        let mul = |a: &[Rat], b: &[Rat]| -> Vec<Rat> {
            let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
            for (i, ai) in a.iter().enumerate() {
                for (j, bj) in b.iter().enumerate() {
                    out[i + j] += ai * bj;
                }
            }
            out
        };

        let mut alpha = vec![Rat::zero(); n_alpha];
        let mut omega = vec![Rat::zero(); n_omega];
        let mut p_prev: Vec<Rat> = Vec::new(); // p_{k-1}
        let mut p = vec![Rat::one()]; // p_k, monic of degree k
        let mut s = Rat::one(); // L[p_k^2]
        let mut terminated = false;

        for k in 0..n_alpha {
            if terminated {
                break;
            }
            let p_sq = mul(&p, &p);
            // alpha_k = L[x p_k^2] / L[p_k^2]
            let mut x_p_sq = vec![Rat::zero()];
            x_p_sq.extend(p_sq.iter().cloned());
            alpha[k] = lf(&x_p_sq) / &s;

            if k < n_omega {
                // p_{k+1} = (x - alpha_k) p_k - omega_{k-1} p_{k-1}
                let mut next = vec![Rat::zero()];
                next.extend(p.iter().cloned());
                for (i, c) in p.iter().enumerate() {
                    next[i] -= &alpha[k] * c;
                }
                if k > 0 {
                    for (i, c) in p_prev.iter().enumerate() {
                        next[i] -= &omega[k - 1] * c;
                    }
                }
                let s_next = lf(&mul(&next, &next));
                if s_next.is_zero() {
                    terminated = true;
                } else {
                    omega[k] = &s_next / &s;
                    s = s_next;
                    p_prev = std::mem::replace(&mut p, next);
                }
            }
        }

        let params = JacobiParams::new(alpha, omega);
        // A terminating fraction must reproduce every stored moment; a moment
        // sequence that forces division by zero midway without doing so has
        // no Jacobi representation.
        if params.eta(order) == mu.eta() {
            Ok(params)
        } else {
            Err(Error::NonQuasiDefinite)
        }
    }

    /// Jacobi parameters of the rescaled dilation by `a`: `alpha_0` is
    /// unchanged, `omega_0` picks up a factor `a`, and every deeper level
    /// scales as `alpha_k a`, `omega_k a^2`. Fails for `a = 0`.
    pub fn scaled_dilation(&self, a: &Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroScale);
        }
        let alpha = self
            .alpha
            .iter()
            .enumerate()
            .map(|(k, x)| if k == 0 { x.clone() } else { x * a })
            .collect();
        let a2 = a * a;
        let omega = self
            .omega
            .iter()
            .enumerate()
            .map(|(k, w)| if k == 0 { w * a } else { w * &a2 })
            .collect();
        Ok(JacobiParams::new(alpha, omega))
    }

    /// Indices `k` with `omega_k < 0`, reported so callers can tell when the
    /// parameters cannot come from a positive measure. Nothing is enforced.
    pub fn negative_omega_levels(&self) -> Vec<usize> {
        self.omega
            .iter()
            .enumerate()
            .filter(|(_, w)| crate::rational::is_negative(w))
            .map(|(k, _)| k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolve::{orthogonal_mult, scaled_dilation, Method};
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn rats(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn terminating_fraction_is_point_mass() {
        let j = JacobiParams::new(vec![rat(5, 3)], vec![]);
        assert_eq!(j.eta(4), Dist::dirac(&rat(5, 3), 4).eta());
    }

    #[test]
    fn two_level_fraction_expands_to_bernoulli_convolution() {
        let j = JacobiParams::new(rats(&[(1, 2), (5, 6)]), rats(&[(1, 12)]));
        assert_eq!(
            j.eta(4).tail(),
            rats(&[(1, 2), (1, 12), (5, 72), (25, 432)])
        );
    }

    #[test]
    fn all_omega_one_gives_catalan_pattern() {
        let j = JacobiParams::new(vec![Rat::zero(); 4], vec![Rat::one(); 4]);
        assert_eq!(
            j.eta(8).tail(),
            rats(&[
                (0, 1),
                (1, 1),
                (0, 1),
                (1, 1),
                (0, 1),
                (2, 1),
                (0, 1),
                (5, 1)
            ])
        );
    }

    #[test]
    fn from_moments_of_point_mass() {
        let a = rat(-7, 3);
        let j = JacobiParams::from_moments(&Dist::dirac(&a, 4), 4).unwrap();
        assert_eq!(j.alpha(), &[a, int(0)]);
        assert_eq!(j.omega(), &[int(0), int(0)]);
    }

    #[test]
    fn from_moments_of_symmetric_bernoulli() {
        let bern = Dist::new(vec![rat(1, 2); 4]).unwrap();
        let j = JacobiParams::from_moments(&bern, 4).unwrap();
        assert_eq!(j.alpha(), &rats(&[(1, 2), (1, 2)])[..]);
        assert_eq!(j.omega(), &rats(&[(1, 4), (0, 1)])[..]);
    }

    #[test]
    fn from_moments_of_orthogonal_bernoulli_convolution() {
        let bern_half = Dist::new(vec![rat(1, 2); 4]).unwrap();
        let bern_third = Dist::new(vec![rat(1, 3); 4]).unwrap();
        let conv = orthogonal_mult(&bern_half, &bern_third, 4, Method::Transform);
        let j = JacobiParams::from_moments(&conv.dist, 4).unwrap();
        assert_eq!(j.alpha(), &rats(&[(1, 2), (5, 6)])[..]);
        assert_eq!(j.omega(), &rats(&[(1, 12), (0, 1)])[..]);
        assert_eq!(j.eta(4), conv.dist.eta());
    }

    #[test]
    fn from_moments_rejects_non_quasi_definite() {
        let mu = Dist::new(rats(&[(0, 1), (0, 1), (1, 1), (0, 1)])).unwrap();
        assert!(matches!(
            JacobiParams::from_moments(&mu, 4),
            Err(Error::NonQuasiDefinite)
        ));
    }

    #[test]
    fn scaled_dilation_identity_and_point_mass() {
        let j = JacobiParams::new(rats(&[(1, 2), (5, 6)]), rats(&[(1, 12)]));
        assert_eq!(j.scaled_dilation(&int(1)).unwrap(), j);
        let b = rat(9, 4);
        let jp = JacobiParams::new(vec![b.clone()], vec![]);
        let scaled = jp.scaled_dilation(&rat(-3, 5)).unwrap();
        assert_eq!(scaled.alpha(), &[b]);
        assert!(matches!(j.scaled_dilation(&int(0)), Err(Error::ZeroScale)));
    }

    #[test]
    fn scaled_dilation_matches_moment_level() {
        let mu = Dist::new(rats(&[(1, 2), (3, 4), (1, 1), (5, 2), (0, 1), (7, 3)])).unwrap();
        let a = rat(2, 7);
        let j = JacobiParams::from_moments(&mu, 6).unwrap();
        let expected = scaled_dilation(&mu, &a).unwrap().eta();
        assert_eq!(j.scaled_dilation(&a).unwrap().eta(6), expected);
    }

    #[test]
    fn canonical_form_zeroes_past_termination() {
        let j = JacobiParams::new(
            rats(&[(1, 1), (2, 1), (3, 1)]),
            rats(&[(1, 1), (0, 1), (5, 1)]),
        );
        assert_eq!(j.alpha(), &rats(&[(1, 1), (2, 1), (0, 1)])[..]);
        assert_eq!(j.omega(), &rats(&[(1, 1), (0, 1), (0, 1)])[..]);
    }

    #[test]
    fn negative_omega_is_reported_not_rejected() {
        // Alternating signs in the moments force a negative level; the
        // extraction still succeeds and still roundtrips.
        let mu = Dist::new(rats(&[(0, 1), (-1, 1), (0, 1), (-2, 1)])).unwrap();
        let j = JacobiParams::from_moments(&mu, 4).unwrap();
        assert_eq!(j.negative_omega_levels(), vec![0]);
        assert_eq!(j.eta(4), mu.eta());
        let ok = JacobiParams::new(rats(&[(1, 2), (5, 6)]), rats(&[(1, 12)]));
        assert!(ok.negative_omega_levels().is_empty());
    }

    #[test]
    fn deep_levels_do_not_reach_low_orders() {
        // Levels 0..ceil(N/2) determine the order-N expansion; perturbing any
        // deeper level leaves it untouched.
        let base = JacobiParams::new(vec![Rat::one(); 6], vec![Rat::one(); 6]);
        let n = 6usize;
        let keep = n.div_ceil(2);
        for k in keep..6 {
            let mut alpha = base.alpha().to_vec();
            alpha[k] += int(3);
            let mut omega = base.omega().to_vec();
            omega[k] += int(5);
            let perturbed = JacobiParams::new(alpha, omega);
            assert_eq!(perturbed.eta(n), base.eta(n), "level {k}");
        }
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    fn nonzero_rat() -> impl Strategy<Value = Rat> {
        (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn eta_roundtrips_through_moment_extraction(
            alpha in prop::collection::vec(small_rat(), 3),
            omega in prop::collection::vec(nonzero_rat(), 3),
        ) {
            let j = JacobiParams::new(alpha, omega);
            let order = 6;
            let mu = Dist::from_eta(&j.eta(order)).unwrap();
            let back = JacobiParams::from_moments(&mu, order).unwrap();
            prop_assert_eq!(back.eta(order), mu.eta());
        }

        #[test]
        fn moment_extraction_roundtrips_on_random_moments(
            m in prop::collection::vec(small_rat(), 6),
        ) {
            let mu = Dist::new(m).unwrap();
            // Extraction either succeeds and reproduces eta exactly, or
            // reports a non-quasi-definite sequence.
            match JacobiParams::from_moments(&mu, 6) {
                Ok(j) => prop_assert_eq!(j.eta(6), mu.eta()),
                Err(Error::NonQuasiDefinite) => {}
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error {e}"))),
            }
        }

        #[test]
        fn scaled_dilation_consistent_across_modules(
            alpha in prop::collection::vec(small_rat(), 2),
            omega in prop::collection::vec(nonzero_rat(), 2),
            a in nonzero_rat(),
        ) {
            let j = JacobiParams::new(alpha, omega);
            let order = 4;
            let mu = Dist::from_eta(&j.eta(order)).unwrap();
            let lhs = j.scaled_dilation(&a).unwrap().eta(order);
            let rhs = scaled_dilation(&mu, &a).unwrap().eta();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
