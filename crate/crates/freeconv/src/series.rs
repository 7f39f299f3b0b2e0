//! Truncated formal power series over exact rationals, moment sequences, and
//! the transform dictionary between them.
//!
//! A [`Dist`] stores the moments `m_1..m_N` of a normalized distribution
//! (`m_0 = 1` is implicit). Its moment generating series is
//! `psi(z) = sum m_n z^n`, and the central transform is
//!
//! ```text
//! eta(z) = psi(z) / (1 + psi(z))
//! ```
//!
//! whose coefficients `N(n)` are the first-return moments. Two further series
//! are derived from it: `rho(z) = eta(z)/z` and the S-transform
//! `S(z) = (1+z) psi^{-1}(z) / z`, where `psi^{-1}` is the compositional
//! inverse. All arithmetic is exact; every series carries its truncation
//! order and binary operations truncate to the minimum.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A truncated formal power series with exact rational coefficients.
///
/// Coefficients of degree `low_degree()..=order()` are stored; anything below
/// is zero and anything above is unknown. The representation is canonical:
/// the first stored coefficient is nonzero (the valuation), so structural
/// equality is coefficientwise equality at equal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    low: usize,
    coeffs: Vec<Rat>,
    order: usize,
}

impl FormalSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        FormalSeries {
            low: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    /// Builds a series from dense coefficients for degrees `0..coeffs.len()`.
    /// Degrees past the end of `coeffs` (up to `order`) are zero.
    pub fn from_dense(mut coeffs: Vec<Rat>, order: usize) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "dense coefficient list longer than truncation order allows"
        );
        coeffs.resize(order + 1, Rat::zero());
        let low = match coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => v,
            None => return Self::zero(order),
        };
        FormalSeries {
            low,
            coeffs: coeffs.split_off(low),
            order,
        }
    }

    /// Builds a series from coefficients for degrees `low..low + coeffs.len()`.
    pub fn from_low(low: usize, coeffs: Vec<Rat>, order: usize) -> Self {
        let mut dense = vec![Rat::zero(); low];
        dense.extend(coeffs);
        Self::from_dense(dense, order)
    }

    /// The monomial `c z^degree` truncated at `order`.
    pub fn monomial(c: Rat, degree: usize, order: usize) -> Self {
        assert!(degree <= order, "monomial degree beyond truncation order");
        Self::from_low(degree, vec![c], order)
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::monomial(Rat::one(), 0, order)
    }

    /// The identity series `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(Rat::one(), 1, order)
    }

    /// Truncation order: coefficients above it are unknown.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Degree of the lowest nonzero coefficient, or `None` for the zero series.
    pub fn low_degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }

    /// True if every retained coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^degree`. Panics above the truncation order, where the
    /// coefficient is unknown rather than zero.
    pub fn coeff(&self, degree: usize) -> Rat {
        assert!(
            degree <= self.order,
            "coefficient of degree {degree} beyond truncation order {}",
            self.order
        );
        if degree < self.low {
            Rat::zero()
        } else {
            self.coeffs[degree - self.low].clone()
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0)
    }

    /// Dense coefficients for degrees `0..=order`.
    pub fn dense(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[self.low + i] = c.clone();
        }
        out
    }

    /// Coefficients for degrees `1..=order` (the first-return layout).
    pub fn tail(&self) -> Vec<Rat> {
        (1..=self.order).map(|d| self.coeff(d)).collect()
    }

    /// The same series truncated at a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(
            order <= self.order,
            "cannot extend a series past its truncation order"
        );
        let mut dense = self.dense();
        dense.truncate(order + 1);
        Self::from_dense(dense, order)
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_dense(
            self.dense().into_iter().map(|x| x * c).collect(),
            self.order,
        )
    }

    /// Sum, truncated to the smaller order.
    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let a = self.dense();
        let b = other.dense();
        Self::from_dense((0..=order).map(|d| a[d].clone() + &b[d]).collect(), order)
    }

    /// Difference, truncated to the smaller order.
    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let a = self.dense();
        let b = other.dense();
        Self::from_dense((0..=order).map(|d| a[d].clone() - &b[d]).collect(), order)
    }

    /// Product, truncated to the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            let da = self.low + i;
            if da > order || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let d = da + other.low + j;
                if d > order {
                    break;
                }
                out[d] += a * b;
            }
        }
        Self::from_dense(out, order)
    }

    /// Multiplies by `z^k`; the truncation order rises by `k`.
    pub fn shift_up(&self, k: usize) -> Self {
        Self::from_low(self.low + k, self.coeffs.clone(), self.order + k)
    }

    /// Divides by `z^k`; requires every coefficient below degree `k` to
    /// vanish. The truncation order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        assert!(k <= self.order, "shift below truncation order zero");
        if self.is_zero() {
            return Ok(Self::zero(self.order - k));
        }
        if self.low < k {
            return Err(Error::NotDivisible {
                num: self.low,
                den: k,
            });
        }
        Ok(Self::from_low(
            self.low - k,
            self.coeffs.clone(),
            self.order - k,
        ))
    }

    /// Reciprocal of a series with nonzero constant term, at the same order.
    fn inverse_unit(&self) -> Self {
        let c0 = self.constant_term();
        assert!(!c0.is_zero(), "reciprocal of a non-unit series");
        let a = self.dense();
        let mut out = vec![Rat::zero(); self.order + 1];
        out[0] = Rat::one() / &c0;
        for n in 1..=self.order {
            let mut s = Rat::zero();
            for k in 1..=n {
                if !a[k].is_zero() {
                    s += &a[k] * &out[n - k];
                }
            }
            out[n] = -s / &c0;
        }
        Self::from_dense(out, self.order)
    }

    /// Exact quotient of truncated series.
    ///
    /// Common powers of `z` are cancelled first; what remains requires a
    /// divisor with nonzero lowest retained coefficient. The result order is
    /// `min(orders) - valuation(divisor)`.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let v = divisor.low_degree().ok_or(Error::DivisorVanishes)?;
        let order = self.order.min(divisor.order) - v;
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        if self.low < v {
            return Err(Error::NotDivisible {
                num: self.low,
                den: v,
            });
        }
        let num = self.shift_down(v)?.truncate(order);
        let unit = divisor.shift_down(v)?.truncate(order);
        Ok(num.mul(&unit.inverse_unit()))
    }

    /// Composition `self(inner(z))`; `inner` must have zero constant term.
    /// The result is exact to the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order.min(inner.order);
        let f = self.dense();
        let g = inner.truncate(order);
        // Horner from the top coefficient down.
        let mut acc = Self::zero(order);
        for k in (0..=order).rev() {
            acc = acc.mul(&g);
            if !f[k].is_zero() {
                acc = acc.add(&Self::monomial(f[k].clone(), 0, order));
            }
        }
        Ok(acc)
    }

    /// Compositional inverse: the series `g` with `self(g(z)) = z` up to
    /// `order`. Requires zero constant term and nonzero linear coefficient;
    /// solved coefficient by coefficient from the triangular system.
    pub fn compositional_inverse(&self, order: usize) -> Result<Self> {
        assert!(
            self.order >= order,
            "series order too small for the requested inverse order"
        );
        if !self.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let f1 = self.coeff(1);
        if f1.is_zero() {
            return Err(Error::ZeroLinearCoefficient);
        }
        let mut g = vec![Rat::zero(); order + 1];
        if order >= 1 {
            g[1] = Rat::one() / &f1;
        }
        for n in 2..=order {
            let gn = Self::from_dense(g[..=n].to_vec(), n);
            let c = self.truncate(n).compose(&gn)?.coeff(n);
            g[n] = -c / &f1;
        }
        Ok(Self::from_dense(g, order))
    }
}

/// A normalized distribution known through its moments `m_1..m_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dist {
    moments: Vec<Rat>,
}

impl Dist {
    /// Wraps a moment sequence; at least one moment is required.
    pub fn new(moments: Vec<Rat>) -> Result<Self> {
        if moments.is_empty() {
            return Err(Error::EmptyMoments);
        }
        Ok(Dist { moments })
    }

    /// The point mass at `a`: `m_n = a^n`.
    pub fn dirac(a: &Rat, order: usize) -> Self {
        let mut m = Vec::with_capacity(order);
        let mut p = Rat::one();
        for _ in 0..order {
            p *= a;
            m.push(p.clone());
        }
        Dist::new(m).expect("order is at least one")
    }

    /// The point mass at zero: all moments vanish.
    pub fn dirac_zero(order: usize) -> Self {
        Dist::new(vec![Rat::zero(); order]).expect("order is at least one")
    }

    /// True if every stored moment vanishes. At the truncated level this is
    /// the only sense in which a distribution "is" the point mass at zero.
    pub fn is_dirac_zero(&self) -> bool {
        self.moments.iter().all(|m| m.is_zero())
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.moments.len()
    }

    /// All stored moments `m_1..m_N`.
    pub fn moments(&self) -> &[Rat] {
        &self.moments
    }

    /// The `n`-th moment, `1 <= n <= order`.
    pub fn moment(&self, n: usize) -> &Rat {
        assert!(
            n >= 1 && n <= self.moments.len(),
            "moment index {n} out of range"
        );
        &self.moments[n - 1]
    }

    /// The same distribution at a smaller order.
    pub fn truncated(&self, order: usize) -> Self {
        assert!(
            order >= 1 && order <= self.order(),
            "cannot extend a moment sequence past its stored order"
        );
        Dist::new(self.moments[..order].to_vec()).expect("order is at least one")
    }

    /// True if the two distributions agree coefficientwise up to `order`.
    pub fn agrees_with(&self, other: &Self, order: usize) -> bool {
        assert!(order <= self.order() && order <= other.order());
        self.moments[..order] == other.moments[..order]
    }

    /// Moment generating series `psi(z) = sum_{n>=1} m_n z^n`.
    pub fn psi(&self) -> FormalSeries {
        FormalSeries::from_low(1, self.moments.clone(), self.order())
    }

    /// First-return series `eta = psi / (1 + psi)`; zero constant term.
    pub fn eta(&self) -> FormalSeries {
        let psi = self.psi();
        let denom = FormalSeries::one(self.order()).add(&psi);
        psi.div(&denom).expect("1 + psi is a unit")
    }

    /// First-return moments `N(1)..N(N)`, the coefficients of `eta`.
    pub fn first_return(&self) -> Vec<Rat> {
        self.eta().tail()
    }

    /// Recovers moments from a first-return series via `psi = eta/(1 - eta)`;
    /// the exact left inverse of [`Dist::eta`] at the series' order.
    pub fn from_eta(eta: &FormalSeries) -> Result<Self> {
        if !eta.constant_term().is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let denom = FormalSeries::one(eta.order()).sub(eta);
        let psi = eta.div(&denom).expect("1 - eta is a unit");
        Dist::new(psi.tail())
    }

    /// S-transform `S(z) = (1+z) psi^{-1}(z) / z`, truncated at order `N-1`
    /// with constant term `1/m_1`. Fails when the first moment vanishes.
    pub fn s_transform(&self) -> Result<FormalSeries> {
        if self.moment(1).is_zero() {
            return Err(Error::FirstMomentVanishes);
        }
        let n = self.order();
        let inv = self.psi().compositional_inverse(n)?;
        let shifted = inv
            .shift_down(1)
            .expect("compositional inverse has zero constant term");
        let one_plus_z = if n >= 2 {
            FormalSeries::from_dense(vec![Rat::one(), Rat::one()], n - 1)
        } else {
            FormalSeries::one(0)
        };
        Ok(shifted.mul(&one_plus_z))
    }
}

/// The series `rho(z) = eta(z)/z`; its constant term is the first
/// first-return moment. The input must have zero constant term.
pub fn rho_from_eta(eta: &FormalSeries) -> Result<FormalSeries> {
    if !eta.constant_term().is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    eta.shift_down(1)
}
