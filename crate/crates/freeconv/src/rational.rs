//! Exact rational scalars and their `"p/q"` text form.
//!
//! Every coefficient in this crate is a [`Rat`]: a ratio of arbitrary-precision
//! integers. The text form is `"p/q"` with the fraction reduced and `q > 0`;
//! integers omit the `/q` part.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number.
pub type Rat = BigRational;

/// Builds `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as an exact rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` into a reduced rational with positive denominator.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let bad = || Error::InvalidRational {
        literal: s.to_string(),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience: `a^n` for a rational base and nonnegative integer exponent.
pub fn pow(a: &Rat, n: usize) -> Rat {
    let mut out = Rat::one();
    for _ in 0..n {
        out *= a;
    }
    out
}

/// True if the rational is negative (used when reporting Jacobi positivity).
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
