//! Exact scalar rings and truncated power series.
//!
//! Every computation in the crate runs over one of the rings defined here:
//! [`Rational`] (arbitrary precision), [`Cyclotomic`] elements of `Q(zeta_m)`,
//! [`LaurentHalf`] polynomials in `L^{1/2}`, and [`TruncatedSeries`] over any
//! of these (including nested series).
//!
//! The [`Ring`] trait is deliberately object-free: elements carry enough
//! context (the cyclotomic order, the series truncation) to build their own
//! zero and one via [`Ring::zero_like`] and [`Ring::one_like`].

mod cyclotomic;
mod laurent;
mod poly;
mod truncated;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_poly, Cyclotomic, CyclotomicField};
pub use laurent::LaurentHalf;
pub use poly::Poly;
pub use truncated::{TruncatedSeries, Var};

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// A commutative ring with exact arithmetic and rational scalars.
///
/// The method names shadow `std::ops`; generic code calls them directly,
/// concrete code uses operators.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication by a rational scalar.
    fn scale(&self, c: &Rational) -> Self;
    /// Multiplicative inverse, if the element is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    /// The image of a rational number in this ring.
    fn from_rational_like(&self, c: &Rational) -> Self {
        self.one_like().scale(c)
    }

    /// Integer power; negative exponents require a unit.
    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }
}

impl Ring for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Shorthand for the rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, `"p"` or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Render a rational as `"num/den"`, or `"num"` when integral.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// `(-1)^e` as a sign.
pub(crate) fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}

/// Exact JSON rendering: rationals become `"num/den"` strings, cyclotomic
/// elements their coefficient vectors in powers of zeta, series their
/// coefficient lists.
pub trait ToJson {
    fn to_json(&self) -> serde_json::Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(fmt_rational(self))
    }
}

impl ToJson for Cyclotomic {
    fn to_json(&self) -> serde_json::Value {
        self.coeffs().iter().map(|c| c.to_json()).collect()
    }
}

impl ToJson for LaurentHalf {
    /// Pairs `[doubled exponent, coefficient]` in ascending exponent order.
    fn to_json(&self) -> serde_json::Value {
        self.terms().map(|(e, c)| serde_json::json!([e, fmt_rational(c)])).collect()
    }
}

impl<R: Ring + ToJson> ToJson for TruncatedSeries<R> {
    fn to_json(&self) -> serde_json::Value {
        self.coeffs().iter().map(|c| c.to_json()).collect()
    }
}
