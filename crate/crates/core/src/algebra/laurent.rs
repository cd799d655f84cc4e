use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, Ring};

/// A Laurent polynomial in `L^{1/2}`, keyed by doubled exponent.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentHalf {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentHalf {
    pub fn zero() -> Self {
        LaurentHalf::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// `c * L^{e2/2}`.
    pub fn monomial(e2: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(e2, c);
        }
        LaurentHalf { terms }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// Coefficient of `L^{e2/2}`.
    pub fn coeff(&self, e2: i64) -> Rational {
        self.terms.get(&e2).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms as `(doubled exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e2: i64, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(e2).or_insert_with(Rational::zero);
        *entry += c;
        if Zero::is_zero(entry) {
            self.terms.remove(&e2);
        }
    }

    /// Substitute `L^{1/2} -> a`, for any ring element `a` with an inverse
    /// available when negative exponents occur.
    pub fn evaluate<R: Ring>(&self, lhalf: &R) -> Option<R> {
        let mut acc = lhalf.zero_like();
        for (e, c) in self.terms() {
            acc = acc.add(&lhalf.pow_i64(e)?.scale(c));
        }
        Some(acc)
    }
}

impl Ring for LaurentHalf {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentHalf { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
    fn scale(&self, c: &Rational) -> Self {
        if Zero::is_zero(c) {
            return Self::zero();
        }
        LaurentHalf { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }
    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Self::monomial(-e, c.recip()))
    }
}

impl fmt::Debug for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let pow = if e % 2 == 0 {
                format!("L^{}", e / 2)
            } else {
                format!("L^({e}/2)")
            };
            match (e, One::is_one(c)) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => write!(f, "{pow}")?,
                _ => write!(f, "{c}*{pow}")?,
            }
        }
        Ok(())
    }
}
