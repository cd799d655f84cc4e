use std::fmt;

use serde::{Deserialize, Serialize};

use super::{int, Rational, Ring};
use crate::error::{Error, Result};

/// Name of the formal variable of a series.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    P,
    B,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::Q => "q",
            Var::P => "p",
            Var::B => "b",
        })
    }
}

/// A power series `c_0 + c_1 x + ... + c_N x^N` known modulo `x^{N+1}`.
///
/// Binary operations on series of different orders truncate to the smaller
/// order. Division never introduces negative powers: inverting a series
/// with a non-unit constant term is an error.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<R> {
    var: Var,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// Series from explicit coefficients `c_0..c_N`; panics if empty.
    pub fn from_coeffs(var: Var, coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize, one: &R) -> Self {
        TruncatedSeries { var, coeffs: vec![one.zero_like(); order + 1] }
    }

    pub fn one(var: Var, order: usize, one: &R) -> Self {
        Self::constant(var, order, one.one_like())
    }

    pub fn constant(var: Var, order: usize, c: R) -> Self {
        let mut s = Self::zero(var, order, &c);
        s.coeffs[0] = c;
        s
    }

    /// `c * x^deg`, or zero when `deg > order`.
    pub fn monomial(var: Var, order: usize, deg: usize, c: R) -> Self {
        let mut s = Self::zero(var, order, &c);
        if deg <= order {
            s.coeffs[deg] = c;
        }
        s
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn constant_term(&self) -> &R {
        &self.coeffs[0]
    }

    pub fn set_coeff(&mut self, n: usize, c: R) {
        self.coeffs[n] = c;
    }

    /// Drop all terms above `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        TruncatedSeries { var: self.var, coeffs: self.coeffs[..=n].to_vec() }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let n = self.order().min(rhs.order());
        let coeffs = (0..=n).map(|i| f(&self.coeffs[i], &rhs.coeffs[i])).collect();
        TruncatedSeries { var: self.var, coeffs }
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        TruncatedSeries { var: self.var, coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Substitute `x -> c x`.
    pub fn scale_var(&self, c: &R) -> Self {
        let mut pow = c.one_like();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            coeffs.push(a.mul(&pow));
            pow = pow.mul(c);
        }
        TruncatedSeries { var: self.var, coeffs }
    }

    /// Substitute `x -> x^k`, keeping the truncation order.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1);
        let order = self.order();
        let mut out = Self::zero(self.var, order, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k > order {
                break;
            }
            out.coeffs[i * k] = a.clone();
        }
        out
    }

    /// Substitute `x -> x^k` and extend the truncation to `order`.
    pub fn dilate_to(&self, k: usize, order: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(self.var, order, &self.coeffs[0]);
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k > order {
                break;
            }
            out.coeffs[i * k] = a.clone();
        }
        out
    }

    /// Exact division by `x`; requires a zero constant term. The order drops by one.
    pub fn div_by_var(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        if self.order() == 0 {
            return Err(Error::OutOfRange("cannot divide an order-0 series by its variable".into()));
        }
        Ok(TruncatedSeries { var: self.var, coeffs: self.coeffs[1..].to_vec() })
    }

    pub fn series_mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        TruncatedSeries { var: self.var, coeffs: out }
    }

    /// `exp(f)` for `f` with zero constant term, via `(exp f)' = f' exp f`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let n = self.order();
        let mut g = Vec::with_capacity(n + 1);
        g.push(self.coeffs[0].one_like());
        for m in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&g[m - k]).scale(&int(k as i64)));
            }
            g.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(TruncatedSeries { var: self.var, coeffs: g })
    }

    /// `log(f)` for `f` with constant term one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        // m l_m = m f_m - sum_{k=1}^{m-1} k l_k f_{m-k}
        let n = self.order();
        let mut l = Vec::with_capacity(n + 1);
        l.push(self.coeffs[0].zero_like());
        for m in 1..=n {
            let mut acc = self.coeffs[m].scale(&int(m as i64));
            for k in 1..m {
                if l[k].is_zero() {
                    continue;
                }
                acc = acc.sub(&l[k].mul(&self.coeffs[m - k]).scale(&int(k as i64)));
            }
            l.push(acc.scale(&Rational::new(1.into(), (m as i64).into())));
        }
        Ok(TruncatedSeries { var: self.var, coeffs: l })
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        let c0_inv = self.coeffs[0].try_inv().ok_or(Error::NonUnitConstant)?;
        let n = self.order();
        let mut g: Vec<R> = Vec::with_capacity(n + 1);
        g.push(c0_inv.clone());
        for m in 1..=n {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc = acc.add(&self.coeffs[k].mul(&g[m - k]));
            }
            g.push(acc.mul(&c0_inv).neg());
        }
        Ok(TruncatedSeries { var: self.var, coeffs: g })
    }

    /// `f^c = exp(c log f)` for `f` with constant term one.
    pub fn pow_scalar(&self, c: &Rational) -> Result<Self> {
        self.log()?.scale_coeffs(c).exp()
    }

    pub fn scale_coeffs(&self, c: &Rational) -> Self {
        self.map(|a| a.scale(c))
    }

    /// Multiply every coefficient by a ring element.
    pub fn mul_scalar(&self, c: &R) -> Self {
        self.map(|a| a.mul(c))
    }
}

impl<R: Ring> Ring for TruncatedSeries<R> {
    fn zero_like(&self) -> Self {
        Self::zero(self.var, self.order(), &self.coeffs[0])
    }
    fn one_like(&self) -> Self {
        Self::one(self.var, self.order(), &self.coeffs[0])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
    fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.add(b))
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| a.sub(b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.series_mul(rhs)
    }
    fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }
    fn scale(&self, c: &Rational) -> Self {
        self.scale_coeffs(c)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl<R: Ring> fmt::Debug for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{i}", self.var)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.var, self.order() + 1)
    }
}
