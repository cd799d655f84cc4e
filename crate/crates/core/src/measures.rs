//! Measures on rank-zero virtual characters: the K-theoretic bracket, the
//! equivariant Euler class, the elliptic theta measure, and the `b`-series
//! interpolating between the first two.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{
    int, parse_rational, Cyclotomic, CyclotomicField, Rational, Ring, ToJson, TruncatedSeries,
    Var,
};
use crate::characters::{Monomial, VirtualCharacter};
use crate::error::{Error, Result};

/// Values of the half-variables `t_i^{1/2}` and `w_j^{1/2}`.
#[derive(Clone, PartialEq, Debug)]
pub struct EvalPoint<F> {
    thalf: [F; 3],
    whalf: Vec<F>,
    thalf_inv: [F; 3],
    whalf_inv: Vec<F>,
}

impl<F: Ring> EvalPoint<F> {
    pub fn new(thalf: [F; 3], whalf: Vec<F>) -> Result<Self> {
        let inv = |x: &F| {
            x.try_inv().ok_or_else(|| Error::Malformed(format!("half-variable value {x} is not invertible")))
        };
        let thalf_inv = [inv(&thalf[0])?, inv(&thalf[1])?, inv(&thalf[2])?];
        let whalf_inv = whalf.iter().map(inv).collect::<Result<Vec<_>>>()?;
        Ok(EvalPoint { thalf, whalf, thalf_inv, whalf_inv })
    }

    pub fn thalf(&self) -> &[F; 3] {
        &self.thalf
    }

    pub fn whalf(&self) -> &[F] {
        &self.whalf
    }

    /// Number of framing variables.
    pub fn rank(&self) -> usize {
        self.whalf.len()
    }

    /// The same `t`-values with new framing values.
    pub fn with_whalf(&self, whalf: Vec<F>) -> Result<Self> {
        EvalPoint::new(self.thalf.clone(), whalf)
    }

    /// The point with every half-variable raised to the `n`-th power.
    pub fn power(&self, n: i64) -> Self {
        let p = |x: &F| x.pow_i64(n).expect("half-variable values are units");
        EvalPoint {
            thalf: [p(&self.thalf[0]), p(&self.thalf[1]), p(&self.thalf[2])],
            whalf: self.whalf.iter().map(p).collect(),
            thalf_inv: [p(&self.thalf_inv[0]), p(&self.thalf_inv[1]), p(&self.thalf_inv[2])],
            whalf_inv: self.whalf_inv.iter().map(p).collect(),
        }
    }

    /// `(t1 t2 t3)^{1/2}`.
    pub fn cy_half(&self) -> F {
        self.thalf[0].mul(&self.thalf[1]).mul(&self.thalf[2])
    }

    fn pow_of(base: &F, base_inv: &F, e: i32) -> F {
        let b = if e < 0 { base_inv } else { base };
        let mut acc = b.one_like();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(b);
        }
        acc
    }

    fn eval_exponents(&self, texp: [i32; 3], wexp: &[i32]) -> Result<F> {
        if wexp.len() > self.whalf.len() {
            return Err(Error::Malformed(format!(
                "weight uses w_{} but the point has {} framing values",
                wexp.len(),
                self.whalf.len()
            )));
        }
        let mut acc = self.thalf[0].one_like();
        for i in 0..3 {
            if texp[i] != 0 {
                acc = acc.mul(&Self::pow_of(&self.thalf[i], &self.thalf_inv[i], texp[i]));
            }
        }
        for (j, &e) in wexp.iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&Self::pow_of(&self.whalf[j], &self.whalf_inv[j], e));
            }
        }
        Ok(acc)
    }

    /// The value of the weight `m` itself.
    pub fn value(&self, m: &Monomial) -> Result<F> {
        self.eval_exponents(m.texp(), m.wexp())
    }

    /// The value of `m^{1/2}`; requires integer exponents.
    pub fn half_value(&self, m: &Monomial) -> Result<F> {
        if !m.is_integral() {
            return Err(Error::HalfExponent(m.to_string()));
        }
        let wexp: Vec<i32> = m.wexp().iter().map(|e| e / 2).collect();
        self.eval_exponents(m.texp().map(|e| e / 2), &wexp)
    }

    /// `[m] = m^{1/2} - m^{-1/2}`.
    pub fn bracket_of(&self, m: &Monomial) -> Result<F> {
        let h = self.half_value(m)?;
        let h_inv = self.half_value(&m.inv())?;
        Ok(h.sub(&h_inv))
    }
}

/// Values `s_i` of `c_1(t_i)` and `v_j` of `c_1(w_j)`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearPoint {
    pub s: [Rational; 3],
    pub v: Vec<Rational>,
}

impl LinearPoint {
    pub fn new(s: [Rational; 3], v: Vec<Rational>) -> Self {
        LinearPoint { s, v }
    }

    /// The linear form of the weight `m`; requires integer exponents.
    pub fn weight(&self, m: &Monomial) -> Result<Rational> {
        if !m.is_integral() {
            return Err(Error::HalfExponent(m.to_string()));
        }
        if m.wexp().len() > self.v.len() {
            return Err(Error::Malformed(format!(
                "weight {m} uses more framing variables than the point provides"
            )));
        }
        let mut acc = int(0);
        for (e, s) in m.texp().iter().zip(&self.s) {
            acc += s * int(i64::from(e / 2));
        }
        for (e, v) in m.wexp().iter().zip(&self.v) {
            acc += v * int(i64::from(e / 2));
        }
        Ok(acc)
    }

    /// Whether `s1 + s2 + s3 = 0`.
    pub fn is_calabi_yau(&self) -> bool {
        Ring::is_zero(&(&self.s[0] + &self.s[1] + &self.s[2]))
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "s": self.s.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "v": self.v.iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

fn check_rank_zero(v: &VirtualCharacter) -> Result<()> {
    match v.rank() {
        0 => Ok(()),
        r => Err(Error::NonZeroRank(r)),
    }
}

fn check_no_fixed_part(v: &VirtualCharacter) -> Result<()> {
    if v.constant_term() != 0 {
        return Err(Error::ConstantTerm);
    }
    Ok(())
}

/// The bracket measure `prod [mu] / prod [nu]` of `V = sum t^mu - sum t^nu`.
pub fn bracket<F: Ring>(v: &VirtualCharacter, pt: &EvalPoint<F>) -> Result<F> {
    check_rank_zero(v)?;
    check_no_fixed_part(v)?;
    let one = pt.thalf[0].one_like();
    let (mut num, mut den) = (one.clone(), one);
    for (m, c) in v.terms() {
        let b = pt.bracket_of(m)?;
        if c < 0 && b.is_zero() {
            return Err(Error::NonGenericPoint(format!("[{m}] vanishes")));
        }
        let f = b.pow_i64(c.abs()).expect("non-negative power");
        if c > 0 {
            num = num.mul(&f);
        } else {
            den = den.mul(&f);
        }
    }
    Ok(num.mul(&den.try_inv().expect("nonzero denominator")))
}

/// The equivariant Euler class `prod l(mu) / prod l(nu)`.
pub fn euler(v: &VirtualCharacter, pt: &LinearPoint) -> Result<Rational> {
    check_rank_zero(v)?;
    let (mut num, mut den) = (int(1), int(1));
    for (m, c) in v.terms() {
        let l = pt.weight(m)?;
        if Ring::is_zero(&l) {
            return Err(Error::ZeroWeightValue(m.to_string()));
        }
        let f = Ring::pow_i64(&l, c.abs()).expect("non-negative power");
        if c > 0 {
            num *= f;
        } else {
            den *= f;
        }
    }
    Ok(num / den)
}

/// The Euler class of `V` as a rational function on the plane
/// `s1 + s2 + s3 = 0`, evaluated at `pt`.
///
/// On that plane `t1^a t2^b t3^c w^d` has the linear form
/// `(a - c) s1 + (b - c) s2 + d.v`. Weights are grouped by this form and by
/// its negative before evaluating, so pairs that restrict to opposite forms
/// contribute a sign even when the form vanishes at `pt`.
pub fn euler_cy(v: &VirtualCharacter, pt: &LinearPoint) -> Result<Rational> {
    check_rank_zero(v)?;
    if !pt.is_calabi_yau() {
        return Err(Error::Malformed("the point is not on s1 + s2 + s3 = 0".into()));
    }
    let mut forms: std::collections::BTreeMap<Vec<i32>, i64> = Default::default();
    let mut sign = 1i64;
    for (m, c) in v.terms() {
        if !m.is_integral() {
            return Err(Error::HalfExponent(m.to_string()));
        }
        let t = m.texp();
        let mut key = vec![(t[0] - t[2]) / 2, (t[1] - t[2]) / 2];
        key.extend(m.wexp().iter().map(|e| e / 2));
        if key.iter().all(|&x| x == 0) {
            return Err(Error::ZeroWeightValue(format!("{m} (identically, on the Calabi-Yau plane)")));
        }
        // canonical representative: first nonzero entry positive
        if key.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
            key.iter_mut().for_each(|x| *x = -*x);
            if c % 2 != 0 {
                sign = -sign;
            }
        }
        *forms.entry(key).or_insert(0) += c;
    }
    let (mut num, mut den) = (int(sign), int(1));
    for (key, c) in forms {
        if c == 0 {
            continue;
        }
        let mut l = &pt.s[0] * int(i64::from(key[0])) + &pt.s[1] * int(i64::from(key[1]));
        for (j, e) in key[2..].iter().enumerate() {
            let vj = pt.v.get(j).ok_or_else(|| {
                Error::Malformed("weight uses more framing variables than the point provides".into())
            })?;
            l += vj * int(i64::from(*e));
        }
        if Ring::is_zero(&l) {
            return Err(Error::ZeroWeightValue(format!("restricted form {key:?}")));
        }
        let f = Ring::pow_i64(&l, c.abs()).expect("non-negative power");
        if c > 0 {
            num *= f;
        } else {
            den *= f;
        }
    }
    Ok(num / den)
}

/// The normalized theta function
/// `(y^{1/2} - y^{-1/2}) prod_{n=1}^{P} (1 - y p^n)(1 - y^{-1} p^n)`
/// as a `p`-series of order `P`, given `y^{1/2}`.
pub fn theta_hat<F: Ring>(yhalf: &F, p_order: usize) -> Result<TruncatedSeries<F>> {
    let yhalf_inv = yhalf
        .try_inv()
        .ok_or_else(|| Error::Malformed("theta argument must be a unit".into()))?;
    let y = yhalf.mul(yhalf);
    let y_inv = yhalf_inv.mul(&yhalf_inv);
    let mut coeffs = vec![yhalf.zero_like(); p_order + 1];
    coeffs[0] = yhalf.sub(&yhalf_inv);
    for n in 1..=p_order {
        for z in [&y, &y_inv] {
            for k in (n..=p_order).rev() {
                let d = coeffs[k - n].mul(z);
                coeffs[k] = coeffs[k].sub(&d);
            }
        }
    }
    Ok(TruncatedSeries::from_coeffs(Var::P, coeffs))
}

/// The elliptic measure `prod theta_hat(p; t^mu)^{mult}` as a `p`-series.
///
/// The full theta function carries an extra factor independent of `y`,
/// which cancels at rank zero; nonzero rank is rejected.
pub fn elliptic<F: Ring>(
    v: &VirtualCharacter,
    pt: &EvalPoint<F>,
    p_order: usize,
) -> Result<TruncatedSeries<F>> {
    let b = bracket(v, pt)?;
    // log of the p >= 1 part: -sum_m p^m sum_{k | m} (y^k + y^{-k}) / k
    let zero = b.zero_like();
    let mut power_sums = vec![zero.clone(); p_order + 1];
    for (m, c) in v.terms() {
        let y = pt.value(m)?;
        let y_inv = pt.value(&m.inv())?;
        let (mut yk, mut yk_inv) = (y.clone(), y_inv.clone());
        for ps in power_sums.iter_mut().skip(1) {
            *ps = ps.add(&yk.add(&yk_inv).scale(&int(c)));
            yk = yk.mul(&y);
            yk_inv = yk_inv.mul(&y_inv);
        }
    }
    let mut log = vec![zero; p_order + 1];
    for k in 1..=p_order {
        let term = power_sums[k].scale(&Rational::new((-1).into(), (k as i64).into()));
        for m in (k..=p_order).step_by(k) {
            log[m] = log[m].add(&term);
        }
    }
    Ok(TruncatedSeries::from_coeffs(Var::P, log).exp()?.mul_scalar(&b))
}

/// The bracket of `V` at `t_i^{1/2} = exp(b s_i / 2)`, `w_j^{1/2} = exp(b v_j / 2)`,
/// as a `b`-series of order `b_order`. Its constant term is `euler(V, pt)`.
pub fn bracket_bseries(
    v: &VirtualCharacter,
    pt: &LinearPoint,
    b_order: usize,
) -> Result<TruncatedSeries<Rational>> {
    check_rank_zero(v)?;
    check_no_fixed_part(v)?;
    let one = TruncatedSeries::one(Var::B, b_order, &int(1));
    let (mut num, mut den) = (one.clone(), one);
    for (m, c) in v.terms() {
        let l = pt.weight(m)?;
        if c < 0 && Ring::is_zero(&l) {
            return Err(Error::ZeroWeightValue(m.to_string()));
        }
        // [t^mu] = exp(b l / 2) - exp(-b l / 2) = b (l + O(b^2))
        let half = TruncatedSeries::monomial(Var::B, b_order + 1, 1, l / int(2));
        let h = half.exp()?;
        let h_inv = half.neg().exp()?;
        let f = h.sub(&h_inv).div_by_var()?;
        for _ in 0..c.abs() {
            if c > 0 {
                num = num.mul(&f);
            } else {
                den = den.mul(&f);
            }
        }
    }
    Ok(num.mul(&den.inv()?))
}

/// A uniformly random rational `a/b` with `a, b` in `[2, 97]`, optionally
/// with a random sign.
pub fn random_rational<G: rand::Rng + ?Sized>(rng: &mut G, signed: bool) -> Rational {
    let n: i64 = rng.gen_range(2..=97);
    let d: i64 = rng.gen_range(2..=97);
    let s = if signed && rng.gen_bool(0.5) { -1 } else { 1 };
    Rational::new((s * n).into(), d.into())
}

pub fn random_eval_point<G: rand::Rng + ?Sized>(rng: &mut G, r: usize) -> EvalPoint<Rational> {
    let thalf = [random_rational(rng, false), random_rational(rng, false), random_rational(rng, false)];
    let whalf = (0..r).map(|_| random_rational(rng, false)).collect();
    EvalPoint::new(thalf, whalf).expect("random values are nonzero")
}

pub fn random_linear_point<G: rand::Rng + ?Sized>(rng: &mut G, r: usize) -> LinearPoint {
    let s = [random_rational(rng, true), random_rational(rng, true), random_rational(rng, true)];
    LinearPoint::new(s, (0..r).map(|_| random_rational(rng, true)).collect())
}

/// Maximum number of draws before sampling gives up.
pub const MAX_RESAMPLES: usize = 50;

/// Draw points until `f` succeeds, retrying on singular points only.
pub fn with_resampling<G, P, T>(
    rng: &mut G,
    mut draw: impl FnMut(&mut G) -> P,
    mut f: impl FnMut(&P) -> Result<T>,
) -> Result<(P, T)>
where
    G: rand::Rng + ?Sized,
{
    for _ in 0..MAX_RESAMPLES {
        let p = draw(rng);
        match f(&p) {
            Ok(t) => return Ok((p, t)),
            Err(Error::NonGenericPoint(_) | Error::ZeroWeightValue(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ResampleExhausted(MAX_RESAMPLES))
}

/// A scalar that can appear in an evaluation point.
pub trait Scalar: Ring + ToJson {}
impl Scalar for Rational {}
impl Scalar for Cyclotomic {}

impl<F: Scalar> EvalPoint<F> {
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "thalf": self.thalf.iter().map(ToJson::to_json).collect::<Vec<_>>(),
            "whalf": self.whalf.iter().map(ToJson::to_json).collect::<Vec<_>>(),
        })
    }
}

impl EvalPoint<Cyclotomic> {
    pub fn to_json_with_order(&self) -> Value {
        let mut v = self.to_json();
        v["cyclotomic_order"] = Value::from(self.thalf[0].order());
        v
    }
}

/// A scalar in a point literal: a fraction string, or a coefficient vector
/// in powers of `zeta_m` when a cyclotomic order is given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarLiteral {
    Fraction(String),
    Vector(Vec<String>),
}

/// JSON literal for an [`EvalPoint`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointLiteral {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u32>,
    pub thalf: Vec<ScalarLiteral>,
    pub whalf: Vec<ScalarLiteral>,
}

/// JSON literal for a [`LinearPoint`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearLiteral {
    pub s: Vec<String>,
    #[serde(default)]
    pub v: Vec<String>,
}

/// An evaluation point over either scalar field.
#[derive(Clone, Debug)]
pub enum AnyEvalPoint {
    Rational(EvalPoint<Rational>),
    Cyclotomic(EvalPoint<Cyclotomic>),
}

fn parse_fraction(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Malformed(format!("not a fraction: {s:?}")))
}

fn three<T>(v: Vec<T>, what: &str) -> Result<[T; 3]> {
    v.try_into().map_err(|_| Error::Malformed(format!("{what} needs exactly three entries")))
}

impl PointLiteral {
    pub fn parse(&self) -> Result<AnyEvalPoint> {
        match self.cyclotomic_order {
            None => {
                let f = |l: &ScalarLiteral| match l {
                    ScalarLiteral::Fraction(s) => parse_fraction(s),
                    ScalarLiteral::Vector(_) => Err(Error::Malformed(
                        "coefficient vectors need a cyclotomic_order".into(),
                    )),
                };
                let thalf = three(self.thalf.iter().map(f).collect::<Result<Vec<_>>>()?, "thalf")?;
                let whalf = self.whalf.iter().map(f).collect::<Result<Vec<_>>>()?;
                Ok(AnyEvalPoint::Rational(EvalPoint::new(thalf, whalf)?))
            }
            Some(m) => {
                let field = CyclotomicField::new(m)?;
                let f = |l: &ScalarLiteral| cyclotomic_literal(&field, l);
                let thalf = three(self.thalf.iter().map(f).collect::<Result<Vec<_>>>()?, "thalf")?;
                let whalf = self.whalf.iter().map(f).collect::<Result<Vec<_>>>()?;
                Ok(AnyEvalPoint::Cyclotomic(EvalPoint::new(thalf, whalf)?))
            }
        }
    }
}

fn cyclotomic_literal(field: &Arc<CyclotomicField>, l: &ScalarLiteral) -> Result<Cyclotomic> {
    match l {
        ScalarLiteral::Fraction(s) => Ok(Cyclotomic::from_rational(field, parse_fraction(s)?)),
        ScalarLiteral::Vector(v) => {
            let coeffs = v.iter().map(|s| parse_fraction(s)).collect::<Result<Vec<_>>>()?;
            Ok(Cyclotomic::from_coeffs(field, coeffs))
        }
    }
}

impl LinearLiteral {
    pub fn parse(&self) -> Result<LinearPoint> {
        let s = self.s.iter().map(|x| parse_fraction(x)).collect::<Result<Vec<_>>>()?;
        let v = self.v.iter().map(|x| parse_fraction(x)).collect::<Result<Vec<_>>>()?;
        Ok(LinearPoint::new(three(s, "s")?, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::characters::tvir;
    use crate::partitions::{ColoredPartition, PlanePartition};

    fn rpt(t: [i64; 3], w: &[i64]) -> EvalPoint<Rational> {
        EvalPoint::new(t.map(int), w.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn euler_cy_cancels_dual_pairs() {
        let v = VirtualCharacter::from_terms([(Monomial::t(1, 0, 0), 1), (Monomial::t(-2, -1, -1), -1)]);
        let on_plane = LinearPoint::new([int(0), int(1), int(-1)], vec![]);
        assert!(matches!(euler(&v, &on_plane), Err(Error::ZeroWeightValue(_))));
        assert_eq!(euler_cy(&v, &on_plane).unwrap(), int(-1));
        let generic = LinearPoint::new([int(3), int(1), int(-4)], vec![]);
        assert_eq!(euler_cy(&v, &generic).unwrap(), euler(&v, &generic).unwrap());
        let off = LinearPoint::new([int(1), int(1), int(1)], vec![]);
        assert!(euler_cy(&v, &off).is_err());
    }

    fn t1_minus_t2() -> VirtualCharacter {
        VirtualCharacter::from_terms([(Monomial::t(1, 0, 0), 1), (Monomial::t(0, 1, 0), -1)])
    }

    fn one_box_tvir() -> VirtualCharacter {
        let p = ColoredPartition::new(vec![PlanePartition::new(vec![[0, 0, 0]]).unwrap()]);
        tvir(&p, None).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let pt = rpt([2, 3, 5], &[]);
        assert_eq!(bracket(&VirtualCharacter::zero(), &pt).unwrap(), int(1));
        assert_eq!(bracket(&t1_minus_t2(), &pt).unwrap(), rat(9, 16));
    }

    #[test]
    fn bracket_errors() {
        let pt = rpt([2, 1, 5], &[]);
        assert!(matches!(bracket(&t1_minus_t2(), &pt), Err(Error::NonGenericPoint(_))));
        let fixed = VirtualCharacter::from_terms([(Monomial::one(), 1), (Monomial::t(1, 0, 0), -1)]);
        assert_eq!(bracket(&fixed, &pt).unwrap_err(), Error::ConstantTerm);
        let rank_one = VirtualCharacter::monomial(Monomial::t(1, 0, 0));
        assert_eq!(bracket(&rank_one, &pt).unwrap_err(), Error::NonZeroRank(1));
    }

    #[test]
    fn bracket_is_bar_symmetric() {
        let pt = rpt([2, 3, 5], &[7]);
        let v = one_box_tvir();
        assert_eq!(bracket(&v, &pt).unwrap(), bracket(&v.bar(), &pt).unwrap());
    }

    #[test]
    fn euler_examples() {
        let pt = LinearPoint::new([int(1), int(2), int(3)], vec![]);
        assert_eq!(euler(&t1_minus_t2(), &pt).unwrap(), rat(1, 2));
        let sq = VirtualCharacter::from_terms([(Monomial::t(1, 0, 0), 2), (Monomial::t(0, 0, 1), -2)]);
        assert_eq!(euler(&sq, &pt).unwrap(), rat(1, 9));
        let bad = LinearPoint::new([int(1), int(1), int(3)], vec![]);
        let v = VirtualCharacter::from_terms([(Monomial::t(1, -1, 0), 1), (Monomial::t(0, 0, 1), -1)]);
        assert!(matches!(euler(&v, &bad), Err(Error::ZeroWeightValue(_))));
        let half = VirtualCharacter::from_terms([
            (Monomial::new([1, 1, 1], vec![]), 1),
            (Monomial::t(1, 0, 0), -1),
        ]);
        assert!(matches!(euler(&half, &pt), Err(Error::HalfExponent(_))));
    }

    #[test]
    fn theta_hat_matches_product_route() {
        let pt = rpt([2, 3, 5], &[]);
        let v = one_box_tvir();
        let p_order = 5;
        let mut num = TruncatedSeries::one(Var::P, p_order, &int(1));
        let mut den = num.clone();
        for (m, c) in v.terms() {
            let th = theta_hat(&pt.half_value(m).unwrap(), p_order).unwrap();
            for _ in 0..c.abs() {
                if c > 0 {
                    num = num.mul(&th);
                } else {
                    den = den.mul(&th);
                }
            }
        }
        let direct = num.mul(&den.inv().unwrap());
        let fast = elliptic(&v, &pt, p_order).unwrap();
        assert_eq!(fast, direct);
        assert_eq!(fast.coeff(0), &bracket(&v, &pt).unwrap());
    }

    #[test]
    fn theta_prefactor_cancels_at_rank_zero() {
        // any y-independent factor c(p), e.g. prod (1 - p^n) times a scalar,
        // appears to the power rank(V) = 0
        let p_order = 6;
        let mut eta = TruncatedSeries::one(Var::P, p_order, &int(1));
        for n in 1..=p_order {
            eta = eta.mul(&TruncatedSeries::one(Var::P, p_order, &int(1)).sub(
                &TruncatedSeries::monomial(Var::P, p_order, n, int(1)),
            ));
        }
        let c = eta.scale_coeffs(&rat(-3, 7));
        let pt = rpt([2, 3, 5], &[]);
        let v = one_box_tvir();
        let mut with = TruncatedSeries::one(Var::P, p_order, &int(1));
        let mut without = with.clone();
        for (m, mult) in v.terms() {
            let th = theta_hat(&pt.half_value(m).unwrap(), p_order).unwrap();
            let full = th.mul(&c);
            let (th, full) = if mult > 0 {
                (th, full)
            } else {
                (th.inv().unwrap(), full.inv().unwrap())
            };
            for _ in 0..mult.abs() {
                without = without.mul(&th);
                with = with.mul(&full);
            }
        }
        assert_eq!(with, without);
        assert_eq!(elliptic(&v, &pt, p_order).unwrap(), without);
    }

    #[test]
    fn elliptic_rejects_nonzero_rank() {
        let pt = rpt([2, 3, 5], &[]);
        let v = VirtualCharacter::monomial(Monomial::t(1, 0, 0));
        assert_eq!(elliptic(&v, &pt, 3).unwrap_err(), Error::NonZeroRank(1));
        assert_eq!(elliptic(&VirtualCharacter::zero(), &pt, 3).unwrap().coeffs(), &[
            int(1),
            int(0),
            int(0),
            int(0)
        ]);
    }

    #[test]
    fn bseries_constant_term() {
        let pt = LinearPoint::new([int(1), int(2), int(3)], vec![]);
        let s = bracket_bseries(&t1_minus_t2(), &pt, 4).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.coeff(0), &rat(1, 2));
        assert!(bracket_bseries(&VirtualCharacter::zero(), &pt, 4).unwrap().is_one());
        let v = one_box_tvir().neg();
        let s = bracket_bseries(&v, &pt, 3).unwrap();
        assert_eq!(s.coeff(0), &euler(&v, &pt).unwrap());
    }

    #[test]
    fn multiplicativity() {
        let pt = rpt([2, 3, 5], &[7, 11]);
        let lp = LinearPoint::new([int(1), int(2), int(5)], vec![int(7), int(-4)]);
        let v = one_box_tvir();
        let w = VirtualCharacter::from_terms([
            (Monomial::t(1, 0, 0).mul(&Monomial::w(1, 1)), 1),
            (Monomial::t(0, 2, 0), -1),
        ]);
        let vw = v.add(&w);
        assert_eq!(
            bracket(&vw, &pt).unwrap(),
            bracket(&v, &pt).unwrap() * bracket(&w, &pt).unwrap()
        );
        assert_eq!(euler(&vw, &lp).unwrap(), euler(&v, &lp).unwrap() * euler(&w, &lp).unwrap());
        assert_eq!(
            elliptic(&vw, &pt, 4).unwrap(),
            elliptic(&v, &pt, 4).unwrap().mul(&elliptic(&w, &pt, 4).unwrap())
        );
    }

    #[test]
    fn point_literals() {
        let lit: PointLiteral =
            serde_json::from_str(r#"{"thalf":["2","3","1/5"],"whalf":["7"]}"#).unwrap();
        let AnyEvalPoint::Rational(p) = lit.parse().unwrap() else { panic!() };
        assert_eq!(p.thalf()[2], rat(1, 5));
        let lit: PointLiteral = serde_json::from_str(
            r#"{"cyclotomic_order":12,"thalf":["2","3",["0","1/6"]],"whalf":[["0","0","1"]]}"#,
        )
        .unwrap();
        let AnyEvalPoint::Cyclotomic(p) = lit.parse().unwrap() else { panic!() };
        assert_eq!(p.to_json_with_order()["cyclotomic_order"], 12);
        let bad: PointLiteral = serde_json::from_str(r#"{"thalf":["2","3"],"whalf":[]}"#).unwrap();
        assert!(bad.parse().is_err());
        let lin: LinearLiteral = serde_json::from_str(r#"{"s":["1","2","-3"]}"#).unwrap();
        assert_eq!(lin.parse().unwrap().s[2], int(-3));
    }

    #[test]
    fn resampling_gives_up() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r: Result<(Rational, ())> = with_resampling(
            &mut rng,
            |g| random_rational(g, true),
            |_| Err(Error::NonGenericPoint("always".into())),
        );
        assert_eq!(r.unwrap_err(), Error::ResampleExhausted(MAX_RESAMPLES));
    }
}
