//! Plethystic exponentials and the closed-form generating functions.

use num_integer::Integer;

use crate::algebra::{int, sign_pow, LaurentHalf, Rational, Ring, TruncatedSeries, Var};
use crate::characters::{Monomial, VirtualCharacter};
use crate::error::{Error, Result};
use crate::measures::{bracket, EvalPoint};

/// Largest order accepted by [`macmahon`].
pub const MACMAHON_MAX_ORDER: usize = 32;

/// A function together with all of its Adams twists.
pub trait AdamsFamily<R: Ring> {
    /// The `n`-th twist (every argument raised to the `n`-th power,
    /// `q -> q^n`) as a `q`-series of order `order`.
    fn level(&self, n: usize, order: usize) -> Result<TruncatedSeries<R>>;
}

/// An [`AdamsFamily`] given by a closure.
pub struct FnFamily<F>(pub F);

impl<R, F> AdamsFamily<R> for FnFamily<F>
where
    R: Ring,
    F: Fn(usize, usize) -> Result<TruncatedSeries<R>>,
{
    fn level(&self, n: usize, order: usize) -> Result<TruncatedSeries<R>> {
        (self.0)(n, order)
    }
}

/// `Exp(f) = exp(sum_{n >= 1} psi_n(f) / n)` truncated at `q^order`.
pub fn pleth_exp<R: Ring>(family: &impl AdamsFamily<R>, order: usize) -> Result<TruncatedSeries<R>> {
    let mut sum = family.level(1, order)?;
    if order == 0 {
        return Ok(sum.one_like());
    }
    check_level(&sum, 1, order)?;
    for n in 2..=order {
        let level = family.level(n, order)?;
        check_level(&level, n, order)?;
        sum = sum.add(&level.scale_coeffs(&Rational::new(1.into(), (n as i64).into())));
    }
    sum.exp()
}

fn check_level<R: Ring>(s: &TruncatedSeries<R>, n: usize, order: usize) -> Result<()> {
    if s.order() < order || s.coeffs()[..n.min(order + 1)].iter().any(|c| !c.is_zero()) {
        return Err(Error::NonConvergent(n));
    }
    Ok(())
}

/// `Exp(q / (1 - q)^2)`, the MacMahon function.
fn macmahon_series(order: usize) -> Result<TruncatedSeries<Rational>> {
    let family = FnFamily(|n: usize, order: usize| {
        let mut c = vec![int(0); order + 1];
        for k in 1..=order / n {
            c[n * k] = int(k as i64);
        }
        Ok(TruncatedSeries::from_coeffs(Var::Q, c))
    });
    pleth_exp(&family, order)
}

/// `M((-1)^sign_rank q)^c`.
pub fn macmahon(c: &Rational, sign_rank: i64, order: usize) -> Result<TruncatedSeries<Rational>> {
    if order > MACMAHON_MAX_ORDER {
        return Err(Error::OutOfRange(format!(
            "MacMahon order {order} exceeds {MACMAHON_MAX_ORDER}"
        )));
    }
    let m = macmahon_series(order)?.pow_scalar(c)?;
    Ok(m.scale_var(&int(sign_pow(sign_rank))))
}

/// `t1 t2 + t1 t3 + t2 t3 - t1 - t2 - t3`, whose bracket is the one-box
/// contribution in rank one.
pub fn one_box_character() -> VirtualCharacter {
    VirtualCharacter::from_terms([
        (Monomial::t(1, 1, 0), 1),
        (Monomial::t(1, 0, 1), 1),
        (Monomial::t(0, 1, 1), 1),
        (Monomial::t(1, 0, 0), -1),
        (Monomial::t(0, 1, 0), -1),
        (Monomial::t(0, 0, 1), -1),
    ])
}

/// `1 / ([a q][a q^{-1}]) = -q / ((1 - a q)(1 - a^{-1} q))` in non-negative
/// powers of `q`.
pub fn bracket_kernel<F: Ring>(a: &F, order: usize) -> Result<TruncatedSeries<F>> {
    let a_inv = a
        .try_inv()
        .ok_or_else(|| Error::NonGenericPoint("kernel parameter is not a unit".into()))?;
    let one = a.one_like();
    let mut c = vec![one.zero_like(); order.max(2) + 1];
    c[0] = one.clone();
    c[1] = a.add(&a_inv).neg();
    c[2] = one.clone();
    let den = TruncatedSeries::from_coeffs(Var::Q, c).truncate(order);
    let minus_q = TruncatedSeries::monomial(Var::Q, order, 1, one.neg());
    Ok(minus_q.mul(&den.inv()?))
}

/// The single-particle function
/// `F_r = [T^r] / ([T] [a q][a q^{-1}]) * [t1 t2][t1 t3][t2 t3] / ([t1][t2][t3])`
/// with `T = t1 t2 t3` and `a = T^{r/2}`, as a `q`-series.
pub fn f_r_series<F: Ring>(r: usize, pt: &EvalPoint<F>, order: usize) -> Result<TruncatedSeries<F>> {
    let b = bracket(&one_box_character(), pt)?;
    let c = pt.cy_half();
    let a = c.pow_i64(r as i64).expect("positive power");
    let a_inv = a.try_inv().expect("units");
    let c_inv = c.try_inv().expect("units");
    let bracket_t = c.sub(&c_inv);
    if bracket_t.is_zero() {
        return Err(Error::NonGenericPoint("[t1 t2 t3] vanishes".into()));
    }
    let one = a.one_like();
    if a == one || a == one.neg() {
        return Err(Error::NonGenericPoint("(t1 t2 t3)^{r/2} is a sign".into()));
    }
    let prefactor = a.sub(&a_inv).mul(&bracket_t.try_inv().expect("nonzero")).mul(&b);
    Ok(bracket_kernel(&a, order)?.mul_scalar(&prefactor))
}

/// `Exp(F_r)` with `q -> (-1)^r q`, the closed K-theoretic partition function.
pub fn dtk_closed<F: Ring>(r: usize, pt: &EvalPoint<F>, order: usize) -> Result<TruncatedSeries<F>> {
    let family = FnFamily(|n: usize, order: usize| {
        Ok(f_r_series(r, &pt.power(n as i64), order / n)?.dilate_to(n, order))
    });
    let s = pleth_exp(&family, order)?;
    let sign = pt.thalf()[0].from_rational_like(&int(sign_pow(r as i64)));
    Ok(s.scale_var(&sign))
}

/// `(s1 + s2)(s1 + s3)(s2 + s3) / (s1 s2 s3)`.
pub fn phi(s: &[Rational; 3]) -> Result<Rational> {
    if s.iter().any(Ring::is_zero) {
        return Err(Error::ZeroWeightValue("s_i = 0".into()));
    }
    let num = (&s[0] + &s[1]) * (&s[0] + &s[2]) * (&s[1] + &s[2]);
    Ok(num / (&s[0] * &s[1] * &s[2]))
}

/// `M((-1)^r q)^{-r phi(s)}`.
pub fn dtcoh_closed(r: usize, s: &[Rational; 3], order: usize) -> Result<TruncatedSeries<Rational>> {
    let c = -(int(r as i64) * phi(s)?);
    macmahon(&c, r as i64, order)
}

/// `M(sigma q^{r/g})^g` with `g = gcd(k, r)` and `sigma = (-1)^{kr + r^2/g}`,
/// i.e. `M((-1)^{kr} ((-1)^r q)^{r/g})^g`.
pub fn dtell_closed(r: usize, k: usize, order: usize) -> Result<TruncatedSeries<Rational>> {
    if r == 0 {
        return Err(Error::OutOfRange("the rank r must be positive".into()));
    }
    let g = k.gcd(&r);
    let d = r / g;
    let sign = sign_pow((k * r + r * d) as i64);
    let m = macmahon(&int(1), 0, order)?.scale_var(&int(sign)).dilate(d);
    let g = i64::try_from(g).map_err(|_| Error::OutOfRange("rank too large".into()))?;
    Ok(m.pow_i64(g).expect("positive power"))
}

/// `prod_{m >= 1} prod_{k=0}^{rm-1} (1 - L^{2 + k - rm/2} q^m)^{-1}`.
pub fn dtmot_closed(r: usize, order: usize) -> TruncatedSeries<LaurentHalf> {
    let mut c = vec![LaurentHalf::zero(); order + 1];
    c[0] = LaurentHalf::one();
    for m in 1..=order {
        for k in 0..r * m {
            let e2 = 4 + 2 * k as i64 - (r * m) as i64;
            let x = LaurentHalf::monomial(e2, int(1));
            // multiply by 1 / (1 - x q^m)
            for n in m..=order {
                let d = c[n - m].mul(&x);
                c[n] = c[n].add(&d);
            }
        }
    }
    TruncatedSeries::from_coeffs(Var::Q, c)
}
