use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::{Poly, Rational, Ring};
use crate::error::{Error, Result};

const MAX_ORDER: u32 = 120;

/// The `m`-th cyclotomic polynomial, by exact division of `x^m - 1` by
/// `Phi_d` for every proper divisor `d` of `m`.
pub fn cyclotomic_poly(m: u32) -> Result<Poly> {
    if m == 0 || m > MAX_ORDER {
        return Err(Error::OutOfRange(format!(
            "cyclotomic order {m} not in 1..={MAX_ORDER}"
        )));
    }
    let mut num = Poly::x_pow_minus_one(m as usize);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = num.div_rem(&cyclotomic_poly(d)?);
        debug_assert!(r.is_zero());
        num = q;
    }
    Ok(num)
}

/// The number field `Q(zeta_m)`, presented as `Q[x]/Phi_m(x)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    modulus: Poly,
}

impl CyclotomicField {
    /// Shared handle to `Q(zeta_m)`; fields are cached per order.
    pub fn new(order: u32) -> Result<Arc<CyclotomicField>> {
        static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&order) {
            return Ok(f.clone());
        }
        let modulus = cyclotomic_poly(order)?;
        let field = Arc::new(CyclotomicField { order, modulus });
        cache.lock().unwrap().insert(order, field.clone());
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `[Q(zeta_m) : Q]`, the Euler totient of `m`.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }
}

/// An element of `Q(zeta_m)`, stored as its reduced coefficient vector in
/// the power basis `1, zeta, ..., zeta^{phi(m)-1}`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    fn from_poly(field: &Arc<CyclotomicField>, p: Poly) -> Self {
        let reduced = p.rem(&field.modulus);
        let d = field.degree();
        let coeffs = (0..d).map(|i| reduced.coeff(i)).collect();
        Cyclotomic { field: field.clone(), coeffs }
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, c: Rational) -> Self {
        Self::from_poly(field, Poly::new(vec![c]))
    }

    /// Element from an arbitrary-length coefficient vector in powers of zeta.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<Rational>) -> Self {
        Self::from_poly(field, Poly::new(coeffs))
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let e = k.rem_euclid(field.order as i64) as usize;
        let mut c = vec![Rational::zero(); e + 1];
        c[e] = Rational::one();
        Self::from_poly(field, Poly::new(c))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    fn check(&self, rhs: &Self) {
        assert_eq!(
            self.field.order, rhs.field.order,
            "mixing elements of different cyclotomic fields"
        );
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic[{}]({})", self.field.order, self)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.poly().to_string().replace('x', "z");
        write!(f, "{s}")
    }
}

impl Ring for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: vec![Rational::zero(); self.coeffs.len()],
        }
    }
    fn one_like(&self) -> Self {
        Self::from_rational(&self.field, Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        Self::from_poly(&self.field, self.poly().mul(&rhs.poly()))
    }
    fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }
    fn scale(&self, c: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Cyclotomic { field: self.field.clone(), coeffs }
    }
    fn try_inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let inv = self.poly().inv_mod(&self.field.modulus)?;
        Some(Self::from_poly(&self.field, inv))
    }
}
