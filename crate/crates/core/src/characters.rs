//! Virtual characters of the torus acting on `C^3` and on the framing.
//!
//! All exponents are stored doubled, so `texp = [1, 1, 1]` is `(t1 t2 t3)^{1/2}`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{ideal_character, ColoredPartition};

/// A weight `t^a w^d` with exponents in `Z/2`, stored doubled.
///
/// Trailing zero `w`-exponents are dropped, so equal weights compare equal
/// regardless of the framing rank they were built for.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    texp: [i32; 3],
    wexp: Vec<i32>,
}

impl Monomial {
    pub fn new(texp: [i32; 3], mut wexp: Vec<i32>) -> Self {
        while wexp.last() == Some(&0) {
            wexp.pop();
        }
        Monomial { texp, wexp }
    }

    pub fn one() -> Self {
        Monomial { texp: [0; 3], wexp: Vec::new() }
    }

    /// `t1^a t2^b t3^c` with integer exponents.
    pub fn t(a: i32, b: i32, c: i32) -> Self {
        Monomial::new([2 * a, 2 * b, 2 * c], Vec::new())
    }

    /// `(t1 t2 t3)^k`.
    pub fn cy_power(k: i32) -> Self {
        Monomial::t(k, k, k)
    }

    /// `w_i^e` (0-based index, integer exponent).
    pub fn w(i: usize, e: i32) -> Self {
        let mut wexp = vec![0; i + 1];
        wexp[i] = 2 * e;
        Monomial::new([0; 3], wexp)
    }

    /// Doubled `t`-exponents.
    pub fn texp(&self) -> [i32; 3] {
        self.texp
    }

    /// Doubled `w`-exponents without trailing zeros.
    pub fn wexp(&self) -> &[i32] {
        &self.wexp
    }

    /// Doubled exponent of `w_j`.
    pub fn wexp_at(&self, j: usize) -> i32 {
        self.wexp.get(j).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.texp == [0; 3] && self.wexp.is_empty()
    }

    pub fn has_w(&self) -> bool {
        !self.wexp.is_empty()
    }

    /// Whether all exponents are integers.
    pub fn is_integral(&self) -> bool {
        self.texp.iter().chain(&self.wexp).all(|e| e % 2 == 0)
    }

    /// Whether the weight is a power of the Calabi-Yau weight `t1 t2 t3`
    /// (including the trivial weight and half-integer powers).
    pub fn is_cy_power(&self) -> bool {
        self.wexp.is_empty() && self.texp[0] == self.texp[1] && self.texp[1] == self.texp[2]
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let texp = [
            self.texp[0] + rhs.texp[0],
            self.texp[1] + rhs.texp[1],
            self.texp[2] + rhs.texp[2],
        ];
        let n = self.wexp.len().max(rhs.wexp.len());
        let wexp = (0..n).map(|j| self.wexp_at(j) + rhs.wexp_at(j)).collect();
        Monomial::new(texp, wexp)
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            texp: [-self.texp[0], -self.texp[1], -self.texp[2]],
            wexp: self.wexp.iter().map(|e| -e).collect(),
        }
    }

    /// Integer power.
    pub fn pow(&self, k: i32) -> Monomial {
        Monomial::new(self.texp.map(|e| e * k), self.wexp.iter().map(|e| e * k).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let names = ["t1", "t2", "t3"];
        let mut parts = Vec::new();
        let mut push = |name: String, e: i32| {
            match e {
                0 => {}
                2 => parts.push(name),
                _ if e % 2 == 0 => parts.push(format!("{name}^{}", e / 2)),
                _ => parts.push(format!("{name}^({e}/2)")),
            }
        };
        for (i, &e) in self.texp.iter().enumerate() {
            push(names[i].to_string(), e);
        }
        for (j, &e) in self.wexp.iter().enumerate() {
            push(format!("w{}", j + 1), e);
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// A finite signed sum of weights.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VirtualCharacter {
    terms: BTreeMap<Monomial, i64>,
}

/// One entry of the JSON dump of a character.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CharacterTerm {
    pub texp: [i32; 3],
    pub wexp: Vec<i32>,
    pub mult: i64,
}

impl VirtualCharacter {
    pub fn zero() -> Self {
        VirtualCharacter::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::from_terms([(m, 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, i64)>) -> Self {
        let mut v = Self::zero();
        for (m, c) in terms {
            v.add_term(m, c);
        }
        v
    }

    pub fn add_term(&mut self, m: Monomial, mult: i64) {
        if mult == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(mult);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += mult;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// Nonzero terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mult(&self, m: &Monomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Sum of multiplicities.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Multiplicity of the trivial weight.
    pub fn constant_term(&self) -> i64 {
        self.mult(&Monomial::one())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        VirtualCharacter { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }

    /// Multiply every weight by `m`.
    pub fn shift(&self, m: &Monomial) -> Self {
        VirtualCharacter { terms: self.terms.iter().map(|(a, c)| (a.mul(m), *c)).collect() }
    }

    /// The dual character: every exponent negated.
    pub fn bar(&self) -> Self {
        VirtualCharacter { terms: self.terms.iter().map(|(a, c)| (a.inv(), *c)).collect() }
    }

    /// Substitute `w_j -> lambda_j w_j`; each `lambda_j` must be a pure
    /// `t`-monomial with integer exponents.
    pub fn substitute_w(&self, lambda: &[Monomial]) -> Result<Self> {
        check_lambda(lambda)?;
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            let mut texp = m.texp();
            for (j, l) in lambda.iter().enumerate() {
                let d = m.wexp_at(j);
                if d == 0 {
                    continue;
                }
                for (t, le) in texp.iter_mut().zip(l.texp()) {
                    *t += d * (le / 2);
                }
            }
            out.add_term(Monomial::new(texp, m.wexp().to_vec()), c);
        }
        Ok(out)
    }

    /// The terms carrying a nontrivial framing weight.
    pub fn w_part(&self) -> Self {
        VirtualCharacter {
            terms: self.terms.iter().filter(|(m, _)| m.has_w()).map(|(m, c)| (m.clone(), *c)).collect(),
        }
    }

    /// JSON dump with `wexp` padded to `r` entries.
    pub fn dump(&self, r: usize) -> Vec<CharacterTerm> {
        self.terms()
            .map(|(m, c)| {
                let n = r.max(m.wexp().len());
                CharacterTerm { texp: m.texp(), wexp: (0..n).map(|j| m.wexp_at(j)).collect(), mult: c }
            })
            .collect()
    }

    pub fn from_dump(terms: &[CharacterTerm]) -> Self {
        Self::from_terms(terms.iter().map(|t| (Monomial::new(t.texp, t.wexp.clone()), t.mult)))
    }
}

impl fmt::Debug for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VirtualCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match c.abs() {
                1 => write!(f, "{m}")?,
                a => write!(f, "{a}*{m}")?,
            }
        }
        Ok(())
    }
}

fn check_lambda(lambda: &[Monomial]) -> Result<()> {
    for l in lambda {
        if l.has_w() || !l.is_integral() {
            return Err(Error::Malformed(format!(
                "framing twist {l} must be a t-monomial with integer exponents"
            )));
        }
    }
    Ok(())
}

fn check_quotient_character(q: &VirtualCharacter) -> Result<()> {
    for (m, c) in q.terms() {
        if c != 1 || m.has_w() || !m.is_integral() || m.texp().iter().any(|&e| e < 0) {
            return Err(Error::Malformed(format!(
                "{m} with multiplicity {c} cannot occur in the character of O/I"
            )));
        }
    }
    Ok(())
}

/// `(1 - t1)(1 - t2)(1 - t3)`.
fn koszul() -> VirtualCharacter {
    let mut v = VirtualCharacter::monomial(Monomial::one());
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = 1;
        let factor = VirtualCharacter::from_terms([
            (Monomial::one(), 1),
            (Monomial::t(e[0], e[1], e[2]), -1),
        ]);
        v = v.mul(&factor);
    }
    v
}

/// The vertex term
/// `V_ij = w_i^{-1} w_j (Q_j - bar(Q_i)/T + (1-t1)(1-t2)(1-t3)/T * Q_j bar(Q_i))`
/// with `T = t1 t2 t3`; framing indices are 0-based.
pub fn vertex_term(
    qi: &VirtualCharacter,
    qj: &VirtualCharacter,
    i: usize,
    j: usize,
) -> Result<VirtualCharacter> {
    check_quotient_character(qi)?;
    check_quotient_character(qj)?;
    let cy_inv = Monomial::cy_power(-1);
    let qi_bar = qi.bar();
    let inner = qj
        .sub(&qi_bar.shift(&cy_inv))
        .add(&koszul().shift(&cy_inv).mul(&qj.mul(&qi_bar)));
    Ok(inner.shift(&Monomial::w(i, -1).mul(&Monomial::w(j, 1))))
}

/// The virtual tangent character `T^vir = sum_{i,j} V_ij` at a fixed point,
/// optionally twisted by `w_i -> lambda_i w_i`.
///
/// Panics if the assembled character does not have rank zero.
pub fn tvir(p: &ColoredPartition, lambda: Option<&[Monomial]>) -> Result<VirtualCharacter> {
    let r = p.rank();
    if let Some(l) = lambda {
        if l.len() != r {
            return Err(Error::Malformed(format!(
                "expected {r} framing twists, got {}",
                l.len()
            )));
        }
        check_lambda(l)?;
    }
    let qs: Vec<VirtualCharacter> = p.parts.iter().map(ideal_character).collect();
    let mut total = VirtualCharacter::zero();
    for i in 0..r {
        for j in 0..r {
            let mut v = vertex_term(&qs[i], &qs[j], i, j)?;
            if let Some(l) = lambda {
                v = v.shift(&l[i].inv().mul(&l[j]));
            }
            total = total.add(&v);
        }
    }
    assert_eq!(total.rank(), 0, "virtual tangent space of {p:?} has nonzero rank");
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::PlanePartition;

    fn one_box() -> PlanePartition {
        PlanePartition::new(vec![[0, 0, 0]]).unwrap()
    }

    fn v11_one_box() -> VirtualCharacter {
        VirtualCharacter::from_terms([
            (Monomial::t(-1, 0, 0), 1),
            (Monomial::t(0, -1, 0), 1),
            (Monomial::t(0, 0, -1), 1),
            (Monomial::t(-1, -1, 0), -1),
            (Monomial::t(-1, 0, -1), -1),
            (Monomial::t(0, -1, -1), -1),
        ])
    }

    #[test]
    fn bar_examples() {
        let t1 = VirtualCharacter::monomial(Monomial::t(1, 0, 0));
        assert_eq!(t1.bar(), VirtualCharacter::monomial(Monomial::t(-1, 0, 0)));
        assert!(VirtualCharacter::zero().bar().is_zero());
        let v = VirtualCharacter::from_terms([
            (Monomial::one(), 1),
            (Monomial::t(1, 1, 0), 1),
            (Monomial::w(0, -1).mul(&Monomial::w(1, 1)), -1),
        ]);
        let expected = VirtualCharacter::from_terms([
            (Monomial::one(), 1),
            (Monomial::t(-1, -1, 0), 1),
            (Monomial::w(0, 1).mul(&Monomial::w(1, -1)), -1),
        ]);
        assert_eq!(v.bar(), expected);
        assert_eq!(v.bar().bar(), v);
    }

    #[test]
    fn monomial_canonical_form() {
        assert_eq!(Monomial::new([0; 3], vec![0, 0]), Monomial::one());
        assert_eq!(Monomial::w(1, 1).mul(&Monomial::w(1, -1)), Monomial::one());
        assert!(Monomial::cy_power(-2).is_cy_power());
        assert!(!Monomial::t(1, 1, 0).is_cy_power());
        assert_eq!(Monomial::new([1, 0, 0], vec![]).to_string(), "t1^(1/2)");
    }

    #[test]
    fn add_term_cancels() {
        let mut v = VirtualCharacter::zero();
        v.add_term(Monomial::t(1, 0, 0), 2);
        v.add_term(Monomial::t(0, 1, 0), 1);
        v.add_term(Monomial::t(1, 0, 0), -2);
        assert_eq!(v, VirtualCharacter::monomial(Monomial::t(0, 1, 0)));
    }

    #[test]
    fn vertex_term_one_box() {
        let q = ideal_character(&one_box());
        assert_eq!(vertex_term(&q, &q, 0, 0).unwrap(), v11_one_box());
        let z = VirtualCharacter::zero();
        assert!(vertex_term(&z, &z, 0, 1).unwrap().is_zero());
        let bad = VirtualCharacter::from_terms([(Monomial::one(), 2)]);
        assert!(vertex_term(&bad, &q, 0, 0).is_err());
    }

    #[test]
    fn rank_two_one_box_example() {
        let p = ColoredPartition::new(vec![one_box(), PlanePartition::empty()]);
        let t = tvir(&p, None).unwrap();
        let w12 = Monomial::w(0, -1).mul(&Monomial::w(1, 1));
        let expected = v11_one_box()
            .sub(&VirtualCharacter::monomial(w12.mul(&Monomial::cy_power(-1))))
            .add(&VirtualCharacter::monomial(w12.inv()));
        assert_eq!(t, expected);
        assert_eq!(t.w_part().len(), 2);
    }

    #[test]
    fn empty_fixed_point() {
        assert!(tvir(&ColoredPartition::empty(3), None).unwrap().is_zero());
    }

    #[test]
    fn lambda_twist_matches_substitution() {
        let p = ColoredPartition::new(vec![one_box(), one_box()]);
        let lambda = [Monomial::t(1, 0, -2), Monomial::t(0, 3, 1)];
        let twisted = tvir(&p, Some(&lambda)).unwrap();
        assert_eq!(twisted, tvir(&p, None).unwrap().substitute_w(&lambda).unwrap());
        assert!(tvir(&p, Some(&lambda[..1])).is_err());
        assert!(tvir(&p, Some(&[Monomial::w(0, 1), Monomial::one()])).is_err());
    }

    #[test]
    fn dump_pads_framing() {
        let v = VirtualCharacter::monomial(Monomial::t(1, 0, 0));
        let d = v.dump(2);
        assert_eq!(d, vec![CharacterTerm { texp: [2, 0, 0], wexp: vec![0, 0], mult: 1 }]);
        assert_eq!(VirtualCharacter::from_dump(&d), v);
    }
}
