//! Brute-force references for the integration tests. Nothing here calls
//! production code outside `quot_dt::algebra`.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use quot_dt::algebra::{int, Rational};

/// Plane partitions of `n` as box lists, from height matrices on an `n x n` grid.
pub fn naive_plane_partitions(n: usize) -> Vec<Vec<[u32; 3]>> {
    fn fill(h: &mut Vec<Vec<usize>>, cell: usize, left: usize, n: usize, out: &mut Vec<Vec<[u32; 3]>>) {
        if cell == n * n {
            if left == 0 {
                let mut boxes = Vec::new();
                for (i, row) in h.iter().enumerate() {
                    for (j, &k) in row.iter().enumerate() {
                        for z in 0..k {
                            boxes.push([i as u32, j as u32, z as u32]);
                        }
                    }
                }
                out.push(boxes);
            }
            return;
        }
        let (i, j) = (cell / n, cell % n);
        let mut cap = left;
        if i > 0 {
            cap = cap.min(h[i - 1][j]);
        }
        if j > 0 {
            cap = cap.min(h[i][j - 1]);
        }
        for k in 0..=cap {
            h[i][j] = k;
            fill(h, cell + 1, left - k, n, out);
        }
        h[i][j] = 0;
    }
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    fill(&mut vec![vec![0; n]; n], 0, n, n, &mut out);
    out
}

pub fn naive_partition_count(n: usize) -> usize {
    naive_plane_partitions(n).len()
}

/// Number of `r`-tuples of plane partitions of total size `n`.
pub fn naive_colored_count(r: usize, n: usize) -> usize {
    let single: Vec<usize> = (0..=n).map(naive_partition_count).collect();
    let mut acc = vec![0usize; n + 1];
    acc[0] = 1;
    for _ in 0..r {
        let mut next = vec![0usize; n + 1];
        for a in 0..=n {
            for b in 0..=n - a {
                next[a + b] += acc[a] * single[b];
            }
        }
        acc = next;
    }
    acc[n]
}

/// All `r`-tuples of box lists of total size `n`.
pub fn naive_colored_partitions(r: usize, n: usize) -> Vec<Vec<Vec<[u32; 3]>>> {
    if r == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for k in 0..=n {
        for first in naive_plane_partitions(k) {
            for mut rest in naive_colored_partitions(r - 1, n - k) {
                rest.insert(0, first.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// `prod_{m >= 1} (1 - q^m)^{-m}` truncated at `q^order`.
pub fn macmahon_product(order: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); order + 1];
    c[0] = BigInt::one();
    for m in 1..=order {
        for _ in 0..m {
            // divide by (1 - q^m)
            for k in m..=order {
                let prev = c[k - m].clone();
                c[k] += prev;
            }
        }
    }
    c
}

pub fn to_rational(c: &[BigInt]) -> Vec<Rational> {
    c.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn series_mul(a: &[Rational], b: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![int(0); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn series_pow(a: &[Rational], k: usize, order: usize) -> Vec<Rational> {
    let mut acc = vec![int(0); order + 1];
    acc[0] = int(1);
    for _ in 0..k {
        acc = series_mul(&acc, a, order);
    }
    acc
}

/// `f(q) -> f(-q)`.
pub fn negate_q(a: &[Rational]) -> Vec<Rational> {
    a.iter().enumerate().map(|(i, x)| if i % 2 == 1 { -x } else { x.clone() }).collect()
}

/// `M((-1)^sign q)^k` for a non-negative integer `k`.
pub fn macmahon_power(k: usize, sign: usize, order: usize) -> Vec<Rational> {
    let m = to_rational(&macmahon_product(order));
    let m = if sign % 2 == 1 { negate_q(&m) } else { m };
    series_pow(&m, k, order)
}

/// `1 / a` for a series with constant term 1, by solving term by term.
pub fn series_inv(a: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![int(0); order + 1];
    out[0] = int(1);
    for n in 1..=order {
        let mut s = int(0);
        for k in 1..=n.min(a.len() - 1) {
            s += &a[k] * &out[n - k];
        }
        out[n] = -s;
    }
    out
}

/// Long division of integer polynomials (coefficients ascending) by a monic divisor.
pub fn poly_div(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1, "monic divisor");
    if rem.len() <= dd {
        return (vec![0], rem);
    }
    let mut quot = vec![0; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    rem.truncate(dd.max(1));
    if dd == 0 {
        rem[0] = 0;
    }
    while rem.len() > 1 && *rem.last().unwrap() == 0 {
        rem.pop();
    }
    (quot, rem)
}

pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `exp(f)` as `sum_k f^k / k!`, for `f` without constant term.
pub fn exp_naive(f: &[Rational], order: usize) -> Vec<Rational> {
    let mut out = vec![int(0); order + 1];
    let mut power = vec![int(0); order + 1];
    power[0] = int(1);
    let mut fact = int(1);
    for k in 0..=order {
        if k > 0 {
            power = series_mul(&power, f, order);
            fact *= int(k as i64);
        }
        for (o, p) in out.iter_mut().zip(&power) {
            *o += p / &fact;
        }
    }
    out
}

/// `exp(sum_n f(q^n) / n)` for a polynomial `f` with rational coefficients.
pub fn pleth_exp_naive(f: &[Rational], order: usize) -> Vec<Rational> {
    let mut log = vec![int(0); order + 1];
    for n in 1..=order {
        for (i, c) in f.iter().enumerate() {
            if i * n <= order && i > 0 {
                log[i * n] += c / int(n as i64);
            }
        }
    }
    exp_naive(&log, order)
}

/// `(1 - q)^c` by the generalized binomial theorem.
pub fn binomial_series(c: &Rational, order: usize) -> Vec<Rational> {
    let mut out = vec![int(1)];
    let mut term = int(1);
    for k in 1..=order {
        term = term * (c - int(k as i64 - 1)) / int(k as i64) * int(-1);
        out.push(term.clone());
    }
    out
}

/// A Laurent polynomial in `t1, t2, t3, w1, .., wr` with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Laurent(pub BTreeMap<Vec<i32>, i64>);

impl Laurent {
    pub fn monomial(exp: Vec<i32>, c: i64) -> Self {
        let mut l = Laurent::default();
        l.add_term(exp, c);
        l
    }

    fn add_term(&mut self, exp: Vec<i32>, c: i64) {
        let e = self.0.entry(exp.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, &c) in &o.0 {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, &c)| (e.clone(), -c)).collect())
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut out = Laurent::default();
        for (a, &x) in &self.0 {
            for (b, &y) in &o.0 {
                let n = a.len().max(b.len());
                let e = (0..n).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn bar(&self) -> Laurent {
        Laurent(self.0.iter().map(|(e, &c)| (e.iter().map(|x| -x).collect(), c)).collect())
    }
}

fn var(n: usize, i: usize, e: i32) -> Laurent {
    let mut exp = vec![0; n];
    exp[i] = e;
    Laurent::monomial(exp, 1)
}

/// `T^vir` of an `r`-tuple of box lists, expanded from
/// `T = X - bar(X)/(t1 t2 t3)` with
/// `X = (t1^-1 + t2^-1 + t3^-1 - 1) bar(V) V + (sum_a w_a^-1) V`,
/// `V = sum_a w_a Q_a`.
pub fn naive_vertex(parts: &[Vec<[u32; 3]>]) -> Laurent {
    let n = 3 + parts.len();
    let mut v = Laurent::default();
    let mut winv = Laurent::default();
    for (a, boxes) in parts.iter().enumerate() {
        let mut q = Laurent::default();
        for b in boxes {
            let mut exp = vec![0; n];
            exp[..3].copy_from_slice(&[b[0] as i32, b[1] as i32, b[2] as i32]);
            q = q.add(&Laurent::monomial(exp, 1));
        }
        v = v.add(&var(n, 3 + a, 1).mul(&q));
        winv = winv.add(&var(n, 3 + a, -1));
    }
    let pref = var(n, 0, -1).add(&var(n, 1, -1)).add(&var(n, 2, -1)).sub(&Laurent::monomial(vec![0; n], 1));
    let x = pref.mul(&v.bar()).mul(&v).add(&winv.mul(&v));
    let cy_inv = Laurent::monomial([vec![-1, -1, -1], vec![0; n - 3]].concat(), 1);
    x.sub(&x.bar().mul(&cy_inv))
}

/// A polynomial in commuting nilpotent classes `h_i` with `h_i^{cap_i} = 0`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    caps: Vec<u32>,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl Cohomology {
    pub fn constant(caps: &[u32], c: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; caps.len()], c);
        Cohomology { caps: caps.to_vec(), terms }
    }

    /// The linear class `sum_i a_i h_i`.
    pub fn linear(caps: &[u32], a: &[i64]) -> Self {
        let mut terms = BTreeMap::new();
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                let mut e = vec![0; caps.len()];
                e[i] = 1;
                terms.insert(e, c);
            }
        }
        Cohomology { caps: caps.to_vec(), terms }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            *out.terms.entry(e.clone()).or_insert(0) += c;
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if e.iter().zip(&self.caps).all(|(p, cap)| p < cap) {
                    *terms.entry(e).or_insert(0) += x * y;
                }
            }
        }
        Cohomology { caps: self.caps.clone(), terms }
    }

    pub fn coeff(&self, e: &[u32]) -> i64 {
        self.terms.get(e).copied().unwrap_or(0)
    }
}

/// `int c_3(T (x) K)` from Chern roots: with `c(T) = prod (1 + root)` and
/// `k = -c_1`, `c_3(T (x) K) = c_3 + c_2 k + c_1 k^2 + k^3`; the integral is the
/// coefficient of the point class `point`.
pub fn chern_root_integral(caps: &[u32], roots: &[Vec<i64>], point: &[u32]) -> i64 {
    // elementary symmetric functions e_0..e_3 of the roots
    let mut e = vec![Cohomology::constant(caps, 1)];
    e.extend((0..3).map(|_| Cohomology::constant(caps, 0)));
    for root in roots {
        let x = Cohomology::linear(caps, root);
        for k in (1..4).rev() {
            e[k] = e[k].add(&e[k - 1].mul(&x));
        }
    }
    let k = e[1].mul(&Cohomology::constant(caps, -1));
    let k2 = k.mul(&k);
    let k3 = k2.mul(&k);
    let total = e[3].add(&e[2].mul(&k)).add(&e[1].mul(&k2)).add(&k3);
    total.coeff(point)
}

/// `([t1 t2][t1 t3][t2 t3]) / ([t1][t2][t3])` from the values of `t_i^{1/2}`.
pub fn one_box_bracket(th: [Rational; 3]) -> Rational {
    let br = |x: Rational| &x - x.recip();
    let num = br(&th[0] * &th[1]) * br(&th[0] * &th[2]) * br(&th[1] * &th[2]);
    let den = br(th[0].clone()) * br(th[1].clone()) * br(th[2].clone());
    num / den
}

/// `(s1 + s2)(s1 + s3)(s2 + s3) / (s1 s2 s3)`.
pub fn phi_direct(s: [Rational; 3]) -> Rational {
    (&s[0] + &s[1]) * (&s[0] + &s[2]) * (&s[1] + &s[2]) / (&s[0] * &s[1] * &s[2])
}

/// `-q / ((1 - a q)(1 - q / a))` as the product of two geometric series.
pub fn geometric_kernel(a: &Rational, order: usize) -> Vec<Rational> {
    let g = |x: &Rational| (0..=order).map(|i| num_traits::pow(x.clone(), i)).collect::<Vec<_>>();
    let prod = series_mul(&g(a), &g(&a.recip()), order);
    let mut out = vec![int(0); order + 1];
    for i in 1..=order {
        out[i] = -prod[i - 1].clone();
    }
    out
}
