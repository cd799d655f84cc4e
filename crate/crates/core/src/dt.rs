//! Localization partition functions and verification of the closed forms.
//!
//! Every `verify_*` function samples exact points from a seeded RNG,
//! evaluates both sides of an identity coefficient by coefficient and
//! records the differences in a [`VerificationReport`].

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    int, sign_pow, Cyclotomic, CyclotomicField, LaurentHalf, Rational, Ring, ToJson,
    TruncatedSeries, Var,
};
use crate::characters::{tvir, Monomial, VirtualCharacter};
use crate::error::{Error, Result};
use crate::measures::{
    bracket, bracket_bseries, elliptic, euler, euler_cy, random_eval_point, random_linear_point,
    random_rational, with_resampling, EvalPoint, LinearPoint,
};
use crate::partitions::{enumerate_colored, ColoredPartition};
use crate::series::{dtcoh_closed, dtell_closed, dtk_closed, dtmot_closed, macmahon};

/// Fewest sampled points accepted by a randomized verification.
pub const MIN_TRIALS: usize = 3;

/// The fixed points up to a given size together with `-T^vir` at each.
#[derive(Clone, Debug)]
pub struct FixedPoints {
    r: usize,
    by_size: Vec<Vec<(ColoredPartition, VirtualCharacter)>>,
}

impl FixedPoints {
    pub fn new(r: usize, order: usize, lambda: Option<&[Monomial]>) -> Result<Self> {
        let by_size = (0..=order)
            .map(|n| {
                enumerate_colored(r, n)?
                    .map(|p| {
                        let v = tvir(&p, lambda)?.neg();
                        Ok((p, v))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FixedPoints { r, by_size })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.by_size.len() - 1
    }

    /// Fixed points of size `n` with their measured characters `-T^vir`.
    pub fn of_size(&self, n: usize) -> &[(ColoredPartition, VirtualCharacter)] {
        &self.by_size[n]
    }

    /// `sum_n q^n sum_{|P| = n} measure(-T^vir_P)`.
    pub fn localize<R: Ring>(
        &self,
        one: &R,
        measure: impl Fn(&VirtualCharacter) -> Result<R>,
    ) -> Result<TruncatedSeries<R>> {
        let mut coeffs = Vec::with_capacity(self.by_size.len());
        for points in &self.by_size {
            let mut acc = one.zero_like();
            for (p, v) in points {
                let term = measure(v).map_err(|e| locate(e, p))?;
                acc = acc.add(&term);
            }
            coeffs.push(acc);
        }
        Ok(TruncatedSeries::from_coeffs(Var::Q, coeffs))
    }
}

fn locate(e: Error, p: &ColoredPartition) -> Error {
    let at = serde_json::to_string(p).unwrap_or_default();
    match e {
        Error::NonGenericPoint(m) => Error::NonGenericPoint(format!("{m} at fixed point {at}")),
        Error::ZeroWeightValue(m) => Error::ZeroWeightValue(format!("{m} at fixed point {at}")),
        e => e,
    }
}

fn check_rank<F: Ring>(r: usize, pt: &EvalPoint<F>) -> Result<()> {
    if pt.rank() != r {
        return Err(Error::Malformed(format!(
            "rank {r} needs {r} framing values, the point has {}",
            pt.rank()
        )));
    }
    Ok(())
}

/// `sum_P q^{|P|} [-T^vir_P]` at `pt`.
pub fn dtk_localization<F: Ring>(r: usize, order: usize, pt: &EvalPoint<F>) -> Result<TruncatedSeries<F>> {
    dtk_from(&FixedPoints::new(r, order, None)?, pt)
}

fn dtk_from<F: Ring>(fp: &FixedPoints, pt: &EvalPoint<F>) -> Result<TruncatedSeries<F>> {
    check_rank(fp.rank(), pt)?;
    fp.localize(&pt.thalf()[0].one_like(), |v| bracket(v, pt))
}

/// `sum_P q^{|P|} e(-T^vir_P)` at `pt`, optionally with framing twist `lambda`.
pub fn dtcoh_localization(
    r: usize,
    order: usize,
    pt: &LinearPoint,
    lambda: Option<&[Monomial]>,
) -> Result<TruncatedSeries<Rational>> {
    dtcoh_from(&FixedPoints::new(r, order, lambda)?, pt)
}

fn dtcoh_from(fp: &FixedPoints, pt: &LinearPoint) -> Result<TruncatedSeries<Rational>> {
    if pt.v.len() != fp.rank() {
        return Err(Error::Malformed(format!(
            "rank {} needs {} framing values, the point has {}",
            fp.rank(),
            fp.rank(),
            pt.v.len()
        )));
    }
    if pt.is_calabi_yau() {
        fp.localize(&int(1), |v| euler_cy(v, pt))
    } else {
        fp.localize(&int(1), |v| euler(v, pt))
    }
}

/// `sum_P q^{|P|} theta[-T^vir_P]`, a `q`-series of `p`-series.
pub fn dtell_localization<F: Ring>(
    r: usize,
    order: usize,
    p_order: usize,
    pt: &EvalPoint<F>,
) -> Result<TruncatedSeries<TruncatedSeries<F>>> {
    dtell_from(&FixedPoints::new(r, order, None)?, p_order, pt)
}

fn dtell_from<F: Ring>(
    fp: &FixedPoints,
    p_order: usize,
    pt: &EvalPoint<F>,
) -> Result<TruncatedSeries<TruncatedSeries<F>>> {
    check_rank(fp.rank(), pt)?;
    let one = TruncatedSeries::one(Var::P, p_order, &pt.thalf()[0].one_like());
    fp.localize(&one, |v| elliptic(v, pt, p_order))
}

/// `sum_{|P| = n} e(-T^vir_P restricted to its framing-dependent weights)`.
pub fn framing_dependent_sum(
    r: usize,
    n: usize,
    pt: &LinearPoint,
    lambda: Option<&[Monomial]>,
) -> Result<Rational> {
    let mut acc = int(0);
    for p in enumerate_colored(r, n)? {
        let v = tvir(&p, lambda)?.neg().w_part();
        acc += euler(&v, pt).map_err(|e| locate(e, &p))?;
    }
    Ok(acc)
}

/// One compared coefficient.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientCheck {
    pub trial: usize,
    pub index: String,
    pub lhs: Value,
    pub rhs: Value,
    pub delta: Value,
}

/// The outcome of checking an identity at sampled points.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: Value,
    pub seed: Option<u64>,
    pub trials: usize,
    pub points: Vec<Value>,
    pub coefficients: Vec<CoefficientCheck>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_independent: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub(crate) fn new(identity: &str, params: Value, seed: Option<u64>) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params,
            seed,
            trials: 0,
            points: Vec::new(),
            coefficients: Vec::new(),
            pass: true,
            p_independent: None,
            notes: Vec::new(),
        }
    }

    pub(crate) fn add_point(&mut self, point: Value) {
        self.points.push(point);
        self.trials = self.points.len();
    }

    pub(crate) fn compare<R: Ring + ToJson>(&mut self, trial: usize, index: String, lhs: &R, rhs: &R) {
        let delta = lhs.sub(rhs);
        if !delta.is_zero() {
            self.pass = false;
        }
        self.coefficients.push(CoefficientCheck {
            trial,
            index,
            lhs: lhs.to_json(),
            rhs: rhs.to_json(),
            delta: delta.to_json(),
        });
    }

    pub(crate) fn compare_series<R: Ring + ToJson>(
        &mut self,
        trial: usize,
        lhs: &TruncatedSeries<R>,
        rhs: &TruncatedSeries<R>,
    ) {
        let n = lhs.order().min(rhs.order());
        for i in 0..=n {
            self.compare(trial, format!("q^{i}"), lhs.coeff(i), rhs.coeff(i));
        }
    }
}

/// The generator behind every seeded sample.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn check_r(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::OutOfRange("the rank r must be positive".into()));
    }
    Ok(())
}

fn sign<F: Ring>(one: &F, e: i64) -> F {
    one.from_rational_like(&int(sign_pow(e)))
}

/// The K-theoretic series is the same for every framing assignment sharing
/// one choice of `t`.
pub fn verify_framing_independence(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let mut g = rng(seed);
    let mut report = VerificationReport::new(
        "framing_independence",
        json!({"r": r, "order": order}),
        Some(seed),
    );
    let (base, reference) =
        with_resampling(&mut g, |g| random_eval_point(g, r), |pt| dtk_from(&fp, pt))?;
    report.add_point(base.to_json());
    for trial in 1..trials {
        let (pt, series) = with_resampling(
            &mut g,
            |g| {
                let w = (0..r).map(|_| random_rational(g, false)).collect();
                base.with_whalf(w).expect("nonzero values")
            },
            |pt| dtk_from(&fp, pt),
        )?;
        report.add_point(pt.to_json());
        report.compare_series(trial, &series, &reference);
    }
    Ok(report)
}

/// `DT_r((-1)^r q) = prod_{i=1}^r DT_1(-q T^{(2i - r - 1)/2})` with both
/// sides computed by localization.
pub fn verify_product_formula(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let fp1 = FixedPoints::new(1, order, None)?;
    let mut g = rng(seed);
    let mut report =
        VerificationReport::new("product_formula", json!({"r": r, "order": order}), Some(seed));
    for trial in 0..trials {
        let (pt, (lhs, rhs)) = with_resampling(
            &mut g,
            |g| random_eval_point(g, r),
            |pt| {
                let one = pt.thalf()[0].one_like();
                let lhs = dtk_from(&fp, pt)?.scale_var(&sign(&one, r as i64));
                let pt1 = pt.with_whalf(pt.whalf()[..1].to_vec())?;
                let rank_one = dtk_from(&fp1, &pt1)?;
                let c = pt.cy_half();
                let mut rhs = TruncatedSeries::one(Var::Q, order, &one);
                for i in 1..=r as i64 {
                    let shift = c.pow_i64(2 * i - r as i64 - 1).expect("unit").neg();
                    rhs = rhs.mul(&rank_one.scale_var(&shift));
                }
                Ok((lhs, rhs))
            },
        )?;
        report.add_point(pt.to_json());
        report.compare_series(trial, &lhs, &rhs);
    }
    Ok(report)
}

/// Localization against `Exp(F_r)` at `q -> (-1)^r q`.
pub fn verify_kth_closed(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let mut g = rng(seed);
    let mut report =
        VerificationReport::new("kth_closed", json!({"r": r, "order": order}), Some(seed));
    for trial in 0..trials {
        let (pt, (lhs, rhs)) = with_resampling(
            &mut g,
            |g| random_eval_point(g, r),
            |pt| Ok((dtk_from(&fp, pt)?, dtk_closed(r, pt, order)?)),
        )?;
        report.add_point(pt.to_json());
        report.compare_series(trial, &lhs, &rhs);
    }
    Ok(report)
}

/// Localization against `M((-1)^r q)^{-r phi(s)}`.
pub fn verify_coh_closed(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let mut g = rng(seed);
    let mut report =
        VerificationReport::new("coh_closed", json!({"r": r, "order": order}), Some(seed));
    for trial in 0..trials {
        let (pt, (lhs, rhs)) = with_resampling(
            &mut g,
            |g| random_linear_point(g, r),
            |pt| Ok((dtcoh_from(&fp, pt)?, dtcoh_closed(r, &pt.s, order)?)),
        )?;
        report.add_point(pt.to_json());
        report.compare_series(trial, &lhs, &rhs);
    }
    Ok(report)
}

/// The cohomological series on `s1 + s2 + s3 = 0` is `M((-1)^r q)^r`.
///
/// The first point is `s = (1, 2, -3)`; further points are random on the
/// same plane. Framing values are `v_j = j / 101`.
pub fn verify_cy_specialization(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let target = macmahon(&int(r as i64), r as i64, order)?;
    let v: Vec<Rational> = (1..=r as i64).map(|j| Rational::new(j.into(), 101.into())).collect();
    let mut g = rng(seed);
    let mut report =
        VerificationReport::new("cy_specialization", json!({"r": r, "order": order}), Some(seed));
    let first = LinearPoint::new([int(1), int(2), int(-3)], v.clone());
    let lhs = dtcoh_from(&fp, &first)?;
    report.add_point(first.to_json());
    report.compare_series(0, &lhs, &target);
    for trial in 1..trials {
        let (pt, lhs) = with_resampling(
            &mut g,
            |g| {
                let a = random_rational(g, true);
                let b = random_rational(g, true);
                let c = -(&a + &b);
                LinearPoint::new([a, b, c], v.clone())
            },
            |pt| dtcoh_from(&fp, pt),
        )?;
        report.add_point(pt.to_json());
        report.compare_series(trial, &lhs, &target);
    }
    Ok(report)
}

fn random_lambda<G: rand::Rng>(g: &mut G, r: usize) -> Vec<Monomial> {
    (0..r)
        .map(|_| Monomial::t(g.gen_range(-2..=2), g.gen_range(-2..=2), g.gen_range(-2..=2)))
        .collect()
}

/// The cohomological series does not change under `w_i -> lambda_i w_i`.
pub fn verify_lambda_independence(
    r: usize,
    order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let mut g = rng(seed);
    let mut report = VerificationReport::new(
        "lambda_independence",
        json!({"r": r, "order": order}),
        Some(seed),
    );
    for trial in 0..trials {
        let lambda = random_lambda(&mut g, r);
        let twisted = FixedPoints::new(r, order, Some(&lambda))?;
        let (pt, (lhs, rhs)) = with_resampling(
            &mut g,
            |g| random_linear_point(g, r),
            |pt| Ok((dtcoh_from(&twisted, pt)?, dtcoh_from(&fp, pt)?)),
        )?;
        let mut point = pt.to_json();
        point["lambda"] = lambda.iter().map(|m| json!(m.texp().map(|e| e / 2))).collect();
        report.add_point(point);
        report.compare_series(trial, &lhs, &rhs);
    }
    Ok(report)
}

/// The elliptic series on `(t1 t2 t3)^{1/2} = exp(pi i k / r)` against
/// A random point with `(t1 t2 t3)^{1/2} = zeta^k` in `field`, the other
/// half-variables positive rationals.
pub fn random_root_point<G: rand::Rng + ?Sized>(
    g: &mut G,
    field: &Arc<CyclotomicField>,
    r: usize,
    k: usize,
) -> EvalPoint<Cyclotomic> {
    let embed = |x: Rational| Cyclotomic::from_rational(field, x);
    let t1 = random_rational(g, false);
    let t2 = random_rational(g, false);
    let t3 = Cyclotomic::zeta_pow(field, k as i64).mul(&embed((&t1 * &t2).recip()));
    let w = (0..r).map(|_| embed(random_rational(g, false))).collect();
    EvalPoint::new([embed(t1), embed(t2), t3], w).expect("nonzero values are units")
}

/// `M((-1)^{kr} ((-1)^r q)^{r/g})^g`, `g = gcd(k, r)`.
///
/// The full `p`-series is compared with the constant target; whether every
/// positive `p`-power vanished is reported separately.
pub fn verify_elliptic_restriction(
    r: usize,
    k: usize,
    order: usize,
    p_order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, order, None)?;
    let field = CyclotomicField::new(2 * r as u32)?;
    let embed = |x: Rational| Cyclotomic::from_rational(&field, x);
    let target = dtell_closed(r, k, order)?;
    let mut g = rng(seed);
    let mut report = VerificationReport::new(
        "elliptic_restriction",
        json!({"r": r, "k": k, "order": order, "p_order": p_order}),
        Some(seed),
    );
    let mut p_independent = true;
    for trial in 0..trials {
        let (pt, lhs) = with_resampling(
            &mut g,
            |g| random_root_point(g, &field, r, k),
            |pt| dtell_from(&fp, p_order, pt),
        )?;
        report.add_point(pt.to_json_with_order());
        for n in 0..=order {
            let expected = TruncatedSeries::constant(Var::P, p_order, embed(target.coeff(n).clone()));
            let got = lhs.coeff(n);
            if got.coeffs()[1..].iter().any(|c| !c.is_zero()) {
                p_independent = false;
            }
            report.compare(trial, format!("q^{n}"), got, &expected);
        }
    }
    report.p_independent = Some(p_independent);
    Ok(report)
}

/// Rank 3, one box, at `t^{1/2} = (2, 3, zeta_6^k / 6)` and `w_j = zeta_3^j`:
/// the elliptic `q^1` coefficient is `(-1)^{m+1} 3` for `k = 3m` and zero
/// otherwise, at every order in `p`. Computed in `Q(zeta_12)`.
pub fn verify_elliptic_example(k: i64, p_order: usize) -> Result<VerificationReport> {
    let field = CyclotomicField::new(12)?;
    let z = |e: i64| Cyclotomic::zeta_pow(&field, e);
    let c = |x: Rational| Cyclotomic::from_rational(&field, x);
    // zeta_6 = zeta_12^2 and w_j^{1/2} = zeta_6^j
    let thalf = [c(int(2)), c(int(3)), z(2 * k).mul(&c(Rational::new(1.into(), 6.into())))];
    let whalf = (1..=3).map(|j| z(2 * j)).collect();
    let pt = EvalPoint::new(thalf, whalf)?;
    let fp = FixedPoints::new(3, 1, None)?;
    let series = dtell_from(&fp, p_order, &pt)?;
    let expected = if k.rem_euclid(3) == 0 { 3 * -sign_pow(k / 3) } else { 0 };
    let mut report = VerificationReport::new(
        "elliptic_example",
        json!({"r": 3, "n": 1, "k": k, "p_order": p_order}),
        None,
    );
    report.add_point(pt.to_json_with_order());
    let target = TruncatedSeries::constant(Var::P, p_order, c(int(expected)));
    report.compare(0, "q^1".into(), series.coeff(1), &target);
    report.p_independent = Some(series.coeff(1).coeffs()[1..].iter().all(|x| x.is_zero()));
    Ok(report)
}

/// Rank 2, one box: the framing-dependent weights contribute `-2` in total.
pub fn verify_framing_example(trials: usize, seed: u64) -> Result<VerificationReport> {
    let trials = trials.max(MIN_TRIALS);
    let mut g = rng(seed);
    let mut report =
        VerificationReport::new("framing_example", json!({"r": 2, "n": 1}), Some(seed));
    for trial in 0..trials {
        let (pt, sum) = with_resampling(
            &mut g,
            |g| random_linear_point(g, 2),
            |pt| framing_dependent_sum(2, 1, pt, None),
        )?;
        report.add_point(pt.to_json());
        report.compare(trial, "q^1".into(), &sum, &int(-2));
    }
    Ok(report)
}

/// The constant term of the `b`-series bracket is the Euler class, at every
/// fixed point of size at most `n_max`.
pub fn verify_bseries_limit(
    r: usize,
    n_max: usize,
    b_order: usize,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(MIN_TRIALS);
    let fp = FixedPoints::new(r, n_max, None)?;
    let mut g = rng(seed);
    let mut report = VerificationReport::new(
        "bseries_limit",
        json!({"r": r, "n_max": n_max, "b_order": b_order}),
        Some(seed),
    );
    for trial in 0..trials {
        let (pt, rows) = with_resampling(
            &mut g,
            |g| random_linear_point(g, r),
            |pt| {
                let mut rows = Vec::new();
                for n in 0..=n_max {
                    for (p, v) in fp.of_size(n) {
                        let b = bracket_bseries(v, pt, b_order).map_err(|e| locate(e, p))?;
                        let e = euler(v, pt).map_err(|e| locate(e, p))?;
                        rows.push((serde_json::to_string(p).unwrap_or_default(), b.coeff(0).clone(), e));
                    }
                }
                Ok(rows)
            },
        )?;
        report.add_point(pt.to_json());
        for (label, b, e) in rows {
            report.compare(trial, label, &b, &e);
        }
    }
    Ok(report)
}

/// `DT_r^mot(q) = prod_{i=1}^r DT_1^mot(q L^{(2i - r - 1)/2})`.
pub fn verify_motivic_factorization(r: usize, order: usize) -> Result<VerificationReport> {
    check_r(r)?;
    let lhs = dtmot_closed(r, order);
    let one = dtmot_closed(1, order);
    let mut rhs = TruncatedSeries::one(Var::Q, order, &LaurentHalf::one());
    for i in 1..=r as i64 {
        rhs = rhs.mul(&one.scale_var(&LaurentHalf::monomial(2 * i - r as i64 - 1, int(1))));
    }
    let mut report =
        VerificationReport::new("motivic_factorization", json!({"r": r, "order": order}), None);
    report.add_point(json!({}));
    report.compare_series(0, &lhs, &rhs);
    Ok(report)
}
