//! Gluing vertex contributions over the fixed points of a smooth projective
//! toric 3-fold.

use std::path::Path;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{int, Rational, Ring, TruncatedSeries, Var};
use crate::characters::Monomial;
use crate::dt::{check_r, dtcoh_localization, rng, VerificationReport};
use crate::measures::{random_rational, with_resampling, LinearPoint};
use crate::series::{macmahon, phi};
use crate::{Error, Result};

pub const P3: &str = include_str!("../fixtures/p3.json");
pub const P1_CUBED: &str = include_str!("../fixtures/p1xp1xp1.json");
pub const P3_TWISTED: &str = include_str!("../fixtures/p3_twisted.json");

/// One fixed point: the three tangent weights and optional framing weights.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct Chart {
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub lambda: Option<Vec<Vec<i64>>>,
}

/// Fixed-point data of a toric 3-fold under a torus of rank `torus_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "RawToric")]
pub struct ToricData {
    pub torus_rank: usize,
    pub charts: Vec<Chart>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawToric {
    torus_rank: usize,
    charts: Vec<Chart>,
}

impl TryFrom<RawToric> for ToricData {
    type Error = Error;

    fn try_from(raw: RawToric) -> Result<Self> {
        let d = raw.torus_rank;
        if d == 0 {
            return Err(Error::Malformed("torus_rank must be positive".into()));
        }
        if raw.charts.is_empty() {
            return Err(Error::Malformed("no charts".into()));
        }
        for (a, c) in raw.charts.iter().enumerate() {
            if c.weights.len() != 3 {
                return Err(Error::Malformed(format!(
                    "chart {a} has {} tangent weights, expected 3",
                    c.weights.len()
                )));
            }
            let all = c.weights.iter().chain(c.lambda.iter().flatten());
            for w in all {
                if w.len() != d {
                    return Err(Error::Malformed(format!("chart {a}: weight {w:?} is not of length {d}")));
                }
            }
            if let Some(w) = c.weights.iter().find(|w| w.iter().all(|&x| x == 0)) {
                return Err(Error::Malformed(format!("chart {a}: zero tangent weight {w:?}")));
            }
        }
        Ok(ToricData { torus_rank: d, charts: raw.charts })
    }
}

impl ToricData {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Tangent weights of chart `a` paired with `sigma`.
    pub fn chart_weights(&self, a: usize, sigma: &[Rational]) -> [Rational; 3] {
        let w = &self.charts[a].weights;
        [0, 1, 2].map(|i| pair(&w[i], sigma))
    }
}

pub fn load_toric(path: impl AsRef<Path>) -> Result<ToricData> {
    ToricData::parse(&std::fs::read_to_string(path)?)
}

fn pair(m: &[i64], sigma: &[Rational]) -> Rational {
    m.iter().zip(sigma).map(|(&a, s)| s * int(a)).fold(int(0), |acc, x| acc + x)
}

fn check_generic(s: &[Rational; 3]) -> Result<()> {
    for i in 0..3 {
        if Zero::is_zero(&s[i]) {
            return Err(Error::NonGenericPoint(format!("tangent weight {i} vanishes")));
        }
        for j in i + 1..3 {
            if Zero::is_zero(&(&s[i] + &s[j])) {
                return Err(Error::NonGenericPoint(format!("weights {i} and {j} sum to zero")));
            }
        }
    }
    Ok(())
}

/// `-Phi(s^a)` for every chart, with `s^a_i = m_{a,i} . sigma`.
pub fn chart_exponents(data: &ToricData, sigma: &[Rational]) -> Result<Vec<Rational>> {
    if sigma.len() != data.torus_rank {
        return Err(Error::Malformed(format!("sigma has length {}, expected {}", sigma.len(), data.torus_rank)));
    }
    (0..data.charts.len())
        .map(|a| {
            let s = data.chart_weights(a, sigma);
            check_generic(&s)?;
            Ok(-phi(&s)?)
        })
        .collect()
}

/// `int_X c_3(T_X (x) K_X)` by Atiyah-Bott localization at `sigma`.
pub fn chern_integral(data: &ToricData, sigma: &[Rational]) -> Result<Rational> {
    Ok(chart_exponents(data, sigma)?.into_iter().fold(int(0), |a, b| a + b))
}

fn random_sigma<G: Rng + ?Sized>(g: &mut G, d: usize) -> Vec<Rational> {
    (0..d).map(|_| random_rational(g, true)).collect()
}

/// The Chern integral at two independent random `sigma`, checked to agree and
/// to be an integer.
pub fn chern_integral_sampled(data: &ToricData, seed: u64) -> Result<i64> {
    let mut g = rng(seed);
    let d = data.torus_rank;
    let (_, first) = with_resampling(&mut g, |g| random_sigma(g, d), |s| chern_integral(data, s))?;
    let (_, second) = with_resampling(&mut g, |g| random_sigma(g, d), |s| chern_integral(data, s))?;
    if first != second {
        return Err(Error::NonIntegral(format!("sigma-dependent result {first} vs {second}")));
    }
    if !first.is_integer() {
        return Err(Error::NonIntegral(first.to_string()));
    }
    i64::try_from(first.to_integer()).map_err(|_| Error::OutOfRange(first.to_string()))
}

/// `M((-1)^r q)^{r chi}`, `chi` the Chern integral.
pub fn global_dt(data: &ToricData, r: usize, order: usize, seed: u64) -> Result<TruncatedSeries<Rational>> {
    check_r(r)?;
    let chi = chern_integral_sampled(data, seed)?;
    macmahon(&int(r as i64 * chi), r as i64, order)
}

/// Integer `c` with `sum_i c_i m_i = target`, for the three tangent weights `m`.
fn chart_coordinates(m: &[Vec<i64>], target: &[i64]) -> Result<[i32; 3]> {
    let d = target.len();
    // rows: one per torus coordinate, augmented with the target
    let mut rows: Vec<Vec<Rational>> = (0..d)
        .map(|k| (0..3).map(|i| int(m[i][k])).chain([int(target[k])]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..d).find(|&i| !Zero::is_zero(&rows[i][col])) else {
            continue;
        };
        rows.swap(row, p);
        let inv = Rational::one() / &rows[row][col];
        rows[row].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..d {
            if i != row && !Zero::is_zero(&rows[i][col]) {
                let f = rows[i][col].clone();
                for j in 0..4 {
                    let delta = &rows[row][j] * &f;
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < 3 {
        return Err(Error::Malformed("chart tangent weights are linearly dependent".into()));
    }
    if rows[3..].iter().any(|r| !Zero::is_zero(&r[3])) {
        return Err(Error::Malformed(format!("framing weight {target:?} is not in the span of the chart")));
    }
    let mut c = [0i32; 3];
    for (i, &col) in pivots.iter().enumerate() {
        let x = &rows[i][3];
        if !x.is_integer() {
            return Err(Error::NonIntegral(format!("framing weight {target:?} has coordinate {x}")));
        }
        c[col] = i32::try_from(x.to_integer()).map_err(|_| Error::OutOfRange(x.to_string()))?;
    }
    Ok(c)
}

/// The framing monomials of chart `a` in its own coordinates `t1, t2, t3`.
pub fn chart_lambda(data: &ToricData, a: usize, r: usize) -> Result<Option<Vec<Monomial>>> {
    let chart = &data.charts[a];
    let Some(lambda) = &chart.lambda else {
        return Ok(None);
    };
    if lambda.len() != r {
        return Err(Error::Malformed(format!("chart {a} has {} framing weights, r = {r}", lambda.len())));
    }
    lambda
        .iter()
        .map(|l| chart_coordinates(&chart.weights, l).map(|c| Monomial::t(c[0], c[1], c[2])))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// The product over charts of the localized cohomological series equals
/// `global_dt`; each chart factor is also compared with its closed form.
///
/// Data whose Chern integral is not an integer (e.g. a single affine chart)
/// are checked chart by chart only.
pub fn verify_gluing(data: &ToricData, r: usize, order: usize, trials: usize, seed: u64) -> Result<VerificationReport> {
    check_r(r)?;
    let trials = trials.max(crate::dt::MIN_TRIALS);
    let lambdas = (0..data.charts.len()).map(|a| chart_lambda(data, a, r)).collect::<Result<Vec<_>>>()?;
    let mut report = VerificationReport::new(
        "toric_gluing",
        json!({"r": r, "order": order, "charts": data.charts.len()}),
        Some(seed),
    );
    let global = match chern_integral_sampled(data, seed) {
        Ok(chi) => Some((chi, macmahon(&int(r as i64 * chi), r as i64, order)?)),
        Err(Error::NonIntegral(msg)) => {
            report.notes.push(format!("no global comparison: {msg}"));
            None
        }
        Err(e) => return Err(e),
    };
    let mut g = rng(seed);
    let d = data.torus_rank;
    let n = data.charts.len();
    for trial in 0..trials {
        let ((sigma, v), factors) = with_resampling(
            &mut g,
            |g| {
                let sigma = random_sigma(g, d);
                let v: Vec<Vec<Rational>> =
                    (0..n).map(|_| (0..r).map(|_| random_rational(g, true)).collect()).collect();
                (sigma, v)
            },
            |(sigma, v)| {
                let exps = chart_exponents(data, sigma)?;
                Ok(glue_charts(data, r, order, sigma, v, &lambdas)?.into_iter().zip(exps).collect::<Vec<_>>())
            },
        )?;
        report.add_point(json!({
            "sigma": sigma.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "v": v.iter().map(|vs| vs.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }));
        let mut product = TruncatedSeries::one(Var::Q, order, &int(1));
        let mut total = int(0);
        for (a, (local, exponent)) in factors.iter().enumerate() {
            let closed = macmahon(&(exponent * int(r as i64)), r as i64, order)?;
            for i in 0..=order {
                report.compare(trial, format!("chart {a} q^{i}"), local.coeff(i), closed.coeff(i));
            }
            product = product.mul(local);
            total += exponent;
        }
        if let Some((chi, global)) = &global {
            report.compare(trial, "sum of chart exponents".into(), &total, &int(*chi));
            report.compare_series(trial, &product, global);
        }
    }
    Ok(report)
}

fn glue_charts(
    data: &ToricData,
    r: usize,
    order: usize,
    sigma: &[Rational],
    v: &[Vec<Rational>],
    lambdas: &[Option<Vec<Monomial>>],
) -> Result<Vec<TruncatedSeries<Rational>>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..data.charts.len())
            .map(|a| {
                let s = data.chart_weights(a, sigma);
                let pt = LinearPoint::new(s, v[a].clone());
                let lambda = lambdas[a].as_deref();
                scope.spawn(move || dtcoh_localization(r, order, &pt, lambda))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("chart worker panicked")).collect()
    })
}

impl ToricData {
    pub fn to_json(&self) -> Value {
        json!({
            "torus_rank": self.torus_rank,
            "charts": self.charts.iter().map(|c| json!({"weights": c.weights, "lambda": c.lambda})).collect::<Vec<_>>(),
        })
    }
}
