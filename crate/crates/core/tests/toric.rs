mod oracle;

use quot_dt::algebra::{int, Rational};
use quot_dt::toric::*;

fn p3() -> ToricData {
    ToricData::parse(P3).unwrap()
}

fn p1_cubed() -> ToricData {
    ToricData::parse(P1_CUBED).unwrap()
}

#[test]
fn chern_integrals_agree_with_chern_roots() {
    let p3_roots = oracle::chern_root_integral(&[4], &[vec![1], vec![1], vec![1], vec![1]], &[3]);
    assert_eq!(p3_roots, -20);
    assert_eq!(chern_integral_sampled(&p3(), 1).unwrap(), p3_roots);
    let cube_roots =
        oracle::chern_root_integral(&[2, 2, 2], &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]], &[1, 1, 1]);
    assert_eq!(chern_integral_sampled(&p1_cubed(), 1).unwrap(), cube_roots);
    for seed in 2..6 {
        assert_eq!(chern_integral_sampled(&p3(), seed).unwrap(), -20);
    }
}

#[test]
fn chart_exponents_sum_to_the_integral() {
    let sigma = [int(3), Rational::new(5.into(), 7.into()), int(-11)];
    let total: Rational = chart_exponents(&p1_cubed(), &sigma).unwrap().into_iter().sum();
    assert_eq!(total, chern_integral(&p1_cubed(), &sigma).unwrap());
    assert_eq!(total, int(-16));
}

#[test]
fn global_series() {
    let inv = |k: usize, sign: usize, order: usize| oracle::series_inv(&oracle::macmahon_power(k, sign, order), order);
    assert_eq!(global_dt(&p3(), 1, 3, 1).unwrap().coeffs(), &inv(20, 1, 3)[..]);
    assert_eq!(global_dt(&p3(), 2, 2, 1).unwrap().coeffs(), &inv(40, 0, 2)[..]);
    assert_eq!(global_dt(&p1_cubed(), 3, 2, 1).unwrap().coeff(0), &int(1));
}

#[test]
fn gluing_holds_on_fixtures() {
    for data in [p3(), p1_cubed()] {
        for r in 1..=2 {
            let report = verify_gluing(&data, r, 3, 3, 11).unwrap();
            assert!(report.pass, "r = {r}");
        }
    }
    let twisted = ToricData::parse(P3_TWISTED).unwrap();
    assert!(verify_gluing(&twisted, 2, 3, 3, 11).unwrap().pass);
    assert!(verify_gluing(&twisted, 1, 2, 3, 11).is_err());
}

#[test]
fn loads_from_disk() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/p1xp1xp1.json");
    assert_eq!(load_toric(path).unwrap(), p1_cubed());
    assert!(load_toric("/nonexistent/toric.json").is_err());
}
