use rug::ops::Pow;
use rug::{Float, Rational};

use mzv_workbench::algebra::HPoly;
use mzv_workbench::genfun::eval_f;
use mzv_workbench::index::{BiSeq, Index};
use mzv_workbench::numeric::{
    eval_mzv, eval_zeta_tilde, machin_pi, EvalParams, NestedSeries, NumValue, TailMode, Var,
};

const PREC: u32 = 256;

fn params() -> EvalParams {
    EvalParams::default()
}

fn idx(s: &str) -> Index {
    Index::parse(s).unwrap()
}

fn exact(x: Float) -> NumValue {
    NumValue::new(x, 0.0)
}

fn pi_power(e: u32) -> Float {
    let pi = machin_pi(PREC + 64);
    Float::with_val(PREC + 64, (&pi).pow(e))
}

fn assert_contains(v: &NumValue, truth: &NumValue, slack: f64) {
    let d = v.abs_diff(truth);
    assert!(d <= v.err + truth.err + slack, "{v} vs {truth}: diff {d:e}");
}

/// zeta(3) = 5/2 sum (-1)^{n+1} / (n^3 binom(2n, n)).
fn apery_zeta3() -> NumValue {
    let mut sum = Rational::new();
    let mut binom = Rational::from(1);
    for n in 1..=200u32 {
        binom = binom * (2 * (2 * n - 1)) / n;
        let term = Rational::from(1) / (binom.clone() * Rational::from(n).pow(3u32));
        if n % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    // alternating with terms below 4^-200
    NumValue::new(Float::with_val(PREC, sum * 5u32 / 2u32), 1e-100)
}

#[test]
fn zeta3_two_ways() {
    let z3 = apery_zeta3();
    assert_contains(&eval_mzv(&idx("3"), &params()).unwrap(), &z3, 0.0);
    // Euler
    assert_contains(&eval_mzv(&idx("2,1"), &params()).unwrap(), &z3, 0.0);
}

#[test]
fn even_weight_closed_forms() {
    let p = params();
    let cases = [
        ("2", 2, 6u32),
        ("4", 4, 90),
        ("3,1", 4, 360),
        ("2,2", 4, 120),
        ("2,1,1", 4, 90),
        ("2,2,2", 6, 5040),
        ("6", 6, 945),
    ];
    for (k, e, den) in cases {
        let truth = exact(Float::with_val(PREC, pi_power(e) / den));
        assert_contains(&eval_mzv(&idx(k), &p).unwrap(), &truth, 1e-60);
    }
}

#[test]
fn every_tail_mode_contains_the_truth() {
    let truth = exact(Float::with_val(PREC, pi_power(4) / 90u32));
    for mode in [
        TailMode::BoundOnly,
        TailMode::Richardson,
        TailMode::Enclosure,
    ] {
        let p = EvalParams {
            cutoff: 1000,
            tail_mode: mode,
            ..params()
        };
        let v = eval_mzv(&idx("2,1,1"), &p).unwrap();
        assert_contains(&v, &truth, 0.0);
        let limit = match mode {
            TailMode::Enclosure => 1e-15,
            _ => 0.1,
        };
        assert!(v.err < limit, "{mode:?}: {}", v.err);
    }
}

#[test]
fn shifted_finite_sum_matches_brute_force() {
    let third = Rational::from((1, 3));
    let s = NestedSeries::new(vec![
        Var::new([(third.clone(), 1), (Rational::new(), 2)]).unwrap(),
        Var::new([(Rational::from(-2), 2)]).unwrap(),
        Var::power(1),
    ])
    .unwrap();
    let n = 25u32;
    let mut want = Rational::new();
    for a in 1..=n {
        let fa = Rational::from(1) / (Rational::from(a).pow(2u32) * (Rational::from(a) - &third));
        for b in 1..a {
            let fb = Rational::from(1) / Rational::from(b + 2).pow(2u32);
            for c in 1..b {
                want += fa.clone() * &fb / c;
            }
        }
    }
    let got = s.finite_sum(n as u64, PREC).unwrap();
    assert_contains(&got, &exact(Float::with_val(PREC, &want)), 1e-70);
}

#[test]
fn generating_function_against_digamma_closed_form() {
    // f({1,1}; -1/2) = sum 1/(n (n + 1/2)) = 4 - 4 ln 2
    let bs = BiSeq::parse("1,1").unwrap();
    let f = eval_f(&bs, &Rational::from((-1, 2)), &params()).unwrap();
    let ln2 = Float::with_val(PREC + 64, 2).ln();
    let truth = exact(Float::with_val(PREC, 4 - ln2 * 4u32));
    assert_contains(&f, &truth, 1e-60);
}

#[test]
fn zeta_tilde_is_linear() {
    let p = params();
    let z2 = eval_mzv(&idx("2"), &p).unwrap();
    let square = eval_zeta_tilde(&HPoly::parse("2*xyxy + xxxy").unwrap(), &p).unwrap();
    assert_contains(&square, &z2.mul(&z2), 0.0);
    let zero = eval_zeta_tilde(&HPoly::parse("xxyy - xyyy").unwrap(), &p).unwrap();
    // zeta(3,1) = zeta(2,1,1)/4
    let z211 = eval_mzv(&idx("2,1,1"), &p).unwrap();
    let z31 = eval_mzv(&idx("3,1"), &p).unwrap();
    assert_contains(&zero, &z31.sub(&z211), 0.0);
    assert_contains(&z31.scale(&Rational::from(4)), &z211, 0.0);
    assert!(eval_zeta_tilde(&HPoly::parse("yxy").unwrap(), &p).is_err());
}

#[test]
fn invalid_parameters_are_rejected() {
    let p = params();
    assert!(eval_mzv(&idx("1,2"), &p).is_err());
    assert!(eval_mzv(&idx("2"), &EvalParams { prec_bits: 16, ..p }).is_err());
    assert!(eval_mzv(&idx("2"), &p.with_cutoff(3)).is_err());
    // pole inside the summation range
    let s = NestedSeries::new(vec![Var::new([(Rational::from(3), 2)]).unwrap()]).unwrap();
    assert!(s.evaluate(&p).is_err());
}
