use rug::Rational;

use mzv_workbench::algebra::{admissible_words_of_weight, sigma_subst, HPoly};
use mzv_workbench::genfun::{
    check_fg, check_lemma33, check_thm31, eval_f, eval_g, lemma33_instances, ohno_sum_value,
    residue_coefficient, residue_profile, taylor_vs_ohno, GenFun, Lemma33Part, Thm31Case,
};
use mzv_workbench::index::{word_to_index, BiSeq};
use mzv_workbench::numeric::{eval_zeta_tilde, EvalParams, NumValue};

const TOL: f64 = 1e-8;

fn params() -> EvalParams {
    EvalParams::default()
}

fn bs(s: &str) -> BiSeq {
    BiSeq::parse(s).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

#[test]
fn sigma_coefficients_are_ohno_sums() {
    let p = EvalParams {
        prec_bits: 104,
        ..params()
    };
    for w in (2..=5).flat_map(admissible_words_of_weight) {
        let k = word_to_index(&w).unwrap();
        let image = sigma_subst(&HPoly::from(w.clone()), 4);
        for l in 0..=4 {
            let via_algebra = eval_zeta_tilde(image.coeff(l), &p).unwrap();
            let direct = ohno_sum_value(&k, l as u32, &p).unwrap();
            assert!(
                via_algebra.agrees_with(&direct, TOL),
                "{w} l={l}: {via_algebra} vs {direct}"
            );
        }
    }
}

#[test]
fn f_equals_g_samples() {
    let p = params();
    for s in ["1,1", "2,1", "1,2", "2,1;1,1", "1,1;1,2"] {
        for lam in [q(1, 3), q(-1, 2), q(7, 5)] {
            let r = check_fg(&bs(s), &lam, &p, TOL).unwrap();
            assert!(r.pass, "{r}");
        }
    }
}

#[test]
fn f_at_zero_is_the_zeta_value() {
    let p = params();
    let b = bs("2,1;1,2");
    let f0 = eval_f(&b, &Rational::new(), &p).unwrap();
    let z = mzv_workbench::numeric::eval_mzv(&word_to_index(&b.word()).unwrap(), &p).unwrap();
    assert!(f0.agrees_with(&z, TOL));
}

#[test]
fn lambda_must_avoid_positive_integers() {
    let p = params();
    assert!(eval_f(&bs("1,1"), &Rational::from(2), &p).is_err());
    assert!(eval_g(&bs("1,1"), &Rational::from(1), &p).is_err());
    assert!(eval_f(&bs("1,1"), &Rational::from(-3), &p).is_ok());
}

#[test]
fn four_case_relation_samples() {
    let p = params();
    let cases = [
        ("2,2", Thm31Case::for_biseq(&bs("2,2"))),
        ("1,1;1,1", Thm31Case::for_biseq(&bs("1,1;1,1"))),
        ("2,1;1,1", Thm31Case::for_biseq(&bs("2,1;1,1"))),
        ("1,2;1,1", Thm31Case::for_biseq(&bs("1,2;1,1"))),
    ];
    for (s, case) in cases {
        for which in [GenFun::F, GenFun::G] {
            let r = check_thm31(&bs(s), case, &q(1, 3), which, &p, TOL).unwrap();
            assert!(r.pass, "{r}");
        }
    }
    assert!(check_thm31(&bs("1,1"), Thm31Case::IV, &q(1, 3), GenFun::F, &p, TOL).is_err());
}

#[test]
fn every_case_is_reached() {
    let mut seen: Vec<Thm31Case> = BiSeq::all_up_to_weight(5)
        .iter()
        .map(Thm31Case::for_biseq)
        .collect();
    seen.sort_by_key(|c| c.as_str());
    seen.dedup();
    assert_eq!(seen.len(), 4);
}

#[test]
fn lemma_samples() {
    let p = params();
    let mut parts = Vec::new();
    for s in ["2,1;1,2", "1,2;2,1", "1,1;1,1;1,1"] {
        let b = bs(s);
        for (part, pos) in lemma33_instances(&b) {
            parts.push(part);
            for lam in [q(1, 3), q(1, 2)] {
                let r = check_lemma33(part, &b, pos, &lam, &p, TOL).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }
    parts.dedup();
    assert!(parts.len() >= 4, "{parts:?}");
    assert!(check_lemma33(Lemma33Part::Ii, &bs("2,1"), 1, &q(1, 3), &p, TOL).is_err());
}

#[test]
fn power_series_with_remainder() {
    let p = params();
    for s in ["1,1", "2,1", "1,1;1,1"] {
        let r = taylor_vs_ohno(&bs(s), 6, &q(1, 4), &p, TOL).unwrap();
        assert!(r.pass, "{r}");
    }
    assert!(taylor_vs_ohno(&bs("1,1"), 6, &q(1, 2), &p, TOL).is_err());
}

#[test]
fn residues_in_closed_form() {
    let p = params();
    // f({1,1}) = sum 1/(n (n - lambda)): residue 1/n; f({2,1}): 1/n^2
    for n in 1..=6u64 {
        let c11 = residue_coefficient(&bs("1,1"), n, &p).unwrap();
        let c21 = residue_coefficient(&bs("2,1"), n, &p).unwrap();
        let exact = |d: u64| NumValue::from_rational(p.prec_bits, &Rational::from((1, d)));
        assert!(c11.agrees_with(&exact(n), 1e-20));
        assert!(c21.agrees_with(&exact(n * n), 1e-20));
    }
}

#[test]
fn residues_match_the_numeric_limit() {
    let p = params();
    for s in ["1,2", "2,1;1,1"] {
        for est in residue_profile(&bs(s), 4, 4, &p).unwrap() {
            let gap = est.limit_gap().unwrap();
            // the extrapolated limit is accurate to O(1e-8)
            assert!(gap < 1e-6, "{s} n={}: C_n {} gap {gap:e}", est.n, est.c_n);
        }
    }
}
