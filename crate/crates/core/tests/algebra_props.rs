use proptest::prelude::*;
use rug::Rational;

use mzv_workbench::algebra::{
    derivation, sigma_exp, sigma_subst, stuffle, tau, HPoly, Letter, Word,
};

fn p(s: &str) -> HPoly {
    HPoly::parse(s).unwrap()
}

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 0..=max_len).prop_map(|bits| {
        Word::from_letters(
            bits.into_iter()
                .map(|b| if b { Letter::Y } else { Letter::X }),
        )
    })
}

fn poly_strategy() -> impl Strategy<Value = HPoly> {
    prop::collection::vec((-3i32..=3, word_strategy(4)), 0..4).prop_map(|terms| {
        let mut out = HPoly::zero();
        for (c, w) in terms {
            out.add_term(Rational::from(c), w);
        }
        out
    })
}

#[test]
fn stuffle_of_letters_and_powers() {
    // z_2 * z_2 = 2 z_2 z_2 + z_4
    assert_eq!(stuffle(&p("xy"), &p("xy")), p("2*xyxy + xxxy"));
    // z_1 * z_1 = 2 z_1 z_1 + z_2
    assert_eq!(stuffle(&p("y"), &p("y")), p("2*yy + xy"));
    // x-powers are appended
    assert_eq!(stuffle(&p("xx"), &p("xy")), p("xyxx"));
    assert_eq!(stuffle(&HPoly::one(), &p("xyy")), p("xyy"));
    // z_2 * z_1 = z_2 z_1 + z_1 z_2 + z_3
    assert_eq!(stuffle(&p("xy"), &p("y")), p("xyy + yxy + xxy"));
}

#[test]
fn stuffle_count_matches_quasi_shuffles() {
    // z_a z_b * z_c has 3 + 2 = 5 terms (all coefficients 1 for distinct letters)
    let prod = stuffle(&p("xxyxy"), &p("y"));
    assert_eq!(prod.len(), 5);
}

#[test]
fn derivation_examples() {
    assert_eq!(derivation(1, &p("xy")).unwrap(), p("xxy"));
    assert_eq!(derivation(2, &p("yy")).unwrap(), p("xxyy + yxxy"));
    assert_eq!(derivation(3, &p("xxx")).unwrap(), HPoly::zero());
    assert!(derivation(0, &p("y")).is_err());
}

#[test]
fn sigma_low_orders_by_hand() {
    // sigma(y) = y + lambda xy + lambda^2 xxy + ...
    let s = sigma_subst(&p("y"), 3);
    for j in 0..=3 {
        assert_eq!(s.coeff(j), &HPoly::from(Word::xy_power(j as u32, 1)));
    }
    let e = sigma_exp(&p("xyy"), 2);
    assert_eq!(e.coeff(0), &p("xyy"));
    assert_eq!(e.coeff(1), &p("xxyy + xyxy"));
    assert_eq!(e.coeff(2), &p("xxxyy + xxyxy + xyxxy"));
}

#[test]
fn display_round_trip() {
    for s in ["2*xyxy + xxxy", "-1/3*xy + y", "0", "xxy - 2*yx"] {
        let q = p(s);
        assert_eq!(p(&q.to_string()), q);
    }
}

proptest! {
    #[test]
    fn stuffle_commutes(a in poly_strategy(), b in poly_strategy()) {
        prop_assert_eq!(stuffle(&a, &b), stuffle(&b, &a));
    }

    #[test]
    fn stuffle_associates(a in word_strategy(3), b in word_strategy(3), c in word_strategy(3)) {
        let (a, b, c) = (HPoly::from(a), HPoly::from(b), HPoly::from(c));
        prop_assert_eq!(stuffle(&stuffle(&a, &b), &c), stuffle(&a, &stuffle(&b, &c)));
    }

    #[test]
    fn stuffle_is_bilinear(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(stuffle(&(&a + &b), &c), &stuffle(&a, &c) + &stuffle(&b, &c));
    }

    #[test]
    fn stuffle_preserves_weight(a in word_strategy(5), b in word_strategy(5)) {
        let w = a.weight() + b.weight();
        let prod = stuffle(&HPoly::from(a), &HPoly::from(b));
        prop_assert!(prod.iter().all(|(u, _)| u.weight() == w));
    }

    #[test]
    fn tau_reverses_and_squares_to_one(a in word_strategy(8), b in word_strategy(8)) {
        let (pa, pb) = (HPoly::from(a), HPoly::from(b));
        prop_assert_eq!(tau(&tau(&pa)), pa.clone());
        prop_assert_eq!(tau(&pa.concat(&pb)), tau(&pb).concat(&tau(&pa)));
    }

    #[test]
    fn derivation_is_leibniz(n in 1u32..4, a in poly_strategy(), b in poly_strategy()) {
        let lhs = derivation(n, &a.concat(&b)).unwrap();
        let rhs = &derivation(n, &a).unwrap().concat(&b) + &a.concat(&derivation(n, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_forms_agree(w in word_strategy(5), order in 0usize..4) {
        let w = HPoly::from(w);
        prop_assert_eq!(sigma_exp(&w, order), sigma_subst(&w, order));
    }
}
