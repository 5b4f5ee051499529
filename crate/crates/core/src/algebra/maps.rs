use super::poly::HPoly;
use super::word::{Letter, Word};
use crate::error::{Error, Result};

/// The anti-involution swapping `x <-> y` and reversing each word.
pub fn tau(p: &HPoly) -> HPoly {
    p.map_words(|w| HPoly::from(w.tau()))
}

/// The derivation with `D_n(x) = 0`, `D_n(y) = x^n y`, for `n >= 1`.
pub fn derivation(n: u32, p: &HPoly) -> Result<HPoly> {
    if n == 0 {
        return Err(Error::ZeroDerivation(n));
    }
    Ok(p.map_words(|w| derivation_word(n, w)))
}

/// Leibniz rule on a single word: one term per `y`.
pub(crate) fn derivation_word(n: u32, w: &Word) -> HPoly {
    let letters: Vec<Letter> = w.letters().collect();
    let mut out = HPoly::zero();
    for (i, _) in letters.iter().enumerate().filter(|(_, l)| **l == Letter::Y) {
        let image = letters[..i]
            .iter()
            .copied()
            .chain(std::iter::repeat_n(Letter::X, n as usize))
            .chain(letters[i..].iter().copied());
        out.add_term(1.into(), Word::from_letters(image));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> HPoly {
        HPoly::parse(s).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(&p("xy")), p("xy"));
        assert_eq!(tau(&p("xxy")), p("xyy"));
        assert_eq!(
            tau(&p("xxy + 3*xyxy")),
            &tau(&p("xxy")) + &tau(&p("3*xyxy"))
        );
    }

    #[test]
    fn derivation_examples() {
        assert_eq!(derivation(1, &p("xy")).unwrap(), p("xxy"));
        assert_eq!(derivation(2, &p("y")).unwrap(), p("xxy"));
        assert_eq!(derivation(1, &p("x")).unwrap(), HPoly::zero());
        assert_eq!(derivation(1, &p("yy")).unwrap(), p("xyy + yxy"));
    }

    #[test]
    fn derivation_rejects_zero_order() {
        assert_eq!(derivation(0, &p("y")), Err(Error::ZeroDerivation(0)));
    }

    #[test]
    fn derivation_term_count_is_depth() {
        let w = Word::parse("xyxyyxy").unwrap();
        let image = derivation_word(3, &w);
        let total: rug::Rational = image.iter().map(|(_, c)| c.clone()).sum();
        assert_eq!(total, w.depth());
    }
}
