use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rug::Rational;

use super::word::Word;
use crate::error::{Error, Result};

/// A finite `Q`-linear combination of words, an element of `Q<x,y>`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// in the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HPoly {
    terms: BTreeMap<Word, Rational>,
}

impl HPoly {
    pub fn zero() -> HPoly {
        HPoly::default()
    }

    pub fn one() -> HPoly {
        HPoly::from(Word::empty())
    }

    pub fn term(coeff: impl Into<Rational>, word: Word) -> HPoly {
        let mut p = HPoly::zero();
        p.add_term(coeff.into(), word);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Rational {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// Terms in increasing graded-lex order of their words.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, coeff: Rational, word: Word) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &HPoly, scale: &Rational) {
        for (w, c) in other.iter() {
            self.add_term(Rational::from(c * scale), w.clone());
        }
    }

    pub fn scale(&self, s: &Rational) -> HPoly {
        let mut out = HPoly::zero();
        out.add_scaled(self, s);
        out
    }

    /// Applies a linear map defined on words.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (w, c) in self.iter() {
            out.add_scaled(&f(w), c);
        }
        out
    }

    /// Bilinear extension of a map on pairs of words.
    pub fn bilinear(&self, other: &HPoly, mut f: impl FnMut(&Word, &Word) -> HPoly) -> HPoly {
        let mut out = HPoly::zero();
        for (u, a) in self.iter() {
            for (v, b) in other.iter() {
                out.add_scaled(&f(u, v), &Rational::from(a * b));
            }
        }
        out
    }

    /// Noncommutative (concatenation) product.
    pub fn concat(&self, other: &HPoly) -> HPoly {
        self.bilinear(other, |u, v| HPoly::from(u.concat(v)))
    }

    /// Every word with nonzero coefficient is empty or of the form `x ... y`.
    pub fn is_admissible(&self) -> bool {
        self.terms.keys().all(Word::is_admissible)
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    /// Parses `"c1*word1 + c2*word2 - word3"`; coefficients are integers or `p/q`.
    pub fn parse(s: &str) -> Result<HPoly> {
        let s = s.trim();
        if s == "0" {
            return Ok(HPoly::zero());
        }
        let mut out = HPoly::zero();
        let normalized = s.replace(" - ", " + -");
        for chunk in normalized.split(" + ") {
            let chunk = chunk.trim();
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, chunk),
            };
            let (coeff, word) = match body.split_once('*') {
                Some((c, w)) => (
                    c.trim()
                        .parse::<Rational>()
                        .map_err(|e| Error::Parse(format!("coefficient {c:?}: {e}")))?,
                    Word::parse(w)?,
                ),
                None => (Rational::from(1), Word::parse(body)?),
            };
            out.add_term(coeff * sign, word);
        }
        Ok(out)
    }
}

impl From<Word> for HPoly {
    fn from(w: Word) -> HPoly {
        HPoly::term(1, w)
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    fn add(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from(1));
        out
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::from(-1));
        out
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        self.scale(&Rational::from(-1))
    }
}

/// `"c1*word1 + c2*word2"`, highest word first; unit coefficients are omitted.
impl fmt::Display for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = *c < 0;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let magnitude = Rational::from(c.abs_ref());
            if magnitude == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{magnitude}*{w}")?;
            }
        }
        Ok(())
    }
}
