use rug::Rational;

use super::maps::derivation_word;
use super::poly::HPoly;
use super::word::{Letter, Word};

/// A power series in `lambda` with `HPoly` coefficients, truncated after
/// degree `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaPoly {
    coeffs: Vec<HPoly>,
}

impl LambdaPoly {
    pub fn zero(order: usize) -> LambdaPoly {
        LambdaPoly {
            coeffs: vec![HPoly::zero(); order + 1],
        }
    }

    pub fn constant(p: HPoly, order: usize) -> LambdaPoly {
        let mut out = LambdaPoly::zero(order);
        out.coeffs[0] = p;
        out
    }

    pub fn from_coeffs(mut coeffs: Vec<HPoly>, order: usize) -> LambdaPoly {
        coeffs.resize(order + 1, HPoly::zero());
        LambdaPoly { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &HPoly {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[HPoly] {
        &self.coeffs
    }

    pub fn add_assign(&mut self, other: &LambdaPoly) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = &*a + b;
        }
    }

    pub fn scale(&self, s: &Rational) -> LambdaPoly {
        LambdaPoly {
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Concatenation product, dropping degrees above the order.
    pub fn concat(&self, other: &LambdaPoly) -> LambdaPoly {
        let order = self.order().min(other.order());
        let mut out = LambdaPoly::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] = &out.coeffs[i + j] + &a.concat(b);
            }
        }
        out
    }

    /// Applies `sum_{n >= 1} (lambda^n / n) D_n` coefficientwise.
    fn apply_generator(&self) -> LambdaPoly {
        let order = self.order();
        let mut out = LambdaPoly::zero(order);
        for (d, c) in self.coeffs.iter().enumerate() {
            for n in 1..=(order - d) {
                let image = c.map_words(|w| derivation_word(n as u32, w));
                let scaled = image.scale(&Rational::from((1, n as u32)));
                out.coeffs[d + n] = &out.coeffs[d + n] + &scaled;
            }
        }
        out
    }
}

/// `exp(sum_{n >= 1} (lambda^n / n) D_n)(p)` truncated at `lambda^order`,
/// summed as `sum_r Delta^r(p) / r!` with exact rational coefficients.
pub fn sigma_exp(p: &HPoly, order: usize) -> LambdaPoly {
    let mut term = LambdaPoly::constant(p.clone(), order);
    let mut total = term.clone();
    // Delta raises the lambda-degree by at least one, so order+1 steps suffice.
    for r in 1..=order {
        term = term.apply_generator().scale(&Rational::from((1, r as u32)));
        total.add_assign(&term);
    }
    total
}

/// Substitutes `x -> x`, `y -> sum_{j=0}^{order} x^j y lambda^j` and multiplies out.
pub fn sigma_subst(p: &HPoly, order: usize) -> LambdaPoly {
    let x_image = LambdaPoly::constant(HPoly::from(Word::x()), order);
    let y_image = LambdaPoly::from_coeffs(
        (0..=order)
            .map(|j| HPoly::from(Word::xy_power(j as u32, 1)))
            .collect(),
        order,
    );
    let mut total = LambdaPoly::zero(order);
    for (w, c) in p.iter() {
        let mut image = LambdaPoly::constant(HPoly::one(), order);
        for letter in w.letters() {
            image = image.concat(match letter {
                Letter::X => &x_image,
                Letter::Y => &y_image,
            });
        }
        total.add_assign(&image.scale(c));
    }
    total
}
