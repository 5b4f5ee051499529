//! The harmonic algebra `(Q<x,y>, +, *)` and the maps acting on it.
//!
//! Everything here is exact: coefficients are arbitrary-size rationals.

mod lambda;
mod maps;
mod poly;
mod stuffle;
mod word;

pub use lambda::{sigma_exp, sigma_subst, LambdaPoly};
pub use maps::{derivation, tau};
pub use poly::HPoly;
pub use stuffle::{stuffle, stuffle_words};
pub use word::{admissible_words_of_weight, words_of_weight, Letter, Word};

/// Concatenation product of two polynomials.
pub fn concat(a: &HPoly, b: &HPoly) -> HPoly {
    a.concat(b)
}

pub fn is_admissible(p: &HPoly) -> bool {
    p.is_admissible()
}
