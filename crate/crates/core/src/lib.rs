//! Symbolic-numeric workbench for multiple zeta values.
//!
//! * [`algebra`]: the harmonic algebra on `Q<x,y>` with its stuffle product,
//!   the anti-involution `tau`, the derivations `D_n` and the automorphism
//!   `exp(sum lambda^n D_n / n)`.
//! * [`index`]: indices, dual indices, Ohno compositions and `{k_i, l_i}`
//!   sequences.
//! * [`numeric`]: nested-sum evaluation with rigorous error radii.
//! * [`genfun`]: the generating functions `f`, `g`, the shifted brackets and
//!   the relation checks built on them.
//! * [`cli`]: command-line front end.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod genfun;
pub mod index;
pub mod numeric;

pub use error::{Error, Result};
