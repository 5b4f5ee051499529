//! Rigorous arbitrary-precision evaluation of multiple zeta values and of
//! the shifted nested sums built from them.

mod dd;
mod mzv;
mod series;
mod tail;
mod value;

pub use dd::DoubleDouble;
pub use mzv::{
    adaptive, eval_dn_image, eval_dn_image_via_algebra, eval_mzv, eval_series, eval_zeta_tilde,
    machin_pi,
};
pub use series::{Factor, NestedSeries, Var, MAX_CUTOFF};
pub use value::{EvalParams, NumValue, TailMode};
