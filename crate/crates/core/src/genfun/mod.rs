//! Generating functions of Ohno sums, shifted brackets, and numeric checks
//! of the identities relating them.

mod bracket;
mod expansion;
mod relations;
mod report;

pub use bracket::{check_lambda, eval_bracket, eval_f, eval_g, BracketSpec, Group};
pub use expansion::{
    residue_coefficient, residue_limit, residue_profile, residue_reconstruction,
    taylor_partial_sum, taylor_remainder_bound, taylor_vs_ohno, Reconstruction, ResidueEstimate,
};
pub use relations::{
    check_fg, check_lemma33, check_ohno, check_thm31, heart_identity_holds, lemma33_instances,
    lemma33_sides, ohno_sum_value, scalar_identity_failures, spade_identity_holds, thm31_sides,
    GenFun, Lemma33Part, Thm31Case,
};
pub use report::RelationReport;
