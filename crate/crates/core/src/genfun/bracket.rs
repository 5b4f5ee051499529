use std::fmt;

use rug::Rational;

use crate::error::{Error, Result};
use crate::index::BiSeq;
use crate::numeric::{eval_series, EvalParams, NestedSeries, NumValue, Var};

/// One group `(n - shift)^k` followed by `l` factors `(n - lambda)^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Group {
    pub k: u32,
    pub l: u32,
    pub shift: u32,
}

impl Group {
    pub fn new(k: u32, l: u32, shift: u32) -> Group {
        Group { k, l, shift }
    }
}

/// The nested sum
/// `sum_{n_1 > ... > n_L > 0} prod_i (n_{L_{i-1}+1} - a_i)^{-k_i} prod_{j in block i} (n_j - lambda)^{-1}`.
///
/// A group with `k = 0` adds no base factor, so its `l` variables continue the
/// previous block; a group with `l = 0` owns no variable, so its base factor
/// lands on the first variable of the next nonempty block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketSpec {
    groups: Vec<Group>,
    lambda: Rational,
}

/// `lambda` must not be a positive integer.
pub fn check_lambda(lambda: &Rational) -> Result<()> {
    if *lambda.denom() == 1 && *lambda > 0 {
        return Err(Error::PositiveIntegerLambda(lambda.to_string()));
    }
    Ok(())
}

impl BracketSpec {
    pub fn new(groups: Vec<Group>, lambda: Rational) -> Result<BracketSpec> {
        check_lambda(&lambda)?;
        match (groups.first(), groups.last()) {
            (Some(first), Some(last)) if first.k >= 1 && last.l >= 1 => {}
            _ => {
                return Err(Error::NotAdmissible(format!(
                    "bracket groups {groups:?} need k_1 >= 1 and l_m >= 1"
                )))
            }
        }
        Ok(BracketSpec { groups, lambda })
    }

    /// All shifts zero: the bracket of `f`.
    pub fn plain(bs: &BiSeq, lambda: Rational) -> Result<BracketSpec> {
        BracketSpec::new(
            bs.groups()
                .iter()
                .map(|&(k, l)| Group::new(k, l, 0))
                .collect(),
            lambda,
        )
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    /// Number of summation variables.
    pub fn depth(&self) -> u32 {
        self.groups.iter().map(|g| g.l).sum()
    }

    pub fn series(&self) -> Result<NestedSeries> {
        let mut vars = Vec::with_capacity(self.depth() as usize);
        let mut pending: Vec<(Rational, u32)> = Vec::new();
        for g in &self.groups {
            if g.k > 0 {
                pending.push((Rational::from(g.shift), g.k));
            }
            for _ in 0..g.l {
                let mut factors = std::mem::take(&mut pending);
                factors.push((self.lambda.clone(), 1));
                vars.push(Var::new(factors)?);
            }
        }
        NestedSeries::new(vars)
    }
}

/// Rendered as `"[{n^2,1;(n-1)^1,2};1/3]"`.
impl fmt::Display for BracketSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .groups
            .iter()
            .map(|g| match g.shift {
                0 => format!("n^{},{}", g.k, g.l),
                a => format!("(n-{a})^{},{}", g.k, g.l),
            })
            .collect();
        write!(f, "[{{{}}};{}]", body.join(";"), self.lambda)
    }
}

pub fn eval_bracket(spec: &BracketSpec, p: &EvalParams) -> Result<NumValue> {
    eval_series(&spec.series()?, p)
}

/// `f(bs; lambda)`.
pub fn eval_f(bs: &BiSeq, lambda: &Rational, p: &EvalParams) -> Result<NumValue> {
    eval_bracket(&BracketSpec::plain(bs, lambda.clone())?, p)
}

/// `g(bs; lambda) = f({l_i, k_i}_{i=m..1}; lambda)`.
pub fn eval_g(bs: &BiSeq, lambda: &Rational, p: &EvalParams) -> Result<NumValue> {
    eval_f(&bs.swap_reverse(), lambda, p)
}
