use rug::ops::Pow;
use rug::Rational;

use super::bracket::eval_f;
use super::relations::{compare, ohno_sum_value};
use super::report::RelationReport;
use crate::error::{Error, Result};
use crate::index::{word_to_index, BiSeq};
use crate::numeric::{adaptive, eval_series, EvalParams, NestedSeries, NumValue, Var};

/// `sum_{l <= order} OhnoSum(k; l) lambda^l` where `k` is the index of the
/// word of `bs`.
pub fn taylor_partial_sum(
    bs: &BiSeq,
    order: u32,
    lambda: &Rational,
    p: &EvalParams,
) -> Result<NumValue> {
    let k = word_to_index(&bs.word())?;
    let mut acc = NumValue::zero(p.prec_bits);
    let mut power = Rational::from(1);
    for l in 0..=order {
        acc = acc.add(&ohno_sum_value(&k, l, p)?.scale(&power));
        power *= lambda;
    }
    Ok(acc)
}

/// Bound on the terms of the power series beyond `lambda^order`.
///
/// The Ohno sums `c_l` are positive and `f(bs; 1/2) = sum c_l 2^{-l}`, so
/// `c_l <= 2^l f(bs; 1/2)` and the omitted part is at most
/// `f(bs; 1/2) (2|lambda|)^{order+1} / (1 - 2|lambda|)`.
pub fn taylor_remainder_bound(
    bs: &BiSeq,
    order: u32,
    lambda: &Rational,
    p: &EvalParams,
) -> Result<f64> {
    let two_abs = Rational::from(lambda.abs_ref()) * 2u32;
    if two_abs >= 1 {
        return Err(Error::InvalidParams(format!(
            "|lambda| = |{lambda}| must be below 1/2"
        )));
    }
    let m = eval_f(bs, &Rational::from((1, 2)), p)?;
    let ratio = two_abs.to_f64();
    Ok((m.to_f64() + m.err) * ratio.powi(order as i32 + 1) / (1.0 - ratio) * (1.0 + 1e-12))
}

/// `f(bs; lambda)` against its power series truncated after `lambda^order`.
/// The right side's radius includes the remainder bound; `abs_diff` is the
/// observed residual.
pub fn taylor_vs_ohno(
    bs: &BiSeq,
    order: u32,
    lambda: &Rational,
    p: &EvalParams,
    tol: f64,
) -> Result<RelationReport> {
    let bound = taylor_remainder_bound(bs, order, lambda, p)?;
    let r = compare(
        "taylor",
        vec![
            ("biseq".into(), bs.to_string()),
            ("order".into(), order.to_string()),
        ],
        Some(lambda.clone()),
        p,
        tol,
        |q| eval_f(bs, lambda, q),
        |q| taylor_partial_sum(bs, order, lambda, q),
    )?;
    let rhs = NumValue::new(r.rhs.value, r.rhs.err + bound);
    Ok(RelationReport::new(
        r.relation, r.inputs, r.lambda, r.lhs, rhs, r.params, tol,
    ))
}

/// Residue of `f(bs; lambda)` at `lambda = n`.
#[derive(Debug, Clone)]
pub struct ResidueEstimate {
    pub n: u64,
    pub c_n: NumValue,
    /// `lim (n - lambda) f(lambda)` along `lambda = n - 10^{-d}`,
    /// extrapolated from `d = 3, 4`; present for the first few `n`.
    pub limit: Option<NumValue>,
}

impl ResidueEstimate {
    /// `|C_n - limit|`, when the limit was computed.
    pub fn limit_gap(&self) -> Option<f64> {
        self.limit.as_ref().map(|l| self.c_n.abs_diff(l))
    }
}

/// Exponent of the base factor on each summation variable of `f(bs; .)`.
fn base_powers(bs: &BiSeq) -> Vec<u32> {
    let mut out = Vec::with_capacity(bs.total_l() as usize);
    for &(k, l) in bs.groups() {
        out.push(k);
        out.extend(std::iter::repeat_n(0, l as usize - 1));
    }
    out
}

/// `C_n = sum_j sum_{n_1 > .. > n_{j-1} > n > n_{j+1} > ..} prod_i n_{L_{i-1}+1}^{-k_i} prod_{i != j} (n_i - n)^{-1}`.
///
/// The variables above `n` are summed in the offsets `y = n_i - n` as an
/// infinite nested series; those below `n` form a finite sum.
///
/// Starts from a cutoff of `20 n` (at least 1000, at most `p.cutoff`) and
/// raises it until the error is below `1e-15`.
pub fn residue_coefficient(bs: &BiSeq, n: u64, p: &EvalParams) -> Result<NumValue> {
    let start = p.with_cutoff((20 * n).clamp(1000, p.cutoff.max(1000)));
    Ok(adaptive(
        &start,
        1e-15,
        |v: &NumValue| v.err,
        |q| residue_at(bs, n, q),
    )?
    .0)
}

fn residue_at(bs: &BiSeq, n: u64, p: &EvalParams) -> Result<NumValue> {
    let ks = base_powers(bs);
    let depth = ks.len();
    let shift_n = Rational::from(n);
    let minus_n = -shift_n.clone();
    let mut total = NumValue::zero(p.prec_bits);
    for j in 0..depth {
        let outer = if j == 0 {
            NumValue::from_rational(p.prec_bits, &Rational::from(1))
        } else {
            let vars = ks[..j]
                .iter()
                .map(|&k| Var::new([(minus_n.clone(), k), (Rational::new(), 1)]))
                .collect::<Result<Vec<_>>>()?;
            eval_series(&NestedSeries::new(vars)?, p)?
        };
        let inner = if j + 1 == depth {
            NumValue::from_rational(p.prec_bits, &Rational::from(1))
        } else if n <= (depth - j - 1) as u64 {
            NumValue::zero(p.prec_bits)
        } else {
            let vars = ks[j + 1..]
                .iter()
                .map(|&k| Var::new([(shift_n.clone(), 1), (Rational::new(), k)]))
                .collect::<Result<Vec<_>>>()?;
            NestedSeries::new(vars)?.finite_sum(n - 1, p.prec_bits)?
        };
        let base = Rational::from((1, n)).pow(ks[j]);
        total = total.add(&outer.mul(&inner).scale(&base));
    }
    Ok(total)
}

/// `(n - lambda) f(lambda)` at `lambda = n - 10^{-d}` for `d = 3, 4`,
/// combined as `(10 v_4 - v_3) / 9`.
pub fn residue_limit(bs: &BiSeq, n: u64, p: &EvalParams) -> Result<NumValue> {
    let at = |d: u32| -> Result<NumValue> {
        let eps = Rational::from((1, 10u64.pow(d)));
        let lambda = Rational::from(n) - &eps;
        Ok(eval_f(bs, &lambda, p)?.scale(&eps))
    };
    let v3 = at(3)?;
    let v4 = at(4)?;
    Ok(v4
        .scale(&Rational::from(10))
        .sub(&v3)
        .scale(&Rational::from((1, 9))))
}

/// `C_n` for `n = 1..=n_max`, with limit cross-checks for `n <= limit_upto`.
pub fn residue_profile(
    bs: &BiSeq,
    n_max: u64,
    limit_upto: u64,
    p: &EvalParams,
) -> Result<Vec<ResidueEstimate>> {
    (1..=n_max)
        .map(|n| {
            let c_n = residue_coefficient(bs, n, p)?;
            let limit = if n <= limit_upto {
                Some(residue_limit(bs, n, p)?)
            } else {
                None
            };
            Ok(ResidueEstimate { n, c_n, limit })
        })
        .collect()
}

/// `sum_{n <= n_max} C_n / (n - lambda)` next to `f(lambda)`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub n_max: u64,
    pub partial: NumValue,
    pub f: NumValue,
}

impl Reconstruction {
    /// `|partial - f|`.
    pub fn gap(&self) -> f64 {
        self.partial.abs_diff(&self.f)
    }
}

pub fn residue_reconstruction(
    bs: &BiSeq,
    lambda: &Rational,
    n_max: u64,
    p: &EvalParams,
) -> Result<Reconstruction> {
    let f = eval_f(bs, lambda, p)?;
    let mut partial = NumValue::zero(p.prec_bits);
    for n in 1..=n_max {
        let c = residue_coefficient(bs, n, p)?;
        let pole = (Rational::from(n) - lambda).recip();
        partial = partial.add(&c.scale(&pole));
    }
    Ok(Reconstruction { n_max, partial, f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::TailMode;

    fn params() -> EvalParams {
        EvalParams {
            prec_bits: 128,
            cutoff: 10_000,
            tail_mode: TailMode::Enclosure,
        }
    }

    fn bs(s: &str) -> BiSeq {
        BiSeq::parse(s).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn taylor_constant_term() {
        let r = taylor_vs_ohno(&bs("1,1"), 0, &Rational::new(), &params(), 1e-12).unwrap();
        assert!(r.abs_diff < 1e-25, "{r}");
    }

    #[test]
    fn taylor_examples() {
        for (b, l) in [("1,1", "1/4"), ("2,1", "-1/4")] {
            let r = taylor_vs_ohno(&bs(b), 6, &q(l), &params(), 1e-6).unwrap();
            assert!(r.pass, "{r}");
        }
        // residual shrinks with the order
        let res: Vec<f64> = (2..=8)
            .map(|o| {
                taylor_vs_ohno(&bs("2,1"), o, &q("1/4"), &params(), 1e-6)
                    .unwrap()
                    .abs_diff
            })
            .collect();
        assert!(res.windows(2).all(|w| w[1] < w[0]), "{res:?}");
        assert!(taylor_vs_ohno(&bs("1,1"), 3, &q("1/2"), &params(), 1e-6).is_err());
    }

    #[test]
    fn single_variable_residues() {
        // {k,1}: C_n = n^{-k}
        for (b, k) in [("1,1", 1), ("2,1", 2)] {
            for n in 1..=5u64 {
                let c = residue_coefficient(&bs(b), n, &params()).unwrap();
                assert!((c.to_f64() - (n as f64).powi(-k)).abs() < 1e-30);
            }
        }
    }

    #[test]
    fn residues_match_limits() {
        let p = params();
        for b in ["1,2", "2,1;1,1"] {
            for e in residue_profile(&bs(b), 3, 3, &p).unwrap() {
                assert!(
                    e.limit_gap().unwrap() < 1e-5,
                    "{b} n={} {:?}",
                    e.n,
                    e.limit_gap()
                );
            }
        }
    }

    #[test]
    fn reconstruction_converges() {
        let p = params();
        let lam = q("1/3");
        let b = bs("1,2");
        let g1 = residue_reconstruction(&b, &lam, 20, &p).unwrap().gap();
        let g2 = residue_reconstruction(&b, &lam, 40, &p).unwrap().gap();
        assert!(g2 < g1);
    }
}
