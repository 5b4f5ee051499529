//! Nested sums `sum_{n_1 > n_2 > ... > n_L > 0} prod_v h_v(n_v)` where each
//! `h_v(x) = prod_f (x - a_f)^{-p_f}` for rational shifts `a_f`.
//!
//! Evaluation splits the chain at the cutoff `N`: with `Q_j` the truncated sum
//! over variables `j..L` (all `<= N`) and `T_j` the tail sum over variables
//! `1..j` (all `> N`), the full series is exactly `sum_j T_j Q_j`. The `Q_j`
//! come out of one dynamic-programming pass; each `T_j` comes from an
//! asymptotic expansion in `1/N` with a rigorous remainder.

use rug::{Assign, Float, Rational};

use super::dd::DoubleDouble;
use super::tail::tail_sums;
use super::value::{abs_bound, rounding, up, EvalParams, NumValue, TailMode};
use crate::error::{Error, Result};

/// Hard ceiling for adaptive cutoffs.
pub const MAX_CUTOFF: u64 = 10_000_000;

/// Largest numerator or denominator accepted for a shift.
const SHIFT_LIMIT: i64 = 1 << 31;

/// `(x - num/den)^{-power}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    num: i64,
    den: i64,
    power: u32,
}

impl Factor {
    pub fn shift(&self) -> Rational {
        Rational::from((self.num, self.den))
    }

    pub fn power(&self) -> u32 {
        self.power
    }
}

/// One summation variable with its factor `h(x) = prod (x - a)^{-p}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Var {
    factors: Vec<Factor>,
}

impl Var {
    /// Merges equal shifts and drops zero powers.
    pub fn new<I: IntoIterator<Item = (Rational, u32)>>(factors: I) -> Result<Var> {
        let mut out: Vec<Factor> = Vec::new();
        for (shift, power) in factors {
            if power == 0 {
                continue;
            }
            let (num, den) = (shift.numer().to_i64(), shift.denom().to_i64());
            let (num, den) = match (num, den) {
                (Some(n), Some(d)) if n.abs() < SHIFT_LIMIT && d < SHIFT_LIMIT => (n, d),
                _ => return Err(Error::InvalidParams(format!("shift {shift} out of range"))),
            };
            match out.iter_mut().find(|f| f.num == num && f.den == den) {
                Some(f) => f.power += power,
                None => out.push(Factor { num, den, power }),
            }
        }
        out.sort();
        Ok(Var { factors: out })
    }

    /// `x^{-k}`.
    pub fn power(k: u32) -> Var {
        Var::new([(Rational::new(), k)]).expect("zero shift")
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total degree `e` with `h(x) ~ x^{-e}`.
    pub fn exponent(&self) -> u32 {
        self.factors.iter().map(|f| f.power).sum()
    }
}

/// A nested sum over `L >= 1` strictly decreasing positive integers,
/// outermost variable first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NestedSeries {
    vars: Vec<Var>,
}

impl NestedSeries {
    pub fn new(vars: Vec<Var>) -> Result<NestedSeries> {
        if vars.is_empty() {
            return Err(Error::InvalidParams(
                "nested sum needs at least one variable".into(),
            ));
        }
        Ok(NestedSeries { vars })
    }

    /// The multiple zeta series `sum 1 / (n_1^{k_1} ... n_m^{k_m})`.
    pub fn mzv(parts: &[u32]) -> Result<NestedSeries> {
        NestedSeries::new(parts.iter().map(|&k| Var::power(k)).collect())
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn depth(&self) -> usize {
        self.vars.len()
    }

    /// The series converges iff every prefix has `e_1 + ... + e_i > i`.
    pub fn check_convergent(&self) -> Result<()> {
        let mut total = 0i64;
        for (i, v) in self.vars.iter().enumerate() {
            total += v.exponent() as i64;
            if total - (i as i64 + 1) < 1 {
                return Err(Error::Divergent(format!(
                    "variables 1..={} have total degree {total}",
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// Smallest value variable `v` (0-based) can take.
    fn min_value(&self, v: usize) -> u64 {
        (self.vars.len() - v) as u64
    }

    /// Rejects integer shifts that some variable can reach within `1..=upto`.
    fn check_poles(&self, upto: Option<u64>) -> Result<()> {
        for (v, var) in self.vars.iter().enumerate() {
            for f in &var.factors {
                if f.den != 1 || f.num < 1 {
                    continue;
                }
                let a = f.num as u64;
                if a >= self.min_value(v) && upto.is_none_or(|n| a <= n) {
                    return Err(Error::Pole(format!(
                        "variable {} reaches the pole at {a}",
                        v + 1
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_tail_domain(&self, cutoff: u64) -> Result<()> {
        for f in self.vars.iter().flat_map(|v| &v.factors) {
            // |a| < N / 2
            if 2 * (f.num as i128).abs() >= cutoff as i128 * f.den as i128 {
                return Err(Error::LambdaTooLarge {
                    lambda: f.shift().to_string(),
                    cutoff,
                });
            }
        }
        Ok(())
    }

    /// Can a factor be negative somewhere in the summation range?
    fn may_change_sign(&self) -> bool {
        self.vars.iter().enumerate().any(|(v, var)| {
            var.factors
                .iter()
                .any(|f| f.num > self.min_value(v) as i64 * f.den && f.power % 2 == 1)
        })
    }

    /// The finite sum with every variable `<= n`.
    pub fn finite_sum(&self, n: u64, prec_bits: u32) -> Result<NumValue> {
        self.check_poles(Some(n))?;
        let dp = self.truncated(n, prec_bits);
        Ok(NumValue::new(dp.q[0].clone(), dp.rnd[0]))
    }

    /// Evaluates the infinite series with a rigorous error radius.
    pub fn evaluate(&self, params: &EvalParams) -> Result<NumValue> {
        params.validate()?;
        self.check_convergent()?;
        self.check_poles(None)?;
        self.check_tail_domain(params.cutoff)?;
        let n = params.cutoff;
        let prec = params.prec_bits;
        match params.tail_mode {
            TailMode::BoundOnly => Ok(self.bound_only(n, prec)),
            TailMode::Enclosure => Ok(self.enclosure(n, prec)),
            TailMode::Richardson => {
                let coarse = self.bound_only(n, prec);
                let fine = self.bound_only(2 * n, prec);
                let delta = Float::with_val(prec, &fine.value - &coarse.value);
                let value = Float::with_val(prec, &fine.value + &delta);
                // the truth is within fine.err of fine, hence within that plus |delta| of value
                let err = up(fine.err + abs_bound(&delta) + rounding(&delta) + rounding(&value));
                Ok(NumValue::new(value, err.max(coarse.err)))
            }
        }
    }

    fn bound_only(&self, n: u64, prec: u32) -> NumValue {
        let dp = self.truncated(n, prec);
        let mut err = dp.rnd[0];
        for (j, (mid, rad)) in self.tails(n).into_iter().enumerate() {
            let j = j + 1;
            let hi = up(Float::with_val(53, mid.abs() + rad).to_f64());
            err += hi * (dp.q[j].to_f64().abs() + dp.rnd[j]);
        }
        NumValue::new(dp.q[0].clone(), up(err * (1.0 + 1e-12)))
    }

    fn enclosure(&self, n: u64, prec: u32) -> NumValue {
        let dp = self.truncated(n, prec);
        let mut value = dp.q[0].clone();
        let mut err = dp.rnd[0];
        let unit = 2f64.powi(1 - prec as i32);
        for (j, (mid, rad)) in self.tails(n).into_iter().enumerate() {
            let j = j + 1;
            let mid = Float::with_val(prec, &mid);
            let rad = up(Float::with_val(53, &rad).to_f64());
            let mid_abs = up(mid.to_f64().abs());
            let q_abs = up(dp.q[j].to_f64().abs());
            let term = Float::with_val(prec, &dp.q[j] * &mid);
            value += &term;
            // tail radius, rounding inside Q_j, and the roundings of mid, term and value
            err += rad * (q_abs + dp.rnd[j]) + mid_abs * dp.rnd[j];
            err += (2.0 * mid_abs * q_abs + value.to_f64().abs()) * unit;
        }
        NumValue::new(value, up(err * (1.0 + 1e-12)))
    }

    /// Midpoint and radius of `T_j = sum_{n_1 > ... > n_j > N} prod_{v < j} h_v(n_v)`
    /// for `j = 1..=L`.
    fn tails(&self, n: u64) -> Vec<(Rational, Rational)> {
        let factors: Vec<&[Factor]> = self.vars.iter().map(|v| v.factors()).collect();
        tail_sums(&factors, n)
    }

    /// Dynamic programming pass: `q[j]` is the sum over variables `j..L` all
    /// `<= n` (`q[L] = 1`), `rnd[j]` bounds its rounding error.
    fn truncated(&self, n: u64, prec: u32) -> Truncated {
        if prec <= 104 {
            self.run_dp(n, prec, &DdArith)
        } else {
            self.run_dp(n, prec, &MpfrArith { prec })
        }
    }

    fn run_dp<A: Arith>(&self, n: u64, prec: u32, arith: &A) -> Truncated {
        let depth = self.vars.len();
        let mut shifts: Vec<(i64, i64, u32)> = Vec::new();
        for f in self.vars.iter().flat_map(|v| &v.factors) {
            match shifts.iter_mut().find(|s| s.0 == f.num && s.1 == f.den) {
                Some(s) => s.2 = s.2.max(f.power),
                None => shifts.push((f.num, f.den, f.power)),
            }
        }
        // factor -> (shift slot, power)
        let layout: Vec<Vec<(usize, usize)>> = self
            .vars
            .iter()
            .map(|v| {
                v.factors
                    .iter()
                    .map(|f| {
                        let slot = shifts
                            .iter()
                            .position(|s| s.0 == f.num && s.1 == f.den)
                            .unwrap();
                        (slot, f.power as usize)
                    })
                    .collect()
            })
            .collect();
        let signed = self.may_change_sign();

        let mut pow: Vec<Vec<A::S>> = shifts
            .iter()
            .map(|s| vec![arith.one(); s.2 as usize + 1])
            .collect();
        let mut pow_abs: Vec<Vec<f64>> =
            shifts.iter().map(|s| vec![1.0; s.2 as usize + 1]).collect();
        let mut q: Vec<A::S> = vec![arith.zero(); depth + 1];
        q[depth] = arith.one();
        let mut q_abs = vec![0.0f64; depth + 1];
        q_abs[depth] = 1.0;
        let mut h = arith.one();
        let mut tmp = arith.one();

        for t in 1..=n {
            let first_active = depth.saturating_sub(t as usize);
            for (slot, &(num, den, maxp)) in shifts.iter().enumerate() {
                let d = t as i64 * den - num;
                if d == 0 {
                    continue;
                }
                let table = &mut pow[slot];
                arith.ratio(&mut table[1], den, d);
                for p in 2..=maxp as usize {
                    let (lower, upper) = table.split_at_mut(p);
                    arith.mul(&mut upper[0], &lower[p - 1], &lower[1]);
                }
                if signed {
                    let r = den as f64 / d as f64;
                    for (p, slot_pow) in pow_abs[slot]
                        .iter_mut()
                        .enumerate()
                        .take(maxp as usize + 1)
                        .skip(1)
                    {
                        *slot_pow = r.abs().powi(p as i32);
                    }
                }
            }
            for v in first_active..depth {
                let factors = &layout[v];
                match factors.len() {
                    0 => arith.set_one(&mut h),
                    _ => {
                        arith.copy(&mut h, &pow[factors[0].0][factors[0].1]);
                        for &(slot, p) in &factors[1..] {
                            arith.mul_assign(&mut h, &pow[slot][p], &mut tmp);
                        }
                    }
                }
                let (head, tail) = q.split_at_mut(v + 1);
                arith.fma(&mut head[v], &h, &tail[0], &mut tmp);
                if signed {
                    let h_abs: f64 = factors.iter().map(|&(s, p)| pow_abs[s][p]).product();
                    q_abs[v] += h_abs * q_abs[v + 1];
                }
            }
        }

        let u = arith.unit_roundoff(prec);
        let mut out_q = Vec::with_capacity(depth + 1);
        let mut rnd = vec![0.0f64; depth + 1];
        let mut chain = 0f64;
        for v in (0..depth).rev() {
            let c_v: u32 = 1 + self.vars[v].factors.iter().map(|f| f.power).sum::<u32>();
            chain += c_v as f64 + 3.0 + n as f64;
            let gamma = chain * u / (1.0 - chain * u);
            let magnitude = if signed {
                q_abs[v] * (1.0 + chain * 2f64.powi(-50))
            } else {
                arith.to_f64(&q[v]).abs() * (1.0 + 1e-12)
            };
            rnd[v] = up(gamma * magnitude);
        }
        for (v, value) in q.iter().enumerate() {
            let f = arith.to_float(value, prec);
            if v < depth {
                // conversion from the working format
                rnd[v] = up(rnd[v] + f.to_f64().abs() * 2f64.powi(1 - prec as i32));
            }
            out_q.push(f);
        }
        Truncated { q: out_q, rnd }
    }
}

struct Truncated {
    q: Vec<Float>,
    rnd: Vec<f64>,
}

/// Arithmetic backend for the DP pass.
trait Arith {
    type S: Clone;
    fn zero(&self) -> Self::S;
    fn one(&self) -> Self::S;
    fn set_one(&self, out: &mut Self::S);
    fn copy(&self, out: &mut Self::S, a: &Self::S);
    fn ratio(&self, out: &mut Self::S, num: i64, den: i64);
    fn mul(&self, out: &mut Self::S, a: &Self::S, b: &Self::S);
    fn mul_assign(&self, out: &mut Self::S, a: &Self::S, tmp: &mut Self::S);
    /// `acc += a * b`
    fn fma(&self, acc: &mut Self::S, a: &Self::S, b: &Self::S, tmp: &mut Self::S);
    fn to_f64(&self, a: &Self::S) -> f64;
    fn to_float(&self, a: &Self::S, prec: u32) -> Float;
    fn unit_roundoff(&self, prec: u32) -> f64;
}

struct DdArith;

impl Arith for DdArith {
    type S = DoubleDouble;
    fn zero(&self) -> DoubleDouble {
        DoubleDouble::ZERO
    }
    fn one(&self) -> DoubleDouble {
        DoubleDouble::ONE
    }
    fn set_one(&self, out: &mut DoubleDouble) {
        *out = DoubleDouble::ONE;
    }
    fn copy(&self, out: &mut DoubleDouble, a: &DoubleDouble) {
        *out = *a;
    }
    fn ratio(&self, out: &mut DoubleDouble, num: i64, den: i64) {
        *out = DoubleDouble::ratio(num as f64, den as f64);
    }
    fn mul(&self, out: &mut DoubleDouble, a: &DoubleDouble, b: &DoubleDouble) {
        *out = *a * *b;
    }
    fn mul_assign(&self, out: &mut DoubleDouble, a: &DoubleDouble, _tmp: &mut DoubleDouble) {
        *out = *out * *a;
    }
    fn fma(
        &self,
        acc: &mut DoubleDouble,
        a: &DoubleDouble,
        b: &DoubleDouble,
        _tmp: &mut DoubleDouble,
    ) {
        *acc = *acc + *a * *b;
    }
    fn to_f64(&self, a: &DoubleDouble) -> f64 {
        a.to_f64()
    }
    fn to_float(&self, a: &DoubleDouble, prec: u32) -> Float {
        let mut f = Float::with_val(prec.max(120), a.hi);
        f += a.lo;
        Float::with_val(prec, &f)
    }
    fn unit_roundoff(&self, _prec: u32) -> f64 {
        DoubleDouble::UNIT_ROUNDOFF
    }
}

struct MpfrArith {
    prec: u32,
}

impl Arith for MpfrArith {
    type S = Float;
    fn zero(&self) -> Float {
        Float::new(self.prec)
    }
    fn one(&self) -> Float {
        Float::with_val(self.prec, 1)
    }
    fn set_one(&self, out: &mut Float) {
        out.assign(1);
    }
    fn copy(&self, out: &mut Float, a: &Float) {
        out.assign(a);
    }
    fn ratio(&self, out: &mut Float, num: i64, den: i64) {
        out.assign(num);
        *out /= den;
    }
    fn mul(&self, out: &mut Float, a: &Float, b: &Float) {
        out.assign(a * b);
    }
    fn mul_assign(&self, out: &mut Float, a: &Float, _tmp: &mut Float) {
        *out *= a;
    }
    fn fma(&self, acc: &mut Float, a: &Float, b: &Float, tmp: &mut Float) {
        tmp.assign(a * b);
        *acc += &*tmp;
    }
    fn to_f64(&self, a: &Float) -> f64 {
        a.to_f64()
    }
    fn to_float(&self, a: &Float, prec: u32) -> Float {
        Float::with_val(prec, a)
    }
    fn unit_roundoff(&self, prec: u32) -> f64 {
        2f64.powi(-(prec as i32))
    }
}
