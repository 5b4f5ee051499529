use std::fmt;

use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Inflates a nonnegative `f64` bound so that rounding in its own
/// computation cannot make it too small.
#[inline]
pub(crate) fn up(x: f64) -> f64 {
    x * (1.0 + 8.0 * f64::EPSILON) + f64::MIN_POSITIVE
}

/// Upper bound on `|x|` as an `f64`.
pub(crate) fn abs_bound(x: &Float) -> f64 {
    up(x.to_f64().abs())
}

/// An arbitrary-precision real together with a rigorous error radius:
/// the true value lies in `[value - err, value + err]`.
#[derive(Debug, Clone, PartialEq)]
pub struct NumValue {
    pub value: Float,
    pub err: f64,
}

impl NumValue {
    pub fn new(value: Float, err: f64) -> NumValue {
        NumValue { value, err }
    }

    pub fn zero(prec: u32) -> NumValue {
        NumValue {
            value: Float::new(prec),
            err: 0.0,
        }
    }

    /// Rounds an exact rational to `prec` bits.
    pub fn from_rational(prec: u32, q: &Rational) -> NumValue {
        let value = Float::with_val(prec, q);
        let err = if *q == 0 { 0.0 } else { rounding(&value) };
        NumValue { value, err }
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn add(&self, other: &NumValue) -> NumValue {
        let value = Float::with_val(self.prec().max(other.prec()), &self.value + &other.value);
        let err = up(self.err + other.err + rounding(&value));
        NumValue { value, err }
    }

    pub fn sub(&self, other: &NumValue) -> NumValue {
        let value = Float::with_val(self.prec().max(other.prec()), &self.value - &other.value);
        let err = up(self.err + other.err + rounding(&value));
        NumValue { value, err }
    }

    /// `|ab - a'b'| <= |a| e_b + |b| e_a + e_a e_b`, plus the rounding of the product.
    pub fn mul(&self, other: &NumValue) -> NumValue {
        let value = Float::with_val(self.prec().max(other.prec()), &self.value * &other.value);
        let err = up(abs_bound(&self.value) * other.err
            + abs_bound(&other.value) * self.err
            + self.err * other.err
            + rounding(&value));
        NumValue { value, err }
    }

    /// Multiplication by an exact rational.
    pub fn scale(&self, q: &Rational) -> NumValue {
        self.mul(&NumValue::from_rational(self.prec(), q))
    }

    /// Upper bound on `|self.value - other.value|` (values only, no radii).
    pub fn abs_diff(&self, other: &NumValue) -> f64 {
        let d = Float::with_val(self.prec().max(other.prec()), &self.value - &other.value);
        if d.is_zero() {
            return 0.0;
        }
        up(d.to_f64().abs() + rounding(&d))
    }

    /// `|v1 - v2| <= tol + err1 + err2`.
    pub fn agrees_with(&self, other: &NumValue, tol: f64) -> bool {
        self.abs_diff(other) <= tol + self.err + other.err
    }

    /// Decimal rendering of the value, 30 significant digits.
    pub fn value_string(&self) -> String {
        self.value.to_string_radix(10, Some(30))
    }

    pub fn err_string(&self) -> String {
        format!("{:.3e}", self.err)
    }
}

impl fmt::Display for NumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +- {}", self.value_string(), self.err_string())
    }
}

/// Bound on the rounding error committed when `x` was produced by one
/// correctly rounded operation.
pub(crate) fn rounding(x: &Float) -> f64 {
    up(x.to_f64().abs() * 2f64.powi(1 - x.prec() as i32))
}

/// How the truncated tail of a nested sum is accounted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TailMode {
    /// Value is the truncated sum; `err` holds a rigorous upper bound on the tail.
    BoundOnly,
    /// Value extrapolated from cutoffs `N` and `2N`; `err` is never below the
    /// bound-only radius at `N`.
    Richardson,
    /// Value is the truncated sum plus the midpoint of a two-sided tail
    /// enclosure; `err` is the enclosure half-width.
    #[default]
    Enclosure,
}

impl TailMode {
    pub fn parse(s: &str) -> Result<TailMode> {
        match s.trim() {
            "bound-only" => Ok(TailMode::BoundOnly),
            "richardson" => Ok(TailMode::Richardson),
            "enclosure" => Ok(TailMode::Enclosure),
            other => Err(Error::Parse(format!("unknown tail mode {other:?}"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TailMode::BoundOnly => "bound-only",
            TailMode::Richardson => "richardson",
            TailMode::Enclosure => "enclosure",
        }
    }
}

/// Working precision, outer cutoff and tail handling for one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EvalParams {
    pub prec_bits: u32,
    pub cutoff: u64,
    pub tail_mode: TailMode,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            prec_bits: 256,
            cutoff: 100_000,
            tail_mode: TailMode::Enclosure,
        }
    }
}

impl EvalParams {
    pub fn with_cutoff(self, cutoff: u64) -> EvalParams {
        EvalParams { cutoff, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.prec_bits < 64 {
            return Err(Error::InvalidParams(format!(
                "prec_bits {} < 64",
                self.prec_bits
            )));
        }
        if self.cutoff < 10 {
            return Err(Error::InvalidParams(format!("cutoff {} < 10", self.cutoff)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_propagates_error() {
        let a = NumValue::new(Float::with_val(128, 2), 1e-3);
        let b = NumValue::new(Float::with_val(128, 3), 2e-3);
        let p = a.mul(&b);
        assert_eq!(p.to_f64(), 6.0);
        assert!(p.err >= 2.0 * 2e-3 + 3.0 * 1e-3 + 1e-3 * 2e-3);
        let s = a.add(&b);
        assert!(s.err >= 3e-3);
    }

    #[test]
    fn rational_rounding_is_bounded() {
        let third = NumValue::from_rational(64, &Rational::from((1, 3)));
        let exact = Float::with_val(300, 1) / 3u32;
        let diff = Float::with_val(300, &third.value - &exact).abs().to_f64();
        assert!(diff <= third.err);
        assert_eq!(NumValue::from_rational(64, &Rational::new()).err, 0.0);
    }

    #[test]
    fn agreement_includes_radii() {
        let a = NumValue::new(Float::with_val(64, 1.0), 0.5);
        let b = NumValue::new(Float::with_val(64, 2.0), 0.4);
        assert!(a.agrees_with(&b, 0.11));
        assert!(!a.agrees_with(&b, 0.05));
    }

    #[test]
    fn params_validation() {
        assert!(EvalParams::default().validate().is_ok());
        assert!(EvalParams {
            prec_bits: 32,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(EvalParams::default().with_cutoff(5).validate().is_err());
    }
}
