//! Double-double arithmetic (an unevaluated sum of two `f64`), about 104
//! significant bits.

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    /// Per-operation relative error bound used for rounding analysis.
    pub const UNIT_ROUNDOFF: f64 = 7.888609052210118e-31; // 2^-100

    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> DoubleDouble {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// `num / den` for integers exactly representable in `f64`.
    #[inline]
    pub fn ratio(num: f64, den: f64) -> DoubleDouble {
        let q = num / den;
        let (p, e) = two_prod(q, den);
        let r = ((num - p) - e) / den;
        let (hi, lo) = quick_two_sum(q, r);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl std::ops::Add for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl std::ops::Mul for DoubleDouble {
    type Output = DoubleDouble;

    #[inline]
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn exact(x: DoubleDouble) -> Float {
        Float::with_val(200, x.hi) + x.lo
    }

    #[test]
    fn ratio_is_accurate() {
        for (n, d) in [(1.0, 3.0), (7.0, 10.0), (3.0, 9_999_991.0), (-2.0, 7.0)] {
            let got = exact(DoubleDouble::ratio(n, d));
            let want = Float::with_val(200, n) / d;
            let rel = ((got - &want) / want).abs().to_f64();
            assert!(rel < DoubleDouble::UNIT_ROUNDOFF, "{n}/{d}: {rel:e}");
        }
    }

    #[test]
    fn mul_add_are_accurate() {
        let a = DoubleDouble::ratio(1.0, 3.0);
        let b = DoubleDouble::ratio(2.0, 7.0);
        let (fa, fb) = (exact(a), exact(b));
        let prod = exact(a * b);
        let sum = exact(a + b);
        let want_p = Float::with_val(200, &fa * &fb);
        let want_s = Float::with_val(200, &fa + &fb);
        assert!(((prod - &want_p) / want_p).abs().to_f64() < DoubleDouble::UNIT_ROUNDOFF);
        assert!(((sum - &want_s) / want_s).abs().to_f64() < DoubleDouble::UNIT_ROUNDOFF);
    }
}
