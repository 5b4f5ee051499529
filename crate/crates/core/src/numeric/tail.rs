//! Rigorous asymptotic expansions in `1/x` for the tail sums of a nested
//! series.
//!
//! An [`Asym`] stands for a function `phi` on `x >= x0` with
//! `phi(x) = sum_{q = lead}^{lead + ORDER} c_q x^{-q} + R(x)` and
//! `|R(x)| <= rho * x^{-(lead + ORDER + 1)}`.

use rug::ops::Pow;
use rug::{Integer, Rational};

use super::series::Factor;

/// Number of terms kept beyond the leading one.
pub(crate) const ORDER: usize = 4;

/// `B_2, B_4, ...`
const BERNOULLI: [(i64, i64); 6] = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730)];

#[derive(Debug, Clone)]
pub(crate) struct Asym {
    lead: i64,
    coeffs: Vec<Rational>,
    rho: Rational,
}

fn x0_pow(x0: &Rational, e: i64) -> Rational {
    // x0^{-e} for e >= 0
    debug_assert!(e >= 0);
    let p = x0.clone().pow(e as u32);
    p.recip()
}

fn binomial(n: u64, k: u64) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// `q (q + 1) ... (q + r - 1)`.
fn rising(q: i64, r: i64) -> Integer {
    (0..r).fold(Integer::from(1), |acc, i| acc * (q + i))
}

impl Asym {
    fn top(&self) -> i64 {
        self.lead + ORDER as i64
    }

    fn one() -> Asym {
        let mut coeffs = vec![Rational::new(); ORDER + 1];
        coeffs[0] = Rational::from(1);
        Asym {
            lead: 0,
            coeffs,
            rho: Rational::new(),
        }
    }

    /// `sum |c_q| x0^{lead - q}`: bounds `|P(x)| x^{lead}` on `x >= x0`.
    fn norm(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Rational::new(), |acc, (i, c)| {
                acc + Rational::from(c.abs_ref()) * x0_pow(x0, i as i64)
            })
    }

    /// `(x - a)^{-p}` on `x >= x0 > 2|a|`.
    fn factor(f: &Factor, x0: &Rational) -> Asym {
        let a = f.shift();
        let p = f.power() as u64;
        let mut coeffs = Vec::with_capacity(ORDER + 1);
        let mut a_pow = Rational::from(1);
        for r in 0..=ORDER as u64 {
            coeffs.push(Rational::from(binomial(p + r - 1, r)) * &a_pow);
            a_pow *= &a;
        }
        // Lagrange remainder of (1 - z)^{-p}, |z| <= |a| / x0 <= 1/2
        let z0 = Rational::from(a.abs_ref()) / x0;
        let shrink = (Rational::from(1) - z0)
            .recip()
            .pow(p as u32 + ORDER as u32 + 1);
        let rho = Rational::from(binomial(p + ORDER as u64, ORDER as u64 + 1))
            * Rational::from(a.abs_ref()).pow(ORDER as u32 + 1)
            * shrink;
        Asym {
            lead: p as i64,
            coeffs,
            rho,
        }
    }

    fn mul(&self, other: &Asym, x0: &Rational) -> Asym {
        let lead = self.lead + other.lead;
        let target = lead + ORDER as i64 + 1;
        let mut coeffs = vec![Rational::new(); ORDER + 1];
        let mut rho = Rational::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let c = Rational::from(a * b);
                if i + j <= ORDER {
                    coeffs[i + j] += c;
                } else {
                    let deg = lead + (i + j) as i64;
                    rho += c.abs() * x0_pow(x0, deg - target);
                }
            }
        }
        rho += self.norm(x0) * &other.rho + other.norm(x0) * &self.rho;
        rho += Rational::from(&self.rho * &other.rho) * x0_pow(x0, ORDER as i64 + 1);
        Asym { lead, coeffs, rho }
    }

    /// `x -> sum_{n > x} phi(n)` for integer `x >= x0`; needs `lead >= 2`.
    fn tail_sum(&self, x0: &Rational) -> Asym {
        assert!(self.lead >= 2, "tail sum of a non-summable expansion");
        let lead = self.lead - 1;
        let top = lead + ORDER as i64;
        let mut coeffs = vec![Rational::new(); ORDER + 1];
        let mut rho = Rational::new();
        let put = |deg: i64, c: Rational, coeffs: &mut Vec<Rational>| {
            coeffs[(deg - lead) as usize] += c;
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let q = self.lead + i as i64;
            // Euler-Maclaurin for n^{-q}: integral, -f/2, then Bernoulli terms
            let mut terms: Vec<(i64, Rational)> = vec![
                (q - 1, Rational::from((1, q - 1))),
                (q, Rational::from((-1, 2))),
            ];
            for (k, &(bn, bd)) in BERNOULLI.iter().enumerate() {
                let k = k as i64 + 1;
                let fact: Integer = (1..=2 * k).fold(Integer::from(1), |acc, i| acc * i);
                let coef = Rational::from((bn, bd)) * Rational::from(rising(q, 2 * k - 1))
                    / Rational::from(fact);
                terms.push((q + 2 * k - 1, coef));
            }
            let mut omitted = None;
            for (deg, t) in terms {
                if deg > top {
                    omitted = Some((deg, t));
                    break;
                }
                put(deg, Rational::from(c * &t), &mut coeffs);
            }
            let (deg, t) = omitted.expect("Bernoulli table covers ORDER");
            rho += Rational::from(2)
                * Rational::from(c.abs_ref())
                * t.abs()
                * x0_pow(x0, deg - top - 1);
        }
        // sum_{n > x} rho n^{-s} <= rho x^{1 - s} / (s - 1)
        let s = self.top() + 1;
        rho += &self.rho / Rational::from(s - 1);
        Asym { lead, coeffs, rho }
    }

    /// Midpoint and radius of the value at `x`.
    fn eval(&self, x: &Rational) -> (Rational, Rational) {
        let inv = Rational::from(x.recip_ref());
        let mut mid = Rational::new();
        let mut p = inv.clone().pow(self.lead as u32);
        for c in &self.coeffs {
            mid += Rational::from(c * &p);
            p *= &inv;
        }
        let rad = Rational::from(&self.rho * &p);
        (mid, rad)
    }
}

/// For each prefix length `j = 1..=L`, the midpoint and radius of
/// `T_j = sum_{n_1 > ... > n_j > n} prod_{v < j} h_v(n_v)`.
/// Every shift must satisfy `|a| <= n / 2`.
pub(crate) fn tail_sums(factors: &[&[Factor]], n: u64) -> Vec<(Rational, Rational)> {
    let x0 = Rational::from(n);
    let mut acc = Asym::one();
    let mut out = Vec::with_capacity(factors.len());
    for fs in factors {
        let h = fs
            .iter()
            .fold(Asym::one(), |h, f| h.mul(&Asym::factor(f, &x0), &x0));
        acc = h.mul(&acc, &x0).tail_sum(&x0);
        out.push(acc.eval(&x0));
    }
    out
}
