use std::fmt;
use std::str::FromStr;

use rug::Rational;

use super::bracket::{check_lambda, eval_bracket, BracketSpec, Group};
use super::report::RelationReport;
use crate::error::{Error, Result};
use crate::index::{dual_index, ohno_compositions, BiSeq, Index};
use crate::numeric::{adaptive, eval_mzv, EvalParams, NumValue};

/// `sum_{e_1 + ... + e_m = l} zeta(k_1 + e_1, ..., k_m + e_m)`.
pub fn ohno_sum_value(k: &Index, l: u32, p: &EvalParams) -> Result<NumValue> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(format!("index {k} has k_1 < 2")));
    }
    let mut acc = NumValue::zero(p.prec_bits);
    for shifted in ohno_compositions(k, l) {
        acc = acc.add(&eval_mzv(&shifted, p)?);
    }
    Ok(acc)
}

/// Evaluates both sides with cutoff escalation until each error is at most
/// `tol / 4`, and compares them.
pub(crate) fn compare<L, R>(
    relation: impl Into<String>,
    inputs: Vec<(String, String)>,
    lambda: Option<Rational>,
    p: &EvalParams,
    tol: f64,
    lhs: L,
    rhs: R,
) -> Result<RelationReport>
where
    L: Fn(&EvalParams) -> Result<NumValue>,
    R: Fn(&EvalParams) -> Result<NumValue>,
{
    let err = |v: &NumValue| v.err;
    let (lhs, n1) = adaptive(p, tol / 4.0, err, lhs)?;
    let (rhs, n2) = adaptive(p, tol / 4.0, err, rhs)?;
    Ok(RelationReport::new(
        relation,
        inputs,
        lambda,
        lhs,
        rhs,
        p.with_cutoff(n1.max(n2)),
        tol,
    ))
}

fn input(key: &str, value: impl ToString) -> (String, String) {
    (key.to_string(), value.to_string())
}

/// Ohno sums of `k` and of its dual index.
pub fn check_ohno(k: &Index, l: u32, p: &EvalParams, tol: f64) -> Result<RelationReport> {
    let dual = dual_index(k)?;
    compare(
        "ohno",
        vec![input("index", k), input("shift", l), input("dual", &dual)],
        None,
        p,
        tol,
        |q| ohno_sum_value(k, l, q),
        |q| ohno_sum_value(&dual, l, q),
    )
}

/// `f(bs; lambda)` against `g(bs; lambda)`.
pub fn check_fg(bs: &BiSeq, lambda: &Rational, p: &EvalParams, tol: f64) -> Result<RelationReport> {
    check_lambda(lambda)?;
    compare(
        "fg",
        vec![input("biseq", bs)],
        Some(lambda.clone()),
        p,
        tol,
        |q| super::eval_f(bs, lambda, q),
        |q| super::eval_g(bs, lambda, q),
    )
}

/// Which generating function a functional relation is checked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenFun {
    F,
    G,
}

impl GenFun {
    pub fn as_str(self) -> &'static str {
        match self {
            GenFun::F => "f",
            GenFun::G => "g",
        }
    }

    fn spec(self, raw: &[(u32, u32)], lambda: &Rational) -> Result<BracketSpec> {
        let bs = BiSeq::new(raw)?;
        let bs = match self {
            GenFun::F => bs,
            GenFun::G => bs.swap_reverse(),
        };
        BracketSpec::plain(&bs, lambda.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Thm31Case {
    I,
    II,
    III,
    IV,
}

impl Thm31Case {
    pub const ALL: [Thm31Case; 4] = [Thm31Case::I, Thm31Case::II, Thm31Case::III, Thm31Case::IV];

    pub fn as_str(self) -> &'static str {
        match self {
            Thm31Case::I => "i",
            Thm31Case::II => "ii",
            Thm31Case::III => "iii",
            Thm31Case::IV => "iv",
        }
    }

    /// The case selected by `k_1` and `l_m`.
    pub fn for_biseq(bs: &BiSeq) -> Thm31Case {
        let g = bs.groups();
        match (g[0].0 == 1, g[g.len() - 1].1 == 1) {
            (false, false) => Thm31Case::I,
            (true, false) => Thm31Case::II,
            (false, true) => Thm31Case::III,
            (true, true) => Thm31Case::IV,
        }
    }
}

impl fmt::Display for Thm31Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Thm31Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Thm31Case> {
        Thm31Case::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown case {s:?}, expected i, ii, iii or iv")))
    }
}

const I_SET: [(u32, u32); 3] = [(0, 0), (1, 0), (0, 1)];

fn product(options: &[Vec<(u32, u32)>]) -> Vec<Vec<(u32, u32)>> {
    options.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&o| {
                    let mut next = prefix.clone();
                    next.push(o);
                    next
                })
            })
            .collect()
    })
}

/// One side of a functional relation: `sum coef * F(raw; mu)`.
type RawSide = Vec<(i64, Vec<(u32, u32)>)>;

/// Terms `(exponent of -mu, raw groups)` for both sides of the relation.
fn thm31_terms(bs: &BiSeq, case: Thm31Case) -> Result<(RawSide, RawSide)> {
    let g = bs.groups();
    let m = g.len();
    if Thm31Case::for_biseq(bs) != case {
        return Err(Error::NotApplicable(format!(
            "case {case} does not match {bs} (k_1 = {}, l_m = {})",
            g[0].0,
            g[m - 1].1
        )));
    }
    if case == Thm31Case::IV && m == 1 {
        return Err(Error::NotApplicable(format!(
            "case iv needs at least two groups, got {bs}"
        )));
    }
    let first_fixed = matches!(case, Thm31Case::II | Thm31Case::IV);
    let last_fixed = matches!(case, Thm31Case::III | Thm31Case::IV);

    let lhs_opts: Vec<Vec<(u32, u32)>> = (0..m)
        .map(|i| {
            if first_fixed && i == 0 {
                vec![(0, 0), (0, 1)]
            } else if last_fixed && i == m - 1 {
                vec![(0, 0), (1, 0)]
            } else {
                I_SET.to_vec()
            }
        })
        .collect();
    let lhs = product(&lhs_opts)
        .into_iter()
        .map(|choice| {
            let drop: u32 = choice.iter().map(|(d, e)| d + e).sum();
            let raw = g
                .iter()
                .zip(&choice)
                .map(|(&(k, l), &(d, e))| (k - d, l - e))
                .collect();
            (m as i64 - drop as i64, raw)
        })
        .collect();

    // delta'_1, pairs (delta'_j, eps'_j) for j = 2..m, eps'_{m+1}
    let mut rhs_opts: Vec<Vec<(u32, u32)>> = Vec::with_capacity(m + 1);
    rhs_opts.push(if first_fixed {
        vec![(0, 0)]
    } else {
        vec![(0, 0), (1, 0)]
    });
    rhs_opts.extend((1..m).map(|_| I_SET.to_vec()));
    rhs_opts.push(if last_fixed {
        vec![(0, 0)]
    } else {
        vec![(0, 0), (0, 1)]
    });
    let rhs = product(&rhs_opts)
        .into_iter()
        .map(|choice| {
            let drop: u32 = choice.iter().map(|(d, e)| d + e).sum();
            let raw = (0..m)
                .map(|i| (g[i].0 - choice[i].0, g[i].1 - choice[i + 1].1))
                .collect();
            (m as i64 - drop as i64, raw)
        })
        .collect();
    Ok((lhs, rhs))
}

/// `(-mu)^e` for integer `e`.
fn signed_power(mu: &Rational, e: i64) -> Result<Rational> {
    let base = Rational::from(-mu);
    if e < 0 && base == 0 {
        return Err(Error::InvalidParams("negative power of zero".into()));
    }
    let mut out = Rational::from(1);
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    Ok(if e < 0 { out.recip() } else { out })
}

type Side = Vec<(Rational, BracketSpec)>;

fn eval_side(side: &Side, p: &EvalParams) -> Result<NumValue> {
    let mut acc = NumValue::zero(p.prec_bits);
    for (coef, spec) in side {
        if *coef == 0 {
            continue;
        }
        acc = acc.add(&eval_bracket(spec, p)?.scale(coef));
    }
    Ok(acc)
}

fn resolve(raw: RawSide, mu: &Rational, which: GenFun) -> Result<Side> {
    raw.into_iter()
        .map(|(e, groups)| Ok((signed_power(mu, e)?, which.spec(&groups, mu)?)))
        .collect()
}

/// Both sides of the functional relation for `bs`, each a list of
/// `(coefficient, bracket)`: the left at `lambda`, the right at `lambda - 1`.
pub fn thm31_sides(
    bs: &BiSeq,
    case: Thm31Case,
    lambda: &Rational,
    which: GenFun,
) -> Result<(Side, Side)> {
    check_lambda(lambda)?;
    let (lhs, rhs) = thm31_terms(bs, case)?;
    let shifted = Rational::from(lambda - 1u32);
    Ok((resolve(lhs, lambda, which)?, resolve(rhs, &shifted, which)?))
}

pub fn check_thm31(
    bs: &BiSeq,
    case: Thm31Case,
    lambda: &Rational,
    which: GenFun,
    p: &EvalParams,
    tol: f64,
) -> Result<RelationReport> {
    let (lhs, rhs) = thm31_sides(bs, case, lambda, which)?;
    compare(
        format!("thm31-{case}"),
        vec![
            input("biseq", bs),
            input("case", case),
            input("genfun", which.as_str()),
        ],
        Some(lambda.clone()),
        p,
        tol,
        |q| eval_side(&lhs, q),
        |q| eval_side(&rhs, q),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lemma33Part {
    Ia,
    Ib,
    Ii,
    IIIc,
    IIId,
}

impl Lemma33Part {
    pub const ALL: [Lemma33Part; 5] = [
        Lemma33Part::Ia,
        Lemma33Part::Ib,
        Lemma33Part::Ii,
        Lemma33Part::IIIc,
        Lemma33Part::IIId,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Lemma33Part::Ia => "ia",
            Lemma33Part::Ib => "ib",
            Lemma33Part::Ii => "ii",
            Lemma33Part::IIIc => "iiic",
            Lemma33Part::IIId => "iiid",
        }
    }
}

impl fmt::Display for Lemma33Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Lemma33Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Lemma33Part> {
        Lemma33Part::ALL
            .into_iter()
            .find(|c| c.as_str() == s.trim())
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown part {s:?}, expected ia, ib, ii, iiic or iiid"
                ))
            })
    }
}

/// Every `(part, position)` whose side conditions hold for `bs`; the
/// position is the 1-based group index and matters only for part `ii`.
pub fn lemma33_instances(bs: &BiSeq) -> Vec<(Lemma33Part, usize)> {
    let g = bs.groups();
    let m = g.len();
    let (k1, lm) = (g[0].0, g[m - 1].1);
    let mut out = Vec::new();
    if m != 1 || lm != 1 {
        out.push((
            if k1 >= 2 {
                Lemma33Part::Ia
            } else {
                Lemma33Part::Ib
            },
            1,
        ));
    }
    for i in 2..=m {
        if i != m || lm != 1 {
            out.push((Lemma33Part::Ii, i));
        }
    }
    if lm == 1 && (m >= 2 || k1 >= 2) {
        out.push((Lemma33Part::IIIc, m));
    }
    if lm >= 2 {
        out.push((Lemma33Part::IIId, m));
    }
    out
}

/// Both sides of the chosen lemma instance as `(coefficient, bracket)` lists.
pub fn lemma33_sides(
    bs: &BiSeq,
    part: Lemma33Part,
    pos: usize,
    lambda: &Rational,
) -> Result<(Side, Side)> {
    check_lambda(lambda)?;
    let g = bs.groups();
    let m = g.len();
    let lam = lambda.clone();
    let lam1 = Rational::from(lambda - 1u32);
    let one = Rational::from(1);
    let minus = Rational::from(-1);
    if !lemma33_instances(bs).contains(&(part, pos)) {
        return Err(Error::NotApplicable(format!(
            "part {part} at position {pos} does not apply to {bs}"
        )));
    }
    // groups with per-group shift and decrements
    let build = |shift: &dyn Fn(usize) -> u32,
                 dk: &dyn Fn(usize) -> u32,
                 dl: &dyn Fn(usize) -> u32,
                 mu: &Rational| {
        let groups = (0..m)
            .map(|j| Group::new(g[j].0 - dk(j), g[j].1 - dl(j), shift(j)))
            .collect();
        BracketSpec::new(groups, mu.clone())
    };
    let at = |target: usize, amount: u32| move |j: usize| if j == target { amount } else { 0 };
    let none = |_: usize| 0u32;
    let sides = match part {
        Lemma33Part::Ia | Lemma33Part::Ib => {
            let s0 = |_: usize| 0u32;
            let s1 = at(0, 1);
            let mut lhs = vec![
                (lam.clone(), build(&s0, &none, &none, &lam)?),
                (minus.clone(), build(&s0, &none, &at(0, 1), &lam)?),
            ];
            let mut rhs = vec![(lam1.clone(), build(&s1, &none, &none, &lam)?)];
            if part == Lemma33Part::Ia {
                lhs.push((minus.clone(), build(&s0, &at(0, 1), &none, &lam)?));
                rhs.push((minus.clone(), build(&s1, &at(0, 1), &none, &lam)?));
            }
            (lhs, rhs)
        }
        Lemma33Part::Ii => {
            let i = pos - 1;
            let before = move |j: usize| u32::from(j < i);
            let through = move |j: usize| u32::from(j <= i);
            let lhs = vec![
                (lam.clone(), build(&before, &none, &none, &lam)?),
                (minus.clone(), build(&before, &at(i, 1), &none, &lam)?),
                (minus.clone(), build(&before, &none, &at(i, 1), &lam)?),
            ];
            let rhs = vec![
                (lam1.clone(), build(&through, &none, &none, &lam)?),
                (minus.clone(), build(&through, &at(i, 1), &none, &lam)?),
                (minus.clone(), build(&through, &none, &at(i - 1, 1), &lam)?),
            ];
            (lhs, rhs)
        }
        Lemma33Part::IIIc => {
            let last = m - 1;
            let before = move |j: usize| u32::from(j < last);
            let s0 = |_: usize| 0u32;
            let lhs = vec![
                (lam.clone(), build(&before, &none, &none, &lam)?),
                (minus.clone(), build(&before, &at(last, 1), &none, &lam)?),
            ];
            let mut rhs = vec![
                (lam1.clone(), build(&s0, &none, &none, &lam1)?),
                (minus.clone(), build(&s0, &at(last, 1), &none, &lam1)?),
            ];
            if m >= 2 {
                rhs.push((minus.clone(), build(&s0, &none, &at(last - 1, 1), &lam1)?));
            }
            (lhs, rhs)
        }
        Lemma33Part::IIId => {
            if lam1 == 0 {
                return Err(Error::InvalidParams(
                    "part iiid divides by lambda - 1".into(),
                ));
            }
            let s0 = |_: usize| 0u32;
            let s1 = |_: usize| 1u32;
            let lhs = vec![(one.clone(), build(&s1, &none, &none, &lam)?)];
            let rhs = vec![
                (one.clone(), build(&s0, &none, &none, &lam1)?),
                (
                    (-lam1.clone().recip()),
                    build(&s0, &none, &at(m - 1, 1), &lam1)?,
                ),
            ];
            (lhs, rhs)
        }
    };
    Ok(sides)
}

pub fn check_lemma33(
    part: Lemma33Part,
    bs: &BiSeq,
    pos: usize,
    lambda: &Rational,
    p: &EvalParams,
    tol: f64,
) -> Result<RelationReport> {
    let (lhs, rhs) = lemma33_sides(bs, part, pos, lambda)?;
    compare(
        format!("lemma33-{part}"),
        vec![input("biseq", bs), input("part", part), input("pos", pos)],
        Some(lambda.clone()),
        p,
        tol,
        |q| eval_side(&lhs, q),
        |q| eval_side(&rhs, q),
    )
}

fn pow_recip(x: &Rational, k: u32) -> Rational {
    let mut out = Rational::from(1);
    for _ in 0..k {
        out /= x;
    }
    out
}

/// The partial-fraction identity
/// `lambda / (n^k (n - lambda)) - 1 / (n^{k-1} (n - lambda))`
/// `= lambda' / ((n-1)^k (n - lambda)) - 1 / ((n-1)^{k-1} (n - lambda)) + 1/(n-1)^k - 1/n^k`,
/// checked exactly.
pub fn spade_identity_holds(n: u32, k: u32, lambda: &Rational) -> bool {
    let nn = Rational::from(n);
    let n1 = Rational::from(n - 1);
    let lam1 = Rational::from(lambda - 1u32);
    let d = Rational::from(&nn - lambda);
    let lhs = (lambda * pow_recip(&nn, k)) / &d - pow_recip(&nn, k - 1) / &d;
    let rhs = (&lam1 * pow_recip(&n1, k)) / &d - pow_recip(&n1, k - 1) / &d + pow_recip(&n1, k)
        - pow_recip(&nn, k);
    lhs == rhs
}

/// `lambda / (n (n - lambda)) = lambda' / ((n-1)(n - lambda)) + 1/(n-1) - 1/n`, checked exactly.
pub fn heart_identity_holds(n: u32, lambda: &Rational) -> bool {
    let nn = Rational::from(n);
    let n1 = Rational::from(n - 1);
    let lam1 = Rational::from(lambda - 1u32);
    let d = Rational::from(&nn - lambda);
    let lhs = Rational::from(lambda / &nn) / &d;
    let rhs = Rational::from(&lam1 / &n1) / &d + n1.clone().recip() - nn.clone().recip();
    lhs == rhs
}

/// Every `(identity, n, k, lambda)` for `2 <= n <= n_max`, `1 <= k <= k_max`
/// at which either scalar identity fails; empty when all hold.
pub fn scalar_identity_failures(n_max: u32, k_max: u32, lambdas: &[Rational]) -> Vec<String> {
    let mut out = Vec::new();
    for lam in lambdas {
        for n in 2..=n_max {
            if *lam == n {
                continue;
            }
            if !heart_identity_holds(n, lam) {
                out.push(format!("heart n={n} lambda={lam}"));
            }
            for k in 1..=k_max {
                if !spade_identity_holds(n, k, lam) {
                    out.push(format!("spade n={n} k={k} lambda={lam}"));
                }
            }
        }
    }
    out
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

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn bs(s: &str) -> BiSeq {
        BiSeq::parse(s).unwrap()
    }

    fn idx(s: &str) -> Index {
        Index::parse(s).unwrap()
    }

    #[test]
    fn ohno_sums() {
        let p = params();
        let z3 = eval_mzv(&idx("3"), &p).unwrap();
        assert!(ohno_sum_value(&idx("2"), 1, &p)
            .unwrap()
            .agrees_with(&z3, 0.0));
        for (k, l) in [("2", 1), ("3", 1), ("3", 0), ("2,1,2", 2)] {
            let r = check_ohno(&idx(k), l, &p, 1e-8).unwrap();
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn fg_examples() {
        let p = params();
        for (b, l) in [
            ("1,1", "1/3"),
            ("2,1", "1/3"),
            ("1,2", "-1/2"),
            ("2,1;1,2", "1/4"),
        ] {
            let r = check_fg(&bs(b), &q(l), &p, 1e-8).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(check_fg(&bs("2,1"), &q("2"), &p, 1e-8).is_err());
    }

    #[test]
    fn thm31_term_counts() {
        // case i with m = 1: three left terms, four right terms
        let (l, r) = thm31_terms(&bs("2,2"), Thm31Case::I).unwrap();
        assert_eq!((l.len(), r.len()), (3, 4));
        assert!(r.iter().any(|(e, _)| *e == -1));
        let (l, r) = thm31_terms(&bs("2,2;1,3"), Thm31Case::I).unwrap();
        assert_eq!((l.len(), r.len()), (9, 12));
        assert!(thm31_terms(&bs("1,1"), Thm31Case::IV).is_err());
        assert!(thm31_terms(&bs("2,2"), Thm31Case::II).is_err());
    }

    #[test]
    fn thm31_examples() {
        let p = params();
        for (b, case, l) in [
            ("2,2", Thm31Case::I, "1/3"),
            ("1,2", Thm31Case::II, "1/3"),
            ("2,1", Thm31Case::III, "1/3"),
            ("1,1;1,1", Thm31Case::IV, "-1/2"),
            ("2,1;1,2", Thm31Case::I, "1/3"),
            ("1,2;2,1", Thm31Case::IV, "1/3"),
        ] {
            for which in [GenFun::F, GenFun::G] {
                let r = check_thm31(&bs(b), case, &q(l), which, &p, 1e-8).unwrap();
                assert!(r.pass, "{r}");
            }
        }
    }

    #[test]
    fn lemma33_examples() {
        let p = params();
        let r = check_lemma33(Lemma33Part::Ib, &bs("1,2"), 1, &q("1/3"), &p, 1e-8).unwrap();
        assert!(r.pass, "{r}");
        let r = check_lemma33(Lemma33Part::IIId, &bs("1,2"), 1, &q("1/2"), &p, 1e-8).unwrap();
        assert!(r.pass, "{r}");
        for b in ["2,1;1,2", "1,1;2,1", "2,2;1,1;1,1"] {
            for (part, pos) in lemma33_instances(&bs(b)) {
                let r = check_lemma33(part, &bs(b), pos, &q("1/3"), &p, 1e-8).unwrap();
                assert!(r.pass, "{r}");
            }
        }
        assert!(check_lemma33(Lemma33Part::Ia, &bs("1,2"), 1, &q("1/3"), &p, 1e-8).is_err());
    }

    #[test]
    fn scalar_identities() {
        // both sides equal 1/6 at n = 2, lambda = 1/2
        let lam = q("1/2");
        let lhs = Rational::from(&lam / 2u32) / (2u32 - lam.clone());
        assert_eq!(lhs, q("1/6"));
        assert!(heart_identity_holds(2, &lam));
        assert!(scalar_identity_failures(50, 6, &[q("1/3"), q("1/2"), q("-2/5")]).is_empty());
    }
}
