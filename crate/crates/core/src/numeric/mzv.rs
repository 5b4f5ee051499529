use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::Float;

use super::series::{NestedSeries, MAX_CUTOFF};
use super::value::{EvalParams, NumValue};
use crate::algebra::{derivation, HPoly};
use crate::error::{Error, Result};
use crate::index::{index_to_word, word_to_index, Index};

type Cache = Mutex<HashMap<(NestedSeries, EvalParams), NumValue>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Evaluates a nested series, memoized on `(series, params)`.
pub fn eval_series(s: &NestedSeries, p: &EvalParams) -> Result<NumValue> {
    let key = (s.clone(), *p);
    if let Some(v) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = s.evaluate(p)?;
    cache()
        .lock()
        .expect("cache poisoned")
        .entry(key)
        .or_insert_with(|| v.clone());
    Ok(v)
}

/// `zeta(k_1, ..., k_m)`.
pub fn eval_mzv(k: &Index, p: &EvalParams) -> Result<NumValue> {
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(format!("zeta{k} diverges")));
    }
    eval_series(&NestedSeries::mzv(k.parts())?, p)
}

/// The linear extension of `zeta` to admissible polynomials.
pub fn eval_zeta_tilde(poly: &HPoly, p: &EvalParams) -> Result<NumValue> {
    p.validate()?;
    let mut acc = NumValue::zero(p.prec_bits);
    for (w, c) in poly.iter() {
        let z = eval_mzv(&word_to_index(w)?, p)?;
        acc = acc.add(&z.scale(c));
    }
    Ok(acc)
}

/// `sum_i zeta(k_1, ..., k_i + n, ..., k_m)`.
pub fn eval_dn_image(k: &Index, n: u32, p: &EvalParams) -> Result<NumValue> {
    if n == 0 {
        return Err(Error::ZeroDerivation(n));
    }
    if !k.is_admissible() {
        return Err(Error::NotAdmissible(format!("zeta{k} diverges")));
    }
    let mut acc = NumValue::zero(p.prec_bits);
    for i in 0..k.depth() {
        let mut eps = vec![0; k.depth()];
        eps[i] = n;
        acc = acc.add(&eval_mzv(&k.shifted(&eps), p)?);
    }
    Ok(acc)
}

/// `zeta~(D_n(word(k)))`, the same quantity through the algebra.
pub fn eval_dn_image_via_algebra(k: &Index, n: u32, p: &EvalParams) -> Result<NumValue> {
    let w = HPoly::from(index_to_word(k)?);
    eval_zeta_tilde(&derivation(n, &w)?, p)
}

/// Runs `f` at `p.cutoff`, then at ten times the cutoff, and so on up to
/// [`MAX_CUTOFF`], until the reported error is at most `target` or a cutoff
/// large enough for the shifts is reached. Returns the last value and the
/// cutoff it used.
pub fn adaptive<T, F>(
    p: &EvalParams,
    target: f64,
    err_of: impl Fn(&T) -> f64,
    f: F,
) -> Result<(T, u64)>
where
    F: Fn(&EvalParams) -> Result<T>,
{
    let mut cutoff = p.cutoff;
    loop {
        let params = p.with_cutoff(cutoff);
        let can_grow = cutoff.saturating_mul(10) <= MAX_CUTOFF;
        match f(&params) {
            Ok(v) if err_of(&v) <= target || !can_grow => return Ok((v, cutoff)),
            Ok(_) | Err(Error::LambdaTooLarge { .. }) if can_grow => cutoff *= 10,
            other => return other.map(|v| (v, cutoff)),
        }
    }
}

/// `pi` by Machin's formula `pi = 16 atan(1/5) - 4 atan(1/239)`, for tests
/// and acceptance oracles.
pub fn machin_pi(prec: u32) -> Float {
    let work = prec + 32;
    let atan_inv = |q: u32| {
        // atan(1/q) = sum (-1)^j / ((2j+1) q^{2j+1})
        let mut power = Float::with_val(work, 1) / q;
        let q2 = q * q;
        let mut sum = Float::new(work);
        let eps = Float::with_val(work, 1) >> (work as i32);
        let mut j = 0u32;
        while power > eps {
            let term = Float::with_val(work, &power / (2 * j + 1));
            if j.is_multiple_of(2) {
                sum += &term;
            } else {
                sum -= &term;
            }
            power /= q2;
            j += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16u32 - atan_inv(239) * 4u32;
    Float::with_val(prec, &pi)
}
