use std::cell::RefCell;
use std::collections::HashMap;

use super::poly::HPoly;
use super::word::Word;

thread_local! {
    // keyed on (smaller, larger) word; the product is commutative
    static MEMO: RefCell<HashMap<(Word, Word), HPoly>> = RefCell::new(HashMap::new());
}

/// Harmonic (stuffle) product, the bilinear extension of
///
/// * `1 * w = w * 1 = w`
/// * `x^p * w = w * x^p = w x^p`
/// * `x^p y w1 * x^q y w2 = x^p y (w1 * x^q y w2) + x^(p+q+1) y (w1 * w2) + x^q y (x^p y w1 * w2)`
///
/// The third rule is applied with `p, q >= 0`, which extends the product to
/// words starting with `y`.
pub fn stuffle(a: &HPoly, b: &HPoly) -> HPoly {
    a.bilinear(b, stuffle_words)
}

pub fn stuffle_words(u: &Word, v: &Word) -> HPoly {
    let key = if u <= v {
        (u.clone(), v.clone())
    } else {
        (v.clone(), u.clone())
    };
    if let Some(hit) = MEMO.with(|m| m.borrow().get(&key).cloned()) {
        return hit;
    }
    let result = compute(&key.0, &key.1);
    MEMO.with(|m| m.borrow_mut().insert(key, result.clone()));
    result
}

fn compute(u: &Word, v: &Word) -> HPoly {
    if let Some(p) = u.as_x_power() {
        return HPoly::from(v.concat(&Word::xy_power(p, 0)));
    }
    if let Some(q) = v.as_x_power() {
        return HPoly::from(u.concat(&Word::xy_power(q, 0)));
    }
    let (p, u1) = u.split_first_y().expect("word with a y");
    let (q, v1) = v.split_first_y().expect("word with a y");
    let prefix = |a: u32| HPoly::from(Word::xy_power(a, 1));

    let mut out = prefix(p).concat(&stuffle_words(&u1, v));
    out = &out + &prefix(p + q + 1).concat(&stuffle_words(&u1, &v1));
    &out + &prefix(q).concat(&stuffle_words(u, &v1))
}
