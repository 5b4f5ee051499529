//! Index-level combinatorics: admissible indices, the word/index dictionary,
//! dual indices, Ohno compositions and `{k_i, l_i}` sequences.

mod biseq;

pub use biseq::{biseq_le, BiSeq};

use std::fmt;

use crate::algebra::Word;
use crate::error::{Error, Result};

/// An index `(k_1, ..., k_m)` of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Index> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parse(format!(
                "index parts must be positive and nonempty: {parts:?}"
            )));
        }
        Ok(Index(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    /// `k_1 >= 2`: the defining series converges.
    pub fn is_admissible(&self) -> bool {
        self.0[0] >= 2
    }

    fn require_admissible(&self) -> Result<()> {
        if self.is_admissible() {
            Ok(())
        } else {
            Err(Error::NotAdmissible(format!("index {self} has k_1 < 2")))
        }
    }

    /// Parses `"3,1,1"` or `"(3,1,1)"`.
    pub fn parse(s: &str) -> Result<Index> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("index part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Index::new(parts)
    }

    /// The `(a_i, b_i)` decomposition `(a_1+1, 1^{b_1-1}, ..., a_s+1, 1^{b_s-1})`.
    pub fn ab_decomposition(&self) -> Result<ABDecomp> {
        self.require_admissible()?;
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        for &k in &self.0 {
            if k >= 2 {
                pairs.push((k - 1, 1));
            } else {
                pairs.last_mut().expect("k_1 >= 2").1 += 1;
            }
        }
        Ok(ABDecomp { pairs })
    }

    /// Shifts each part by the matching entry of `eps`.
    pub fn shifted(&self, eps: &[u32]) -> Index {
        Index(self.0.iter().zip(eps).map(|(k, e)| k + e).collect())
    }

    /// Text form without parentheses, `"3,1,1"`.
    pub fn to_plain(&self) -> String {
        self.0
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Rendered as `"(3,1,1)"`.
impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_plain())
    }
}

/// The pairs `(a_i, b_i)`, all positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABDecomp {
    pub pairs: Vec<(u32, u32)>,
}

impl ABDecomp {
    pub fn to_index(&self) -> Index {
        let mut parts = Vec::new();
        for &(a, b) in &self.pairs {
            parts.push(a + 1);
            parts.extend(std::iter::repeat_n(1, b as usize - 1));
        }
        Index(parts)
    }
}

/// `x^{k_1} y^{l_1} ... -> (k_1+1, 1^{l_1-1}, ...)`.
pub fn word_to_index(w: &Word) -> Result<Index> {
    if w.is_empty() || !w.is_admissible() {
        return Err(Error::NotAdmissible(format!(
            "word {w} is not of the form x...y"
        )));
    }
    let mut parts = Vec::with_capacity(w.depth() as usize);
    for &(a, b) in w.blocks() {
        parts.push(a + 1);
        parts.extend(std::iter::repeat_n(1, b as usize - 1));
    }
    Ok(Index(parts))
}

/// `(k_1, ..., k_m) -> x^{k_1-1} y ... x^{k_m-1} y`.
pub fn index_to_word(k: &Index) -> Result<Word> {
    k.require_admissible()?;
    Ok(Word::from_blocks(k.0.iter().map(|&p| (p - 1, 1)).collect()))
}

/// Swaps the roles of `a_i` and `b_i` and reverses their order.
pub fn dual_index(k: &Index) -> Result<Index> {
    let ab = k.ab_decomposition()?;
    Ok(ABDecomp {
        pairs: ab.pairs.iter().rev().map(|&(a, b)| (b, a)).collect(),
    }
    .to_index())
}

/// Compositions of `total` into `parts` nonnegative summands, lexicographic.
pub fn weak_compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// All `(k_1+e_1, ..., k_m+e_m)` with `e_1 + ... + e_m = l`, lexicographic in `e`.
pub fn ohno_compositions(k: &Index, l: u32) -> Vec<Index> {
    weak_compositions(l, k.depth())
        .iter()
        .map(|e| k.shifted(e))
        .collect()
}

/// Admissible indices of weight `2..=max_weight`: by weight, then depth, then
/// lexicographically.
pub fn enumerate_admissible(max_weight: u32) -> Vec<Index> {
    (2..=max_weight).flat_map(admissible_of_weight).collect()
}

pub fn admissible_of_weight(weight: u32) -> Vec<Index> {
    fn compositions(total: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
        if total == 0 {
            out.push(Index(prefix.clone()));
            return;
        }
        for part in 1..=total {
            prefix.push(part);
            compositions(total - part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for first in 2..=weight {
        compositions(weight - first, &mut vec![first], &mut out);
    }
    out.sort_by(|a, b| a.depth().cmp(&b.depth()).then_with(|| a.cmp(b)));
    out
}
