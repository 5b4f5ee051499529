use std::fmt;

use crate::algebra::Word;
use crate::error::{Error, Result};

/// A sequence `{k_i, l_i}_{i=1..m}` naming the word `x^{k_1} y^{l_1} ... x^{k_m} y^{l_m}`.
///
/// Normalized form has every `k_i, l_i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiSeq {
    groups: Vec<(u32, u32)>,
}

impl BiSeq {
    /// Normalizes raw groups: an interior `k_i = 0` joins `l_{i-1}` and `l_i`,
    /// an interior `l_i = 0` joins `k_i` and `k_{i+1}`. The result must have
    /// `k_1 >= 1` and `l_m >= 1`.
    pub fn new(raw: &[(u32, u32)]) -> Result<BiSeq> {
        let word = Word::from_blocks(raw.to_vec());
        BiSeq::from_word(&word)
    }

    /// Reads the runs of an admissible nonempty word.
    pub fn from_word(w: &Word) -> Result<BiSeq> {
        if w.is_empty() || !w.is_admissible() {
            return Err(Error::NotAdmissible(format!(
                "sequence for word {w} needs k_1 >= 1 and l_m >= 1"
            )));
        }
        Ok(BiSeq {
            groups: w.blocks().to_vec(),
        })
    }

    pub fn groups(&self) -> &[(u32, u32)] {
        &self.groups
    }

    pub fn m(&self) -> usize {
        self.groups.len()
    }

    pub fn weight(&self) -> u32 {
        self.groups.iter().map(|&(k, l)| k + l).sum()
    }

    /// `L_m = l_1 + ... + l_m`, the number of summation variables.
    pub fn total_l(&self) -> u32 {
        self.groups.iter().map(|&(_, l)| l).sum()
    }

    pub fn word(&self) -> Word {
        Word::from_blocks(self.groups.clone())
    }

    /// `{l_i, k_i}_{i=m..1}`: the sequence of `tau(word)`.
    pub fn swap_reverse(&self) -> BiSeq {
        BiSeq {
            groups: self.groups.iter().rev().map(|&(k, l)| (l, k)).collect(),
        }
    }

    /// Parses `"k1,l1;k2,l2"`, also accepting braces and flat `"k1,l1,k2,l2"`.
    pub fn parse(s: &str) -> Result<BiSeq> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let numbers = body
            .split([',', ';'])
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("sequence entry {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if numbers.is_empty() || numbers.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "sequence {s:?} needs an even number of entries"
            )));
        }
        let raw: Vec<(u32, u32)> = numbers.chunks(2).map(|c| (c[0], c[1])).collect();
        if raw[0].0 == 0 || raw[raw.len() - 1].1 == 0 {
            return Err(Error::NotAdmissible(format!(
                "sequence {s:?} needs k_1 >= 1 and l_m >= 1"
            )));
        }
        BiSeq::new(&raw)
    }

    /// All normalized sequences of the given weight (one per admissible word).
    pub fn all_of_weight(weight: u32) -> Vec<BiSeq> {
        crate::algebra::admissible_words_of_weight(weight)
            .iter()
            .map(|w| BiSeq::from_word(w).expect("admissible"))
            .collect()
    }

    /// All normalized sequences of weight `2..=max_weight`.
    pub fn all_up_to_weight(max_weight: u32) -> Vec<BiSeq> {
        (2..=max_weight).flat_map(BiSeq::all_of_weight).collect()
    }
}

/// Rendered as `"{k1,l1;k2,l2}"`.
impl fmt::Display for BiSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .groups
            .iter()
            .map(|(k, l)| format!("{k},{l}"))
            .collect();
        write!(f, "{{{}}}", body.join(";"))
    }
}

/// `s1 <= s2` iff `m1 < m2`, or `m1 = m2` and every `k_i`, `l_i` grows.
pub fn biseq_le(s1: &BiSeq, s2: &BiSeq) -> bool {
    s1.m() < s2.m()
        || (s1.m() == s2.m()
            && s1
                .groups
                .iter()
                .zip(&s2.groups)
                .all(|(a, b)| a.0 <= b.0 && a.1 <= b.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BiSeq {
        BiSeq::parse(s).unwrap()
    }

    #[test]
    fn zero_merge_conventions() {
        // {.., l_{i-1}, k_i = 0, l_i, ..} joins the l's
        assert_eq!(BiSeq::new(&[(2, 1), (0, 2)]).unwrap(), bs("2,3"));
        // {.., k_{i-1}, l = 0, k_i, ..} joins the k's
        assert_eq!(BiSeq::new(&[(1, 0), (2, 1)]).unwrap(), bs("3,1"));
        assert_eq!(
            BiSeq::new(&[(1, 1), (1, 0), (0, 1)]).unwrap(),
            bs("1,1;1,1")
        );
    }

    #[test]
    fn boundary_zeros_are_rejected() {
        assert!(BiSeq::parse("0,1").is_err());
        assert!(BiSeq::parse("1,0").is_err());
        assert!(BiSeq::parse("1,1;2").is_err());
    }

    #[test]
    fn word_and_swap() {
        let s = bs("2,1;1,3");
        assert_eq!(s.word().to_string(), "xxyxyyy");
        assert_eq!(s.swap_reverse(), bs("3,1;1,2"));
        assert_eq!(s.swap_reverse().word(), s.word().tau());
        assert_eq!(s.to_string(), "{2,1;1,3}");
        assert_eq!(bs("{1,1,1,1}"), bs("1,1;1,1"));
    }

    #[test]
    fn order_examples() {
        assert!(biseq_le(&bs("1,1"), &bs("2,1")));
        assert!(biseq_le(&bs("2,1"), &bs("1,1;1,1")));
        assert!(!biseq_le(&bs("2,1"), &bs("1,2")));
    }

    #[test]
    fn counts() {
        for w in 2..=8 {
            assert_eq!(BiSeq::all_of_weight(w).len(), 1 << (w - 2));
        }
    }
}
