use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A letter of the alphabet `{x, y}`; `X < Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::X => Letter::Y,
            Letter::Y => Letter::X,
        }
    }
}

/// A monomial `x^{a_1} y^{b_1} ... x^{a_r} y^{b_r}` stored as run-length blocks.
///
/// Canonical form: no block is `(0, 0)`, and every run is positive except the
/// leading x-run of the first block and the trailing y-run of the last block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    blocks: Vec<(u32, u32)>,
}

impl Word {
    /// The empty word `1`.
    pub fn empty() -> Word {
        Word { blocks: Vec::new() }
    }

    pub fn x() -> Word {
        Word::from_blocks(vec![(1, 0)])
    }

    pub fn y() -> Word {
        Word::from_blocks(vec![(0, 1)])
    }

    /// Builds a word from arbitrary blocks, re-normalizing runs.
    pub fn from_blocks(raw: Vec<(u32, u32)>) -> Word {
        let mut blocks: Vec<(u32, u32)> = Vec::with_capacity(raw.len());
        for (a, b) in raw {
            if a == 0 && b == 0 {
                continue;
            }
            match blocks.last_mut() {
                // previous block has no y-run yet: absorb into it
                Some(last) if last.1 == 0 => {
                    last.0 += a;
                    last.1 = b;
                }
                // x-run of zero continues the previous y-run
                Some(last) if a == 0 => last.1 += b,
                _ => blocks.push((a, b)),
            }
        }
        Word { blocks }
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word::from_blocks(
            letters
                .into_iter()
                .map(|l| match l {
                    Letter::X => (1, 0),
                    Letter::Y => (0, 1),
                })
                .collect(),
        )
    }

    /// `x^{a_1} y^{b_1} ... x^{a_r} y^{b_r}` from `(a_i, b_i)` pairs.
    pub fn xy_power(a: u32, b: u32) -> Word {
        Word::from_blocks(vec![(a, b)])
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.blocks.iter().flat_map(|&(a, b)| {
            std::iter::repeat_n(Letter::X, a as usize)
                .chain(std::iter::repeat_n(Letter::Y, b as usize))
        })
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.blocks.iter().map(|&(a, b)| a + b).sum()
    }

    pub fn depth(&self) -> u32 {
        self.blocks.iter().map(|&(_, b)| b).sum()
    }

    /// Empty, or starts with `x` and ends with `y`.
    pub fn is_admissible(&self) -> bool {
        match (self.blocks.first(), self.blocks.last()) {
            (None, _) => true,
            (Some(first), Some(last)) => first.0 > 0 && last.1 > 0,
            _ => unreachable!(),
        }
    }

    /// `Some(p)` when the word is `x^p` (including `p = 0`).
    pub fn as_x_power(&self) -> Option<u32> {
        match self.blocks.as_slice() {
            [] => Some(0),
            [(a, 0)] => Some(*a),
            _ => None,
        }
    }

    /// Splits a word containing `y` as `x^p y rest`.
    pub fn split_first_y(&self) -> Option<(u32, Word)> {
        let (&(a, b), tail) = self.blocks.split_first()?;
        if b == 0 {
            return None;
        }
        let mut rest = Vec::with_capacity(tail.len() + 1);
        rest.push((0, b - 1));
        rest.extend_from_slice(tail);
        Some((a, Word::from_blocks(rest)))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut raw = self.blocks.clone();
        raw.extend_from_slice(&other.blocks);
        Word::from_blocks(raw)
    }

    /// Reverses the word and swaps `x <-> y`.
    pub fn tau(&self) -> Word {
        Word::from_blocks(self.blocks.iter().rev().map(|&(a, b)| (b, a)).collect())
    }

    pub fn parse(s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(Error::Parse(format!(
                    "unexpected letter {other:?} in word {s:?}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from_letters)
    }
}

/// Graded lexicographic order with `x < y`.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Letters spelled out, `1` for the empty word.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for l in self.letters() {
            f.write_str(match l {
                Letter::X => "x",
                Letter::Y => "y",
            })?;
        }
        Ok(())
    }
}

/// All words of the given weight, in increasing graded-lex order.
pub fn words_of_weight(weight: u32) -> Vec<Word> {
    (0u64..1 << weight)
        .map(|bits| {
            Word::from_letters((0..weight).rev().map(|i| {
                if bits >> i & 1 == 1 {
                    Letter::Y
                } else {
                    Letter::X
                }
            }))
        })
        .collect()
}

/// Admissible words (`x ... y`) of the given weight, weight >= 2.
pub fn admissible_words_of_weight(weight: u32) -> Vec<Word> {
    words_of_weight(weight)
        .into_iter()
        .filter(|w| !w.is_empty() && w.is_admissible())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn canonical_blocks() {
        assert_eq!(w("xxyyxy").blocks(), &[(2, 2), (1, 1)]);
        assert_eq!(w("yx").blocks(), &[(0, 1), (1, 0)]);
        assert_eq!(
            Word::from_blocks(vec![(1, 0), (1, 0), (0, 1), (0, 0), (0, 1)]),
            w("xxyy")
        );
    }

    #[test]
    fn normalization_is_idempotent() {
        for word in words_of_weight(6) {
            assert_eq!(Word::from_blocks(word.blocks().to_vec()), word);
            let letters: Vec<_> = word.letters().collect();
            assert_eq!(Word::from_letters(letters), word);
        }
    }

    #[test]
    fn weight_and_depth() {
        let word = w("xxyxyy");
        assert_eq!(word.weight(), 6);
        assert_eq!(word.depth(), 3);
        assert_eq!(Word::empty().weight(), 0);
    }

    #[test]
    fn empty_word_is_identity() {
        let word = w("xyx");
        assert_eq!(Word::empty().concat(&word), word);
        assert_eq!(word.concat(&Word::empty()), word);
    }

    #[test]
    fn split_first_y() {
        assert_eq!(w("xxyxy").split_first_y(), Some((2, w("xy"))));
        assert_eq!(w("yy").split_first_y(), Some((0, w("y"))));
        assert_eq!(w("xx").split_first_y(), None);
    }

    #[test]
    fn ordering_is_graded_lex() {
        assert!(w("xxxy") < w("xyxy"));
        assert!(w("yy") < w("xxx"));
        assert_eq!(
            words_of_weight(2)
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>(),
            ["xx", "xy", "yx", "yy"]
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(Word::parse("xz").is_err());
        assert_eq!(Word::parse("").unwrap(), Word::empty());
        assert_eq!(Word::parse("1").unwrap(), Word::empty());
    }
}
