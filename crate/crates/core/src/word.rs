use crate::alphabet::{Alphabet, Letter};
use crate::error::Result;
use std::cmp::Ordering;
use std::fmt;

/// A word over an alphabet's letters. Plain data: it does not remember which
/// alphabet it came from, so operations that care take the alphabet and
/// validate letter ranges.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Formal inverse: reverse the letters and invert each.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    /// Cancel adjacent x x⁻¹ pairs until none remain. Single stack pass;
    /// the result is the unique freely reduced form.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// Freely and cyclically reduced: additionally the first and last letters
    /// do not cancel.
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.len() < 2 || self.0[0] != self.0[self.len() - 1].inverse())
    }

    pub fn rotation(&self, k: usize) -> Word {
        let n = self.len();
        Word((0..n).map(|i| self.0[(i + k) % n]).collect())
    }

    /// Shortlex: shorter words first, ties broken lexicographically by the
    /// alphabet's letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Option<Word> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            letters.push(alphabet.parse_letter(tok)?);
        }
        Some(Word(letters))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> DisplayWord<'a> {
        DisplayWord { word: self, alphabet }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.shortlex_cmp(other)
    }
}

pub struct DisplayWord<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, &l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.alphabet.letter_name(l))?;
        }
        Ok(())
    }
}

/// Validating shortlex comparison: both words must lie in the alphabet.
pub fn shortlex_compare(alphabet: &Alphabet, a: &Word, b: &Word) -> Result<Ordering> {
    for w in [a, b] {
        for &l in &w.0 {
            alphabet.check_letter(l)?;
        }
    }
    Ok(a.shortlex_cmp(b))
}
