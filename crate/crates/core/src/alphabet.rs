use crate::error::{Error, Result};
use std::fmt;

/// One symbol of X ∪ X⁻¹, stored as an index into the alphabet's letter
/// order. Generator i occupies index 2i and its formal inverse index 2i+1,
/// so the total order interleaves each generator directly before its
/// inverse: a < a' < b < b' < ... The interleaving is load-bearing:
/// shortlex completion of ⟨a,b | aba'b'⟩ is finite under this order but
/// diverges when all generators precede all inverses (rewriting "a bᵏ a'"
/// to "bᵏ" needs unboundedly long left sides).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(pub u16);

impl Letter {
    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    #[inline]
    pub fn generator_index(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_formal_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite generating set. Letters are the generators and their formal
/// inverses; words are sequences of letters over one alphabet.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    generators: Vec<String>,
}

impl Alphabet {
    /// Generator names must be nonempty, start with an ASCII letter, contain
    /// only ASCII alphanumerics or underscores, and be pairwise distinct.
    /// The trailing apostrophe is reserved for marking inverses in word
    /// syntax, so it cannot appear in a name.
    pub fn new<S: Into<String>>(generators: Vec<S>) -> Result<Alphabet> {
        let generators: Vec<String> = generators.into_iter().map(Into::into).collect();
        for (i, name) in generators.iter().enumerate() {
            let ok = !name.is_empty()
                && name.chars().next().unwrap().is_ascii_alphabetic()
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Parse {
                    path: String::new(),
                    line: 0,
                    msg: format!("bad generator name \"{name}\""),
                });
            }
            if generators[..i].contains(name) {
                return Err(Error::Parse {
                    path: String::new(),
                    line: 0,
                    msg: format!("duplicate generator \"{name}\""),
                });
            }
        }
        if generators.is_empty() || generators.len() > 1000 {
            return Err(Error::Parse {
                path: String::new(),
                line: 0,
                msg: format!("need between 1 and 1000 generators, got {}", generators.len()),
            });
        }
        Ok(Alphabet { generators })
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn letter_count(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Letter {
        debug_assert!(i < self.generators.len());
        Letter((2 * i) as u16)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letter_count() as u16).map(Letter)
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.index() < self.letter_count()
    }

    pub fn check_letter(&self, l: Letter) -> Result<()> {
        if self.contains(l) {
            Ok(())
        } else {
            Err(Error::MalformedWord {
                letter: l.index(),
                letters: self.letter_count(),
            })
        }
    }

    /// Render a letter: generator name, with a trailing apostrophe for the
    /// formal inverse ("a", "a'").
    pub fn letter_name(&self, l: Letter) -> String {
        let base = &self.generators[l.generator_index()];
        if l.is_formal_inverse() {
            format!("{base}'")
        } else {
            base.clone()
        }
    }

    /// Parse one token of word syntax ("a" or "a'").
    pub fn parse_letter(&self, token: &str) -> Option<Letter> {
        let (base, inv) = match token.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (token, false),
        };
        let i = self.generators.iter().position(|g| g == base)?;
        Some(if inv {
            self.generator(i).inverse()
        } else {
            self.generator(i)
        })
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generators.join(" "))
    }
}
