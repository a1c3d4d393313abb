//! Group presentations, word-problem oracles, and the group-file format.
//!
//! A presentation couples an alphabet with a relator list and a *word-problem
//! oracle*: a procedure that decides whether a word represents the identity.
//! Three oracle kinds are supported, in increasing order of generality:
//!
//! * free reduction — exact for free groups (no relators);
//! * confluent rewriting — exact whenever Knuth-Bendix completion terminates,
//!   and then normal forms are canonical (shortlex-least) representatives;
//! * Dehn reduction — exact identity testing for C'(1/6) presentations, but
//!   the reduced word is *not* canonical, only shorter.
//!
//! Group files use a line-oriented `key = value` syntax:
//!
//! ```text
//! # free group of rank 2
//! name = f2
//! generators = a b
//! relators =
//! oracle = free
//! delta = 1
//! ```
//!
//! `generators` is a whitespace-separated list of names; `relators` is a
//! comma-separated list of words, each word a whitespace-separated list of
//! letters with a trailing apostrophe marking an inverse (`a b a' b'`).
//! `oracle` is one of `auto`, `free`, `kb`, `dehn` and defaults to `auto`.
//! `delta` is an optional hyperbolicity constant (a positive integer) used by
//! the verification routines. `#` starts a comment.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::alphabet::Alphabet;
use crate::dehn::DehnOracle;
use crate::error::{Error, Result};
use crate::rewrite::{kb_complete, RewritingSystem, DEFAULT_MAX_LHS_LEN, DEFAULT_MAX_RULES};
use crate::word::Word;

/// Which oracle to build when assembling a presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleChoice {
    /// No relators: free reduction. Otherwise try completion, then Dehn.
    Auto,
    Free,
    Kb,
    Dehn,
}

impl OracleChoice {
    fn parse(token: &str) -> Option<OracleChoice> {
        match token {
            "auto" => Some(OracleChoice::Auto),
            "free" => Some(OracleChoice::Free),
            "kb" => Some(OracleChoice::Kb),
            "dehn" => Some(OracleChoice::Dehn),
            _ => None,
        }
    }
}

/// A resolved word-problem oracle.
#[derive(Clone, Debug)]
pub enum Oracle {
    FreeReduction,
    ConfluentRewriting(RewritingSystem),
    DehnSmallCancellation(DehnOracle),
}

impl Oracle {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Oracle::FreeReduction => "free",
            Oracle::ConfluentRewriting(_) => "kb",
            Oracle::DehnSmallCancellation(_) => "dehn",
        }
    }

    /// Whether `reduce` yields a canonical form (equal words reduce to the
    /// same word). True for free reduction and confluent rewriting; false
    /// for Dehn reduction, which only guarantees a non-geodesic shortening.
    pub fn has_canonical_forms(&self) -> bool {
        !matches!(self, Oracle::DehnSmallCancellation(_))
    }
}

#[derive(Clone, Debug)]
pub struct GroupPresentation {
    name: String,
    alphabet: Alphabet,
    relators: Vec<Word>,
    oracle: Oracle,
    delta: Option<u32>,
}

fn parse_error(path: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_string(),
        line,
        msg: msg.into(),
    }
}

impl GroupPresentation {
    /// Build a presentation, validating the relators and resolving the
    /// oracle. Relators must be nonempty, freely reduced, and cyclically
    /// reduced; the first offender is reported by position.
    pub fn assemble(
        name: String,
        alphabet: Alphabet,
        relators: Vec<Word>,
        choice: OracleChoice,
        delta: Option<u32>,
    ) -> Result<GroupPresentation> {
        for (index, r) in relators.iter().enumerate() {
            for &l in r.letters() {
                alphabet.check_letter(l)?;
            }
            if r.is_empty() || !r.is_freely_reduced() || !r.is_cyclically_reduced() {
                return Err(Error::BadRelator { index });
            }
        }
        if delta == Some(0) {
            return Err(parse_error(&name, 0, "delta must be at least 1"));
        }
        let oracle = resolve_oracle(&alphabet, &relators, choice, &name)?;
        Ok(GroupPresentation {
            name,
            alphabet,
            relators,
            oracle,
            delta,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    /// The hyperbolicity constant declared in the group file, if any.
    pub fn delta(&self) -> Option<u32> {
        self.delta
    }

    /// Reduce a word with the oracle. Canonical for free/kb oracles; for
    /// Dehn the result merely represents the same element and is no longer
    /// than the input.
    pub fn reduce(&self, w: &Word) -> Word {
        match &self.oracle {
            Oracle::FreeReduction => w.free_reduce(),
            Oracle::ConfluentRewriting(rs) => rs.normal_form(w),
            Oracle::DehnSmallCancellation(d) => d.reduce(w),
        }
    }

    /// Exact identity test, valid for every oracle kind.
    pub fn is_identity(&self, w: &Word) -> bool {
        match &self.oracle {
            Oracle::FreeReduction => w.free_reduce().is_empty(),
            Oracle::ConfluentRewriting(rs) => rs.normal_form(w).is_empty(),
            Oracle::DehnSmallCancellation(d) => d.is_identity(w),
        }
    }

    /// Exact equality test via `u v^-1 = 1`.
    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        if u == v {
            return true;
        }
        self.is_identity(&u.concat(&v.inverse()))
    }

    /// Product in the group: concatenate, then reduce.
    pub fn group_op(&self, g: &Word, h: &Word) -> Word {
        self.reduce(&g.concat(h))
    }

    pub fn invert(&self, g: &Word) -> Word {
        self.reduce(&g.inverse())
    }

    /// Word-metric distance `|g^-1 h|` for oracles with canonical geodesic
    /// forms (free reduction and shortlex-confluent rewriting, whose normal
    /// forms are shortlex-least hence length-minimal). Dehn reduction gives
    /// no geodesic guarantee, so distances there must come from an
    /// enumerated element table instead.
    pub fn distance(&self, g: &Word, h: &Word) -> Result<usize> {
        if !self.oracle.has_canonical_forms() {
            return Err(Error::MissingElementStore);
        }
        Ok(self.reduce(&g.inverse().concat(h)).len())
    }

    /// Parse a word in this presentation's letter syntax, without reducing.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            match self.alphabet.parse_letter(token) {
                Some(l) => letters.push(l),
                None => {
                    return Err(parse_error(
                        &self.name,
                        0,
                        format!("unknown letter \"{token}\""),
                    ))
                }
            }
        }
        Ok(Word(letters))
    }

    /// Parse a group file from a string; `path` labels error messages.
    pub fn parse(source: &str, path: &str) -> Result<GroupPresentation> {
        let mut fields: HashMap<&str, (String, usize)> = HashMap::new();
        for (lineno, raw) in source.lines().enumerate() {
            let line = lineno + 1;
            let text = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            let text = text.trim();
            if text.is_empty() {
                continue;
            }
            let (key, value) = text
                .split_once('=')
                .ok_or_else(|| parse_error(path, line, "expected `key = value`"))?;
            let key = key.trim();
            if !matches!(key, "name" | "generators" | "relators" | "oracle" | "delta") {
                return Err(parse_error(path, line, format!("unknown key \"{key}\"")));
            }
            if fields.insert(key, (value.trim().to_string(), line)).is_some() {
                return Err(parse_error(path, line, format!("duplicate key \"{key}\"")));
            }
        }

        let (name, _) = fields
            .remove("name")
            .ok_or_else(|| parse_error(path, 0, "missing required key \"name\""))?;
        if name.is_empty() {
            return Err(parse_error(path, 0, "empty group name"));
        }
        let (gens, gens_line) = fields
            .remove("generators")
            .ok_or_else(|| parse_error(path, 0, "missing required key \"generators\""))?;
        let alphabet = Alphabet::new(gens.split_whitespace().collect()).map_err(|e| match e {
            Error::Parse { msg, .. } => parse_error(path, gens_line, msg),
            other => other,
        })?;

        let mut relators = Vec::new();
        let mut relators_line = 0;
        if let Some((value, line)) = fields.remove("relators") {
            relators_line = line;
            for chunk in value.split(',') {
                let chunk = chunk.trim();
                if chunk.is_empty() {
                    continue;
                }
                let mut letters = Vec::new();
                for token in chunk.split_whitespace() {
                    let l = alphabet.parse_letter(token).ok_or_else(|| {
                        parse_error(path, line, format!("unknown letter \"{token}\" in relator"))
                    })?;
                    letters.push(l);
                }
                relators.push(Word(letters));
            }
        }

        let choice = match fields.remove("oracle") {
            None => OracleChoice::Auto,
            Some((value, line)) => {
                let c = OracleChoice::parse(&value).ok_or_else(|| {
                    parse_error(
                        path,
                        line,
                        format!("oracle must be auto, free, kb, or dehn; got \"{value}\""),
                    )
                })?;
                if c == OracleChoice::Free && !relators.is_empty() {
                    return Err(parse_error(
                        path,
                        line,
                        "oracle = free requires an empty relator list",
                    ));
                }
                c
            }
        };

        let delta = match fields.remove("delta") {
            None => None,
            Some((value, line)) => {
                let d: u32 = value.parse().map_err(|_| {
                    parse_error(path, line, format!("delta must be a positive integer, got \"{value}\""))
                })?;
                if d == 0 {
                    return Err(parse_error(path, line, "delta must be at least 1"));
                }
                Some(d)
            }
        };

        GroupPresentation::assemble(name, alphabet, relators, choice, delta).map_err(|e| match e {
            // Re-anchor relator errors to the file's relators line.
            Error::BadRelator { index } => parse_error(
                path,
                relators_line,
                format!("relator {index} must be nonempty, freely reduced, and cyclically reduced"),
            ),
            other => other,
        })
    }

    pub fn from_file(path: &Path) -> Result<GroupPresentation> {
        let source = std::fs::read_to_string(path)?;
        GroupPresentation::parse(&source, &path.display().to_string())
    }

    /// Render back to group-file syntax. The oracle is written as the
    /// *resolved* kind, so a reload rebuilds the same oracle without going
    /// through auto-detection again.
    pub fn to_file_string(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        writeln!(out, "name = {}", self.name).unwrap();
        writeln!(out, "generators = {}", self.alphabet.generators().join(" ")).unwrap();
        if !self.relators.is_empty() {
            let rendered: Vec<String> = self
                .relators
                .iter()
                .map(|r| r.display(&self.alphabet).to_string())
                .collect();
            writeln!(out, "relators = {}", rendered.join(", ")).unwrap();
        }
        writeln!(out, "oracle = {}", self.oracle.kind_name()).unwrap();
        if let Some(d) = self.delta {
            writeln!(out, "delta = {d}").unwrap();
        }
        out
    }
}

/// Presentations compare by their defining data (name, generators, relators,
/// oracle kind, delta). Resolved oracles are rebuilt deterministically from
/// that data, so kind equality is enough.
impl PartialEq for GroupPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.alphabet.generators() == other.alphabet.generators()
            && self.relators == other.relators
            && self.oracle.kind_name() == other.oracle.kind_name()
            && self.delta == other.delta
    }
}

impl Eq for GroupPresentation {}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}", self.alphabet)?;
        if !self.relators.is_empty() {
            write!(f, " |")?;
            for (i, r) in self.relators.iter().enumerate() {
                let sep = if i == 0 { " " } else { ", " };
                write!(f, "{sep}{}", r.display(&self.alphabet))?;
            }
        }
        write!(f, ">")
    }
}

fn resolve_oracle(
    alphabet: &Alphabet,
    relators: &[Word],
    choice: OracleChoice,
    name: &str,
) -> Result<Oracle> {
    match choice {
        OracleChoice::Free => {
            if relators.is_empty() {
                Ok(Oracle::FreeReduction)
            } else {
                Err(parse_error(
                    name,
                    0,
                    "oracle = free requires an empty relator list",
                ))
            }
        }
        OracleChoice::Kb => Ok(Oracle::ConfluentRewriting(kb_complete(
            alphabet,
            relators,
            DEFAULT_MAX_RULES,
            DEFAULT_MAX_LHS_LEN,
        )?)),
        OracleChoice::Dehn => Ok(Oracle::DehnSmallCancellation(DehnOracle::new(
            alphabet, relators,
        )?)),
        OracleChoice::Auto => {
            if relators.is_empty() {
                return Ok(Oracle::FreeReduction);
            }
            match kb_complete(alphabet, relators, DEFAULT_MAX_RULES, DEFAULT_MAX_LHS_LEN) {
                Ok(rs) => Ok(Oracle::ConfluentRewriting(rs)),
                Err(Error::CompletionDiverged { .. }) => {
                    match DehnOracle::new(alphabet, relators) {
                        Ok(d) => Ok(Oracle::DehnSmallCancellation(d)),
                        Err(Error::SmallCancellationFailed { .. }) => Err(Error::OracleUnresolved),
                        Err(other) => Err(other),
                    }
                }
                Err(other) => Err(other),
            }
        }
    }
}
