//! Dehn's algorithm for small-cancellation presentations.
//!
//! The oracle replaces any subword that covers more than half of some
//! symmetrized relator by the shorter complementary side. Under C′(1/6)
//! every nonempty word representing the identity contains such a subword,
//! so "reduces to the empty word" is a complete identity test. Reduction
//! does not canonicalize nonidentity elements; equality of u and v is
//! decided by reducing u·v⁻¹.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{HashMap, HashSet};

/// All cyclic rotations of every relator and of every inverted relator,
/// as a deduplicated sorted list.
pub fn symmetrize(relators: &[Word]) -> Vec<Word> {
    let mut set: HashSet<Word> = HashSet::new();
    for r in relators {
        for base in [r.clone(), r.inverse()] {
            for k in 0..base.len().max(1) {
                set.insert(base.rotation(k));
            }
        }
    }
    let mut out: Vec<Word> = set.into_iter().collect();
    out.sort_by(|a, b| a.shortlex_cmp(b));
    out
}

/// Longest piece among the symmetrized relators: the longest common prefix
/// of two distinct entries. With all rotations present, this sweeps every
/// common subword of the cyclic relators.
pub fn max_piece_length(symmetrized: &[Word]) -> usize {
    let mut best = 0;
    for (i, r1) in symmetrized.iter().enumerate() {
        for r2 in &symmetrized[i + 1..] {
            let lcp = r1
                .letters()
                .iter()
                .zip(r2.letters())
                .take_while(|(a, b)| a == b)
                .count();
            best = best.max(lcp);
        }
    }
    best
}

/// Exact C′(1/6) test: every piece must be strictly shorter than one sixth
/// of every relator it sits in. Returns the symmetrized set on success.
pub fn check_small_cancellation(alphabet: &Alphabet, relators: &[Word]) -> Result<Vec<Word>> {
    let symmetrized = symmetrize(relators);
    for (i, r1) in symmetrized.iter().enumerate() {
        for r2 in &symmetrized[i + 1..] {
            let lcp = r1
                .letters()
                .iter()
                .zip(r2.letters())
                .take_while(|(a, b)| a == b)
                .count();
            if lcp == 0 {
                continue;
            }
            // require 6·|piece| < |r| for both hosts
            for host in [r1, r2] {
                if 6 * lcp >= host.len() {
                    let bound = BigRational::new(BigInt::from(host.len()), BigInt::from(6));
                    return Err(Error::SmallCancellationFailed {
                        piece: r1.prefix(lcp).display(alphabet).to_string(),
                        piece_len: lcp,
                        relator_len: host.len(),
                        bound: bound.to_string(),
                    });
                }
            }
        }
    }
    Ok(symmetrized)
}

/// Word-problem oracle by half-relator replacement.
#[derive(Clone, Debug)]
pub struct DehnOracle {
    /// u → v⁻¹ for every factorization s = u·v of a symmetrized relator
    /// with |u| > |s|/2; C′(1/6) keeps these unambiguous.
    table: HashMap<Vec<Letter>, Vec<Letter>>,
    min_key: usize,
    max_key: usize,
}

impl DehnOracle {
    /// Builds the oracle, verifying C′(1/6) first.
    pub fn new(alphabet: &Alphabet, relators: &[Word]) -> Result<DehnOracle> {
        let symmetrized = check_small_cancellation(alphabet, relators)?;
        let mut table = HashMap::new();
        let mut min_key = usize::MAX;
        let mut max_key = 0;
        for s in &symmetrized {
            for k in (s.len() / 2 + 1)..=s.len() {
                let u = s.letters()[..k].to_vec();
                let replacement = Word(s.letters()[k..].to_vec()).inverse().0;
                let prev = table.insert(u, replacement);
                assert!(prev.is_none(), "half-relator keys collide; pieces too long");
                min_key = min_key.min(k);
                max_key = max_key.max(k);
            }
        }
        Ok(DehnOracle { table, min_key, max_key })
    }

    /// Greedy reduction: freely reduce, then repeatedly replace the
    /// leftmost longest over-half relator subword by the complementary
    /// inverse. Every move strictly shortens the word, so this terminates.
    pub fn reduce(&self, w: &Word) -> Word {
        let mut cur = w.free_reduce();
        'scan: loop {
            for i in 0..cur.len() {
                let longest = self.max_key.min(cur.len() - i);
                for k in (self.min_key..=longest).rev() {
                    if let Some(rep) = self.table.get(&cur.0[i..i + k]) {
                        let mut next = cur.0[..i].to_vec();
                        next.extend_from_slice(rep);
                        next.extend_from_slice(&cur.0[i + k..]);
                        cur = Word(next).free_reduce();
                        continue 'scan;
                    }
                }
            }
            return cur;
        }
    }

    /// Complete identity test under C′(1/6).
    pub fn is_identity(&self, w: &Word) -> bool {
        self.reduce(w).is_empty()
    }

    /// Exact equality via reduction of u·v⁻¹.
    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        self.is_identity(&u.concat(&v.inverse()))
    }
}
