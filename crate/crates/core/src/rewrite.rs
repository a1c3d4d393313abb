//! Shortlex string rewriting: normal forms, critical pairs, and completion.
//!
//! Rules always rewrite shortlex-downhill, so every rewrite sequence
//! terminates unconditionally; confluence is what completion has to earn.
//! Once a system is confluent, its irreducible words biject with group
//! elements and equality testing is two normal-form computations.

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::word::Word;
use std::cmp::Ordering;
use std::collections::VecDeque;

pub const DEFAULT_MAX_RULES: usize = 2000;
pub const DEFAULT_MAX_LHS_LEN: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RulesOrigin {
    /// Cancellation rules only (free reduction).
    Builtin,
    /// Produced by completion from relators.
    Completed,
}

#[derive(Clone, Debug)]
pub struct RewritingSystem {
    rules: Vec<RewriteRule>,
    origin: RulesOrigin,
    /// rule indices grouped by the final letter of the lhs, for fast
    /// suffix matching during rewriting
    by_last: Vec<Vec<usize>>,
}

impl RewritingSystem {
    fn assemble(rules: Vec<RewriteRule>, origin: RulesOrigin, letters: usize) -> RewritingSystem {
        let mut by_last = vec![Vec::new(); letters];
        for (i, rule) in rules.iter().enumerate() {
            let last = rule.lhs.letters().last().expect("nonempty lhs");
            by_last[last.index()].push(i);
        }
        RewritingSystem { rules, origin, by_last }
    }

    /// The cancellation system x·x⁻¹ → ε for every letter x. Confluent on
    /// its own; it is the whole word problem for a free group.
    pub fn free(alphabet: &Alphabet) -> RewritingSystem {
        let rules = alphabet
            .letters()
            .map(|l| RewriteRule {
                lhs: Word(vec![l, l.inverse()]),
                rhs: Word::empty(),
            })
            .collect();
        RewritingSystem::assemble(rules, RulesOrigin::Builtin, alphabet.letter_count())
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn origin(&self) -> RulesOrigin {
        self.origin
    }

    /// Rewrites to the unique irreducible word (unique when the system is
    /// confluent). Single left-to-right pass with a stack: after pushing a
    /// letter, any rule lhs that has just become a suffix fires, and the
    /// replacement is fed back through the same stack.
    pub fn normal_form(&self, w: &Word) -> Word {
        self.normal_form_with_steps(w).0
    }

    /// Same as normal_form, also counting how many rule applications ran.
    ///
    /// The stack stays free of every lhs as a subword: a fresh occurrence
    /// can only end at the letter just pushed, and replacements re-enter
    /// through the input. So one suffix check per pushed letter suffices.
    pub fn normal_form_with_steps(&self, w: &Word) -> (Word, usize) {
        let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
        let mut input: Vec<Letter> = w.letters().iter().rev().copied().collect();
        let mut steps = 0usize;
        while let Some(l) = input.pop() {
            stack.push(l);
            for &ri in &self.by_last[l.index()] {
                let lhs = &self.rules[ri].lhs;
                let n = lhs.len();
                if stack.len() >= n && stack[stack.len() - n..] == lhs.0[..] {
                    stack.truncate(stack.len() - n);
                    input.extend(self.rules[ri].rhs.letters().iter().rev());
                    steps += 1;
                    break;
                }
            }
        }
        (Word(stack), steps)
    }

    /// All critical-pair equations between rule i and rule j: proper
    /// overlaps (a suffix of lhsᵢ equals a prefix of lhsⱼ) and containment
    /// (lhsⱼ inside lhsᵢ). Each equation is the two one-step reducts of the
    /// superposition word.
    fn critical_pairs(&self, i: usize, j: usize) -> Vec<(Word, Word)> {
        let (l1, r1) = (&self.rules[i].lhs, &self.rules[i].rhs);
        let (l2, r2) = (&self.rules[j].lhs, &self.rules[j].rhs);
        let mut out = Vec::new();
        // overlap: l1 = x·u, l2 = u·y with u nonempty and x·u·y ≠ l1, l2 cases handled below
        for k in 1..l1.len().min(l2.len()) {
            if l1.0[l1.len() - k..] == l2.0[..k] {
                // superposition x·u·y
                let mut a = r1.0.clone();
                a.extend_from_slice(&l2.0[k..]);
                let mut b = l1.0[..l1.len() - k].to_vec();
                b.extend_from_slice(&r2.0);
                out.push((Word(a), Word(b)));
            }
        }
        // containment: l2 occurs strictly inside l1
        if l2.len() < l1.len() {
            for start in 0..=l1.len() - l2.len() {
                if l1.0[start..start + l2.len()] == l2.0[..] {
                    let mut b = l1.0[..start].to_vec();
                    b.extend_from_slice(&r2.0);
                    b.extend_from_slice(&l1.0[start + l2.len()..]);
                    out.push((r1.clone(), Word(b)));
                }
            }
        }
        out
    }

    /// Checks every critical pair of every rule pair. Returns the first
    /// unresolved superposition as (shorter reduct, longer reduct) if the
    /// system is not locally confluent.
    pub fn confluence_violation(&self) -> Option<(Word, Word)> {
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                for (a, b) in self.critical_pairs(i, j) {
                    let na = self.normal_form(&a);
                    let nb = self.normal_form(&b);
                    if na != nb {
                        return Some((na, nb));
                    }
                }
            }
        }
        None
    }

    pub fn is_confluent(&self) -> bool {
        self.confluence_violation().is_none()
    }
}

/// Orients an equation shortlex-downhill. Returns None for a trivial
/// equation (both sides equal).
fn orient(u: Word, v: Word) -> Option<RewriteRule> {
    match u.shortlex_cmp(&v) {
        Ordering::Greater => Some(RewriteRule { lhs: u, rhs: v }),
        Ordering::Less => Some(RewriteRule { lhs: v, rhs: u }),
        Ordering::Equal => None,
    }
}

/// Knuth–Bendix completion over the shortlex order, seeded with the
/// cancellation rules and one equation r = ε per relator. Interreduces
/// after every addition and gives up cleanly at the caps.
pub fn kb_complete(
    alphabet: &Alphabet,
    relators: &[Word],
    max_rules: usize,
    max_lhs_len: usize,
) -> Result<RewritingSystem> {
    let letters = alphabet.letter_count();
    let mut rules: Vec<RewriteRule> = RewritingSystem::free(alphabet).rules.clone();
    let mut pending: VecDeque<(Word, Word)> = relators
        .iter()
        .map(|r| (r.clone(), Word::empty()))
        .collect();

    loop {
        while let Some((u, v)) = pending.pop_front() {
            let sys = RewritingSystem::assemble(rules.clone(), RulesOrigin::Completed, letters);
            let nu = sys.normal_form(&u);
            let nv = sys.normal_form(&v);
            let Some(rule) = orient(nu, nv) else { continue };
            if rule.lhs.len() > max_lhs_len {
                return Err(Error::CompletionDiverged {
                    what: "left-hand-side length",
                    cap: max_lhs_len,
                    rules: rules.len(),
                });
            }
            rules.push(rule);
            if rules.len() > max_rules {
                return Err(Error::CompletionDiverged {
                    what: "rule count",
                    cap: max_rules,
                    rules: rules.len(),
                });
            }
            interreduce(&mut rules, &mut pending, letters);
            // queue critical pairs of the surviving new rules against all
            let sys = RewritingSystem::assemble(rules.clone(), RulesOrigin::Completed, letters);
            let n = sys.rules.len();
            for i in 0..n {
                for (a, b) in sys.critical_pairs(i, n - 1) {
                    pending.push_back((a, b));
                }
                if i != n - 1 {
                    for (a, b) in sys.critical_pairs(n - 1, i) {
                        pending.push_back((a, b));
                    }
                }
            }
        }
        let sys = RewritingSystem::assemble(rules.clone(), RulesOrigin::Completed, letters);
        match sys.confluence_violation() {
            None => return Ok(sys),
            Some((a, b)) => pending.push_back((a, b)),
        }
    }
}

/// Removes rules whose lhs is reducible by another rule (requeueing them
/// as equations) and keeps every rhs fully reduced by the others.
fn interreduce(rules: &mut Vec<RewriteRule>, pending: &mut VecDeque<(Word, Word)>, letters: usize) {
    loop {
        let mut changed = false;
        for i in 0..rules.len() {
            let others: Vec<RewriteRule> = rules
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, r)| r.clone())
                .collect();
            let sys = RewritingSystem::assemble(others, RulesOrigin::Completed, letters);
            let rule = rules[i].clone();
            if sys.normal_form(&rule.lhs) != rule.lhs {
                rules.remove(i);
                pending.push_back((rule.lhs, rule.rhs));
                changed = true;
                break;
            }
            let rhs = sys.normal_form(&rule.rhs);
            if rhs != rule.rhs {
                rules[i].rhs = rhs;
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}
