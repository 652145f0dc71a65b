//! Bounded depth-first search over words satisfying factor and palindrome
//! constraints, and the first-return claim checker built on it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ClaimVerdict, VerdictBuilder};
use crate::error::{Error, Result};
use crate::pal::{complete_first_returns, pal_set};
use crate::word::{Alphabet, Word};

/// Restrictions on a finite word. Everything except `required_factors` is
/// closed under taking prefixes, so the search can prune on it.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConstraintSet {
    pub alphabet: Alphabet,
    pub forbidden_factors: BTreeSet<Word>,
    /// Checked only on complete words.
    pub required_factors: BTreeSet<Word>,
    /// Palindromes counted against the budget whether or not they occur,
    /// e.g. those already forced by the surrounding infinite word.
    pub assumed_palindromes: BTreeSet<Word>,
    /// Most distinct palindromes allowed in `PAL(w) ∪ assumed_palindromes`.
    pub pal_budget: Option<usize>,
    pub pal_length_cap: Option<usize>,
    /// For each listed length, the only palindromes of that length allowed.
    pub allowed_by_length: BTreeMap<usize, BTreeSet<Word>>,
}

impl ConstraintSet {
    pub fn new(alphabet: Alphabet) -> Self {
        ConstraintSet {
            alphabet,
            ..ConstraintSet::default()
        }
    }

    pub fn forbid(mut self, factors: &[&str]) -> Result<Self> {
        self.forbidden_factors.extend(parse_all(factors)?);
        Ok(self)
    }

    pub fn require(mut self, factors: &[&str]) -> Result<Self> {
        self.required_factors.extend(parse_all(factors)?);
        Ok(self)
    }

    pub fn assume(mut self, palindromes: &[&str]) -> Result<Self> {
        let words = parse_all(palindromes)?;
        if let Some(bad) = words.iter().find(|p| !p.is_palindrome()) {
            return Err(Error::Precondition(format!("assumed word {bad} is not a palindrome")));
        }
        self.assumed_palindromes.extend(words);
        Ok(self)
    }

    pub fn budget(mut self, n: usize) -> Self {
        self.pal_budget = Some(n);
        self
    }

    pub fn length_cap(mut self, n: usize) -> Self {
        self.pal_length_cap = Some(n);
        self
    }

    /// Only `palindromes` may occur among palindromes of length `len`.
    pub fn only(mut self, len: usize, palindromes: &[&str]) -> Result<Self> {
        let words = parse_all(palindromes)?;
        if let Some(bad) = words.iter().find(|p| p.len() != len || !p.is_palindrome()) {
            return Err(Error::Precondition(format!(
                "{bad} is not a palindrome of length {len}"
            )));
        }
        self.allowed_by_length.entry(len).or_default().extend(words);
        Ok(self)
    }

    /// Whether a newly occurring palindrome is acceptable, given how many
    /// distinct palindromes (assumed ones included) are already counted.
    fn admits_palindrome(&self, p: &Word, counted: usize) -> bool {
        if self.pal_length_cap.is_some_and(|cap| p.len() > cap) {
            return false;
        }
        if let Some(allowed) = self.allowed_by_length.get(&p.len()) {
            if !allowed.contains(p) {
                return false;
            }
        }
        let extra = usize::from(!self.assumed_palindromes.contains(p));
        self.pal_budget.is_none_or(|b| counted + extra <= b)
    }

    /// Checks the prefix-closed constraints on the whole word, from scratch.
    pub fn admits_prefix(&self, w: &Word) -> bool {
        if w.letters().iter().any(|&c| !self.alphabet.contains(c)) {
            return false;
        }
        if self.forbidden_factors.iter().any(|f| w.contains_factor(f)) {
            return false;
        }
        let pals = pal_set(w).set();
        let union: BTreeSet<&Word> = pals.iter().chain(&self.assumed_palindromes).collect();
        if self.pal_budget.is_some_and(|b| union.len() > b) {
            return false;
        }
        pals.iter().all(|p| {
            self.pal_length_cap.is_none_or(|cap| p.len() <= cap)
                && self
                    .allowed_by_length
                    .get(&p.len())
                    .is_none_or(|allowed| allowed.contains(p))
        })
    }

    pub fn satisfied_by(&self, w: &Word) -> bool {
        self.admits_prefix(w) && self.required_factors.iter().all(|f| w.contains_factor(f))
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |set: &BTreeSet<Word>| {
            set.iter().map(crate::pal::render).collect::<Vec<_>>().join(",")
        };
        write!(f, "alphabet {}", self.alphabet)?;
        if !self.forbidden_factors.is_empty() {
            write!(f, "; forbid {{{}}}", list(&self.forbidden_factors))?;
        }
        if !self.required_factors.is_empty() {
            write!(f, "; require {{{}}}", list(&self.required_factors))?;
        }
        if !self.assumed_palindromes.is_empty() {
            write!(f, "; assume {{{}}}", list(&self.assumed_palindromes))?;
        }
        if let Some(b) = self.pal_budget {
            write!(f, "; at most {b} palindromes")?;
        }
        if let Some(c) = self.pal_length_cap {
            write!(f, "; palindromes of length <= {c}")?;
        }
        for (len, allowed) in &self.allowed_by_length {
            write!(f, "; length-{len} palindromes only {{{}}}", list(allowed))?;
        }
        Ok(())
    }
}

fn parse_all(words: &[&str]) -> Result<Vec<Word>> {
    words.iter().map(|s| s.parse()).collect()
}

/// Calls `visit` on every word of length exactly `len` satisfying `c`, in
/// lexicographic order. Returns the number of search nodes expanded.
pub fn search_with(c: &ConstraintSet, len: usize, mut visit: impl FnMut(&Word)) -> u64 {
    let mut search = Search {
        c,
        len,
        word: Vec::with_capacity(len),
        pals: BTreeSet::from([Word::empty()]),
        counted: 0,
        nodes: 0,
    };
    search.counted = search.pals.union(&c.assumed_palindromes).count();
    search.run(&mut visit);
    search.nodes
}

/// Every word of length exactly `len` satisfying `c`.
pub fn search(c: &ConstraintSet, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    search_with(c, len, |w| out.push(w.clone()));
    out
}

struct Search<'a> {
    c: &'a ConstraintSet,
    len: usize,
    word: Vec<u8>,
    pals: BTreeSet<Word>,
    /// `|pals ∪ assumed|`.
    counted: usize,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, visit: &mut impl FnMut(&Word)) {
        self.nodes += 1;
        if self.word.len() == self.len {
            let w = Word::from_letters_unchecked(self.word.clone());
            if self.c.required_factors.iter().all(|f| w.contains_factor(f)) {
                visit(&w);
            }
            return;
        }
        for letter in 0..self.c.alphabet.size() as u8 {
            self.word.push(letter);
            if !self.ends_with_forbidden() {
                // Appending a letter adds at most one new palindrome: the
                // longest palindromic suffix.
                let p = self.longest_palindromic_suffix();
                if self.pals.contains(&p) {
                    self.run(visit);
                } else if self.c.admits_palindrome(&p, self.counted) {
                    let extra = usize::from(!self.c.assumed_palindromes.contains(&p));
                    self.pals.insert(p.clone());
                    self.counted += extra;
                    self.run(visit);
                    self.counted -= extra;
                    self.pals.remove(&p);
                }
            }
            self.word.pop();
        }
    }

    fn ends_with_forbidden(&self) -> bool {
        self.c
            .forbidden_factors
            .iter()
            .any(|f| self.word.ends_with(f.letters()))
    }

    fn longest_palindromic_suffix(&self) -> Word {
        let w = &self.word;
        let start = (0..w.len())
            .find(|&i| crate::word::is_palindrome(&w[i..]))
            .unwrap_or(w.len());
        Word::from_letters_unchecked(w[start..].to_vec())
    }
}

/// Words `prefix · block^n · suffix` for `n` in `min_repeats..=max_repeats`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnFamily {
    pub name: String,
    pub prefix: Word,
    pub block: Word,
    pub suffix: Word,
    pub min_repeats: usize,
    pub max_repeats: Option<usize>,
}

impl ReturnFamily {
    pub fn new(name: &str, prefix: &str, block: &str, suffix: &str, min_repeats: usize) -> Result<Self> {
        let block: Word = block.parse()?;
        if block.is_empty() {
            return Err(Error::EmptyBlock(name.to_string()));
        }
        Ok(ReturnFamily {
            name: name.to_string(),
            prefix: prefix.parse()?,
            block,
            suffix: suffix.parse()?,
            min_repeats,
            max_repeats: None,
        })
    }

    pub fn at_most(mut self, n: usize) -> Self {
        self.max_repeats = Some(n);
        self
    }

    /// The repeat count `n` with `w = prefix · block^n · suffix`, ignoring
    /// the allowed range.
    pub fn repeats_in(&self, w: &Word) -> Option<usize> {
        let (p, s, b) = (self.prefix.len(), self.suffix.len(), self.block.len());
        if w.len() < p + s || !w.starts_with(&self.prefix) || !w.ends_with(&self.suffix) {
            return None;
        }
        let middle = &w.letters()[p..w.len() - s];
        if !middle.len().is_multiple_of(b) || !middle.chunks(b).all(|chunk| chunk == self.block.letters()) {
            return None;
        }
        Some(middle.len() / b)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.repeats_in(w).is_some_and(|n| {
            n >= self.min_repeats && self.max_repeats.is_none_or(|max| n <= max)
        })
    }
}

impl fmt::Display for ReturnFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}({})^n{}, n >= {}", self.name, self.prefix, self.block, self.suffix, self.min_repeats)?;
        if let Some(max) = self.max_repeats {
            write!(f, ", n <= {max}")?;
        }
        Ok(())
    }
}

/// Every complete first return to `anchor` inside a word of length
/// `length` satisfying `constraints` belongs to one of `families`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnClaim {
    pub constraints: ConstraintSet,
    pub anchor: Word,
    pub families: Vec<ReturnFamily>,
    pub length: usize,
}

impl ReturnClaim {
    pub fn statement(&self) -> String {
        let families: Vec<String> = self.families.iter().map(ToString::to_string).collect();
        format!(
            "complete first returns to {} in words of length {} with [{}] lie in: {}",
            self.anchor,
            self.length,
            self.constraints,
            families.join("; ")
        )
    }

    fn covers(&self, r: &Word) -> bool {
        self.families.iter().any(|f| f.contains(r))
    }

    /// True when `window` satisfies the constraints at the claimed length and
    /// contains `ret` as a complete first return to the anchor that no family
    /// covers; that is, the pair still witnesses a violation.
    pub fn replay_violation(&self, window: &Word, ret: &Word) -> bool {
        window.len() == self.length
            && self.constraints.satisfied_by(window)
            && complete_first_returns(window, &self.anchor)
                .map(|r| r.returns.contains(ret))
                .unwrap_or(false)
            && !self.covers(ret)
    }
}

/// Runs the bounded search for `claim`. Returns are collected from every
/// satisfying window of exactly `claim.length` letters; shorter words are
/// factors of these, except near dead ends of the search, which cannot
/// occur inside an infinite word.
pub fn check_claim(claim_id: &str, claim: &ReturnClaim) -> Result<ClaimVerdict> {
    if claim.anchor.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let mut verdict = VerdictBuilder::new(claim_id, &claim.statement());
    verdict.bound("length", claim.length);

    let mut windows = 0u64;
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut violations: BTreeMap<Word, Word> = BTreeMap::new();
    let nodes = search_with(&claim.constraints, claim.length, |window| {
        windows += 1;
        let returns = complete_first_returns(window, &claim.anchor).expect("anchor is non-empty");
        for r in returns.returns {
            if !claim.covers(&r) && !violations.contains_key(&r) {
                violations.insert(r.clone(), window.clone());
            }
            seen.insert(r);
        }
    });

    let mut per_family: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for r in &seen {
        for f in &claim.families {
            if f.contains(r) {
                let ns = per_family.entry(f.name.clone()).or_default();
                ns.extend(f.repeats_in(r));
                ns.sort_unstable();
                ns.dedup();
            }
        }
    }
    verdict
        .scanned(nodes)
        .finding("windows", windows)
        .finding("distinct_returns", seen.len())
        .finding("repeats_seen", serde_json::to_value(&per_family).expect("plain map"))
        .witness("returns observed", seen.iter().cloned());
    for (ret, window) in &violations {
        let excluded = claim.families.iter().any(|f| f.repeats_in(ret).is_some());
        let role = if excluded {
            "return at an excluded repeat count (window, return)"
        } else {
            "return outside every family (window, return)"
        };
        verdict.check(false, role, [window.clone(), ret.clone()]);
    }
    Ok(verdict.finish_up_to_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::enumerate::{enumerate_words, Dedupe};
    use crate::word::w;

    fn brute(c: &ConstraintSet, len: usize) -> Vec<Word> {
        enumerate_words(c.alphabet, len, Dedupe::None)
            .unwrap()
            .filter(|w| c.satisfied_by(w))
            .collect()
    }

    fn samples() -> Vec<ConstraintSet> {
        let b = Alphabet::BINARY;
        vec![
            ConstraintSet::new(b),
            ConstraintSet::new(b).length_cap(3),
            ConstraintSet::new(b).length_cap(4),
            ConstraintSet::new(b).budget(10),
            ConstraintSet::new(b).forbid(&["aaa", "bb"]).unwrap().require(&["aba"]).unwrap(),
            ConstraintSet::new(b)
                .forbid(&["aaaa", "bbb"])
                .unwrap()
                .assume(&["", "a", "b", "aa", "bb", "aba", "bab", "abba", "baab", "aaa", "baaab"])
                .unwrap()
                .budget(12)
                .only(5, &["baaab"])
                .unwrap()
                .require(&["abaaabb"])
                .unwrap(),
            ConstraintSet::new(Alphabet::TERNARY).budget(5),
        ]
    }

    #[test]
    fn pruned_search_matches_brute_force() {
        for c in samples() {
            let lengths: &[usize] = if c.alphabet.size() == 2 { &[0, 1, 7, 14] } else { &[0, 5, 9] };
            for &len in lengths {
                assert_eq!(search(&c, len), brute(&c, len), "{c} at {len}");
            }
        }
    }

    #[test]
    #[ignore = "slow: 2^20 words per constraint set"]
    fn pruned_search_matches_brute_force_at_20() {
        for c in samples().into_iter().filter(|c| c.alphabet.size() == 2) {
            assert_eq!(search(&c, 20), brute(&c, 20), "{c}");
        }
    }

    #[test]
    fn constraint_builders_validate() {
        let b = Alphabet::BINARY;
        assert!(ConstraintSet::new(b).assume(&["ab"]).is_err());
        assert!(ConstraintSet::new(b).only(5, &["aba"]).is_err());
        assert!(ConstraintSet::new(b).forbid(&["xyz"]).is_err());
    }

    #[test]
    fn family_membership() {
        let f = ReturnFamily::new("x", "baaab", "baabab", "baaab", 1).unwrap();
        assert!(f.contains(&w("baaabbaababbaaab")));
        assert!(!f.contains(&w("baaabbaaab")));
        assert_eq!(f.repeats_in(&w("baaabbaaab")), Some(0));
        assert_eq!(f.repeats_in(&w("baaabbaabab")), None);
        assert!(!f.clone().at_most(1).contains(&w("baaabbaababbaababbaaab")));
        assert!(matches!(
            ReturnFamily::new("e", "a", "", "b", 0),
            Err(Error::EmptyBlock(name)) if name == "e"
        ));
    }

    #[test]
    fn first_returns_to_aab_with_short_palindromes() {
        let claim = ReturnClaim {
            constraints: ConstraintSet::new(Alphabet::BINARY).length_cap(4),
            anchor: w("aab"),
            families: vec![
                ReturnFamily::new("abb", "aab", "abb", "aab", 1).unwrap().at_most(1),
                ReturnFamily::new("bab", "aab", "bab", "aab", 1).unwrap().at_most(1),
            ],
            length: 24,
        };
        let v = check_claim("t", &claim).unwrap();
        assert!(!v.is_refuted(), "{v}");

        let mut loose = claim.clone();
        loose.constraints.pal_length_cap = Some(5);
        let v = check_claim("t", &loose).unwrap();
        assert!(v.is_refuted());
        for witness in v.refutations() {
            assert!(loose.replay_violation(&witness.words[0], &witness.words[1]));
            assert!(!claim.replay_violation(&witness.words[0], &witness.words[1]));
        }
    }
}
