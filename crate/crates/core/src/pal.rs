//! Palindromic-factor analysis of finite words and stream prefixes.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paltree::PalTree;
use crate::stream::PrefixStream;
use crate::word::{shortlex, Word};

/// Distinct palindromic factors of a word, always including ε.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PalReport {
    pub word_length: usize,
    pub count: usize,
    pub longest: Word,
    pub richness_defect: usize,
    /// Number of distinct palindromes of each length.
    pub per_length: BTreeMap<usize, usize>,
    /// Sorted by length, then lexicographically.
    pub palindromes: Vec<Word>,
}

impl PalReport {
    pub fn from_tree(tree: &PalTree) -> Self {
        let mut palindromes: Vec<Word> = std::iter::once(Word::empty())
            .chain(tree.palindromes())
            .collect();
        palindromes.sort_by(shortlex);
        let per_length = palindromes.iter().map(Word::len).counts().into_iter().collect();
        let count = palindromes.len();
        PalReport {
            word_length: tree.text_len(),
            count,
            longest: tree.longest(),
            richness_defect: tree.text_len() + 1 - count,
            per_length,
            palindromes,
        }
    }

    pub fn set(&self) -> BTreeSet<Word> {
        self.palindromes.iter().cloned().collect()
    }

    pub fn is_rich(&self) -> bool {
        self.richness_defect == 0
    }
}

impl fmt::Display for PalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "length: {}", self.word_length)?;
        writeln!(f, "count: {}", self.count)?;
        writeln!(f, "longest: {} (length {})", render(&self.longest), self.longest.len())?;
        writeln!(f, "richness defect: {}", self.richness_defect)?;
        let histogram = self.per_length.iter().map(|(len, n)| format!("{len}:{n}")).join(" ");
        writeln!(f, "per length: {histogram}")?;
        write!(f, "palindromes: {}", self.palindromes.iter().map(render).join(" "))
    }
}

/// Renders ε visibly in text output.
pub fn render(w: &Word) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        w.to_string()
    }
}

pub fn pal_set(w: &Word) -> PalReport {
    PalReport::from_tree(&PalTree::from_word(w))
}

/// Number of distinct palindromes including ε.
pub fn pal_count(w: &Word) -> usize {
    PalTree::from_word(w).palindrome_count()
}

pub fn is_rich(w: &Word) -> bool {
    pal_count(w) == w.len() + 1
}

pub fn longest_palindrome(w: &Word) -> Word {
    PalTree::from_word(w).longest()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirstReturns {
    pub anchor: Word,
    /// False when the anchor does not occur at all.
    pub anchor_found: bool,
    /// Distinct complete first returns in order of first appearance.
    pub returns: Vec<Word>,
}

/// Every distinct factor of `w` that begins and ends with `v` and contains
/// exactly two occurrences of `v`.
pub fn complete_first_returns(w: &Word, v: &Word) -> Result<FirstReturns> {
    if v.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let positions = w.positions(v);
    let mut seen = HashSet::new();
    let returns = positions
        .iter()
        .tuple_windows()
        .map(|(&i, &j)| w.factor(i, j - i + v.len()))
        .filter(|r| seen.insert(r.clone()))
        .collect();
    Ok(FirstReturns {
        anchor: v.clone(),
        anchor_found: !positions.is_empty(),
        returns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stability {
    Stable,
    UnstableAtCap,
}

/// Palindrome set of a stream prefix grown until it stops changing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizedPalSet {
    pub generator: String,
    pub stability: Stability,
    /// Prefix length at which the set last grew.
    pub stable_horizon: usize,
    /// Prefix length actually scanned.
    pub checked_horizon: usize,
    pub report: PalReport,
}

impl fmt::Display for StabilizedPalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generator: {}", self.generator)?;
        let stability = match self.stability {
            Stability::Stable => "stable",
            Stability::UnstableAtCap => "unstable-at-cap",
        };
        writeln!(
            f,
            "stability: {stability} (last growth at {}, scanned {})",
            self.stable_horizon, self.checked_horizon
        )?;
        write!(f, "{}", self.report)
    }
}

/// Grows the prefix until the palindrome set has been unchanged for as long
/// again as it took to reach it: scanning stops at the first length
/// `n >= start` with `n >= 2 * h`, where `h` is the length at which the last
/// new palindrome appeared. Gives up at `cap`.
pub fn stabilized_pal_set(s: &PrefixStream, start: usize, cap: usize) -> Result<StabilizedPalSet> {
    if start == 0 || cap < 2 * start {
        return Err(Error::Precondition(format!(
            "stabilizer needs start >= 1 and cap >= 2 * start (start {start}, cap {cap})"
        )));
    }
    let mut tree = PalTree::new();
    let mut last_growth = 0;
    let mut horizon = start;
    loop {
        let fed = tree.text_len();
        s.with_prefix(horizon, |letters| {
            for (offset, &c) in letters[fed..].iter().enumerate() {
                if tree.push(c) {
                    last_growth = fed + offset + 1;
                }
            }
        });
        let needed = start.max(2 * last_growth);
        if horizon >= needed {
            return Ok(StabilizedPalSet {
                generator: s.spec().to_string(),
                stability: Stability::Stable,
                stable_horizon: last_growth,
                checked_horizon: horizon,
                report: PalReport::from_tree(&tree),
            });
        }
        if horizon == cap {
            return Ok(StabilizedPalSet {
                generator: s.spec().to_string(),
                stability: Stability::UnstableAtCap,
                stable_horizon: last_growth,
                checked_horizon: horizon,
                report: PalReport::from_tree(&tree),
            });
        }
        horizon = needed.min(cap);
    }
}

/// Palindrome set of a fixed-length prefix.
pub fn prefix_pal_set(s: &PrefixStream, horizon: usize) -> PalReport {
    s.with_prefix(horizon, |letters| {
        let mut tree = PalTree::new();
        tree.extend(letters);
        PalReport::from_tree(&tree)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingReversal {
    pub factor: Word,
    pub reversal: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub generator: String,
    pub horizon_k: usize,
    pub horizon: usize,
    /// Sorted by factor length, then lexicographically.
    pub witness_missing: Vec<MissingReversal>,
    /// Largest length up to which every checked factor's reversal was found.
    pub closed_up_to: usize,
}

impl ClosureReport {
    pub fn missing(&self, factor: &Word) -> bool {
        self.witness_missing.iter().any(|m| &m.factor == factor)
    }
}

impl fmt::Display for ClosureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generator: {}", self.generator)?;
        writeln!(f, "factor lengths checked: 1..={} (horizon {})", self.horizon_k, self.horizon)?;
        writeln!(f, "closed up to: {}", self.closed_up_to)?;
        if self.witness_missing.is_empty() {
            write!(f, "missing reversals: none")
        } else {
            write!(f, "missing reversals:")?;
            for m in &self.witness_missing {
                write!(f, "\n  {} (reversal {} absent)", m.factor, m.reversal)?;
            }
            Ok(())
        }
    }
}

/// Looks for every factor of length `<= k` in the first half of the horizon,
/// and checks its reversal occurs somewhere in the full horizon. A missing
/// reversal refutes closure; an empty report only supports it.
pub fn reversal_closure_check(s: &PrefixStream, k: usize, horizon: usize) -> Result<ClosureReport> {
    if k == 0 || horizon < 4 * k {
        return Err(Error::Precondition(format!(
            "closure check needs k >= 1 and horizon >= 4k (k {k}, horizon {horizon})"
        )));
    }
    let witness_missing = s.with_prefix(horizon, |letters| {
        let mut missing = Vec::new();
        for len in 1..=k {
            let present: HashSet<&[u8]> = letters.windows(len).collect();
            let candidates: BTreeSet<&[u8]> = letters[..horizon / 2].windows(len).collect();
            for factor in candidates {
                let reversal: Vec<u8> = factor.iter().rev().copied().collect();
                if !present.contains(reversal.as_slice()) {
                    missing.push(MissingReversal {
                        factor: Word::from_letters_unchecked(factor.to_vec()),
                        reversal: Word::from_letters_unchecked(reversal),
                    });
                }
            }
        }
        missing
    });
    let closed_up_to = witness_missing
        .first()
        .map_or(k, |m| m.factor.len() - 1);
    Ok(ClosureReport {
        generator: s.spec().to_string(),
        horizon_k: k,
        horizon,
        witness_missing,
        closed_up_to,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|s| w(s)).collect()
    }

    /// Enumerate every factor and keep the palindromes.
    fn naive_pal_set(word: &Word) -> BTreeSet<Word> {
        let n = word.len();
        let mut out = BTreeSet::from([Word::empty()]);
        for i in 0..n {
            for j in i + 1..=n {
                let f = word.factor(i, j - i);
                if f.is_palindrome() {
                    out.insert(f);
                }
            }
        }
        out
    }

    #[test]
    fn printed_sets() {
        let r = pal_set(&w("aababbaababb"));
        assert_eq!(r.set(), set(&["", "a", "b", "aa", "bb", "aba", "bab", "abba", "baab"]));
        assert_eq!(r.count, 9);
        assert_eq!(r.richness_defect, 4);

        let d = pal_set(&w("aaababaabaaa"));
        assert_eq!(
            d.set(),
            set(&["", "b", "bab", "baab", "a", "aba", "ababa", "abaaba", "aa", "aababaa", "aabaa", "aaa"])
        );
        assert_eq!(d.count, 12);

        let e = pal_set(&Word::empty());
        assert_eq!(e.count, 1);
        assert_eq!(e.palindromes, vec![Word::empty()]);
    }

    #[test]
    fn richness() {
        assert_eq!(naive_pal_set(&w("abac")).len(), 5);
        assert!(is_rich(&w("abac")));
        assert!(is_rich(&Word::empty()));
        assert!(!is_rich(&w("aababbaababb")));
    }

    #[test]
    fn longest() {
        assert_eq!(longest_palindrome(&w("ab")), w("a"));
        let periodic = PrefixStream::resolve("pow:aabbab").unwrap();
        assert_eq!(longest_palindrome(&periodic.prefix(60)).len(), 4);
    }

    #[test]
    fn first_returns() {
        let s = PrefixStream::resolve("pow:aababb").unwrap();
        let r = complete_first_returns(&s.prefix(24), &w("ababb")).unwrap();
        assert_eq!(r.returns, vec![w("ababbaababb")]);

        let r = complete_first_returns(&w("aabaab"), &w("aab")).unwrap();
        assert_eq!(r.returns, vec![w("aabaab")]);

        let s = PrefixStream::resolve("pow:aabbab").unwrap();
        let r = complete_first_returns(&s.prefix(30), &w("aab")).unwrap();
        assert_eq!(r.returns, vec![w("aabbabaab")]);

        let missing = complete_first_returns(&w("abab"), &w("aa")).unwrap();
        assert!(!missing.anchor_found);
        assert!(missing.returns.is_empty());
        assert_eq!(complete_first_returns(&w("ab"), &Word::empty()), Err(Error::EmptyPattern));
    }

    #[test]
    fn first_returns_match_occurrence_pair_scan() {
        for n in 0..=16usize {
            for code in 0u32..(1 << n) {
                let word = Word::from_letters((0..n).map(|i| ((code >> i) & 1) as u8).collect()).unwrap();
                for anchor in ["a", "ab", "aba", "bb"] {
                    let v = w(anchor);
                    let got: BTreeSet<Word> =
                        complete_first_returns(&word, &v).unwrap().returns.into_iter().collect();
                    let mut expected = BTreeSet::new();
                    for i in 0..n {
                        for j in i + v.len()..=n {
                            let f = word.factor(i, j - i);
                            if f.starts_with(&v) && f.ends_with(&v) && f.occurrences(&v).unwrap() == 2 {
                                expected.insert(f);
                            }
                        }
                    }
                    assert_eq!(got, expected, "{word} / {anchor}");
                }
            }
        }
    }

    #[test]
    fn stabilized_examples() {
        let phi = PrefixStream::resolve("phi-F").unwrap();
        let r = stabilized_pal_set(&phi, 16, 10_000).unwrap();
        assert_eq!(r.stability, Stability::Stable);
        assert_eq!(r.report.set(), set(&["", "a", "b", "c", "aa"]));
        assert!(r.checked_horizon >= 2 * r.stable_horizon);

        let psi = PrefixStream::resolve("psi-F").unwrap();
        let r = stabilized_pal_set(&psi, 16, 10_000).unwrap();
        assert_eq!(
            r.report.set(),
            set(&["", "a", "b", "aa", "bb", "aaa", "aba", "bab", "abba", "baab", "baaab"])
        );

        let abc = PrefixStream::resolve("pow:abc").unwrap();
        assert_eq!(stabilized_pal_set(&abc, 8, 10_000).unwrap().report.count, 4);

        let fib = PrefixStream::resolve("fibonacci").unwrap();
        let r = stabilized_pal_set(&fib, 8, 1000).unwrap();
        assert_eq!(r.stability, Stability::UnstableAtCap);
        assert_eq!(r.checked_horizon, 1000);

        assert!(stabilized_pal_set(&fib, 8, 15).is_err());
        assert!(stabilized_pal_set(&fib, 0, 15).is_err());
    }

    #[test]
    fn closure_examples() {
        let pf = PrefixStream::resolve("paperfolding").unwrap();
        let r = reversal_closure_check(&pf, 5, 4096).unwrap();
        assert!(r.witness_missing.contains(&MissingReversal { factor: w("aaaba"), reversal: w("abaaa") }));
        assert!(r.closed_up_to < 5);

        let psi = PrefixStream::resolve("psi-F").unwrap();
        let r = reversal_closure_check(&psi, 5, 4096).unwrap();
        assert!(r.missing(&w("abaaa")));

        let constant = PrefixStream::resolve("pow:aa").unwrap();
        let r = reversal_closure_check(&constant, 7, 64).unwrap();
        assert!(r.witness_missing.is_empty());
        assert_eq!(r.closed_up_to, 7);

        assert!(reversal_closure_check(&constant, 5, 19).is_err());
    }

    #[test]
    fn matches_naive_oracle_on_short_words() {
        for n in 0..=10usize {
            for code in 0u32..(1 << n) {
                let word = Word::from_letters((0..n).map(|i| ((code >> i) & 1) as u8).collect()).unwrap();
                let report = pal_set(&word);
                assert_eq!(report.set(), naive_pal_set(&word));
                assert_eq!(report.per_length.values().sum::<usize>(), report.count);
            }
        }
        for n in 0..=9usize {
            for code in 0..3usize.pow(n as u32) {
                let letters = (0..n).map(|i| (code / 3usize.pow(i as u32) % 3) as u8).collect();
                let word = Word::from_letters(letters).unwrap();
                let report = pal_set(&word);
                assert_eq!(report.set(), naive_pal_set(&word), "{word}");
                assert!(report.count > word.letter_set().len());
                assert!(report.count <= word.len() + 1);
            }
        }
    }

    #[test]
    fn monotone_along_streams() {
        for name in ["paperfolding", "psi-F", "berstel4", "thue-morse"] {
            let s = PrefixStream::resolve(name).unwrap();
            let letters = s.prefix(2000);
            let mut tree = PalTree::new();
            let mut previous = 1;
            for &c in letters.letters() {
                let before = tree.node_count();
                tree.push(c);
                assert!(tree.node_count() - before <= 1);
                assert!(tree.palindrome_count() >= previous);
                previous = tree.palindrome_count();
            }
        }
    }

    #[test]
    fn report_serializes_stably() {
        let r = pal_set(&w("abaab"));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"word_length":5,"count":6,"longest":"baab","richness_defect":0,"per_length":{"0":1,"1":2,"2":1,"3":1,"4":1},"palindromes":["","a","b","aa","aba","baab"]}"#
        );
        assert_eq!(serde_json::from_str::<PalReport>(&json).unwrap(), r);
    }
}
