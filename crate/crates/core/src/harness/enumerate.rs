//! Exhaustive enumeration of words of a fixed length.

use std::collections::BTreeSet;

use super::constraints::ConstraintSet;
use super::{par_map, ClaimVerdict, VerdictBuilder};
use crate::error::{Error, Result};
use crate::pal::pal_count;
use crate::word::{canonical_class, Alphabet, Word};

/// Largest number of raw words an enumeration may cover.
pub const ENUMERATION_GUARD: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedupe {
    None,
    /// One representative (the canonical member) per class `[w]`.
    IsoClass,
}

/// All words of length `n` over `alphabet` in lexicographic order, or only
/// the canonical representative of each isomorphism class.
pub fn enumerate_words(
    alphabet: Alphabet,
    n: usize,
    dedupe: Dedupe,
) -> Result<Box<dyn Iterator<Item = Word> + Send>> {
    let required = (alphabet.size() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > ENUMERATION_GUARD as u128 {
        return Err(Error::GuardExceeded {
            alphabet: alphabet.size(),
            length: n,
            guard: ENUMERATION_GUARD,
            required,
        });
    }
    Ok(match dedupe {
        Dedupe::None => Box::new(Odometer::new(alphabet.size() as u8, n, false)),
        Dedupe::IsoClass => Box::new(
            Odometer::new(alphabet.size() as u8, n, true)
                .filter(|w| canonical_class(w).canonical == *w),
        ),
    })
}

/// Counts through words in lexicographic order. With `restricted`, only
/// words whose letters appear in first-occurrence order (`a` first, then
/// `b`, ...) are produced: each letter is at most one more than the largest
/// letter before it.
struct Odometer {
    base: u8,
    current: Option<Vec<u8>>,
    restricted: bool,
}

impl Odometer {
    fn new(base: u8, n: usize, restricted: bool) -> Self {
        Odometer {
            base,
            current: Some(vec![0; n]),
            restricted,
        }
    }

    fn limit(&self, word: &[u8], i: usize) -> u8 {
        if self.restricted {
            let max_before = word[..i].iter().copied().max().map_or(0, |m| m + 1);
            max_before.min(self.base - 1)
        } else {
            self.base - 1
        }
    }
}

impl Iterator for Odometer {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let word = self.current.take()?;
        let out = Word::from_letters_unchecked(word.clone());
        let mut next = word;
        let mut i = next.len();
        while i > 0 {
            i -= 1;
            if next[i] < self.limit(&next, i) {
                next[i] += 1;
                next[i + 1..].iter_mut().for_each(|c| *c = 0);
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// A class of finite words for minimum-palindrome scans.
#[derive(Debug, Clone)]
pub enum WordClass {
    All,
    /// Every alphabet letter occurs.
    FullAlphabet,
    Constrained(ConstraintSet),
    /// Every factor of length `<= k` has its reversal among the factors.
    ClosedWindow { k: usize },
}

impl WordClass {
    pub fn contains(&self, w: &Word, alphabet: Alphabet) -> bool {
        match self {
            WordClass::All => true,
            WordClass::FullAlphabet => w.letter_set().len() == alphabet.size(),
            WordClass::Constrained(c) => c.satisfied_by(w),
            WordClass::ClosedWindow { k } => (1..=*k).all(|len| {
                let factors = w.factors(len);
                factors.iter().all(|f| factors.contains(&f.reverse()))
            }),
        }
    }

    fn describe(&self) -> String {
        match self {
            WordClass::All => "all".into(),
            WordClass::FullAlphabet => "full-alphabet".into(),
            WordClass::Constrained(_) => "constrained".into(),
            WordClass::ClosedWindow { k } => format!("closed-window-{k}"),
        }
    }
}

/// Minimum number of distinct palindromes (ε included) over every length-`n`
/// word of the class, with every word attaining it.
pub fn minpal_scan(
    claim_id: &str,
    class: &WordClass,
    alphabet: Alphabet,
    n: usize,
    jobs: usize,
) -> Result<ClaimVerdict> {
    let statement = format!(
        "least palindrome count over {} words of length {n} on {alphabet}",
        class.describe()
    );
    let mut verdict = VerdictBuilder::new(claim_id, &statement);
    verdict
        .bound("length", n)
        .bound("alphabet", alphabet.size())
        .bound("class", class.describe());

    let words: Vec<Word> = enumerate_words(alphabet, n, Dedupe::None)?
        .filter(|w| class.contains(w, alphabet))
        .collect();
    let counts = par_map(&words, jobs, pal_count)?;
    let Some(&min) = counts.iter().min() else {
        return Err(Error::Precondition(format!("no {} word of length {n}", class.describe())));
    };
    let argmin: BTreeSet<Word> = words
        .iter()
        .zip(&counts)
        .filter(|(_, &c)| c == min)
        .map(|(w, _)| w.clone())
        .collect();
    verdict
        .scanned(words.len() as u64)
        .finding("min_palindromes", min)
        .finding("attaining", argmin.len())
        .witness("attains the minimum", argmin);
    Ok(verdict.finish_up_to_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use serde_json::json;

    fn collect(alphabet: Alphabet, n: usize, dedupe: Dedupe) -> Vec<Word> {
        enumerate_words(alphabet, n, dedupe).unwrap().collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            collect(Alphabet::BINARY, 2, Dedupe::None),
            vec![w("aa"), w("ab"), w("ba"), w("bb")]
        );
        assert_eq!(collect(Alphabet::BINARY, 2, Dedupe::IsoClass), vec![w("aa"), w("ab")]);
        assert_eq!(collect(Alphabet::BINARY, 9, Dedupe::None).len(), 512);
        assert_eq!(collect(Alphabet::BINARY, 0, Dedupe::None), vec![Word::empty()]);
    }

    #[test]
    fn iso_dedupe_equals_filtered_full_enumeration() {
        for (size, n) in [(2, 10), (3, 7), (4, 6)] {
            let alphabet = Alphabet::new(size).unwrap();
            let filtered: Vec<Word> = collect(alphabet, n, Dedupe::None)
                .into_iter()
                .filter(|w| canonical_class(w).canonical == *w)
                .collect();
            assert_eq!(collect(alphabet, n, Dedupe::IsoClass), filtered);
        }
    }

    #[test]
    fn guard() {
        let err = enumerate_words(Alphabet::BINARY, 27, Dedupe::None).err().unwrap();
        assert!(matches!(err, Error::GuardExceeded { required, .. } if required == 1 << 27));
        assert!(enumerate_words(Alphabet::BINARY, 26, Dedupe::None).is_ok());
    }

    #[test]
    fn minpal_small() {
        let v = minpal_scan("t", &WordClass::All, Alphabet::BINARY, 9, 1).unwrap();
        assert_eq!(v.finding("min_palindromes"), Some(&json!(9)));
        let full = minpal_scan("t", &WordClass::FullAlphabet, Alphabet::TERNARY, 3, 1).unwrap();
        assert_eq!(full.finding("min_palindromes"), Some(&json!(4)));
        assert_eq!(full.finding("attaining"), Some(&json!(6)));
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let serial = minpal_scan("t", &WordClass::All, Alphabet::TERNARY, 7, 1).unwrap();
        let parallel = minpal_scan("t", &WordClass::All, Alphabet::TERNARY, 7, 3).unwrap();
        assert_eq!(serial.without_timing(), parallel.without_timing());
    }
}
