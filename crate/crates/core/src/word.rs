//! Finite words over a small ordered alphabet.
//!
//! Letters are stored as indices `0..8` and rendered as the ASCII letters
//! `a..=h`. An [`Alphabet`] is the first `k` of those symbols; words do not
//! carry one, since most operations only care about the letters present.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported alphabet.
pub const MAX_ALPHABET: usize = 8;

/// The first `size` symbols of `a..=h`, in that order. Serializes as its
/// size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Alphabet(u8);

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet::BINARY
    }
}

impl TryFrom<usize> for Alphabet {
    type Error = Error;

    fn try_from(size: usize) -> Result<Self> {
        Alphabet::new(size)
    }
}

impl From<Alphabet> for usize {
    fn from(a: Alphabet) -> usize {
        a.size()
    }
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet(2);
    pub const TERNARY: Alphabet = Alphabet(3);

    pub fn new(size: usize) -> Result<Self> {
        if (1..=MAX_ALPHABET).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(Error::AlphabetSize(size))
        }
    }

    /// Smallest alphabet containing every letter of `w` (at least one symbol).
    pub fn spanning(w: &Word) -> Self {
        Alphabet(w.letters().iter().map(|&c| c + 1).max().unwrap_or(1))
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, letter: u8) -> bool {
        letter < self.0
    }

    pub fn symbols(self) -> impl Iterator<Item = char> {
        (0..self.0).map(letter_char)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.symbols().join(","))
    }
}

pub fn letter_char(letter: u8) -> char {
    (b'a' + letter) as char
}

pub fn char_letter(c: char) -> Result<u8> {
    match c {
        'a'..='h' => Ok(c as u8 - b'a'),
        _ => Err(Error::InvalidLetter(c)),
    }
}

/// An immutable finite word. Ordering is lexicographic on letter indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&c| c as usize >= MAX_ALPHABET) {
            return Err(Error::InvalidIndex(bad));
        }
        Ok(Word(letters))
    }

    /// Caller guarantees every letter is below [`MAX_ALPHABET`].
    pub(crate) fn from_letters_unchecked(letters: Vec<u8>) -> Self {
        debug_assert!(letters.iter().all(|&c| (c as usize) < MAX_ALPHABET));
        Word(letters)
    }

    pub fn letter(letter: u8) -> Result<Self> {
        Word::from_letters(vec![letter])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome(&self.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.0.ends_with(&suffix.0)
    }

    /// The set `alph(w)` of letters occurring in `w`.
    pub fn letter_set(&self) -> BTreeSet<u8> {
        self.0.iter().copied().collect()
    }

    /// Start positions of (possibly overlapping) occurrences of `pattern`.
    pub fn positions(&self, pattern: &Word) -> Vec<usize> {
        positions(&self.0, &pattern.0)
    }

    pub fn contains_factor(&self, pattern: &Word) -> bool {
        contains(&self.0, &pattern.0)
    }

    /// `|u|_v`: the number of occurrences of `pattern`, overlaps included.
    pub fn occurrences(&self, pattern: &Word) -> Result<usize> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(positions(&self.0, &pattern.0).len())
    }

    /// Least period, from the border array.
    pub fn least_period(&self) -> Result<usize> {
        least_period(&self.0).ok_or(Error::EmptyWord)
    }

    pub fn has_period(&self, p: usize) -> bool {
        p >= 1 && (p..self.len()).all(|i| self.0[i] == self.0[i - p])
    }

    /// All distinct factors of length `n`; empty when `n > |w|`.
    pub fn factors(&self, n: usize) -> BTreeSet<Word> {
        match n {
            _ if n > self.len() => BTreeSet::new(),
            0 => BTreeSet::from([Word::empty()]),
            _ => self.0.windows(n).map(|f| Word(f.to_vec())).collect(),
        }
    }

    /// Largest `k` such that `x^k` is a factor.
    pub fn max_run(&self, x: u8) -> usize {
        self.0
            .iter()
            .chunk_by(|&&c| c)
            .into_iter()
            .filter(|(c, _)| *c == x)
            .map(|(_, run)| run.count())
            .max()
            .unwrap_or(0)
    }

    /// Applies a letter permutation: letter `i` becomes `perm[i]`.
    pub fn rename(&self, perm: &[u8]) -> Word {
        Word(self.0.iter().map(|&c| perm[c as usize]).collect())
    }

    /// Exchanges `a` and `b`, leaving other letters alone.
    pub fn complement(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|&c| match c {
                    0 => 1,
                    1 => 0,
                    c => c,
                })
                .collect(),
        )
    }

    /// Renames letters in order of first occurrence (`a`, `b`, ...). This is
    /// the lexicographically least word isomorphic to `self`.
    pub fn normalized(&self) -> Word {
        Word(normalize(&self.0))
    }
}

pub(crate) fn is_palindrome(s: &[u8]) -> bool {
    s.iter().eq(s.iter().rev())
}

pub(crate) fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.is_empty() || hay.windows(needle.len()).any(|w| w == needle)
}

fn positions(hay: &[u8], needle: &[u8]) -> Vec<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return Vec::new();
    }
    hay.windows(needle.len())
        .enumerate()
        .filter(|(_, w)| *w == needle)
        .map(|(i, _)| i)
        .collect()
}

fn normalize(s: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; MAX_ALPHABET];
    let mut next = 0;
    s.iter()
        .map(|&c| {
            let slot = &mut map[c as usize];
            if *slot == u8::MAX {
                *slot = next;
                next += 1;
            }
            *slot
        })
        .collect()
}

/// Border (failure-function) array: `b[i]` is the length of the longest
/// proper border of `s[..=i]`.
pub fn border_array(s: &[u8]) -> Vec<usize> {
    let mut border = vec![0; s.len()];
    for i in 1..s.len() {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    border
}

pub(crate) fn least_period(s: &[u8]) -> Option<usize> {
    border_array(s).last().map(|&b| s.len() - b)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = self.0.iter().map(|&c| letter_char(c)).collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.to_string())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars().map(char_letter).collect::<Result<Vec<_>>>().map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a word; panics on invalid input. Intended for literals in tests
/// and fixtures.
pub fn w(text: &str) -> Word {
    text.parse().unwrap_or_else(|e| panic!("bad word literal {text:?}: {e}"))
}

/// Orders words by length, then lexicographically.
pub fn shortlex(a: &Word, b: &Word) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Parses a word file: one word per line, `#` starts a comment, blank lines
/// are skipped.
pub fn parse_word_list(text: &str) -> Result<Vec<Word>> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::parse)
        .collect()
}

/// The isomorphism class `[w]`: every renaming of `w` or of its reversal.
/// Represented by its lexicographically least member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoClass {
    pub canonical: Word,
}

impl IsoClass {
    pub fn of(w: &Word) -> Self {
        let forward = w.normalized();
        let backward = w.reverse().normalized();
        IsoClass {
            canonical: forward.min(backward),
        }
    }

    pub fn contains(&self, w: &Word) -> bool {
        IsoClass::of(w) == *self
    }
}

pub fn canonical_class(w: &Word) -> IsoClass {
    IsoClass::of(w)
}

/// Renaming-only equivalence (no reversal).
pub fn is_isomorphic(u: &Word, v: &Word) -> bool {
    u.len() == v.len() && u.normalized() == v.normalized()
}

/// Every member of `[w]` over `alphabet`: all permutations of the alphabet
/// applied to `w` and to its reversal.
pub fn members_of_class(w: &Word, alphabet: Alphabet) -> Result<BTreeSet<Word>> {
    if !w.letters().iter().all(|&c| alphabet.contains(c)) {
        return Err(Error::AlphabetMismatch(format!("{w} is not a word over {alphabet}")));
    }
    let reversed = w.reverse();
    let members = (0..alphabet.size() as u8)
        .permutations(alphabet.size())
        .flat_map(|perm| [w.rename(&perm), reversed.rename(&perm)])
        .collect();
    Ok(members)
}
