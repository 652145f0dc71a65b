use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::word::{char_letter, letter_char, Alphabet, Word};

/// A non-erasing morphism from the first `images.len()` letters into `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    images: Vec<Word>,
    target: Alphabet,
}

impl Morphism {
    /// Builds a morphism sending letter `i` to `images[i]`. The target is the
    /// smallest alphabet spanning every image.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let source = Alphabet::new(images.len())?;
        if let Some(i) = images.iter().position(Word::is_empty) {
            return Err(Error::EmptyImage(letter_char(i as u8)));
        }
        let target = images
            .iter()
            .map(Alphabet::spanning)
            .max()
            .unwrap_or(source);
        Ok(Morphism { images, target })
    }

    pub fn source(&self) -> Alphabet {
        Alphabet::new(self.images.len()).expect("validated at construction")
    }

    pub fn target(&self) -> Alphabet {
        self.target
    }

    pub fn image(&self, letter: u8) -> &Word {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &c in w.letters() {
            let image = self.images.get(c as usize).ok_or_else(|| {
                Error::AlphabetMismatch(format!(
                    "letter {} has no image under {self}",
                    letter_char(c)
                ))
            })?;
            out.extend_from_slice(image.letters());
        }
        Ok(Word::from_letters_unchecked(out))
    }

    /// True iff the image of `seed` starts with `seed` and has length at
    /// least 2.
    pub fn is_prolongable(&self, seed: u8) -> bool {
        self.images
            .get(seed as usize)
            .is_some_and(|img| img.len() >= 2 && img.letters()[0] == seed)
    }

    pub fn named(name: &str) -> Option<Morphism> {
        let images: &[&str] = match name {
            "phi" => &["a", "bc"],
            "psi" => &["a", "abbab"],
            "tau" => &["ab", "ba"],
            "fib" => &["ab", "a"],
            "tm" => &["ab", "ba"],
            _ => return None,
        };
        let images = images.iter().map(|s| s.parse().expect("literal")).collect();
        Some(Morphism::new(images).expect("literal"))
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rules = self
            .images
            .iter()
            .enumerate()
            .map(|(i, img)| format!("{}->{}", letter_char(i as u8), img))
            .join(",");
        f.write_str(&rules)
    }
}

/// Parses `a->a, b->bc`. Source letters must be exactly `a, b, ...` in some
/// order, each given once.
impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rules: Vec<(u8, Word)> = Vec::new();
        for rule in s.split(',').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| Error::parse(s, format!("rule {rule:?} lacks '->'")))?;
            let mut lhs_chars = lhs.trim().chars();
            let letter = match (lhs_chars.next(), lhs_chars.next()) {
                (Some(c), None) => char_letter(c)?,
                _ => return Err(Error::parse(s, format!("left side of {rule:?} must be one letter"))),
            };
            rules.push((letter, rhs.trim().parse()?));
        }
        rules.sort_by_key(|(letter, _)| *letter);
        for (expected, (letter, _)) in rules.iter().enumerate() {
            if *letter as usize != expected {
                return Err(Error::parse(s, "source letters must be a, b, ... each exactly once"));
            }
        }
        Morphism::new(rules.into_iter().map(|(_, img)| img).collect())
    }
}
