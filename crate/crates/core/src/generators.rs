//! Descriptions of infinite words and their one-line textual form.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! spec     := preset | "pow:" word
//!           | "pow(" word ")"
//!           | "fix(" morph "," letter ")"
//!           | "rec(" word "," word ")"
//!           | "image(" morph "," spec ")"
//!           | "revclose(" "U0=" word "," "inserts=[" word ("," word)* "]" "," "t=" transform ")"
//!           | "shift(" spec "," number ")"
//! morph    := name | "{" letter "->" word ("," letter "->" word)* "}"
//! transform:= "rev" | "hat" | "id"
//! ```

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{letter_char, Alphabet, Word};

/// What gets appended after the connector in a reversal-closure step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transform {
    Identity,
    Reverse,
    /// Reverse, then exchange `a` and `b`.
    ReverseComplement,
}

impl Transform {
    pub fn apply(self, w: &Word) -> Word {
        match self {
            Transform::Identity => w.clone(),
            Transform::Reverse => w.reverse(),
            Transform::ReverseComplement => w.reverse().complement(),
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            Transform::Identity => "id",
            Transform::Reverse => "rev",
            Transform::ReverseComplement => "hat",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GeneratorSpec {
    /// `u u u ...`
    Periodic(Word),
    /// The fixed point of a morphism prolongable at `seed`.
    FixedPoint { morphism: Morphism, seed: u8 },
    /// Limit of `f_{n+1} = f_n f_{n-1}` starting from `f0`, `f1`.
    Recurrence { f0: Word, f1: Word },
    /// Letterwise image of another stream.
    Image {
        morphism: Morphism,
        inner: Box<GeneratorSpec>,
    },
    /// Limit of `U_{n+1} = U_n · inserts[n mod k] · transform(U_n)`.
    ReversalClosure {
        seed: Word,
        inserts: Vec<Word>,
        transform: Transform,
    },
    /// Drops the first `offset` letters.
    Shifted {
        inner: Box<GeneratorSpec>,
        offset: usize,
    },
}

impl GeneratorSpec {
    /// Checks the construction is well defined and returns its output
    /// alphabet.
    pub fn validate(&self) -> Result<Alphabet> {
        match self {
            GeneratorSpec::Periodic(u) => {
                if u.is_empty() {
                    return Err(Error::Precondition("periodic word needs a non-empty period".into()));
                }
                Ok(Alphabet::spanning(u))
            }
            GeneratorSpec::FixedPoint { morphism, seed } => {
                if morphism.target() > morphism.source() {
                    return Err(Error::AlphabetMismatch(format!(
                        "fixed point of {morphism} needs images over its own source alphabet"
                    )));
                }
                if !morphism.is_prolongable(*seed) {
                    return Err(Error::NotProlongable(letter_char(*seed)));
                }
                Ok(morphism.source())
            }
            GeneratorSpec::Recurrence { f0, f1 } => {
                if f0.is_empty() || f1.is_empty() {
                    return Err(Error::Precondition("recurrence needs non-empty f0 and f1".into()));
                }
                Ok(Alphabet::spanning(f0).max(Alphabet::spanning(f1)))
            }
            GeneratorSpec::Image { morphism, inner } => {
                let inner_alphabet = inner.validate()?;
                if inner_alphabet > morphism.source() {
                    return Err(Error::AlphabetMismatch(format!(
                        "{morphism} is not defined on every letter of {inner_alphabet}"
                    )));
                }
                Ok(morphism.target())
            }
            GeneratorSpec::ReversalClosure {
                seed,
                inserts,
                transform,
            } => {
                if seed.is_empty() {
                    return Err(Error::Precondition("reversal closure needs a non-empty U0".into()));
                }
                if inserts.is_empty() {
                    return Err(Error::Precondition("reversal closure needs at least one insert".into()));
                }
                let mut alphabet = inserts
                    .iter()
                    .map(Alphabet::spanning)
                    .fold(Alphabet::spanning(seed), Alphabet::max);
                if *transform == Transform::ReverseComplement {
                    alphabet = alphabet.max(Alphabet::BINARY);
                }
                Ok(alphabet)
            }
            GeneratorSpec::Shifted { inner, .. } => inner.validate(),
        }
    }

    pub fn shifted(self, offset: usize) -> GeneratorSpec {
        GeneratorSpec::Shifted {
            inner: Box::new(self),
            offset,
        }
    }

    /// Resolves a registry name, `pow:<word>`, or a spec string.
    pub fn resolve(text: &str) -> Result<GeneratorSpec> {
        text.parse()
    }
}

/// Named constructions. Each maps to a spec string.
pub const PRESETS: &[(&str, &str, &str)] = &[
    ("fibonacci", "rec(b,a)", "Fibonacci word, f(n+1) = f(n) f(n-1), f0 = b, f1 = a"),
    ("thue-morse", "fix({a->ab,b->ba},a)", "Thue-Morse word"),
    ("phi-F", "image({a->a,b->bc},rec(b,a))", "Fibonacci word under a->a, b->bc (5 palindromes)"),
    ("psi-F", "image({a->a,b->abbab},rec(b,a))", "Fibonacci word under a->a, b->abbab (11 palindromes)"),
    ("paperfolding", "revclose(U0=a,inserts=[a],t=hat)", "regular paperfolding word (29 palindromes)"),
    ("tau-P", "image({a->ab,b->ba},revclose(U0=a,inserts=[a],t=hat))", "paperfolding word under a->ab, b->ba (17 palindromes)"),
    ("berstel4", "revclose(U0=ab,inserts=[cd],t=rev)", "4-letter word closed under reversal with 5 palindromes"),
    ("closed-15", "revclose(U0=aabb,inserts=[ab,ba],t=rev)", "binary word closed under reversal, longest palindrome 5"),
    ("closed-13", "revclose(U0=abaabbabaaabbaaba,inserts=[bbaa,aabb],t=rev)", "binary word closed under reversal with 13 palindromes"),
];

const ALIASES: &[(&str, &str)] = &[("fib", "fibonacci"), ("tm", "thue-morse")];

pub fn preset(name: &str) -> Option<GeneratorSpec> {
    let name = ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, target)| target);
    if let Some(period) = name.strip_prefix("pow:") {
        return period.parse().ok().map(GeneratorSpec::Periodic);
    }
    PRESETS
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, spec, _)| spec.parse().expect("preset specs parse"))
}

pub fn preset_names() -> Vec<&'static str> {
    let mut names: Vec<_> = PRESETS.iter().map(|(n, _, _)| *n).collect();
    names.push("pow:<word>");
    names
}

fn fmt_morphism(m: &Morphism) -> String {
    format!("{{{m}}}")
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Periodic(u) => write!(f, "pow({u})"),
            GeneratorSpec::FixedPoint { morphism, seed } => {
                write!(f, "fix({},{})", fmt_morphism(morphism), letter_char(*seed))
            }
            GeneratorSpec::Recurrence { f0, f1 } => write!(f, "rec({f0},{f1})"),
            GeneratorSpec::Image { morphism, inner } => {
                write!(f, "image({},{inner})", fmt_morphism(morphism))
            }
            GeneratorSpec::ReversalClosure {
                seed,
                inserts,
                transform,
            } => write!(
                f,
                "revclose(U0={seed},inserts=[{}],t={})",
                inserts.iter().join(","),
                transform.keyword()
            ),
            GeneratorSpec::Shifted { inner, offset } => write!(f, "shift({inner},{offset})"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { src: s, rest: s };
        let spec = parser.spec()?;
        parser.skip_ws();
        if !parser.rest.is_empty() {
            return Err(parser.error(format!("trailing input {:?}", parser.rest)));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    rest: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::parse(self.src, reason)
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        match self.rest.strip_prefix(token) {
            Some(rest) => {
                self.rest = rest;
                true
            }
            None => false,
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected {token:?} at {:?}", self.rest)))
        }
    }

    /// Identifier-like run: letters, digits, `-`, `_`, `:`.
    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let end = self
            .rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | ':')))
            .unwrap_or(self.rest.len());
        let (head, tail) = self.rest.split_at(end);
        self.rest = tail;
        head
    }

    fn word(&mut self) -> Result<Word> {
        let text = self.ident();
        text.parse()
    }

    fn number(&mut self) -> Result<usize> {
        let text = self.ident();
        text.parse()
            .map_err(|_| self.error(format!("expected a number, found {text:?}")))
    }

    fn spec(&mut self) -> Result<GeneratorSpec> {
        let head = self.ident();
        if head.is_empty() {
            return Err(self.error(format!("expected a generator at {:?}", self.rest)));
        }
        if !self.eat("(") {
            return preset(head).ok_or_else(|| Error::UnknownPreset(head.to_string()));
        }
        let spec = match head {
            "pow" => GeneratorSpec::Periodic(self.word()?),
            "fix" => {
                let morphism = self.morphism()?;
                self.expect(",")?;
                let seed = self.word()?;
                match seed.letters() {
                    [seed] => GeneratorSpec::FixedPoint {
                        morphism,
                        seed: *seed,
                    },
                    _ => return Err(self.error("fixed-point seed must be one letter")),
                }
            }
            "rec" => {
                let f0 = self.word()?;
                self.expect(",")?;
                let f1 = self.word()?;
                GeneratorSpec::Recurrence { f0, f1 }
            }
            "image" => {
                let morphism = self.morphism()?;
                self.expect(",")?;
                let inner = Box::new(self.spec()?);
                GeneratorSpec::Image { morphism, inner }
            }
            "revclose" => self.revclose()?,
            "shift" => {
                let inner = Box::new(self.spec()?);
                self.expect(",")?;
                let offset = self.number()?;
                GeneratorSpec::Shifted { inner, offset }
            }
            other => return Err(self.error(format!("unknown constructor {other:?}"))),
        };
        self.expect(")")?;
        Ok(spec)
    }

    fn morphism(&mut self) -> Result<Morphism> {
        if self.eat("{") {
            let end = self
                .rest
                .find('}')
                .ok_or_else(|| self.error("unterminated morphism"))?;
            let body = &self.rest[..end];
            self.rest = &self.rest[end + 1..];
            return body.parse();
        }
        let name = self.ident();
        Morphism::named(name).ok_or_else(|| self.error(format!("unknown morphism {name:?}")))
    }

    fn revclose(&mut self) -> Result<GeneratorSpec> {
        let (mut seed, mut inserts, mut transform) = (None, None, None);
        loop {
            let key = self.ident();
            self.expect("=")?;
            match key {
                "U0" | "u0" => seed = Some(self.word()?),
                "inserts" => {
                    self.expect("[")?;
                    let mut list = vec![self.word()?];
                    while self.eat(",") {
                        list.push(self.word()?);
                    }
                    self.expect("]")?;
                    inserts = Some(list);
                }
                "t" => {
                    transform = Some(match self.ident() {
                        "rev" => Transform::Reverse,
                        "hat" => Transform::ReverseComplement,
                        "id" => Transform::Identity,
                        other => return Err(self.error(format!("unknown transform {other:?}"))),
                    })
                }
                other => return Err(self.error(format!("unknown revclose key {other:?}"))),
            }
            if !self.eat(",") {
                break;
            }
        }
        Ok(GeneratorSpec::ReversalClosure {
            seed: seed.ok_or_else(|| self.error("revclose needs U0="))?,
            inserts: inserts.ok_or_else(|| self.error("revclose needs inserts=[...]"))?,
            transform: transform.unwrap_or(Transform::Reverse),
        })
    }
}
