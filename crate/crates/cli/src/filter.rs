//! Word filters for `enumerate`, e.g. `pal=9`, `longest<=4`, `rich`,
//! `has:aab`.

use std::cmp::Ordering;
use std::str::FromStr;

use palwords::{pal_set, Alphabet, PalReport, Word};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("bad filter {0:?}: expected pal|longest|period with =,!=,<,<=,>,>= and a number, rich, nonrich, full, has:WORD or avoids:WORD")]
pub struct FilterError(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    PalCount,
    Longest,
    Period,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Filter {
    Compare { measure: Measure, op: Vec<Ordering>, value: usize },
    Rich(bool),
    FullAlphabet,
    Has(Word),
    Avoids(Word),
}

impl Filter {
    fn needs_report(&self) -> bool {
        matches!(self, Filter::Rich(_) | Filter::Compare { measure: Measure::PalCount | Measure::Longest, .. })
    }

    fn accepts(&self, w: &Word, alphabet: Alphabet, report: Option<&PalReport>) -> bool {
        match self {
            Filter::Compare { measure, op, value } => {
                let actual = match measure {
                    Measure::PalCount => report.map_or(0, |r| r.count),
                    Measure::Longest => report.map_or(0, |r| r.longest.len()),
                    Measure::Period => w.least_period().unwrap_or(0),
                };
                op.contains(&actual.cmp(value))
            }
            Filter::Rich(rich) => report.is_some_and(|r| r.is_rich() == *rich),
            Filter::FullAlphabet => w.letter_set().len() == alphabet.size(),
            Filter::Has(f) => w.contains_factor(f),
            Filter::Avoids(f) => !w.contains_factor(f),
        }
    }
}

impl FromStr for Filter {
    type Err = FilterError;

    fn from_str(s: &str) -> Result<Self, FilterError> {
        let err = || FilterError(s.to_string());
        let text = s.trim();
        match text {
            "rich" => return Ok(Filter::Rich(true)),
            "nonrich" | "non-rich" => return Ok(Filter::Rich(false)),
            "full" => return Ok(Filter::FullAlphabet),
            _ => {}
        }
        if let Some(word) = text.strip_prefix("has:") {
            return word.parse().map(Filter::Has).map_err(|_| err());
        }
        if let Some(word) = text.strip_prefix("avoids:") {
            return word.parse().map(Filter::Avoids).map_err(|_| err());
        }
        let split = text.find(|c: char| "=!<>".contains(c)).ok_or_else(err)?;
        let (name, rest) = text.split_at(split);
        let measure = match name.trim() {
            "pal" | "count" => Measure::PalCount,
            "longest" => Measure::Longest,
            "period" => Measure::Period,
            _ => return Err(err()),
        };
        use Ordering::*;
        let (op, number) = [
            ("<=", vec![Less, Equal]),
            (">=", vec![Greater, Equal]),
            ("!=", vec![Less, Greater]),
            ("=", vec![Equal]),
            ("<", vec![Less]),
            (">", vec![Greater]),
        ]
        .into_iter()
        .find_map(|(sym, op)| rest.strip_prefix(sym).map(|n| (op, n)))
        .ok_or_else(err)?;
        let value = number.trim().parse().map_err(|_| err())?;
        Ok(Filter::Compare { measure, op, value })
    }
}

/// A conjunction of filters.
#[derive(Debug, Clone, Default)]
pub struct FilterSet(pub Vec<Filter>);

impl FilterSet {
    pub fn accepts(&self, w: &Word, alphabet: Alphabet) -> bool {
        let report = self.0.iter().any(Filter::needs_report).then(|| pal_set(w));
        self.0.iter().all(|f| f.accepts(w, alphabet, report.as_ref()))
    }
}
