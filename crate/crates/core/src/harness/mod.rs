//! Exhaustive and bounded-search verifiers.
//!
//! Each verifier is a pure function of its parameters and produces a
//! [`ClaimVerdict`]. Statements about infinite words can only be checked on
//! finite horizons; those verdicts say `verified-up-to-bound` and record the
//! bound.

pub mod claims;
pub mod constraints;
pub mod enumerate;
pub mod fixtures;

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::word::Word;

pub use claims::{manifest, return_claim, run_all, run_claim, ClaimInfo};
pub use constraints::{check_claim, ConstraintSet, ReturnClaim, ReturnFamily};
pub use enumerate::{enumerate_words, minpal_scan, Dedupe, WordClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    VerifiedUpToBound,
    Refuted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::VerifiedUpToBound => "verified-up-to-bound",
            Status::Refuted => "refuted",
        })
    }
}

/// A labelled group of words: either a counterexample to the claim
/// (`refutes == true`) or a characterizing set found along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub role: String,
    pub refutes: bool,
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub words_scanned: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim_id: String,
    pub statement: String,
    pub status: Status,
    pub bound: BTreeMap<String, Value>,
    pub findings: BTreeMap<String, Value>,
    pub witnesses: Vec<Witness>,
    pub stats: Stats,
}

impl ClaimVerdict {
    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    pub fn refutations(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.refutes)
    }

    pub fn witness(&self, role: &str) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.role == role)
    }

    pub fn finding(&self, key: &str) -> Option<&Value> {
        self.findings.get(key)
    }

    /// Same verdict with timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> ClaimVerdict {
        let mut v = self.clone();
        v.stats.elapsed_ms = 0;
        v
    }
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.claim_id, self.status)?;
        writeln!(f, "  statement: {}", self.statement)?;
        if !self.bound.is_empty() {
            let bound = self.bound.iter().map(|(k, v)| format!("{k}={v}")).join(", ");
            writeln!(f, "  bound: {bound}")?;
        }
        for (k, v) in &self.findings {
            writeln!(f, "  {k}: {v}")?;
        }
        for witness in &self.witnesses {
            const SHOWN: usize = 12;
            let mark = if witness.refutes { "counterexample" } else { "witness" };
            let words = witness.words.iter().take(SHOWN).map(crate::pal::render).join(" ");
            let more = witness.words.len().saturating_sub(SHOWN);
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            writeln!(f, "  {mark} [{}]: {words}{tail}", witness.role)?;
        }
        write!(
            f,
            "  scanned {} words in {} ms",
            self.stats.words_scanned, self.stats.elapsed_ms
        )
    }
}

/// Accumulates checks, then settles the status.
pub(crate) struct VerdictBuilder {
    verdict: ClaimVerdict,
    started: Instant,
}

impl VerdictBuilder {
    pub fn new(claim_id: &str, statement: &str) -> Self {
        VerdictBuilder {
            verdict: ClaimVerdict {
                claim_id: claim_id.to_string(),
                statement: statement.to_string(),
                status: Status::Verified,
                bound: BTreeMap::new(),
                findings: BTreeMap::new(),
                witnesses: Vec::new(),
                stats: Stats::default(),
            },
            started: Instant::now(),
        }
    }

    pub fn bound(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.verdict.bound.insert(key.to_string(), value.into());
        self
    }

    pub fn finding(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.verdict.findings.insert(key.to_string(), value.into());
        self
    }

    pub fn scanned(&mut self, n: u64) -> &mut Self {
        self.verdict.stats.words_scanned += n;
        self
    }

    pub fn witness(&mut self, role: &str, words: impl IntoIterator<Item = Word>) -> &mut Self {
        self.verdict.witnesses.push(Witness {
            role: role.to_string(),
            refutes: false,
            words: words.into_iter().collect(),
        });
        self
    }

    /// Records a failed sub-check when `ok` is false. `counterexamples` must
    /// name at least one word whenever the check fails.
    pub fn check(
        &mut self,
        ok: bool,
        role: &str,
        counterexamples: impl IntoIterator<Item = Word>,
    ) -> &mut Self {
        if !ok {
            let words: Vec<Word> = counterexamples.into_iter().collect();
            assert!(!words.is_empty(), "refutation of {role:?} without a witness word");
            self.verdict.witnesses.push(Witness {
                role: role.to_string(),
                refutes: true,
                words,
            });
        }
        self
    }

    fn settle(mut self, unbounded: Status) -> ClaimVerdict {
        self.verdict.status = if self.verdict.witnesses.iter().any(|w| w.refutes) {
            Status::Refuted
        } else {
            unbounded
        };
        self.verdict.stats.elapsed_ms = self.started.elapsed().as_millis() as u64;
        self.verdict
    }

    /// For statements about finitely many finite words.
    pub fn finish(self) -> ClaimVerdict {
        self.settle(Status::Verified)
    }

    /// For statements about infinite words checked on finite horizons.
    pub fn finish_up_to_bound(self) -> ClaimVerdict {
        assert!(!self.verdict.bound.is_empty(), "bounded verdicts must state their bound");
        self.settle(Status::VerifiedUpToBound)
    }
}

/// Maps `f` over `words` on `jobs` worker threads, preserving order.
pub(crate) fn par_map<T, F>(words: &[Word], jobs: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Word) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return Ok(words.iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(|| words.par_iter().map(f).collect()))
}
