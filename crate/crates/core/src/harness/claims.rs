//! The built-in claims and their verifiers.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::constraints::{check_claim, ConstraintSet, ReturnClaim, ReturnFamily};
use super::enumerate::{enumerate_words, minpal_scan, Dedupe, WordClass};
use super::fixtures::{self, word_set};
use super::{par_map, ClaimVerdict, VerdictBuilder};
use crate::error::{Error, Result};
use crate::pal::{pal_count, pal_set, prefix_pal_set, reversal_closure_check, stabilized_pal_set};
use crate::stream::PrefixStream;
use crate::word::{canonical_class, members_of_class, w, Alphabet, Word};

/// Default stabilizer window for stream claims.
pub const STABILIZER_START: usize = 64;
pub const STABILIZER_CAP: usize = 16384;
/// Default window length for first-return claims.
pub const RETURN_WINDOW: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimInfo {
    pub id: String,
    pub description: String,
}

type Verifier = fn(usize) -> Result<ClaimVerdict>;

const CLAIMS: &[(&str, &str, Verifier)] = &[
    ("binary-min-nine", "binary words of length 9 using both letters have at least 9 palindromes", binary_min_nine),
    ("min-four-palindromes", "words of length 3..=12 over at most 4 letters have at least 4 palindromes; at length 12 exactly 4 forces a factor of x^∞ with x in [abc]", min_four_palindromes),
    ("minpal-binary-12", "least palindrome count of binary words of length 12 is 9", |jobs| minpal_claim("minpal-binary-12", Alphabet::BINARY, 12, 9, jobs)),
    ("minpal-binary-9", "least palindrome count of binary words of length 9 is 9", |jobs| minpal_claim("minpal-binary-9", Alphabet::BINARY, 9, 9, jobs)),
    ("minpal-ternary-9", "least palindrome count of ternary words of length 9 is 4, attained only by (abc)-periodic words", |jobs| minpal_claim("minpal-ternary-9", Alphabet::TERNARY, 9, 4, jobs)),
    ("nine-palindrome-squares", "binary length-12 words with exactly 9 palindromes are the squares u² with u in [aababb]", |jobs| nine_palindrome_squares(Reading::AsStated, jobs)),
    ("nine-palindrome-squares-rotations", "as nine-palindrome-squares, with u also ranging over rotations of [aababb]", |jobs| nine_palindrome_squares(Reading::WithRotations, jobs)),
    ("non-rich-length-12", "850 binary non-rich words of length 12; the palindrome sets missing aa or bb are exactly four sets of size 12", non_rich_length_12),
    ("returns-aab-short-palindromes", "with no palindrome longer than 4, complete first returns to aab are aababbaab and aabbabaab", |_| returns_claim("returns-aab-short-palindromes")),
    ("returns-abaaab", "first returns to abaaab are abaaab(babaab)^n babaaab", |_| returns_claim("returns-abaaab")),
    ("returns-ababa", "first returns to ababa under the no-abababa/no-aabaa constraints", |_| returns_claim("returns-ababa")),
    ("returns-baaab", "first returns to baaab fall in four families when baaab is the only length-5 palindrome", |_| returns_claim("returns-baaab")),
    ("returns-baabaab", "first returns to baabaab are baabaab(babaab)^n aab or baabaab(abbaab)^n aab, n >= 1", |_| returns_claim("returns-baabaab")),
    ("reversal-closed-13", "the closed-13 construction has the same 13 palindromes at every level 2..=8 and is closed under reversal", reversal_closed_13),
    ("short-palindrome-bounds", "binary words avoiding palindromes longer than 3 have bounded length; (aabbab)^∞ and closed-15 have longest palindromes 4 and 5", short_palindrome_bounds),
    ("stream-berstel4", "berstel4 has palindromes {ε,a,b,c,d} and no missing reversal up to length 6", |_| stream_claim("stream-berstel4")),
    ("stream-paperfolding", "the paperfolding word has 29 palindromes (ε included), the longest of length 13", |_| stream_claim("stream-paperfolding")),
    ("stream-phi-F", "phi-F has palindromes {ε,a,b,c,aa} and lacks the reversal of bc", |_| stream_claim("stream-phi-F")),
    ("stream-psi-F", "psi-F has the 11 listed palindromes and lacks the reversal of abaaa", |_| stream_claim("stream-psi-F")),
    ("stream-tau-P", "tau-P has 17 palindromes", |_| stream_claim("stream-tau-P")),
    ("ten-palindrome-classes", "binary length-14 words with exactly 10 palindromes lie in T1..T4 (w over [av], [vb], [v]); none has a palindrome longer than 6", |jobs| ten_palindrome_classes(Reading::AsStated, jobs)),
    ("ten-palindrome-classes-rotations", "as ten-palindrome-classes, with w also ranging over rotations", |jobs| ten_palindrome_classes(Reading::WithRotations, jobs)),
    ("ten-palindrome-extensions", "one-letter extensions of T1..T4 words reach 11 palindromes under the listed period conditions", |_| ten_palindrome_extensions(Reading::AsStated, Item3::Shortened)),
    ("ten-palindrome-extensions-amended", "as ten-palindrome-extensions over rotation-closed sets, with the T3 case keeping its first letter", |_| ten_palindrome_extensions(Reading::WithRotations, Item3::Full)),
];

/// Every built-in claim, sorted by id.
pub fn manifest() -> Vec<ClaimInfo> {
    CLAIMS
        .iter()
        .map(|(id, description, _)| ClaimInfo {
            id: id.to_string(),
            description: description.to_string(),
        })
        .collect()
}

/// Runs one built-in claim, using `jobs` worker threads for large scans.
pub fn run_claim(id: &str, jobs: usize) -> Result<ClaimVerdict> {
    let (_, _, verify) = CLAIMS
        .iter()
        .find(|(name, _, _)| *name == id)
        .ok_or_else(|| Error::UnknownClaim(id.to_string()))?;
    verify(jobs.max(1))
}

/// Runs every built-in claim; the result is ordered by claim id whatever
/// order the claims finish in.
pub fn run_all(jobs: usize) -> Result<Vec<ClaimVerdict>> {
    use rayon::prelude::*;
    let ids: Vec<&str> = CLAIMS.iter().map(|(id, _, _)| *id).collect();
    let mut verdicts: Vec<ClaimVerdict> = if jobs <= 1 {
        ids.iter().map(|id| run_claim(id, 1)).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(format!("cannot start {jobs} workers: {e}")))?;
        pool.install(|| ids.par_iter().map(|id| run_claim(id, 1)).collect::<Result<_>>())?
    };
    verdicts.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(verdicts)
}

fn all_words(alphabet: Alphabet, n: usize) -> Result<Vec<Word>> {
    Ok(enumerate_words(alphabet, n, Dedupe::None)?.collect())
}

fn period(w: &Word) -> usize {
    w.least_period().expect("non-empty word")
}

fn to_json(words: &BTreeSet<Word>) -> serde_json::Value {
    json!(words.iter().map(crate::pal::render).collect::<Vec<_>>())
}

fn binary_min_nine(jobs: usize) -> Result<ClaimVerdict> {
    let mut v = VerdictBuilder::new(
        "binary-min-nine",
        "every binary word of length 9 using both letters has at least 9 palindromes",
    );
    let words: Vec<Word> = all_words(Alphabet::BINARY, 9)?
        .into_iter()
        .filter(|w| w.letter_set().len() == 2)
        .collect();
    let counts = par_map(&words, jobs, pal_count)?;
    let min = counts.iter().copied().min().unwrap_or(0);
    let below: Vec<Word> = words.iter().zip(&counts).filter(|(_, &c)| c < 9).map(|(w, _)| w.clone()).collect();
    let attaining: BTreeSet<Word> = words.iter().zip(&counts).filter(|(_, &c)| c == min).map(|(w, _)| w.clone()).collect();
    v.bound("length", 9)
        .scanned(words.len() as u64)
        .finding("min_palindromes", min)
        .finding("attaining", attaining.len())
        .check(below.is_empty(), "fewer than 9 palindromes", below)
        .witness("attains the minimum", attaining);
    Ok(v.finish())
}

fn min_four_palindromes(jobs: usize) -> Result<ClaimVerdict> {
    let mut v = VerdictBuilder::new(
        "min-four-palindromes",
        "every word of length 3..=12 over at most 4 letters has at least 4 palindromes; at length 12 exactly 4 occurs only in factors of x^∞ with x in [abc]",
    );
    v.bound("max_length", 12).bound("max_alphabet", 4);
    let alphabet = Alphabet::new(4)?;
    let mut per_length = BTreeMap::new();
    for n in 3..=12 {
        // Palindrome counts are constant on isomorphism classes.
        let reps: Vec<Word> = enumerate_words(alphabet, n, Dedupe::IsoClass)?.collect();
        let counts = par_map(&reps, jobs, pal_count)?;
        v.scanned(reps.len() as u64);
        let min = counts.iter().copied().min().unwrap_or(0);
        per_length.insert(n.to_string(), min);
        let below: Vec<Word> = reps.iter().zip(&counts).filter(|(_, &c)| c < 4).map(|(w, _)| w.clone()).collect();
        v.check(below.is_empty(), &format!("fewer than 4 palindromes at length {n}"), below);
        if n == 12 {
            let four: Vec<Word> = reps.iter().zip(&counts).filter(|(_, &c)| c == 4).map(|(w, _)| w.clone()).collect();
            let stray: Vec<Word> = four
                .iter()
                .filter(|w| !(period(w) == 3 && w.factor(0, 3).letter_set().len() == 3))
                .cloned()
                .collect();
            v.finding("classes_with_4_at_length_12", four.len())
                .check(stray.is_empty(), "4 palindromes but not (abc)-periodic", stray)
                .witness("4 palindromes at length 12 (class representatives)", four);
        }
    }
    let binary = all_words(Alphabet::BINARY, 12)?;
    let binary_min = par_map(&binary, jobs, pal_count)?.into_iter().min().unwrap_or(0);
    v.scanned(binary.len() as u64)
        .finding("min_by_length", json!(per_length))
        .finding("binary_min_at_length_12", binary_min);
    Ok(v.finish_up_to_bound())
}

fn minpal_claim(id: &str, alphabet: Alphabet, n: usize, expected: usize, jobs: usize) -> Result<ClaimVerdict> {
    let scan = minpal_scan(id, &WordClass::All, alphabet, n, jobs)?;
    let min = scan.finding("min_palindromes").and_then(|m| m.as_u64()).unwrap_or(0) as usize;
    let argmin = scan.witness("attains the minimum").map(|w| w.words.clone()).unwrap_or_default();
    let mut v = VerdictBuilder::new(id, &format!("least palindrome count of words of length {n} on {alphabet} is {expected}"));
    for (k, value) in &scan.bound {
        v.bound(k, value.clone());
    }
    for (k, value) in &scan.findings {
        v.finding(k, value.clone());
    }
    v.scanned(scan.stats.words_scanned)
        .check(min == expected, &format!("minimum is {min}"), argmin.iter().cloned())
        .witness("attains the minimum", argmin.iter().cloned());
    if alphabet.size() == 3 {
        let stray: Vec<Word> = argmin.iter().filter(|w| period(w) != 3).cloned().collect();
        v.check(stray.is_empty(), "minimum attained by a word that is not (abc)-periodic", stray);
    }
    Ok(v.finish_up_to_bound())
}

/// How to read "w ∈ [u]" in the period-6 and period-7 statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    /// Renamings and reversal only.
    AsStated,
    /// Also every rotation.
    WithRotations,
}

/// `[u]` under the given reading, over the binary alphabet.
pub fn binary_class(u: &Word, reading: Reading) -> BTreeSet<Word> {
    let members = members_of_class(u, Alphabet::BINARY).expect("binary word");
    match reading {
        Reading::AsStated => members,
        Reading::WithRotations => members
            .iter()
            .flat_map(|m| (0..m.len()).map(move |i| m.factor(i, m.len() - i).concat(&m.factor(0, i))))
            .collect(),
    }
}

fn v() -> Word {
    w(fixtures::V)
}

fn nine_palindrome_squares(reading: Reading, jobs: usize) -> Result<ClaimVerdict> {
    let (id, scope) = match reading {
        Reading::AsStated => ("nine-palindrome-squares", "u in [aababb]"),
        Reading::WithRotations => ("nine-palindrome-squares-rotations", "u a rotation of a word in [aababb]"),
    };
    let mut verdict = VerdictBuilder::new(
        id,
        &format!("binary length-12 words have at least 9 palindromes, and exactly 9 iff the word is u² with {scope}; u²α with π(u²α) ≠ 6 has at least 10"),
    );
    let class = binary_class(&v(), reading);
    let squares: BTreeSet<Word> = class.iter().map(|u| u.pow(2)).collect();
    let words = all_words(Alphabet::BINARY, 12)?;
    let counts = par_map(&words, jobs, pal_count)?;
    let below: Vec<Word> = words.iter().zip(&counts).filter(|(_, &c)| c < 9).map(|(w, _)| w.clone()).collect();
    let nine: BTreeSet<Word> = words.iter().zip(&counts).filter(|(_, &c)| c == 9).map(|(w, _)| w.clone()).collect();
    let nine_set = word_set(fixtures::NINE_SET);
    let wrong_set: Vec<Word> = squares.iter().filter(|s| pal_set(s).set() != nine_set).cloned().collect();
    let short_extensions: Vec<Word> = class
        .iter()
        .flat_map(|u| (0..2u8).map(move |a| u.pow(2).concat(&Word::letter(a).expect("binary letter"))))
        .filter(|x| period(x) != 6 && pal_count(x) < 10)
        .collect();
    verdict
        .scanned(words.len() as u64)
        .finding("nine_palindrome_words", nine.len())
        .finding("squares", squares.len())
        .check(below.is_empty(), "fewer than 9 palindromes", below)
        .check(nine.is_subset(&squares), "9 palindromes but not a listed square", nine.difference(&squares).cloned())
        .check(squares.is_subset(&nine), "listed square without exactly 9 palindromes", squares.difference(&nine).cloned())
        .check(wrong_set.is_empty(), "square whose palindrome set differs from the 9-set", wrong_set)
        .check(short_extensions.is_empty(), "u²α off period 6 with fewer than 10 palindromes", short_extensions)
        .witness("exactly 9 palindromes", nine);
    Ok(verdict.finish())
}

/// The sets T1..T4 of length-14 words built from `v = aababb`.
pub fn t_sets(reading: Reading) -> [BTreeSet<Word>; 4] {
    let a = Word::letter(0).expect("letter");
    let b = Word::letter(1).expect("letter");
    let letters = [a.clone(), b.clone()];
    let t1 = binary_class(&a.concat(&v()), reading).iter().map(|u| u.pow(2)).collect();
    let t2 = binary_class(&v().concat(&b), reading).iter().map(|u| u.pow(2)).collect();
    let base = binary_class(&v(), reading);
    let mut t3 = BTreeSet::new();
    let mut t4 = BTreeSet::new();
    for u in &base {
        let sq = u.pow(2);
        for x in &letters {
            for y in &letters {
                if period(&x.concat(&sq)) != 6 && period(&sq.concat(y)) == 6 {
                    t3.insert(x.concat(&sq).concat(y));
                }
                if period(&sq.concat(x)) == 6 && period(&sq.concat(x).concat(y)) != 6 {
                    t4.insert(sq.concat(x).concat(y));
                }
            }
        }
    }
    [t1, t2, t3, t4]
}

fn ten_palindrome_classes(reading: Reading, jobs: usize) -> Result<ClaimVerdict> {
    let id = match reading {
        Reading::AsStated => "ten-palindrome-classes",
        Reading::WithRotations => "ten-palindrome-classes-rotations",
    };
    let mut verdict = VerdictBuilder::new(
        id,
        "every binary length-14 word with exactly 10 palindromes is in one of T1..T4; no word of T1..T4 has a palindrome longer than 6",
    );
    let sets = t_sets(reading);
    let words = all_words(Alphabet::BINARY, 14)?;
    let counts = par_map(&words, jobs, pal_count)?;
    let ten: BTreeSet<Word> = words.iter().zip(&counts).filter(|(_, &c)| c == 10).map(|(w, _)| w.clone()).collect();

    let memberships = |w: &Word| sets.iter().filter(|t| t.contains(w)).count();
    let unclassified: Vec<Word> = ten.iter().filter(|w| memberships(w) == 0).cloned().collect();
    let ambiguous: Vec<Word> = ten.iter().filter(|w| memberships(w) > 1).cloned().collect();
    let union: BTreeSet<Word> = sets.iter().flatten().cloned().collect();
    let long: Vec<Word> = union.iter().chain(&ten).filter(|w| pal_set(w).longest.len() > 6).cloned().collect();
    let not_ten: Vec<Word> = union.difference(&ten).cloned().collect();

    let sizes: Vec<usize> = sets.iter().map(BTreeSet::len).collect();
    let distinct = [&sets[0], &sets[2], &sets[3]];
    let overlapping = distinct
        .iter()
        .enumerate()
        .flat_map(|(i, s)| distinct[i + 1..].iter().map(move |t| s.intersection(t).count()))
        .sum::<usize>();
    verdict
        .scanned(words.len() as u64)
        .finding("ten_palindrome_words", ten.len())
        .finding("set_sizes", json!(sizes))
        .finding("t1_equals_t2", sets[0] == sets[1])
        .finding("classified", ten.len() - unclassified.len())
        .finding("unclassified", unclassified.len())
        .finding("in_several_sets", ambiguous.len())
        .finding("overlap_between_t1_t3_t4", overlapping)
        .finding("set_members_without_10_palindromes", not_ten.len())
        .check(unclassified.is_empty(), "10 palindromes but in none of T1..T4", unclassified)
        .check(long.is_empty(), "palindrome longer than 6", long);
    for (i, set) in sets.into_iter().enumerate() {
        verdict.witness(&format!("T{}", i + 1), set);
    }
    Ok(verdict.finish())
}

/// Which word the T3 extension case counts palindromes in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Item3 {
    /// `w²βγ`, dropping the leading letter.
    Shortened,
    /// `αw²βγ`.
    Full,
}

fn ten_palindrome_extensions(reading: Reading, item3: Item3) -> Result<ClaimVerdict> {
    let id = match item3 {
        Item3::Shortened => "ten-palindrome-extensions",
        Item3::Full => "ten-palindrome-extensions-amended",
    };
    let t3_word = match item3 {
        Item3::Shortened => "w²βγ",
        Item3::Full => "αw²βγ",
    };
    let mut verdict = VerdictBuilder::new(
        id,
        &format!("for γ a letter: w² in T1 or T2 with π(w²γ) ≠ 7 gives 11 palindromes in w²γ; αw²β in T3 with π(w²βγ) ≠ 6 gives 11 in {t3_word}; w²αβ in T4 gives 11 in w²αβγ"),
    );
    let sets = t_sets(reading);
    let letters: Vec<Word> = (0..2).map(|c| Word::letter(c).expect("letter")).collect();
    let mut scanned = 0u64;
    let mut stays_ten = BTreeSet::new();
    let mut failures: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
    for (item, set) in sets.iter().enumerate() {
        for t in set {
            for g in &letters {
                scanned += 1;
                let extended = t.concat(g);
                let (condition, counted) = match item {
                    0 | 1 => (period(&extended) != 7, extended.clone()),
                    2 => {
                        let tail = extended.factor(1, extended.len() - 1);
                        let counted = if item3 == Item3::Full { extended.clone() } else { tail.clone() };
                        (period(&tail) != 6, counted)
                    }
                    _ => (true, extended.clone()),
                };
                if item == 0 && period(&extended) == 7 && pal_count(&extended) == 10 {
                    stays_ten.insert(extended.clone());
                }
                if condition && pal_count(&counted) != 11 {
                    failures.entry(item + 1).or_default().push(counted);
                }
            }
        }
    }
    verdict
        .scanned(scanned)
        .finding("t1_period_7_extensions_with_10", stays_ten.len())
        .witness("T1 extensions of period 7 keeping 10 palindromes", stays_ten);
    for item in 1..=4 {
        let bad = failures.remove(&item).unwrap_or_default();
        let counts: Vec<usize> = bad.iter().map(pal_count).collect();
        if !bad.is_empty() {
            verdict.finding(&format!("case_{item}_counts"), json!(counts));
        }
        verdict.check(bad.is_empty(), &format!("case {item}: not 11 palindromes"), bad);
    }
    Ok(verdict.finish())
}

fn non_rich_length_12(jobs: usize) -> Result<ClaimVerdict> {
    let mut verdict = VerdictBuilder::new(
        "non-rich-length-12",
        "there are 850 binary non-rich words of length 12; the palindrome sets of those missing aa or bb are A, B, C, D, each of size 12; aaababaabaaa has set D",
    );
    let words = all_words(Alphabet::BINARY, 12)?;
    let reports = par_map(&words, jobs, pal_set)?;
    let non_rich: Vec<(&Word, BTreeSet<Word>)> = words
        .iter()
        .zip(&reports)
        .filter(|(_, r)| !r.is_rich())
        .map(|(w, r)| (w, r.set()))
        .collect();
    let (aa, bb) = (w("aa"), w("bb"));
    let mut exceptional: BTreeMap<Vec<Word>, Word> = BTreeMap::new();
    for (word, set) in &non_rich {
        if !set.contains(&aa) || !set.contains(&bb) {
            exceptional.entry(set.iter().cloned().collect()).or_insert_with(|| (*word).clone());
        }
    }
    let expected: BTreeSet<Vec<Word>> = [fixtures::SET_A, fixtures::SET_B, fixtures::SET_C, fixtures::SET_D]
        .iter()
        .map(|s| word_set(s).into_iter().collect())
        .collect();
    let found: BTreeSet<Vec<Word>> = exceptional.keys().cloned().collect();
    let classes: BTreeSet<Word> = non_rich.iter().map(|(w, _)| canonical_class(w).canonical).collect();
    let unexpected: Vec<Word> = exceptional
        .iter()
        .filter(|(set, _)| !expected.contains(*set))
        .map(|(_, w)| w.clone())
        .collect();
    let missing: Vec<Word> = expected.difference(&found).flatten().cloned().collect();
    let d_example = w("aaababaabaaa");
    let d_ok = pal_set(&d_example).set() == word_set(fixtures::SET_D);
    let sizes: Vec<usize> = found.iter().map(Vec::len).collect();
    verdict
        .scanned(words.len() as u64)
        .finding("non_rich_words", non_rich.len())
        .finding("non_rich_classes", classes.len())
        .finding("exceptional_sets", found.len())
        .finding("exceptional_set_sizes", json!(sizes))
        .check(
            non_rich.len() == fixtures::NON_RICH_LENGTH_12,
            &format!("{} non-rich words", non_rich.len()),
            non_rich.iter().take(1).map(|(w, _)| (*w).clone()),
        )
        .check(unexpected.is_empty(), "word with an unlisted exceptional set", unexpected)
        .check(missing.is_empty(), "listed set not realized (its palindromes)", missing)
        .check(sizes.iter().all(|&s| s == 12), "exceptional set of size other than 12", exceptional.values().cloned())
        .check(d_ok, "aaababaabaaa does not have set D", [d_example])
        .witness("one word per exceptional set", exceptional.into_values());
    Ok(verdict.finish())
}

/// Longest binary word whose palindromes all have length at most `cap`,
/// found by growing the search length until no word survives.
fn longest_avoiding(cap: usize) -> (usize, Vec<Word>, u64) {
    let c = ConstraintSet::new(Alphabet::BINARY).length_cap(cap);
    let mut nodes = 0;
    let mut last = vec![Word::empty()];
    for len in 1.. {
        let mut found = Vec::new();
        nodes += super::constraints::search_with(&c, len, |w| found.push(w.clone()));
        if found.is_empty() {
            return (len - 1, last, nodes);
        }
        last = found;
    }
    unreachable!("the length loop only exits by returning")
}

fn short_palindrome_bounds(_jobs: usize) -> Result<ClaimVerdict> {
    let mut verdict = VerdictBuilder::new(
        "short-palindrome-bounds",
        "binary words with no palindrome longer than 3 have bounded length; (aabbab)^∞ has longest palindrome 4; closed-15 has the 15 listed palindromes, longest 5; with no palindrome longer than 4, first returns to aab are aababbaab and aabbabaab",
    );
    let (longest, witnesses, nodes) = longest_avoiding(3);
    verdict
        .scanned(nodes)
        .finding("longest_avoiding_over_3", longest)
        .check(
            longest == fixtures::LONGEST_AVOIDING_PALINDROMES_OVER_3,
            &format!("longest word avoiding palindromes over 3 has length {longest}"),
            witnesses.iter().cloned(),
        )
        .witness("longest words avoiding palindromes over 3", witnesses);

    let periodic = PrefixStream::resolve("pow:aabbab")?;
    let report = stabilized_pal_set(&periodic, STABILIZER_START, STABILIZER_CAP)?.report;
    verdict
        .bound("stabilizer_cap", STABILIZER_CAP)
        .finding("aabbab_longest", report.longest.len())
        .check(report.longest.len() == 4, "(aabbab)^∞ longest palindrome", [report.longest.clone()]);

    let closed = PrefixStream::resolve("closed-15")?;
    let stable = stabilized_pal_set(&closed, STABILIZER_START, STABILIZER_CAP)?;
    let expected = word_set(fixtures::CLOSED_15_SET);
    let got = stable.report.set();
    verdict
        .finding("closed_15_count", stable.report.count)
        .finding("closed_15_longest", stable.report.longest.len())
        .check(got == expected, "closed-15 palindrome set differs (symmetric difference)", got.symmetric_difference(&expected).cloned())
        .check(stable.report.longest.len() == 5, "closed-15 longest palindrome", [stable.report.longest.clone()]);

    let returns = check_claim("returns-aab-short-palindromes", &return_claim("returns-aab-short-palindromes")?)?;
    verdict.bound("return_window", RETURN_WINDOW);
    for witness in returns.refutations() {
        verdict.check(false, &format!("aab return: {}", witness.role), witness.words.iter().cloned());
    }
    if let Some(observed) = returns.witness("returns observed") {
        verdict.witness("first returns to aab", observed.words.iter().cloned());
    }
    Ok(verdict.finish_up_to_bound())
}

fn reversal_closed_13(_jobs: usize) -> Result<ClaimVerdict> {
    const LEVELS: std::ops::RangeInclusive<usize> = 2..=8;
    const K: usize = 8;
    const HORIZON: usize = 4096;
    let mut verdict = VerdictBuilder::new(
        "reversal-closed-13",
        "PAL(U_n) is the listed 13-set for n = 2..=8, and the limit word has no factor whose reversal is missing",
    );
    let s = PrefixStream::resolve("closed-13")?;
    let expected = word_set(fixtures::CLOSED_13_SET);
    // |U_0| = 17 and |U_{n+1}| = 2|U_n| + 4.
    let mut len = 17;
    let mut lengths = Vec::new();
    for n in 0..=*LEVELS.end() {
        if LEVELS.contains(&n) {
            let got = prefix_pal_set(&s, len).set();
            verdict.scanned(1).check(
                got == expected,
                &format!("PAL(U_{n}) differs (symmetric difference)"),
                got.symmetric_difference(&expected).cloned(),
            );
            lengths.push(len);
        }
        len = 2 * len + 4;
    }
    let closure = reversal_closure_check(&s, K, HORIZON)?;
    verdict
        .bound("levels", json!([LEVELS.start(), LEVELS.end()]))
        .bound("closure_k", K)
        .bound("closure_horizon", HORIZON)
        .finding("level_lengths", json!(lengths))
        .finding("missing_reversals", closure.witness_missing.len())
        .check(
            closure.witness_missing.is_empty(),
            "factor whose reversal is missing",
            closure.witness_missing.iter().map(|m| m.factor.clone()),
        );
    Ok(verdict.finish_up_to_bound())
}

const BASE_NINE: &[&str] = fixtures::NINE_SET;

fn with_base(extra: &[&'static str]) -> Vec<&'static str> {
    BASE_NINE.iter().chain(extra).copied().collect()
}

/// The built-in first-return claims, at the default window length.
pub fn return_claim(id: &str) -> Result<ReturnClaim> {
    let b = ConstraintSet::new(Alphabet::BINARY);
    let (constraints, anchor, families) = match id {
        "returns-abaaab" => (
            b.forbid(&["aaaa"])?.require(&["aaabaab"])?.assume(&with_base(&["aabaa", "aaa", "baaab"]))?.budget(12),
            "abaaab",
            vec![ReturnFamily::new("babaab", "abaaab", "babaab", "babaaab", 0)?],
        ),
        "returns-baabaab" => (
            b.forbid(&["aaabaaa", "aaabaab", "baabaaa"])?
                .require(&["baabaab"])?
                .assume(&with_base(&["aabaa", "baabaab"]))?
                .budget(12),
            "baabaab",
            vec![
                ReturnFamily::new("babaab", "baabaab", "babaab", "aab", 1)?,
                ReturnFamily::new("abbaab", "baabaab", "abbaab", "aab", 1)?,
            ],
        ),
        "returns-ababa" => (
            b.forbid(&["abababa", "aabaa"])?.require(&["abababb"])?.assume(&with_base(&["babab", "ababa"]))?.budget(12),
            "ababa",
            vec![
                ReturnFamily::new("bbaaba", "ababa", "bbaaba", "ba", 0)?,
                ReturnFamily::new("abbaba", "ababa", "abbaba", "ba", 0)?,
            ],
        ),
        "returns-baaab" => (
            b.forbid(&["aaaa", "bbb"])?
                .require(&["abaaabb"])?
                .assume(&with_base(&["aaa", "baaab"]))?
                .budget(12)
                .only(5, &["baaab"])?,
            "baaab",
            vec![
                ReturnFamily::new("x", "baaab", "baabab", "baaab", 1)?,
                ReturnFamily::new("y", "baaab", "babaab", "baaab", 1)?,
                ReturnFamily::new("w", "baaab", "abbaab", "abbaaab", 0)?,
                ReturnFamily::new("z", "baaab", "babaab", "babaaab", 0)?,
            ],
        ),
        "returns-aab-short-palindromes" => (
            b.length_cap(4),
            "aab",
            vec![
                ReturnFamily::new("abb", "aab", "abb", "aab", 1)?.at_most(1),
                ReturnFamily::new("bab", "aab", "bab", "aab", 1)?.at_most(1),
            ],
        ),
        other => return Err(Error::UnknownClaim(other.to_string())),
    };
    Ok(ReturnClaim {
        constraints,
        anchor: anchor.parse()?,
        families,
        length: RETURN_WINDOW,
    })
}

fn returns_claim(id: &str) -> Result<ClaimVerdict> {
    check_claim(id, &return_claim(id)?)
}

struct StreamExpectation {
    preset: &'static str,
    set: Option<&'static [&'static str]>,
    count: usize,
    longest: Option<usize>,
    /// `(k, factor)`: the closure check at `k` must report `factor`.
    missing: Option<(usize, &'static str)>,
    /// `k` at which the closure check must report nothing.
    closed_to: Option<usize>,
}

fn stream_expectation(id: &str) -> Option<StreamExpectation> {
    let e = |preset, set, count, longest, missing, closed_to| StreamExpectation {
        preset,
        set,
        count,
        longest,
        missing,
        closed_to,
    };
    Some(match id {
        "stream-paperfolding" => e("paperfolding", None, 29, Some(13), None, None),
        "stream-phi-F" => e("phi-F", Some(fixtures::PHI_F_SET), 5, None, Some((2, "bc")), None),
        "stream-berstel4" => e("berstel4", Some(fixtures::BERSTEL_SET), 5, None, None, Some(6)),
        "stream-psi-F" => e("psi-F", Some(fixtures::PSI_F_SET), 11, None, Some((5, "abaaa")), None),
        "stream-tau-P" => e("tau-P", None, 17, None, None, None),
        _ => return None,
    })
}

const CLOSURE_HORIZON: usize = 4096;

fn stream_claim(id: &str) -> Result<ClaimVerdict> {
    let e = stream_expectation(id).ok_or_else(|| Error::UnknownClaim(id.to_string()))?;
    let manifest_entry = CLAIMS.iter().find(|(name, _, _)| *name == id).map_or("", |(_, d, _)| d);
    let mut verdict = VerdictBuilder::new(id, manifest_entry);
    let s = PrefixStream::resolve(e.preset)?;
    let stable = stabilized_pal_set(&s, STABILIZER_START, STABILIZER_CAP)?;
    let report = &stable.report;
    let got = report.set();
    verdict
        .bound("stabilizer_cap", STABILIZER_CAP)
        .bound("checked_horizon", stable.checked_horizon)
        .finding("count", report.count)
        .finding("longest", report.longest.len())
        .finding("stable", stable.stability == crate::pal::Stability::Stable)
        .finding("palindromes", to_json(&got))
        .check(
            stable.stability == crate::pal::Stability::Stable,
            "palindrome set still growing at the cap",
            [report.longest.clone()],
        )
        .check(report.count == e.count, &format!("{} palindromes", report.count), report.palindromes.iter().rev().take(1).cloned());
    if let Some(set) = e.set {
        let expected = word_set(set);
        verdict.check(got == expected, "palindrome set differs (symmetric difference)", got.symmetric_difference(&expected).cloned());
    }
    if let Some(longest) = e.longest {
        verdict.check(report.longest.len() == longest, "longest palindrome", [report.longest.clone()]);
    }
    if let Some((k, factor)) = e.missing {
        let closure = reversal_closure_check(&s, k, CLOSURE_HORIZON)?;
        let factor = w(factor);
        verdict
            .bound("closure_horizon", CLOSURE_HORIZON)
            .finding("missing_reversals", json!(closure.witness_missing.iter().map(|m| m.factor.to_string()).collect::<Vec<_>>()))
            .check(closure.missing(&factor), "factor expected without its reversal", [factor.clone()])
            .witness("factor whose reversal is missing", [factor]);
    }
    if let Some(k) = e.closed_to {
        let closure = reversal_closure_check(&s, k, CLOSURE_HORIZON)?;
        verdict
            .bound("closure_k", k)
            .bound("closure_horizon", CLOSURE_HORIZON)
            .finding("missing_reversals", closure.witness_missing.len())
            .check(
                closure.witness_missing.is_empty(),
                "factor whose reversal is missing",
                closure.witness_missing.iter().map(|m| m.factor.clone()),
            );
    }
    verdict.witness("palindromes", got);
    Ok(verdict.finish_up_to_bound())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::Status;

    #[test]
    fn manifest_is_sorted_and_unique() {
        let ids: Vec<String> = manifest().into_iter().map(|c| c.id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_claim() {
        assert_eq!(run_claim("nope", 1).unwrap_err(), Error::UnknownClaim("nope".into()));
    }

    #[test]
    fn t_sets_match_fixtures() {
        let fx = |words: &[&str]| word_set(words);
        let [t1, t2, t3, t4] = t_sets(Reading::AsStated);
        assert_eq!(t1, fx(fixtures::T1_AS_STATED));
        assert_eq!(t2, t1);
        assert_eq!(t3, fx(fixtures::T3_AS_STATED));
        assert_eq!(t4, fx(fixtures::T4_AS_STATED));
        let [t1, t2, t3, t4] = t_sets(Reading::WithRotations);
        assert_eq!(t1, fx(fixtures::T1_WITH_ROTATIONS));
        assert_eq!(t2, t1);
        assert_eq!(t3, fx(fixtures::T3_WITH_ROTATIONS));
        assert_eq!(t4, fx(fixtures::T4_WITH_ROTATIONS));
    }

    #[test]
    fn class_readings() {
        assert_eq!(binary_class(&v(), Reading::AsStated), word_set(&["aababb", "bbabaa"]));
        assert_eq!(binary_class(&v(), Reading::WithRotations), word_set(fixtures::NINE_PALINDROME_WORDS).iter().map(|s| s.factor(0, 6)).collect());
    }

    #[test]
    fn stream_claims_hold() {
        for id in ["stream-paperfolding", "stream-phi-F", "stream-berstel4", "stream-psi-F", "stream-tau-P"] {
            let v = run_claim(id, 1).unwrap();
            assert_eq!(v.status, Status::VerifiedUpToBound, "{v}");
        }
    }

    #[test]
    fn nine_palindrome_words_match_fixture() {
        let v = run_claim("nine-palindrome-squares-rotations", 1).unwrap();
        assert_eq!(v.status, Status::Verified, "{v}");
        let nine: BTreeSet<Word> = v.witness("exactly 9 palindromes").unwrap().words.iter().cloned().collect();
        assert_eq!(nine, word_set(fixtures::NINE_PALINDROME_WORDS));
    }
}
