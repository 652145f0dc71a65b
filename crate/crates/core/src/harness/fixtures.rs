//! Frozen reference data. Printed palindrome sets are transcribed from the
//! literature; the scan results were generated once by an independent
//! brute-force enumerator and frozen here.

use std::collections::BTreeSet;

use crate::word::{w, Word};

pub fn word_set(words: &[&str]) -> BTreeSet<Word> {
    words.iter().map(|s| w(s)).collect()
}

/// The period `v` whose squares carry the fewest palindromes.
pub const V: &str = "aababb";

/// Palindromes of `u^2` for every `u` in `[aababb]`.
pub const NINE_SET: &[&str] = &["", "a", "b", "aa", "bb", "aba", "bab", "abba", "baab"];

pub const PHI_F_SET: &[&str] = &["", "a", "b", "c", "aa"];

pub const BERSTEL_SET: &[&str] = &["", "a", "b", "c", "d"];

pub const PSI_F_SET: &[&str] = &[
    "", "a", "b", "aa", "bb", "aaa", "aba", "bab", "abba", "baab", "baaab",
];

pub const CLOSED_15_SET: &[&str] = &[
    "", "a", "b", "aa", "bb", "aaa", "aba", "bab", "bbb", "abba", "baab", "aabaa", "abbba",
    "baaab", "bbabb",
];

pub const CLOSED_13_SET: &[&str] = &[
    "", "a", "aa", "aaa", "aabaa", "aabbaa", "aba", "abba", "b", "baaab", "baab", "bab", "bb",
];

/// The four palindrome sets of non-rich binary words of length 12 that miss
/// `aa` or `bb`.
pub const SET_A: &[&str] = &[
    "", "a", "aba", "abba", "abbba", "b", "bab", "babbab", "babbbab", "bb", "bbabb", "bbb",
];
pub const SET_B: &[&str] = &[
    "", "a", "aba", "abba", "b", "bab", "babab", "babbab", "bb", "bbababb", "bbabb", "bbb",
];
pub const SET_C: &[&str] = &[
    "", "b", "bab", "baab", "baaab", "a", "aba", "abaaba", "abaaaba", "aa", "aabaa", "aaa",
];
pub const SET_D: &[&str] = &[
    "", "b", "bab", "baab", "a", "aba", "ababa", "abaaba", "aa", "aababaa", "aabaa", "aaa",
];

pub const NON_RICH_LENGTH_12: usize = 850;

/// Longest binary word all of whose palindromic factors have length <= 3.
pub const LONGEST_AVOIDING_PALINDROMES_OVER_3: usize = 8;

/// Binary length-12 words with exactly 9 palindromes (exhaustive scan).
pub const NINE_PALINDROME_WORDS: &[&str] = &[
    "aababbaababb", "aabbabaabbab", "abaabbabaabb", "ababbaababba", "abbaababbaab", "abbabaabbaba",
    "baababbaabab", "baabbabaabba", "babaabbabaab", "babbaababbaa", "bbaababbaaba", "bbabaabbabaa",
];

/// Binary length-14 words with exactly 10 palindromes (exhaustive scan).
pub const TEN_PALINDROME_WORD_COUNT: usize = 52;

/// The classes T1..T4 with `w` ranging over the renaming/reversal class
/// only. T1 and T2 coincide.
pub const T1_AS_STATED: &[&str] = &[
    "aaababbaaababb", "aababbbaababbb", "bbabaaabbabaaa", "bbbabaabbbabaa",
];
pub const T3_AS_STATED: &[&str] = &["aaababbaababba", "bbbabaabbabaab"];
pub const T4_AS_STATED: &[&str] = &["aababbaababbab", "bbabaabbabaaba"];

/// The same classes with `w` also ranging over rotations.
pub const T1_WITH_ROTATIONS: &[&str] = &[
    "aaababbaaababb", "aaabbabaaabbab", "aababbaaababba", "aababbbaababbb", "aabbabaaabbaba",
    "aabbbabaabbbab", "abaaabbabaaabb", "abaabbbabaabbb", "ababbaaababbaa", "ababbbaababbba",
    "abbaaababbaaab", "abbabaaabbabaa", "abbbaababbbaab", "abbbabaabbbaba", "baaababbaaabab",
    "baaabbabaaabba", "baababbbaababb", "baabbbabaabbba", "babaaabbabaaab", "babaabbbabaabb",
    "babbaaababbaaa", "babbbaababbbaa", "bbaaababbaaaba", "bbaababbbaabab", "bbabaaabbabaaa",
    "bbabaabbbabaab", "bbbaababbbaaba", "bbbabaabbbabaa",
];
pub const T3_WITH_ROTATIONS: &[&str] = &[
    "aaababbaababba", "aaabbabaabbaba", "aabaabbabaabba", "aabbaababbaaba", "abaababbaababb",
    "ababaabbabaabb", "bababbaababbaa", "babbabaabbabaa", "bbaabbabaabbab", "bbabbaababbaab",
    "bbbaababbaabab", "bbbabaabbabaab",
];
pub const T4_WITH_ROTATIONS: &[&str] = &[
    "aababbaababbab", "aabbabaabbabab", "abaabbabaabbaa", "ababbaababbaaa", "abbaababbaabaa",
    "abbabaabbabaaa", "baababbaababbb", "baabbabaabbabb", "babaabbabaabbb", "babbaababbaabb",
    "bbaababbaababa", "bbabaabbabaaba",
];
