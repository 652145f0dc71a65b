//! Palindromic tree (eertree).
//!
//! One node per distinct non-empty palindromic factor of the text seen so
//! far, plus two roots: an imaginary one of length -1 and the empty
//! palindrome. Appending a letter creates at most one node.

use crate::word::{Word, MAX_ALPHABET};

const IMAGINARY: usize = 0;
const EMPTY: usize = 1;
const NONE: u32 = 0;

#[derive(Debug, Clone)]
struct Node {
    len: isize,
    link: usize,
    next: [u32; MAX_ALPHABET],
    /// Index in the text where this palindrome first ends.
    first_end: usize,
    /// Times this node was the longest palindromic suffix after a push.
    hits: u32,
}

impl Node {
    fn root(len: isize) -> Self {
        Node {
            len,
            link: IMAGINARY,
            next: [NONE; MAX_ALPHABET],
            first_end: 0,
            hits: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PalTree {
    text: Vec<u8>,
    nodes: Vec<Node>,
    suffix: usize,
}

impl Default for PalTree {
    fn default() -> Self {
        PalTree::new()
    }
}

impl PalTree {
    pub fn new() -> Self {
        PalTree {
            text: Vec::new(),
            nodes: vec![Node::root(-1), Node::root(0)],
            suffix: EMPTY,
        }
    }

    pub fn from_word(w: &Word) -> Self {
        let mut tree = PalTree::new();
        tree.extend(w.letters());
        tree
    }

    pub fn extend(&mut self, letters: &[u8]) {
        for &c in letters {
            self.push(c);
        }
    }

    fn fits(&self, node: usize, pos: usize, c: u8) -> bool {
        let back = pos as isize - 1 - self.nodes[node].len;
        back >= 0 && self.text[back as usize] == c
    }

    /// Appends a letter; returns true if a new palindrome appeared.
    pub fn push(&mut self, c: u8) -> bool {
        assert!((c as usize) < MAX_ALPHABET, "letter index {c} out of range");
        let pos = self.text.len();
        self.text.push(c);

        let mut cur = self.suffix;
        while !self.fits(cur, pos, c) {
            cur = self.nodes[cur].link;
        }
        let existing = self.nodes[cur].next[c as usize];
        if existing != NONE {
            self.suffix = existing as usize;
            self.nodes[self.suffix].hits += 1;
            return false;
        }

        let len = self.nodes[cur].len + 2;
        let link = if len == 1 {
            EMPTY
        } else {
            let mut l = self.nodes[cur].link;
            while !self.fits(l, pos, c) {
                l = self.nodes[l].link;
            }
            self.nodes[l].next[c as usize] as usize
        };
        let id = self.nodes.len();
        self.nodes.push(Node {
            len,
            link,
            next: [NONE; MAX_ALPHABET],
            first_end: pos,
            hits: 1,
        });
        self.nodes[cur].next[c as usize] = id as u32;
        self.suffix = id;
        true
    }

    pub fn text_len(&self) -> usize {
        self.text.len()
    }

    /// Nodes including both roots.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Distinct palindromic factors, including the empty word.
    pub fn palindrome_count(&self) -> usize {
        self.nodes.len() - 1
    }

    fn node_word(&self, node: &Node) -> Word {
        let len = node.len as usize;
        let start = node.first_end + 1 - len;
        Word::from_letters_unchecked(self.text[start..=node.first_end].to_vec())
    }

    /// Non-empty palindromes in order of first appearance.
    pub fn palindromes(&self) -> impl Iterator<Item = Word> + '_ {
        self.nodes[2..].iter().map(|n| self.node_word(n))
    }

    /// The longest palindromic suffix of the text processed so far.
    pub fn longest_suffix_palindrome(&self) -> Word {
        let node = &self.nodes[self.suffix];
        if node.len <= 0 {
            Word::empty()
        } else {
            self.node_word(node)
        }
    }

    /// A longest palindrome, earliest first occurrence on ties.
    pub fn longest(&self) -> Word {
        let mut best: Option<&Node> = None;
        for node in &self.nodes[2..] {
            let better = match best {
                None => true,
                Some(b) => {
                    node.len > b.len
                        || (node.len == b.len && node.first_end < b.first_end)
                }
            };
            if better {
                best = Some(node);
            }
        }
        best.map(|n| self.node_word(n)).unwrap_or_default()
    }

    /// Number of occurrences (with multiplicity) of each palindrome, in the
    /// same order as [`PalTree::palindromes`]. Computed on demand by pushing
    /// hit counts down suffix links.
    pub fn occurrence_counts(&self) -> Vec<u32> {
        let mut counts: Vec<u32> = self.nodes.iter().map(|n| n.hits).collect();
        for i in (2..self.nodes.len()).rev() {
            let link = self.nodes[i].link;
            counts[link] += counts[i];
        }
        counts.split_off(2)
    }

    #[cfg(test)]
    pub(crate) fn check_links(&self) -> bool {
        self.nodes[2..].iter().all(|n| self.nodes[n.link].len < n.len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use std::collections::BTreeSet;

    #[test]
    fn small_word() {
        let tree = PalTree::from_word(&w("aababbaababb"));
        let pals: BTreeSet<Word> = tree.palindromes().collect();
        let expected: BTreeSet<Word> = ["a", "b", "aa", "bb", "aba", "bab", "abba", "baab"]
            .into_iter()
            .map(w)
            .collect();
        assert_eq!(pals, expected);
        assert_eq!(tree.palindrome_count(), 9);
        assert!(tree.check_links());
    }

    #[test]
    fn at_most_one_node_per_letter() {
        let text = w("abacabadabacabaeabacabadabacaba");
        let mut tree = PalTree::new();
        for &c in text.letters() {
            let before = tree.node_count();
            let created = tree.push(c);
            assert_eq!(tree.node_count() - before, created as usize);
        }
        assert!(tree.check_links());
    }

    #[test]
    fn occurrence_counts_match_scan() {
        let text = w("abaabaab");
        let tree = PalTree::from_word(&text);
        for (pal, count) in tree.palindromes().zip(tree.occurrence_counts()) {
            assert_eq!(text.occurrences(&pal).unwrap(), count as usize, "{pal}");
        }
    }

    #[test]
    fn longest_ties_break_on_first_occurrence() {
        assert_eq!(PalTree::from_word(&w("ab")).longest(), w("a"));
        assert_eq!(PalTree::from_word(&w("baab")).longest(), w("baab"));
        assert_eq!(PalTree::from_word(&w("cabab")).longest(), w("aba"));
        assert_eq!(PalTree::new().longest(), Word::empty());
    }
}
