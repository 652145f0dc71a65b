//! Palindromic factors of finite words and of lazily generated infinite
//! words, plus exhaustive and bounded-search checkers for statements about
//! how few palindromes an infinite word can contain.

pub mod error;
pub mod generators;
pub mod harness;
pub mod morphism;
pub mod pal;
pub mod paltree;
pub mod stream;
pub mod word;

pub use error::{Error, Result};
pub use generators::{GeneratorSpec, Transform};
pub use morphism::Morphism;
pub use pal::{
    complete_first_returns, is_rich, longest_palindrome, pal_count, pal_set,
    reversal_closure_check, stabilized_pal_set, ClosureReport, PalReport, StabilizedPalSet,
};
pub use paltree::PalTree;
pub use stream::PrefixStream;
pub use word::{canonical_class, Alphabet, IsoClass, Word};
