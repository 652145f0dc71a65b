//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON document; the `*_json` functions are the same operations
//! without the wasm-bindgen layer.

use palwords::{
    complete_first_returns, pal_set, reversal_closure_check, stabilized_pal_set, PalReport,
    PrefixStream, Word,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Longest prefix any browser request may materialize.
pub const MAX_HORIZON: usize = 1 << 16;

#[derive(Serialize)]
struct WordAnalysis<'a> {
    report: PalReport,
    anchor: Option<&'a str>,
    returns: Vec<Word>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn parse_word(text: &str) -> Result<Word, String> {
    text.trim().parse().map_err(|e: palwords::Error| e.to_string())
}

fn check_horizon(horizon: usize) -> Result<(), String> {
    if horizon > MAX_HORIZON {
        return Err(format!("horizon {horizon} is above the demo limit of {MAX_HORIZON}"));
    }
    Ok(())
}

/// Palindromes of `word`, and its complete first returns to `anchor` when
/// one is given.
pub fn analyze_word_json(word: &str, anchor: &str) -> Result<String, String> {
    let w = parse_word(word)?;
    let anchor = anchor.trim();
    let returns = if anchor.is_empty() {
        Vec::new()
    } else {
        complete_first_returns(&w, &parse_word(anchor)?)
            .map_err(|e| e.to_string())?
            .returns
    };
    to_json(&WordAnalysis {
        report: pal_set(&w),
        anchor: (!anchor.is_empty()).then_some(anchor),
        returns,
    })
}

/// Palindromes of a generated word: grown until the set settles when
/// `horizon` is 0, otherwise of the prefix of that length.
pub fn generator_palindromes_json(generator: &str, horizon: usize) -> Result<String, String> {
    let s = PrefixStream::resolve(generator.trim()).map_err(|e| e.to_string())?;
    if horizon == 0 {
        let stable = stabilized_pal_set(&s, 64, MAX_HORIZON).map_err(|e| e.to_string())?;
        to_json(&stable)
    } else {
        check_horizon(horizon)?;
        to_json(&palwords::pal::prefix_pal_set(&s, horizon))
    }
}

pub fn closure_check_json(generator: &str, k: usize, horizon: usize) -> Result<String, String> {
    check_horizon(horizon)?;
    let s = PrefixStream::resolve(generator.trim()).map_err(|e| e.to_string())?;
    to_json(&reversal_closure_check(&s, k, horizon).map_err(|e| e.to_string())?)
}

pub fn prefix_json(generator: &str, length: usize) -> Result<String, String> {
    check_horizon(length)?;
    let s = PrefixStream::resolve(generator.trim()).map_err(|e| e.to_string())?;
    to_json(&s.prefix(length))
}

#[wasm_bindgen]
pub fn analyze_word(word: &str, anchor: &str) -> Result<String, JsError> {
    analyze_word_json(word, anchor).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn generator_palindromes(generator: &str, horizon: usize) -> Result<String, JsError> {
    generator_palindromes_json(generator, horizon).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn closure_check(generator: &str, k: usize, horizon: usize) -> Result<String, JsError> {
    closure_check_json(generator, k, horizon).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn prefix(generator: &str, length: usize) -> Result<String, JsError> {
    prefix_json(generator, length).map_err(|e| JsError::new(&e))
}
