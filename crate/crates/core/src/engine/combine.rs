//! Combines finitely many nontrivial words into one whose vanishing set
//! contains the union of theirs, with the quadratic length guarantee
//! asserted as a postcondition.
//!
//! The pairwise step sends `u, v` to `[u^c, v^d]`, scanning conjugators
//! `c, d` over words of length at most 2 until the commutator is
//! nontrivial in the free group; pairs are assembled over a balanced
//! binary tree. If either `u` or `v` dies at a tuple, so does the
//! commutator, in any group.

use thiserror::Error;

use crate::words::{FreeWord, ReducedWords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombineError {
    #[error("combine requires nontrivial input words")]
    TrivialInput,
    #[error("combine needs rank >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("combined word has length {got}, exceeding the bound 16*m^2*maxlen = {bound}")]
    LengthBoundViolated { got: usize, bound: usize },
    #[error("no conjugator pair of length <= 2 makes [u^c, v^d] nontrivial")]
    NoConjugatorFound,
}

fn conjugators(k: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::empty()];
    out.extend(ReducedWords::new(k, 2));
    out
}

fn pair_combine(u: &FreeWord, v: &FreeWord, conj: &[FreeWord]) -> Result<FreeWord, CombineError> {
    for c in conj {
        for d in conj {
            let w = u.conjugate(c).commutator(&v.conjugate(d));
            if !w.is_empty() {
                return Ok(w);
            }
        }
    }
    Err(CombineError::NoConjugatorFound)
}

/// Produces a nontrivial `w` in rank `k` with
/// `Z(w, G) ⊇ Z(w_1, G) ∪ ... ∪ Z(w_m, G)` for every group `G`, and
/// `|w| <= 16 m^2 max |w_i|`. Aborts rather than return a word violating
/// the length bound.
pub fn combine(k: usize, words: &[FreeWord]) -> Result<FreeWord, CombineError> {
    if words.is_empty() || words.iter().any(|w| w.is_empty()) {
        return Err(CombineError::TrivialInput);
    }
    if k < 2 {
        return Err(CombineError::RankTooSmall(k));
    }
    let m = words.len();
    let max_len = words.iter().map(|w| w.len()).max().unwrap();

    let conj = conjugators(k);
    let mut layer: Vec<FreeWord> = words.to_vec();
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        for chunk in layer.chunks(2) {
            match chunk {
                [u, v] => next.push(pair_combine(u, v, &conj)?),
                [u] => next.push(u.clone()),
                _ => unreachable!(),
            }
        }
        layer = next;
    }
    let w = layer.pop().unwrap();

    let bound = 16 * m * m * max_len;
    if w.is_empty() {
        return Err(CombineError::TrivialInput);
    }
    if w.len() > bound {
        return Err(CombineError::LengthBoundViolated { got: w.len(), bound });
    }
    Ok(w)
}
