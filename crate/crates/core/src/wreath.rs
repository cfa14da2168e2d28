//! Iterated regular wreath products of C_2 as automorphisms of the
//! finite binary tree, with the inductive witness construction showing
//! that no short word is a law.
//!
//! `W_n` is the (n+1)-fold iterated wreath product, realized as the full
//! automorphism group of the binary tree of depth n+1: one swap bit per
//! internal node, acting on the 2^(n+1) leaves. The generator `a_i`
//! carries a single bit at the node `0^i`.

use serde_json::{json, Value};
use thiserror::Error;

use crate::engine::{self, Ball, EngineError};
use crate::groups::GroupBackend;
use crate::words::{FreeWord, Letter, ReducedWords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WreathError {
    #[error("word of length {len} needs depth parameter n >= {min}, got {n}")]
    WordTooLong { len: usize, min: usize, n: usize },
    #[error("law witness requires a nontrivial word")]
    TrivialWord,
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("cannot certify whether {word} is a law: group too large for exhaustive scan and no witness within budget {budget}")]
    Unresolved { word: String, budget: u64 },
}

/// Decorated-tree automorphism: one bit per internal node of the depth-d
/// binary tree, heap layout (level l occupies indices 2^l-1 .. 2^(l+1)-2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Portrait {
    depth: usize,
    bits: Vec<bool>,
}

impl Portrait {
    pub fn identity(depth: usize) -> Self {
        Portrait { depth, bits: vec![false; (1 << depth) - 1] }
    }

    /// Generator `a_i`: the single bit at node `0^i`.
    pub fn generator(depth: usize, i: usize) -> Self {
        assert!(i < depth);
        let mut p = Self::identity(depth);
        p.bits[(1 << i) - 1] = true;
        p
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn bit(&self, level: usize, path: usize) -> bool {
        self.bits[(1 << level) - 1 + path]
    }

    fn set_bit(&mut self, level: usize, path: usize, v: bool) {
        self.bits[(1 << level) - 1 + path] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// Image of a leaf (bit vector of length `depth`) under the
    /// automorphism: at each node the stored bit flips the step, and the
    /// section followed is indexed by the original step.
    pub fn apply(&self, leaf: &[bool]) -> Vec<bool> {
        assert_eq!(leaf.len(), self.depth);
        let mut out = vec![false; self.depth];
        let mut path = 0usize;
        for (level, &step) in leaf.iter().enumerate() {
            out[level] = step ^ self.bit(level, path);
            path = (path << 1) | step as usize;
        }
        out
    }

    /// `self` then `other` (right-action composition).
    pub fn multiply(&self, other: &Self) -> Self {
        assert_eq!(self.depth, other.depth);
        let mut out = Self::identity(self.depth);
        self.mul_rec(other, &mut out, 0, 0, 0, 0);
        out
    }

    fn mul_rec(&self, other: &Self, out: &mut Self, level: usize, fp: usize, gp: usize, hp: usize) {
        if level == self.depth {
            return;
        }
        let alpha = self.bit(level, fp);
        let beta = other.bit(level, gp);
        out.set_bit(level, hp, alpha ^ beta);
        for step in 0..2usize {
            self.mul_rec(
                other,
                out,
                level + 1,
                (fp << 1) | step,
                (gp << 1) | (step ^ alpha as usize),
                (hp << 1) | step,
            );
        }
    }

    pub fn inverse(&self) -> Self {
        let mut out = Self::identity(self.depth);
        self.inv_rec(&mut out, 0, 0, 0);
        out
    }

    fn inv_rec(&self, out: &mut Self, level: usize, fp: usize, hp: usize) {
        if level == self.depth {
            return;
        }
        let alpha = self.bit(level, fp);
        out.set_bit(level, hp, alpha);
        for step in 0..2usize {
            self.inv_rec(out, level + 1, (fp << 1) | (step ^ alpha as usize), (hp << 1) | step);
        }
    }

    /// Embeds into a deeper tree, acting trivially below the old leaves.
    pub fn embed(&self, depth: usize) -> Self {
        assert!(depth >= self.depth);
        let mut out = Self::identity(depth);
        out.bits[..self.bits.len()].copy_from_slice(&self.bits);
        out
    }

    pub fn key(&self) -> Vec<u8> {
        let mut key = vec![self.depth as u8];
        key.extend(self.bits.chunks(8).map(|c| {
            c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | ((b as u8) << i))
        }));
        key
    }

    /// Nested-object JSON rendering of the decorated tree.
    pub fn to_json(&self) -> Value {
        fn rec(p: &Portrait, level: usize, path: usize) -> Value {
            if level == p.depth {
                return Value::Null;
            }
            json!({
                "bit": p.bit(level, path) as u8,
                "left": rec(p, level + 1, path << 1),
                "right": rec(p, level + 1, (path << 1) | 1),
            })
        }
        rec(self, 0, 0)
    }
}

impl std::fmt::Debug for Portrait {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Portrait[")?;
        let mut start = 0;
        for level in 0..self.depth {
            let width = 1 << level;
            if level > 0 {
                write!(f, "|")?;
            }
            for i in start..start + width {
                write!(f, "{}", self.bits[i] as u8)?;
            }
            start += width;
        }
        write!(f, "]")
    }
}

/// `W_n` with generators `S_n = {a_0, ..., a_n}`, all involutions.
pub struct WreathBackend {
    n: usize,
}

impl WreathBackend {
    pub fn new(n: usize) -> Self {
        assert!(n < 24, "portrait bit array would exceed memory");
        WreathBackend { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn depth(&self) -> usize {
        self.n + 1
    }

    /// `|W_n| = 2^(2^(n+1)-1)`.
    pub fn group_order(&self) -> Option<u128> {
        let exp = (1u32 << (self.n + 1)) - 1;
        if exp < 128 {
            Some(1u128 << exp)
        } else {
            None
        }
    }
}

impl GroupBackend for WreathBackend {
    type Elem = Portrait;

    fn generator_count(&self) -> usize {
        self.n + 1
    }

    fn generator(&self, i: usize) -> Portrait {
        Portrait::generator(self.depth(), i)
    }

    fn generator_is_involution(&self, _i: usize) -> bool {
        true
    }

    fn identity(&self) -> Portrait {
        Portrait::identity(self.depth())
    }

    fn multiply(&self, g: &Portrait, h: &Portrait) -> Portrait {
        g.multiply(h)
    }

    fn invert(&self, g: &Portrait) -> Portrait {
        g.inverse()
    }

    fn is_identity(&self, g: &Portrait) -> bool {
        g.is_identity()
    }

    fn canonical_key(&self, g: &Portrait) -> Option<Vec<u8>> {
        Some(g.key())
    }
}

/// The leaf `0^(n+1)` moved to `v` by
/// `h = a_n^(e_n) a_(n-1)^(e_(n-1)) ... a_0^(e_0)` for `v = e_0 e_1 ... e_n`;
/// the word has length at most n+1.
pub fn schreier(n: usize, v: &[bool]) -> (FreeWord, Portrait) {
    assert_eq!(v.len(), n + 1);
    let mut letters: Vec<Letter> = Vec::new();
    for i in (0..=n).rev() {
        if v[i] {
            letters.push(i as Letter + 1);
        }
    }
    let word = FreeWord::from_letters(letters);
    let backend = WreathBackend::new(n);
    let elem = backend.evaluate_word(&word);
    (word, elem)
}

/// Witness tuple certifying that a short word is not a law for `W_n`.
#[derive(Clone, Debug)]
pub struct LawWitness {
    pub tuple: Vec<Portrait>,
    /// Length of the defining expression of each component, an upper
    /// bound on its true S_n-length.
    pub construction_lengths: Vec<usize>,
    /// The prefix orbit of 0^(n+1), pairwise distinct.
    pub orbit: Vec<Vec<bool>>,
}

impl LawWitness {
    pub fn total_construction_length(&self) -> usize {
        self.construction_lengths.iter().sum()
    }
}

/// Exact S_n-word-length lookup, backed by a BFS of the whole group.
/// Only materializable for small n; construction lengths certify the
/// upper bounds beyond that.
pub struct LengthOracle {
    ball: Ball<Portrait>,
}

impl LengthOracle {
    pub fn new(n: usize, max_elems: usize) -> Result<Self, WreathError> {
        let backend = WreathBackend::new(n);
        Ok(LengthOracle { ball: engine::full_group(&backend, max_elems)? })
    }

    pub fn length(&self, g: &Portrait) -> Option<usize> {
        let key = g.key();
        self.ball.entries().iter().find(|e| e.elem.key() == key).map(|e| e.len)
    }
}

fn apply_letter(tuple: &[Portrait], inverses: &[Portrait], letter: Letter, leaf: &[bool]) -> Vec<bool> {
    let idx = (letter.unsigned_abs() - 1) as usize;
    if letter > 0 {
        tuple[idx].apply(leaf)
    } else {
        inverses[idx].apply(leaf)
    }
}

fn prefix_orbit(tuple: &[Portrait], w: &FreeWord, depth: usize) -> Vec<Vec<bool>> {
    let inverses: Vec<Portrait> = tuple.iter().map(|p| p.inverse()).collect();
    let mut orbit = vec![vec![false; depth]];
    for &l in w.letters() {
        let next = apply_letter(tuple, &inverses, l, orbit.last().unwrap());
        orbit.push(next);
    }
    orbit
}

fn all_distinct(points: &[Vec<bool>]) -> bool {
    let mut seen = std::collections::HashSet::new();
    points.iter().all(|p| seen.insert(p.clone()))
}

/// Variable transform: swap x_1 with x_j, then optionally invert x_1, so
/// that the last letter becomes x_1.
#[derive(Clone, Copy)]
struct VarTransform {
    swap_with: usize, // 0-based index swapped with variable 0
    invert_first: bool,
}

impl VarTransform {
    fn for_last_letter(l: Letter) -> Self {
        VarTransform { swap_with: (l.unsigned_abs() - 1) as usize, invert_first: l < 0 }
    }

    fn apply_word(&self, w: &FreeWord) -> FreeWord {
        let mapped = w.letters().iter().map(|&l| {
            let v = (l.unsigned_abs() - 1) as usize;
            let tv = if v == 0 {
                self.swap_with
            } else if v == self.swap_with {
                0
            } else {
                v
            };
            let mut out = (tv as Letter + 1) * l.signum();
            if tv == 0 && self.invert_first {
                out = -out;
            }
            out
        });
        FreeWord::from_letters(mapped)
    }

    /// Undoes the transform on a witness tuple (the transform is an
    /// involution on tuples: invert component 0, then swap back).
    fn undo_tuple<T>(&self, tuple: &mut [T], invert: impl Fn(&mut T)) {
        if self.invert_first {
            invert(&mut tuple[0]);
        }
        tuple.swap(0, self.swap_with);
    }
}

/// The inductive construction: for nontrivial `w` with `|w| <= n+1`,
/// produces a k-tuple in `W_n` along which the prefix orbit of `0^(n+1)`
/// is injective (so `w` survives), with total length at most `(n+1)^2`.
pub fn law_witness(w: &FreeWord, n: usize, k: usize) -> Result<LawWitness, WreathError> {
    if w.is_empty() {
        return Err(WreathError::TrivialWord);
    }
    if w.len() > n + 1 {
        return Err(WreathError::WordTooLong { len: w.len(), min: w.len() - 1, n });
    }
    let k = k.max(w.max_index());
    let depth = n + 1;
    let (tuple, lengths) = witness_rec(w, n, k);
    let orbit = prefix_orbit(&tuple, w, depth);
    assert!(all_distinct(&orbit), "prefix orbit collision for {w} in W_{n}");
    assert!(
        lengths.iter().sum::<usize>() <= (n + 1) * (n + 1),
        "construction length exceeds (n+1)^2"
    );
    Ok(LawWitness { tuple, construction_lengths: lengths, orbit })
}

fn witness_rec(w: &FreeWord, n: usize, k: usize) -> (Vec<Portrait>, Vec<usize>) {
    let depth = n + 1;
    debug_assert!(!w.is_empty() && w.len() <= n + 1);

    if w.len() == 1 {
        let j = (w.letters()[0].unsigned_abs() - 1) as usize;
        let mut tuple = vec![Portrait::identity(depth); k];
        let mut lengths = vec![0usize; k];
        tuple[j] = Portrait::generator(depth, 0);
        lengths[j] = 1;
        return (tuple, lengths);
    }

    // normalize so the last letter is x_1
    let last = w.letters()[w.len() - 1];
    let t = VarTransform::for_last_letter(last);
    let wt = t.apply_word(w);
    debug_assert_eq!(*wt.letters().last().unwrap(), 1);
    let prefix = FreeWord::from_letters(wt.letters()[..wt.len() - 1].iter().copied());
    debug_assert_eq!(prefix.len(), wt.len() - 1, "reduced word prefixes stay reduced");

    let (sub_tuple, sub_lengths) = witness_rec(&prefix, n - 1, k);
    let mut tuple: Vec<Portrait> = sub_tuple.iter().map(|p| p.embed(depth)).collect();
    let mut lengths = sub_lengths;

    let orbit = prefix_orbit(&tuple, &wt, depth);
    if !all_distinct(&orbit) {
        // the endpoint returned to an earlier leaf v_i' 0; push it into
        // the 1-half of the subtree rooted at the prefix endpoint
        let end = &orbit[wt.len() - 1]; // = v'_{|u|} 0
        let v_prime: Vec<bool> = end[..n].to_vec();
        let (h_word, _) = schreier(n - 1, &v_prime);
        let backend = WreathBackend::new(n);
        let h = backend.evaluate_word(&h_word).embed(depth);
        let a_n = Portrait::generator(depth, n);
        let fix = h.inverse().multiply(&a_n).multiply(&h);
        tuple[0] = fix.multiply(&tuple[0]);
        lengths[0] += 2 * h_word.len() + 1;
        let orbit = prefix_orbit(&tuple, &wt, depth);
        debug_assert!(all_distinct(&orbit), "fix failed to separate the orbit");
    }

    t.undo_tuple(&mut tuple, |p| *p = p.inverse());
    t.undo_tuple(&mut lengths, |_| {});
    (tuple, lengths)
}

/// Result of the exhaustive/witnessed shortest-law search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LawSearch {
    Found(FreeWord),
    NotFoundWithin(usize),
}

/// Shortest nontrivial word (length, then lexicographic order) that
/// vanishes on every k-tuple of `W_n`, searched up to `max_len`.
///
/// Words of length <= n+1 are certified non-laws by the witness
/// construction; longer words get a budgeted tuple search, falling back
/// to an exhaustive scan over the whole group when it is materializable.
pub fn shortest_law(n: usize, max_len: usize, k: usize) -> Result<LawSearch, WreathError> {
    let backend = WreathBackend::new(n);
    let witness_budget = ((n + 1) * (n + 1)) as u64;
    // balls built lazily: words of length <= n+1 never need them
    let mut search_ball: Option<Ball<Portrait>> = None;
    let mut full: Option<Option<Ball<Portrait>>> = None;

    for w in ReducedWords::new(k, max_len) {
        if w.len() <= n + 1 {
            law_witness(&w, n, k)?;
            continue;
        }
        let ball = match &search_ball {
            Some(b) => b,
            None => {
                // radius shrinks until the ball fits in memory; the
                // whole group may close earlier anyway
                let mut built = None;
                for radius in [witness_budget as usize, 10, 8, 6] {
                    if let Ok(b) = engine::ball(&backend, radius, 300_000) {
                        built = Some(b);
                        break;
                    }
                }
                search_ball =
                    Some(built.ok_or(EngineError::BallBudget { limit: 300_000 })?);
                search_ball.as_ref().unwrap()
            }
        };
        let budget = if ball.is_whole_group() {
            witness_budget
        } else {
            witness_budget.min(ball.radius() as u64)
        };
        let res = engine::complexity(&backend, ball, &w, budget)?;
        if res.outcome.is_exact() {
            continue;
        }
        let full = full.get_or_insert_with(|| {
            if (1u64 << (n + 1)) - 1 <= 14 {
                // up to W_2 the whole group squared stays scannable
                engine::full_group(&backend, 40_000).ok()
            } else {
                None
            }
        });
        match full {
            Some(ball) => {
                if is_law_exhaustive(&backend, ball, &w, k) {
                    return Ok(LawSearch::Found(w));
                }
            }
            None => {
                return Err(WreathError::Unresolved {
                    word: w.to_string(),
                    budget,
                })
            }
        }
    }
    Ok(LawSearch::NotFoundWithin(max_len))
}

fn is_law_exhaustive(
    backend: &WreathBackend,
    full: &Ball<Portrait>,
    w: &FreeWord,
    k: usize,
) -> bool {
    let k = k.max(w.max_index());
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<Portrait> = idx.iter().map(|&i| full.entries()[i].elem.clone()).collect();
        if !backend.is_identity(&w.evaluate(backend, &tuple)) {
            return false;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < full.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::order;

    fn leaf(bits: &str) -> Vec<bool> {
        bits.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn w1_has_eight_elements() {
        let backend = WreathBackend::new(1);
        let ball = engine::full_group(&backend, 100).unwrap();
        assert_eq!(ball.len(), 8);
        assert_eq!(backend.group_order(), Some(8));
    }

    #[test]
    fn generators_are_involutions() {
        for n in 0..=4 {
            let backend = WreathBackend::new(n);
            for i in 0..=n {
                let a = backend.generator(i);
                assert!(!a.is_identity());
                assert!(a.multiply(&a).is_identity(), "a_{i}^2 != e in W_{n}");
            }
        }
    }

    #[test]
    fn a1_moves_00_and_fixes_the_right_subtree() {
        let a1 = Portrait::generator(2, 1);
        assert_eq!(a1.apply(&leaf("00")), leaf("01"));
        assert_eq!(a1.apply(&leaf("10")), leaf("10"));
        assert_eq!(a1.apply(&leaf("11")), leaf("11"));
    }

    #[test]
    fn portrait_composition_matches_leaf_permutations() {
        let backend = WreathBackend::new(2);
        let ball = engine::ball(&backend, 3, 1000).unwrap();
        let leaves: Vec<Vec<bool>> =
            (0..8).map(|i| (0..3).map(|b| (i >> (2 - b)) & 1 == 1).collect()).collect();
        for x in ball.entries().iter().take(20) {
            for y in ball.entries().iter().take(20) {
                let prod = x.elem.multiply(&y.elem);
                for l in &leaves {
                    assert_eq!(prod.apply(l), y.elem.apply(&x.elem.apply(l)));
                }
            }
        }
    }

    #[test]
    fn inverse_undoes_action() {
        let backend = WreathBackend::new(2);
        let ball = engine::ball(&backend, 4, 1000).unwrap();
        for e in ball.entries() {
            let inv = e.elem.inverse();
            assert!(e.elem.multiply(&inv).is_identity());
            assert!(inv.multiply(&e.elem).is_identity());
        }
    }

    #[test]
    fn schreier_reaches_every_leaf() {
        for n in 0..=4 {
            for code in 0..(1usize << (n + 1)) {
                let v: Vec<bool> = (0..=n).map(|i| (code >> i) & 1 == 1).collect();
                let (word, h) = schreier(n, &v);
                assert!(word.len() <= n + 1);
                assert_eq!(h.apply(&vec![false; n + 1]), v);
            }
        }
    }

    #[test]
    fn schreier_examples() {
        // v = 0^(n+1) gives the empty word
        let (w, h) = schreier(3, &leaf("0000"));
        assert!(w.is_empty());
        assert!(h.is_identity());
        // n=1, v=01: h = a_1 moves 00 to 01
        let (w, h) = schreier(1, &leaf("01"));
        assert_eq!(w, FreeWord::letter(2));
        assert_eq!(h.apply(&leaf("00")), leaf("01"));
    }

    #[test]
    fn single_letter_witness() {
        let w = FreeWord::letter(2);
        let wit = law_witness(&w, 3, 2).unwrap();
        assert_eq!(wit.orbit.len(), 2);
        let backend = WreathBackend::new(3);
        assert!(!backend.is_identity(&w.evaluate(&backend, &wit.tuple)));
    }

    #[test]
    fn witnesses_for_all_short_words_in_w2() {
        let backend = WreathBackend::new(2);
        let oracle = LengthOracle::new(2, 1000).unwrap();
        for w in ReducedWords::new(2, 3) {
            let wit = law_witness(&w, 2, 2).unwrap();
            assert!(!backend.is_identity(&w.evaluate(&backend, &wit.tuple)), "w = {w}");
            assert!(wit.total_construction_length() <= 9);
            let exact: usize = wit.tuple.iter().map(|g| oracle.length(g).unwrap()).sum();
            assert!(exact <= 9);
        }
    }

    #[test]
    fn shortest_law_of_w0_is_square() {
        let res = shortest_law(0, 2, 2).unwrap();
        assert_eq!(res, LawSearch::Found(FreeWord::letter(1).pow(2)));
    }

    #[test]
    fn shortest_law_of_w1_has_length_four() {
        let res = shortest_law(1, 4, 2).unwrap();
        assert_eq!(res, LawSearch::Found(FreeWord::letter(1).pow(4)));
        // nothing shorter
        let res = shortest_law(1, 3, 2).unwrap();
        assert_eq!(res, LawSearch::NotFoundWithin(3));
    }

    #[test]
    fn no_law_up_to_n_plus_one() {
        for n in 0..=2 {
            let res = shortest_law(n, n + 1, 2).unwrap();
            assert_eq!(res, LawSearch::NotFoundWithin(n + 1));
        }
    }

    #[test]
    fn element_orders_divide_group_exponent() {
        let backend = WreathBackend::new(1);
        let ball = engine::full_group(&backend, 100).unwrap();
        for e in ball.entries() {
            let o = order(&backend, &e.elem, 16).unwrap();
            assert!(o == 1 || o == 2 || o == 4, "W_1 = D_4 has exponent 4");
        }
    }
}
