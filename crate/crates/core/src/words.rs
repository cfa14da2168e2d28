//! Reduced words in a free group, their enumeration and evaluation.
//!
//! Letters are nonzero signed indices: `+i` is the `i`-th basis element
//! (1-based), `-i` its inverse. Words are stored freely reduced, so
//! structural equality and hashing coincide with equality in the free
//! group.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::GroupBackend;

/// Signed generator index; never zero.
pub type Letter = i32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("letter 0 is not a valid generator index")]
    ZeroLetter,
    #[error("generator index {0} exceeds rank {1}")]
    RankExceeded(i32, usize),
    #[error("operation requires a nontrivial word")]
    TrivialWord,
    #[error("cannot parse word: {0}")]
    Parse(String),
}

fn reduce_into(letters: impl IntoIterator<Item = Letter>, buf: &mut Vec<Letter>) {
    for x in letters {
        debug_assert!(x != 0);
        if buf.last().is_some_and(|y| *y == -x) {
            buf.pop();
        } else {
            buf.push(x);
        }
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    /// Reduces an arbitrary letter sequence. Idempotent.
    pub fn reduce(letters: impl IntoIterator<Item = Letter>) -> Result<Self, WordError> {
        let mut buf = Vec::new();
        for x in letters {
            if x == 0 {
                return Err(WordError::ZeroLetter);
            }
            if buf.last().is_some_and(|y| *y == -x) {
                buf.pop();
            } else {
                buf.push(x);
            }
        }
        Ok(FreeWord { letters: buf })
    }

    /// Reduction for letter sequences already known to be valid.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut buf = Vec::new();
        reduce_into(letters, &mut buf);
        FreeWord { letters: buf }
    }

    pub fn empty() -> Self {
        FreeWord { letters: Vec::new() }
    }

    /// Single-letter word `x_i` (or its inverse for negative `i`).
    pub fn letter(i: Letter) -> Self {
        assert!(i != 0, "letter 0 is not a generator");
        FreeWord { letters: vec![i] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Largest generator index occurring in the word; 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|x| -x).collect() }
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut buf = self.letters.clone();
        reduce_into(other.letters.iter().copied(), &mut buf);
        FreeWord { letters: buf }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inverse().pow(-e);
        }
        let mut out = FreeWord::empty();
        for _ in 0..e {
            out = out.concat(self);
        }
        out
    }

    /// `self^g = g^-1 self g`.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.inverse().concat(self).concat(g)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.inverse().concat(&other.inverse()).concat(self).concat(other)
    }

    /// Splits `w = conj * core * conj^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (FreeWord, FreeWord) {
        let mut lo = 0usize;
        let mut hi = self.letters.len();
        while hi - lo >= 2 && self.letters[lo] == -self.letters[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        let conj = FreeWord { letters: self.letters[..lo].to_vec() };
        let core = FreeWord { letters: self.letters[lo..hi].to_vec() };
        (conj, core)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        let n = self.letters.len();
        n < 2 || self.letters[0] != -self.letters[n - 1]
    }

    /// Maximal root: returns `(r, e)` with `self = r^e` and `r` not a
    /// proper power.
    pub fn free_root(&self) -> Result<(FreeWord, u32), WordError> {
        if self.is_empty() {
            return Err(WordError::TrivialWord);
        }
        let (conj, core) = self.cyclic_reduce();
        let n = core.letters.len();
        // A cyclically reduced word is a proper power iff its letter
        // sequence is periodic; powers of cyclically reduced words do
        // not cancel.
        for period in 1..=n {
            if n % period != 0 {
                continue;
            }
            if (period..n).all(|i| core.letters[i] == core.letters[i - period]) {
                let root_core = FreeWord { letters: core.letters[..period].to_vec() };
                let e = (n / period) as u32;
                let root = if conj.is_empty() {
                    root_core
                } else {
                    conj.concat(&root_core).concat(&conj.inverse())
                };
                return Ok((root, e));
            }
        }
        unreachable!("period n always divides n");
    }

    /// Image of the word under `x_i -> tuple[i-1]`.
    pub fn evaluate<B: GroupBackend + ?Sized>(&self, backend: &B, tuple: &[B::Elem]) -> B::Elem {
        assert!(
            self.max_index() <= tuple.len(),
            "word uses generator x{} but tuple has {} entries",
            self.max_index(),
            tuple.len()
        );
        let mut acc = backend.identity();
        for &l in &self.letters {
            let g = &tuple[(l.unsigned_abs() - 1) as usize];
            let factor = if l > 0 { g.clone() } else { backend.invert(g) };
            acc = backend.multiply(&acc, &factor);
        }
        acc
    }

    /// Parses either letter style (`abA` with a=x1, uppercase inverse) or
    /// token style (`x1 X2 x3`).
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let mut letters = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                ' ' | '\t' | '*' | '.' => continue,
                'x' | 'X' if chars.peek().is_some_and(|c| c.is_ascii_digit()) => {
                    let mut n = 0i32;
                    while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                        n = n * 10 + d as i32;
                        chars.next();
                    }
                    if n == 0 {
                        return Err(WordError::Parse(format!("index 0 in {s:?}")));
                    }
                    letters.push(if ch == 'x' { n } else { -n });
                }
                'a'..='z' => letters.push(ch as i32 - 'a' as i32 + 1),
                'A'..='Z' => letters.push(-(ch as i32 - 'A' as i32 + 1)),
                _ => return Err(WordError::Parse(format!("unexpected {ch:?} in {s:?}"))),
            }
            // optional ^k after a complete letter
            if chars.peek() == Some(&'^') {
                chars.next();
                let mut digits = String::new();
                if chars.peek() == Some(&'-') {
                    digits.push('-');
                    chars.next();
                }
                while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                    digits.push(chars.next().unwrap());
                }
                let e: i64 = digits.parse().map_err(|_| {
                    WordError::Parse(format!("bad exponent after {ch:?} in {s:?}"))
                })?;
                let last = letters.pop().unwrap();
                let base = FreeWord::letter(last).pow(e);
                letters.extend_from_slice(base.letters());
            }
        }
        FreeWord::reduce(letters)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        if self.max_index() <= 26 {
            for &l in &self.letters {
                let base = if l > 0 { b'a' } else { b'A' };
                write!(f, "{}", (base + (l.unsigned_abs() as u8 - 1)) as char)?;
            }
            Ok(())
        } else {
            for &l in &self.letters {
                write!(f, "{}{} ", if l > 0 { 'x' } else { 'X' }, l.unsigned_abs())?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

/// Order used for lexicographic tie-breaking: x1 < X1 < x2 < X2 < ...
pub fn letter_rank(l: Letter) -> (u32, bool) {
    (l.unsigned_abs(), l < 0)
}

/// All letters of rank-`k` free group in canonical order.
pub fn alphabet(k: usize) -> Vec<Letter> {
    let mut out = Vec::with_capacity(2 * k);
    for i in 1..=k as i32 {
        out.push(i);
        out.push(-i);
    }
    out
}

/// Streams every nontrivial reduced word of length `1..=max_len` in
/// rank `k`, in nondecreasing length, lexicographic within a length.
pub struct ReducedWords {
    alphabet: Vec<Letter>,
    max_len: usize,
    current: Vec<usize>, // positions into alphabet
    started: bool,
}

impl ReducedWords {
    pub fn new(k: usize, max_len: usize) -> Self {
        assert!(k >= 1, "rank must be at least 1");
        ReducedWords { alphabet: alphabet(k), max_len, current: Vec::new(), started: false }
    }

    fn word(&self) -> FreeWord {
        FreeWord { letters: self.current.iter().map(|&i| self.alphabet[i]).collect() }
    }

    fn cancels(&self, prev_pos: usize, pos: usize) -> bool {
        self.alphabet[prev_pos] == -self.alphabet[pos]
    }

    /// Resets positions `from..` to the smallest valid letters.
    fn fill_smallest(&mut self, from: usize) -> bool {
        for i in from..self.current.len() {
            let mut p = 0;
            while i > 0 && self.cancels(self.current[i - 1], p) {
                p += 1;
                if p >= self.alphabet.len() {
                    return false;
                }
            }
            self.current[i] = p;
        }
        true
    }

    fn advance(&mut self) -> bool {
        // odometer over valid (non-cancelling) words of the current length
        let n = self.current.len();
        let mut i = n;
        loop {
            if i == 0 {
                // grow length
                if n + 1 > self.max_len {
                    return false;
                }
                self.current = vec![0; n + 1];
                return self.fill_smallest(0);
            }
            i -= 1;
            let mut p = self.current[i] + 1;
            while p < self.alphabet.len() && i > 0 && self.cancels(self.current[i - 1], p) {
                p += 1;
            }
            if p < self.alphabet.len() {
                self.current[i] = p;
                if self.fill_smallest(i + 1) {
                    return true;
                }
            }
        }
    }
}

impl Iterator for ReducedWords {
    type Item = FreeWord;

    fn next(&mut self) -> Option<FreeWord> {
        if !self.started {
            self.started = true;
            if self.max_len == 0 {
                return None;
            }
            self.current = vec![0];
        } else if !self.advance() {
            return None;
        }
        Some(self.word())
    }
}

/// Uniform random reduced word of the exact length, for seeded spot
/// checks.
pub fn random_reduced<R: rand::Rng>(rng: &mut R, k: usize, len: usize) -> FreeWord {
    let letters = alphabet(k);
    let mut out: Vec<Letter> = Vec::with_capacity(len);
    while out.len() < len {
        let l = letters[rng.random_range(0..letters.len())];
        if out.last().is_some_and(|p| *p == -l) {
            continue;
        }
        out.push(l);
    }
    FreeWord::from_letters(out)
}

/// Number of reduced words of exact length `l` in rank `k`: `2k(2k-1)^(l-1)`.
pub fn reduced_word_count(k: usize, l: usize) -> u128 {
    if l == 0 {
        return 1;
    }
    2 * k as u128 * (2 * k as u128 - 1).pow(l as u32 - 1)
}

/// Size of the ball of radius `l` in the free group of rank `k`.
pub fn free_ball_size(k: usize, l: usize) -> u128 {
    (0..=l).map(|j| reduced_word_count(k, j)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FreeBackend;

    /// Independent character-stack reducer used as the oracle for `reduce`.
    fn stack_oracle(letters: &[Letter]) -> Vec<Letter> {
        let mut stack: Vec<Letter> = Vec::new();
        for &x in letters {
            match stack.last() {
                Some(&top) if top == -x => {
                    stack.pop();
                }
                _ => stack.push(x),
            }
        }
        stack
    }

    #[test]
    fn reduce_cancels_inverse_pairs() {
        let w = FreeWord::reduce([1, -1]).unwrap();
        assert!(w.is_empty());
        let w = FreeWord::reduce([1, 2, -2, 1]).unwrap();
        assert_eq!(w.letters(), &[1, 1]);
    }

    #[test]
    fn reduce_agrees_with_stack_oracle_on_random_inputs() {
        // deterministic LCG so the test is reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            state
        };
        for _ in 0..500 {
            let letters: Vec<Letter> = (0..20)
                .map(|_| {
                    let v = (next() % 4) as i32;
                    [1, -1, 2, -2][v as usize]
                })
                .collect();
            let reduced = FreeWord::from_letters(letters.iter().copied());
            assert_eq!(reduced.letters(), stack_oracle(&letters));
        }
    }

    #[test]
    fn reduce_is_idempotent_and_nonincreasing() {
        for w in ReducedWords::new(2, 4) {
            let again = FreeWord::from_letters(w.letters().iter().copied());
            assert_eq!(again, w);
            let doubled = w.concat(&w);
            assert!(doubled.len() <= 2 * w.len());
        }
    }

    #[test]
    fn cyclic_reduce_examples() {
        // x1 x2 X1 -> (x1, x2)
        let w = FreeWord::from_letters([1, 2, -1]);
        let (conj, core) = w.cyclic_reduce();
        assert_eq!(conj.letters(), &[1]);
        assert_eq!(core.letters(), &[2]);

        // cyclically reduced words are fixed points
        let w = FreeWord::from_letters([1, 2]);
        let (conj, core) = w.cyclic_reduce();
        assert!(conj.is_empty());
        assert_eq!(core, w);
    }

    #[test]
    fn cyclic_reduce_recomposes() {
        for w in ReducedWords::new(2, 5) {
            let (conj, core) = w.cyclic_reduce();
            assert!(core.is_cyclically_reduced());
            let back = conj.concat(&core).concat(&conj.inverse());
            assert_eq!(back, w);
        }
    }

    #[test]
    fn enumeration_counts() {
        let at_len = |l: usize| ReducedWords::new(2, l).filter(|w| w.len() == l).count();
        assert_eq!(at_len(1), 4);
        assert_eq!(at_len(2), 12);
        assert_eq!(ReducedWords::new(2, 3).count(), 52);
        for l in 1..=4 {
            assert_eq!(at_len(l) as u128, reduced_word_count(2, l));
        }
        // nondecreasing length, no duplicates
        let words: Vec<FreeWord> = ReducedWords::new(2, 4).collect();
        for pair in words.windows(2) {
            assert!(pair[0].len() <= pair[1].len());
        }
        let set: std::collections::HashSet<_> = words.iter().cloned().collect();
        assert_eq!(set.len(), words.len());
    }

    #[test]
    fn evaluate_examples() {
        let f2 = FreeBackend::new(2);
        let g = FreeWord::from_letters([1, 2]);
        let h = FreeWord::from_letters([-2]);
        // w = x1 at (g) is g
        let w = FreeWord::letter(1);
        assert_eq!(w.evaluate(&f2, std::slice::from_ref(&g)), g);
        // commutator of a commuting pair dies
        let w = FreeWord::letter(1).commutator(&FreeWord::letter(2));
        let commuting = [g.clone(), g.concat(&g)];
        assert!(w.evaluate(&f2, &commuting).is_empty());
        // identity tuple kills everything
        for w in ReducedWords::new(2, 3) {
            let v = w.evaluate(&f2, &[FreeWord::empty(), FreeWord::empty()]);
            assert!(v.is_empty());
        }
        let _ = h;
    }

    #[test]
    fn evaluate_is_a_homomorphism() {
        let f2 = FreeBackend::new(2);
        let tuple = [FreeWord::from_letters([1, 2]), FreeWord::from_letters([-1, -1, 2])];
        for w in ReducedWords::new(2, 3) {
            for v in ReducedWords::new(2, 2) {
                let lhs = w.concat(&v).evaluate(&f2, &tuple);
                let rhs = f2.multiply(&w.evaluate(&f2, &tuple), &v.evaluate(&f2, &tuple));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn free_root_examples() {
        let x1 = FreeWord::letter(1);
        assert_eq!(x1.pow(2).free_root().unwrap(), (x1.clone(), 2));
        let x1x2 = FreeWord::from_letters([1, 2]);
        assert_eq!(x1x2.free_root().unwrap(), (x1x2.clone(), 1));
        assert_eq!(x1x2.pow(3).free_root().unwrap(), (x1x2.clone(), 3));
        assert!(FreeWord::empty().free_root().is_err());
    }

    #[test]
    fn free_root_reexponentiation() {
        for w in ReducedWords::new(2, 5) {
            let (root, e) = w.free_root().unwrap();
            assert_eq!(root.pow(e as i64), w);
            let (root2, e2) = root.free_root().unwrap();
            assert_eq!(e2, 1, "root of {w} is a proper power");
            assert_eq!(root2, root);
        }
    }

    #[test]
    fn parser_roundtrip() {
        assert_eq!(FreeWord::parse("abA").unwrap().letters(), &[1, 2, -1]);
        assert_eq!(FreeWord::parse("x1 x2 X1").unwrap().letters(), &[1, 2, -1]);
        assert_eq!(FreeWord::parse("a^3").unwrap().letters(), &[1, 1, 1]);
        assert_eq!(FreeWord::parse("x1^-2").unwrap().letters(), &[-1, -1]);
        assert_eq!(FreeWord::parse("aA").unwrap(), FreeWord::empty());
        assert!(FreeWord::parse("1x").is_err());
        for w in ReducedWords::new(2, 4) {
            assert_eq!(FreeWord::parse(&w.to_string()).unwrap(), w);
        }
    }
}
