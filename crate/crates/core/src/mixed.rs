//! Words with coefficients: elements of `Γ * <x>`, stored in the
//! alternating normal form `a_1 x^{k_1} ... a_l x^{k_l}`.
//!
//! Coefficients are words in the backend's generators. Normalization
//! merges adjacent coefficients and drops zero exponents eagerly, using
//! the backend's word problem to recognize trivial coefficients; by the
//! normal form of free products, a normalized nonempty word is
//! nontrivial in `Γ * <x>`.

use std::fmt;

use thiserror::Error;

use crate::groups::GroupBackend;
use crate::words::{FreeWord, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MixedError {
    #[error("interior coefficient {0} is the identity in the backend")]
    InteriorIdentity(String),
    #[error("coefficient a_{0} must be nonidentity")]
    TrivialCoefficient(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("cannot parse mixed word: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Coeff(FreeWord),
    X(i64),
}

/// Element of `Γ * <x>` as alternating coefficient / x-power segments.
///
/// After normalization: interior coefficients are nonidentity, all
/// exponents except possibly the last are nonzero. A leading x-power is
/// stored as an empty first coefficient; the empty segment list is the
/// identity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedWord {
    segments: Vec<(FreeWord, i64)>,
}

impl MixedWord {
    pub fn identity() -> Self {
        MixedWord { segments: Vec::new() }
    }

    /// `x^k`.
    pub fn x_power(k: i64) -> Self {
        if k == 0 {
            return Self::identity();
        }
        MixedWord { segments: vec![(FreeWord::empty(), k)] }
    }

    /// A pure coefficient.
    pub fn coefficient(a: FreeWord) -> Self {
        if a.is_empty() {
            return Self::identity();
        }
        MixedWord { segments: vec![(a, 0)] }
    }

    /// `[a, x] = a^-1 x^-1 a x` for a backend element given as a word.
    pub fn commutator_with_x(a: &FreeWord) -> Self {
        MixedWord { segments: vec![(a.inverse(), -1), (a.clone(), 1)] }
    }

    /// Wraps segments already in alternating normal shape: interior
    /// coefficients nonempty, interior exponents nonzero.
    pub fn from_alternating(segments: Vec<(FreeWord, i64)>) -> Self {
        for (i, (a, k)) in segments.iter().enumerate() {
            if i > 0 {
                debug_assert!(!a.is_empty(), "interior coefficient must be nonempty");
            }
            if i + 1 < segments.len() {
                debug_assert!(*k != 0, "interior exponent must be nonzero");
            }
        }
        MixedWord { segments }
    }

    pub fn segments(&self) -> &[(FreeWord, i64)] {
        &self.segments
    }

    pub fn is_identity_form(&self) -> bool {
        self.segments.is_empty()
    }

    /// `sum |a_i| + sum |k_i|`.
    pub fn len(&self) -> usize {
        self.segments
            .iter()
            .map(|(a, k)| a.len() + k.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    fn tokens(&self) -> Vec<Token> {
        let mut out = Vec::new();
        for (a, k) in &self.segments {
            if !a.is_empty() {
                out.push(Token::Coeff(a.clone()));
            }
            if *k != 0 {
                out.push(Token::X(*k));
            }
        }
        out
    }

    /// Rebuilds the alternating form from a token stream, merging
    /// adjacent coefficients (`backend` decides coefficient triviality)
    /// and summing adjacent x-powers until stable.
    fn from_tokens<B: GroupBackend>(backend: &B, tokens: Vec<Token>) -> Self {
        let mut stack: Vec<Token> = Vec::new();
        for tok in tokens {
            let mut tok = tok;
            loop {
                match (stack.last(), &tok) {
                    (Some(Token::Coeff(a)), Token::Coeff(b)) => {
                        let merged = a.concat(b);
                        stack.pop();
                        tok = Token::Coeff(merged);
                    }
                    (Some(Token::X(j)), Token::X(k)) => {
                        let merged = j + k;
                        stack.pop();
                        tok = Token::X(merged);
                    }
                    _ => break,
                }
            }
            // the stack alternates kinds, so dropping a trivial token
            // keeps it alternating; later tokens merge against the new top
            let trivial = match &tok {
                Token::Coeff(a) => {
                    a.is_empty() || backend.is_identity(&backend.evaluate_word(a))
                }
                Token::X(k) => *k == 0,
            };
            if !trivial {
                stack.push(tok);
            }
        }
        let mut segments = Vec::new();
        let mut pending: Option<FreeWord> = None;
        for tok in stack {
            match tok {
                Token::Coeff(a) => pending = Some(a),
                Token::X(k) => {
                    segments.push((pending.take().unwrap_or_else(FreeWord::empty), k));
                }
            }
        }
        if let Some(a) = pending {
            segments.push((a, 0));
        }
        MixedWord { segments }
    }

    /// Normalizes raw segments against a backend.
    pub fn normalize<B: GroupBackend>(backend: &B, raw: Vec<(FreeWord, i64)>) -> Self {
        let draft = MixedWord { segments: raw };
        Self::from_tokens(backend, draft.tokens())
    }

    pub fn multiply<B: GroupBackend>(&self, backend: &B, other: &Self) -> Self {
        let mut toks = self.tokens();
        toks.extend(other.tokens());
        Self::from_tokens(backend, toks)
    }

    pub fn inverse<B: GroupBackend>(&self, backend: &B) -> Self {
        let mut toks = Vec::new();
        for tok in self.tokens().into_iter().rev() {
            toks.push(match tok {
                Token::Coeff(a) => Token::Coeff(a.inverse()),
                Token::X(k) => Token::X(-k),
            });
        }
        Self::from_tokens(backend, toks)
    }

    /// Evaluates `a_1 g^{k_1} ... a_l g^{k_l}` in the backend.
    pub fn substitute<B: GroupBackend>(&self, backend: &B, g: &B::Elem) -> B::Elem {
        let g_inv = backend.invert(g);
        let mut acc = backend.identity();
        for (a, k) in &self.segments {
            if !a.is_empty() {
                acc = backend.multiply(&acc, &backend.evaluate_word(a));
            }
            if *k != 0 {
                let base = if *k > 0 { g } else { &g_inv };
                let p = backend.power(base, k.unsigned_abs());
                acc = backend.multiply(&acc, &p);
            }
        }
        acc
    }

    /// All coefficients are backend-nonidentity and interior exponents
    /// nonzero: the cyclically reduced input shape of the free-group
    /// witness search.
    pub fn check_all_coefficients_nontrivial<B: GroupBackend>(
        &self,
        backend: &B,
    ) -> Result<(), MixedError> {
        for (i, (a, _)) in self.segments.iter().enumerate() {
            if a.is_empty() || backend.is_identity(&backend.evaluate_word(a)) {
                return Err(MixedError::TrivialCoefficient(i + 1));
            }
        }
        Ok(())
    }

    /// Parses `<coeff>x^k` syntax, e.g. `<ab>x^2<B>x^-1`; coefficients use
    /// the word grammar inside angle brackets. Rejects interior identity
    /// coefficients as written.
    pub fn parse<B: GroupBackend>(s: &str, backend: &B) -> Result<Self, MixedError> {
        let mut raw: Vec<Token> = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(ch) = chars.next() {
            match ch {
                ' ' | '\t' => continue,
                '<' => {
                    let mut inner = String::new();
                    loop {
                        match chars.next() {
                            Some('>') => break,
                            Some(c) => inner.push(c),
                            None => return Err(MixedError::Parse(format!("unclosed < in {s:?}"))),
                        }
                    }
                    let w = FreeWord::parse(&inner)?;
                    raw.push(Token::Coeff(w));
                }
                'x' => {
                    let mut k = 1i64;
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
                        k = digits
                            .parse()
                            .map_err(|_| MixedError::Parse(format!("bad exponent in {s:?}")))?;
                    }
                    raw.push(Token::X(k));
                }
                'X' => raw.push(Token::X(-1)),
                _ => return Err(MixedError::Parse(format!("unexpected {ch:?} in {s:?}"))),
            }
        }
        // reject interior identity coefficients as written
        for (i, tok) in raw.iter().enumerate() {
            if let Token::Coeff(a) = tok {
                let interior = i > 0 && i + 1 < raw.len();
                let trivial = a.is_empty() || backend.is_identity(&backend.evaluate_word(a));
                if interior && trivial {
                    return Err(MixedError::InteriorIdentity(a.to_string()));
                }
            }
        }
        let draft = MixedWord {
            segments: {
                let mut segs = Vec::new();
                let mut pending: Option<FreeWord> = None;
                for tok in raw {
                    match tok {
                        Token::Coeff(a) => match pending.take() {
                            None => pending = Some(a),
                            Some(p) => pending = Some(p.concat(&a)),
                        },
                        Token::X(k) => {
                            segs.push((pending.take().unwrap_or_else(FreeWord::empty), k))
                        }
                    }
                }
                if let Some(a) = pending {
                    segs.push((a, 0));
                }
                segs
            },
        };
        Ok(Self::normalize(backend, draft.segments))
    }
}

impl fmt::Display for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segments.is_empty() {
            return write!(f, "e");
        }
        for (a, k) in &self.segments {
            if !a.is_empty() {
                write!(f, "<{a}>")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                k => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MixedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedWord({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{FreeBackend, GroupBackend};

    #[test]
    fn substitute_examples() {
        let f2 = FreeBackend::new(2);
        // a_1 x at x -> identity gives a_1
        let mw = MixedWord::normalize(&f2, vec![(FreeWord::letter(1), 1)]);
        let v = mw.substitute(&f2, &FreeWord::empty());
        assert_eq!(v, FreeWord::letter(1));

        // [u, x] at x -> u dies
        let u = FreeWord::from_letters([1, 2]);
        let mw = MixedWord::commutator_with_x(&u);
        assert!(f2.is_identity(&mw.substitute(&f2, &u)));

        // a x a x^-1 with a = x1 at g = x2
        let mw = MixedWord::normalize(
            &f2,
            vec![(FreeWord::letter(1), 1), (FreeWord::letter(1), -1)],
        );
        let v = mw.substitute(&f2, &FreeWord::letter(2));
        assert_eq!(v, FreeWord::from_letters([1, 2, 1, -2]));
    }

    #[test]
    fn normalization_merges_and_drops() {
        let f2 = FreeBackend::new(2);
        // zero exponent merges the two coefficients
        let mw = MixedWord::normalize(
            &f2,
            vec![(FreeWord::letter(1), 0), (FreeWord::letter(2), 1)],
        );
        assert_eq!(mw.segments().len(), 1);
        assert_eq!(mw.segments()[0].0, FreeWord::from_letters([1, 2]));

        // trivial interior coefficient merges the x-powers, which cancel
        let mw = MixedWord::normalize(
            &f2,
            vec![
                (FreeWord::letter(1), 2),
                (FreeWord::from_letters([2, -2]), -2),
                (FreeWord::letter(2), 0),
            ],
        );
        assert_eq!(mw.segments(), &[(FreeWord::from_letters([1, 2]), 0)]);

        // full cancellation collapses to the identity
        let u = FreeWord::from_letters([1, 2]);
        let mw = MixedWord::commutator_with_x(&u);
        let prod = mw.multiply(&f2, &mw.inverse(&f2));
        assert!(prod.is_identity_form());
    }

    #[test]
    fn length_counts_coefficients_and_exponents() {
        let f2 = FreeBackend::new(2);
        let mw = MixedWord::normalize(
            &f2,
            vec![(FreeWord::from_letters([1, 2]), 3), (FreeWord::letter(1), -1)],
        );
        assert_eq!(mw.len(), 2 + 3 + 1 + 1);
    }

    #[test]
    fn parse_rejects_interior_identity() {
        let f2 = FreeBackend::new(2);
        let err = MixedWord::parse("x<aA>x", &f2).unwrap_err();
        assert!(matches!(err, MixedError::InteriorIdentity(_)));
        let ok = MixedWord::parse("<a>x^2<B>x^-1", &f2).unwrap();
        assert_eq!(ok.segments().len(), 2);
        assert_eq!(ok.len(), 1 + 2 + 1 + 1);
    }
}
