//! Thompson's group F as exact dyadic piecewise-linear homeomorphisms
//! of the real line, with the Brin-Squier witness maps.
//!
//! A group element is stored by its breakpoints plus integer translation
//! tails; multiplication composes left-to-right as functions
//! (`multiply(f, g) = f ∘ g`), all arithmetic exact.

mod dyadic;

pub use dyadic::{Dyadic, DYADIC_EXP_CAP};

use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::engine::{self, EngineError};
use crate::groups::GroupBackend;
use crate::words::{FreeWord, ReducedWords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ThompsonError {
    #[error("breakpoints must be strictly increasing in both coordinates")]
    NotIncreasing,
    #[error("map is discontinuous at a breakpoint or tail")]
    Discontinuous,
    #[error("slope between breakpoints {0} and {1} is not a power of two")]
    BadSlope(usize, usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("word check failed: {word} vanishes at (U_n, V_n)")]
    WitnessVanished { word: String },
}

/// Orientation-preserving PL homeomorphism of the line: finitely many
/// breakpoints `(x, f(x))`, slope a power of two on each piece, and
/// integer translation tails `x + left` / `x + right` outside.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlMap {
    breaks: Vec<(Dyadic, Dyadic)>,
    left: i64,
    right: i64,
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap { breaks: Vec::new(), left: 0, right: 0 }
    }

    /// `x -> x + k`.
    pub fn translation(k: i64) -> Self {
        PlMap { breaks: Vec::new(), left: k, right: k }
    }

    /// Validating constructor; canonicalizes (merges colinear pieces,
    /// trims redundant end breakpoints).
    pub fn new(
        mut breaks: Vec<(Dyadic, Dyadic)>,
        left: i64,
        right: i64,
    ) -> Result<Self, ThompsonError> {
        breaks.sort_by_key(|a| a.0);
        breaks.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        for w in breaks.windows(2) {
            if w[0].0 == w[1].0 || w[0].1 >= w[1].1 {
                return Err(ThompsonError::NotIncreasing);
            }
        }
        if let (Some(first), Some(last)) = (breaks.first(), breaks.last()) {
            if first.1 != first.0.add_int(left as i128)
                || last.1 != last.0.add_int(right as i128)
            {
                return Err(ThompsonError::Discontinuous);
            }
        } else if left != right {
            return Err(ThompsonError::Discontinuous);
        }
        for (i, w) in breaks.windows(2).enumerate() {
            let dx = w[1].0.sub(&w[0].0);
            let dy = w[1].1.sub(&w[0].1);
            if slope_log2(&dx, &dy).is_none() {
                return Err(ThompsonError::BadSlope(i, i + 1));
            }
        }
        let mut map = PlMap { breaks, left, right };
        map.canonicalize();
        Ok(map)
    }

    fn canonicalize(&mut self) {
        // interior colinear merges
        let mut i = 1;
        while i + 1 < self.breaks.len() {
            if colinear(&self.breaks[i - 1], &self.breaks[i], &self.breaks[i + 1]) {
                self.breaks.remove(i);
            } else {
                i += 1;
            }
        }
        // leading breakpoints continuing the left tail (slope 1)
        while self.breaks.len() >= 2 {
            let dx = self.breaks[1].0.sub(&self.breaks[0].0);
            let dy = self.breaks[1].1.sub(&self.breaks[0].1);
            if dx == dy {
                self.breaks.remove(0);
            } else {
                break;
            }
        }
        // trailing breakpoints continuing the right tail
        while self.breaks.len() >= 2 {
            let m = self.breaks.len();
            let dx = self.breaks[m - 1].0.sub(&self.breaks[m - 2].0);
            let dy = self.breaks[m - 1].1.sub(&self.breaks[m - 2].1);
            if dx == dy {
                self.breaks.pop();
            } else {
                break;
            }
        }
        // a lone breakpoint on a continuous map means left == right
        if self.breaks.len() == 1 {
            debug_assert_eq!(self.left, self.right);
            self.breaks.clear();
        }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.breaks
    }

    pub fn tails(&self) -> (i64, i64) {
        (self.left, self.right)
    }

    pub fn is_identity(&self) -> bool {
        self.breaks.is_empty() && self.left == 0 && self.right == 0
    }

    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        if self.breaks.is_empty() || *x <= self.breaks[0].0 {
            return x.add_int(self.left as i128);
        }
        let m = self.breaks.len();
        if *x >= self.breaks[m - 1].0 {
            return x.add_int(self.right as i128);
        }
        // linear interpolation on the piece containing x
        let i = self.breaks.partition_point(|(bx, _)| *bx <= *x) - 1;
        let (x0, y0) = &self.breaks[i];
        let (x1, y1) = &self.breaks[i + 1];
        let j = slope_log2(&x1.sub(x0), &y1.sub(y0)).expect("stored slopes are powers of two");
        y0.add(&x.sub(x0).mul_pow2(j))
    }

    /// Exact inverse: swap coordinates, negate tails.
    pub fn invert(&self) -> Self {
        PlMap {
            breaks: self.breaks.iter().map(|(x, y)| (*y, *x)).collect(),
            left: -self.left,
            right: -self.right,
        }
    }

    /// `self ∘ other` (apply `other` first): breakpoint refinement then
    /// canonical merge.
    pub fn compose(&self, other: &Self) -> Self {
        let other_inv = other.invert();
        let mut xs: Vec<Dyadic> = other.breaks.iter().map(|(x, _)| *x).collect();
        xs.extend(self.breaks.iter().map(|(x, _)| other_inv.evaluate(x)));
        xs.sort();
        xs.dedup();
        let breaks: Vec<(Dyadic, Dyadic)> =
            xs.into_iter().map(|x| (x, self.evaluate(&other.evaluate(&x)))).collect();
        let mut map = PlMap {
            breaks,
            left: self.left + other.left,
            right: self.right + other.right,
        };
        map.canonicalize();
        map
    }

    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&self.left.to_le_bytes());
        out.extend_from_slice(&self.right.to_le_bytes());
        for (x, y) in &self.breaks {
            for d in [x, y] {
                out.extend_from_slice(&d.numerator().to_le_bytes());
                out.extend_from_slice(&d.exponent().to_le_bytes());
            }
        }
        out
    }

    /// Breakpoint list as JSON, numerator/exponent pairs.
    pub fn to_json(&self) -> Value {
        json!({
            "left": self.left,
            "right": self.right,
            "breaks": self.breaks.iter().map(|(x, y)| {
                json!([x.numerator() as i64, x.exponent(), y.numerator() as i64, y.exponent()])
            }).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Debug for PlMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PlMap[x+{}", self.left)?;
        for (x, y) in &self.breaks {
            write!(f, " ({x},{y})")?;
        }
        write!(f, " x+{}]", self.right)
    }
}

/// `log2(dy/dx)` when the ratio is a power of two.
fn slope_log2(dx: &Dyadic, dy: &Dyadic) -> Option<i32> {
    if dx.is_zero() || dy.is_zero() {
        return None;
    }
    // dy/dx = 2^j iff the odd parts of the numerators agree
    let odd = |n: i128| n >> n.trailing_zeros();
    if odd(dx.numerator()) != odd(dy.numerator()) {
        return None;
    }
    let vx = dx.numerator().trailing_zeros() as i32 - dx.exponent() as i32;
    let vy = dy.numerator().trailing_zeros() as i32 - dy.exponent() as i32;
    Some(vy - vx)
}

fn colinear(a: &(Dyadic, Dyadic), b: &(Dyadic, Dyadic), c: &(Dyadic, Dyadic)) -> bool {
    // (b.y - a.y)(c.x - b.x) == (c.y - b.y)(b.x - a.x)
    let lhs = b.1.sub(&a.1).mul(&c.0.sub(&b.0));
    let rhs = c.1.sub(&b.1).mul(&b.0.sub(&a.0));
    lhs == rhs
}

/// The generator `A(x) = x + 1`.
pub fn make_a() -> PlMap {
    PlMap::translation(1)
}

/// The generator `B`: identity below 0, slope 2 on (0,1], `x+1` above.
pub fn make_b() -> PlMap {
    PlMap::new(vec![(Dyadic::int(0), Dyadic::int(0)), (Dyadic::int(1), Dyadic::int(2))], 0, 1)
        .expect("B is a valid map")
}

/// Thompson's group F over `{A, B}`.
pub struct ThompsonBackend;

impl ThompsonBackend {
    pub fn new() -> Self {
        ThompsonBackend
    }
}

impl Default for ThompsonBackend {
    fn default() -> Self {
        Self::new()
    }
}

impl GroupBackend for ThompsonBackend {
    type Elem = PlMap;

    fn generator_count(&self) -> usize {
        2
    }

    fn generator(&self, i: usize) -> PlMap {
        match i {
            0 => make_a(),
            _ => make_b(),
        }
    }

    fn generator_letter(&self, i: usize) -> char {
        ['A', 'B'][i]
    }

    fn generator_is_involution(&self, _i: usize) -> bool {
        false
    }

    fn identity(&self) -> PlMap {
        PlMap::identity()
    }

    fn multiply(&self, g: &PlMap, h: &PlMap) -> PlMap {
        g.compose(h)
    }

    fn invert(&self, g: &PlMap) -> PlMap {
        g.invert()
    }

    fn is_identity(&self, g: &PlMap) -> bool {
        g.is_identity()
    }

    fn canonical_key(&self, g: &PlMap) -> Option<Vec<u8>> {
        Some(g.key())
    }
}

// ---------------------------------------------------------------------------
// Membership test on raw candidates
// ---------------------------------------------------------------------------

/// Unvalidated PL map with arbitrary rational data, as parsed.
pub struct RawPlMap {
    pub breaks: Vec<(Ratio<i128>, Ratio<i128>)>,
    pub left: Ratio<i128>,
    pub right: Ratio<i128>,
}

fn is_dyadic(r: &Ratio<i128>) -> bool {
    let d = *r.denom();
    d > 0 && (d & (d - 1)) == 0
}

fn is_pow2_ratio(r: &Ratio<i128>) -> bool {
    if !r.is_positive() {
        return false;
    }
    let (n, d) = (*r.numer(), *r.denom());
    (n & (n - 1)) == 0 && (d & (d - 1)) == 0 && (n == 1 || d == 1)
}

/// The group-membership criterion: dyadic breakpoints, power-of-two
/// slopes, integer translation tails.
pub fn is_member(raw: &RawPlMap) -> bool {
    if !raw.left.is_integer() || !raw.right.is_integer() {
        return false;
    }
    let mut sorted = raw.breaks.clone();
    sorted.sort_by_key(|a| a.0);
    for (x, y) in &sorted {
        if !is_dyadic(x) || !is_dyadic(y) {
            return false;
        }
    }
    for w in sorted.windows(2) {
        let dx = w[1].0 - w[0].0;
        let dy = w[1].1 - w[0].1;
        if dx <= Ratio::from_integer(0) || dy <= Ratio::from_integer(0) {
            return false;
        }
        if !is_pow2_ratio(&(dy / dx)) {
            return false;
        }
    }
    // continuity with the tails
    if let (Some(first), Some(last)) = (sorted.first(), sorted.last()) {
        if first.1 - first.0 != raw.left || last.1 - last.0 != raw.right {
            return false;
        }
    } else if raw.left != raw.right {
        return false;
    }
    true
}

impl PlMap {
    pub fn to_raw(&self) -> RawPlMap {
        let conv = |d: &Dyadic| Ratio::new(d.numerator(), 1i128 << d.exponent());
        RawPlMap {
            breaks: self.breaks.iter().map(|(x, y)| (conv(x), conv(y))).collect(),
            left: Ratio::from_integer(self.left as i128),
            right: Ratio::from_integer(self.right as i128),
        }
    }
}

// ---------------------------------------------------------------------------
// The Brin-Squier maps T, U_n, V_n
// ---------------------------------------------------------------------------

/// The periodized map `T`: the same five-piece pattern on every interval
/// `[8n, 8(n+1)]`, fixing `8Z`. Not a group element (it has infinitely
/// many breakpoints); blocks of it are.
pub struct PeriodicMap;

pub fn make_t() -> PeriodicMap {
    PeriodicMap
}

impl PeriodicMap {
    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        let n = x.div_floor_pow2(3);
        t_block(n).evaluate(x)
    }
}

/// `T` restricted to `[8n, 8(n+1)]`, identity outside.
pub fn t_block(n: i128) -> PlMap {
    let base = 8 * n;
    let b = |dx: i128, dy: Dyadic| (Dyadic::int(base + dx), dy.add_int(base));
    PlMap::new(
        vec![
            b(0, Dyadic::int(0)),
            b(1, Dyadic::int(2)),
            b(2, Dyadic::int(3)),
            b(6, Dyadic::int(5)),
            b(7, Dyadic::int(6)),
            b(8, Dyadic::int(8)),
        ],
        0,
        0,
    )
    .expect("T block is a valid map")
}

/// `U = T^2` restricted to `[8n, 8(n+1)]`.
pub fn u_block(n: i128) -> PlMap {
    let t = t_block(n);
    t.compose(&t)
}

/// `U_n`: `U` on `[0, 8(n+1)]`, identity outside.
pub fn make_un(n: usize) -> PlMap {
    let mut acc = PlMap::identity();
    for m in 0..=n as i128 {
        acc = acc.compose(&u_block(m));
    }
    acc
}

/// `V_n = A^2 U_n A^{-2}`.
pub fn make_vn(n: usize) -> PlMap {
    let a2 = PlMap::translation(2);
    a2.compose(&make_un(n)).compose(&PlMap::translation(-2))
}

/// Exact check of `U_{n+1} = A^8 U_n A^{-8} U_0`.
pub fn check_recursion(n: usize) -> bool {
    let lhs = make_un(n + 1);
    let rhs = PlMap::translation(8)
        .compose(&make_un(n))
        .compose(&PlMap::translation(-8))
        .compose(&make_un(0));
    lhs == rhs
}

/// Report of the exhaustive witness check `w(U_n, V_n) != id`.
pub struct BrinSquierReport {
    pub n: usize,
    pub words_checked: usize,
    pub un_breakpoints: usize,
    pub vn_breakpoints: usize,
}

/// Evaluates every nontrivial word of length at most `n` at
/// `(U_n, V_n)` by exact PL composition; any vanishing word is an error.
pub fn brin_squier_check(n: usize) -> Result<BrinSquierReport, ThompsonError> {
    let backend = ThompsonBackend::new();
    let un = make_un(n);
    let vn = make_vn(n);
    let tuple = [un.clone(), vn.clone()];
    let words: Vec<FreeWord> = ReducedWords::new(2, n).collect();
    let failed = words
        .par_iter()
        .find_map_first(|w| {
            if backend.is_identity(&w.evaluate(&backend, &tuple)) {
                Some(w.clone())
            } else {
                None
            }
        });
    if let Some(w) = failed {
        return Err(ThompsonError::WitnessVanished { word: w.to_string() });
    }
    Ok(BrinSquierReport {
        n,
        words_checked: words.len(),
        un_breakpoints: un.breakpoints().len(),
        vn_breakpoints: vn.breakpoints().len(),
    })
}

/// The length bounds implied by the recursion, with `M = |U_0|` kept as
/// a symbolic constant (the BFS probe rarely reaches `U_0`).
pub fn length_bound_note(n: usize) -> String {
    format!(
        "|U_{n}| <= (M+16)*{n} + M and |V_{n}| <= |U_{n}| + 4, \
         with M = |U_0| in the {{A,B}} metric (symbolic)"
    )
}

/// Budgeted BFS attempt at the {A,B}-word-length of a target map.
/// Thompson balls grow fast, so this usually reports `None`; lengths
/// involving `|U_0|` then stay symbolic.
pub fn word_length_probe(target: &PlMap, radius: usize, max_elems: usize) -> Option<usize> {
    let backend = ThompsonBackend::new();
    let ball = engine::ball(&backend, radius, max_elems).ok()?;
    let key = target.key();
    ball.entries().iter().find(|e| e.elem.key() == key).map(|e| e.len)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_b_values() {
        let b = make_b();
        assert_eq!(b.evaluate(&Dyadic::new(1, 1)), Dyadic::int(1));
        assert_eq!(b.evaluate(&Dyadic::int(2)), Dyadic::int(3));
        assert_eq!(b.evaluate(&Dyadic::int(-5)), Dyadic::int(-5));
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        for f in [make_a(), make_b(), make_un(1), make_vn(2)] {
            assert!(f.compose(&f.invert()).is_identity());
            assert!(f.invert().compose(&f).is_identity());
        }
    }

    #[test]
    fn associativity_exact() {
        let a = make_a();
        let b = make_b();
        let ai = a.invert();
        let lhs = a.compose(&b).compose(&ai);
        let rhs = a.compose(&b.compose(&ai));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership() {
        assert!(is_member(&make_a().to_raw()));
        assert!(is_member(&make_b().to_raw()));
        assert!(is_member(&make_un(0).to_raw()));
        assert!(is_member(&make_vn(3).to_raw()));
        // slope 3 is rejected
        let bad = RawPlMap {
            breaks: vec![
                (Ratio::from_integer(0), Ratio::from_integer(0)),
                (Ratio::from_integer(1), Ratio::from_integer(3)),
            ],
            left: Ratio::from_integer(0),
            right: Ratio::from_integer(2),
        };
        assert!(!is_member(&bad));
        // non-integer tails are rejected
        let bad = RawPlMap {
            breaks: vec![],
            left: Ratio::new(1, 2),
            right: Ratio::new(1, 2),
        };
        assert!(!is_member(&bad));
    }

    #[test]
    fn t_fixes_multiples_of_eight() {
        let t = make_t();
        for n in -3..=5i128 {
            assert_eq!(t.evaluate(&Dyadic::int(8 * n)), Dyadic::int(8 * n));
        }
        // spot values inside the fundamental block
        assert_eq!(t.evaluate(&Dyadic::int(1)), Dyadic::int(2));
        assert_eq!(t.evaluate(&Dyadic::int(4)), Dyadic::int(4));
        assert_eq!(t.evaluate(&Dyadic::int(9)), Dyadic::int(10));
    }

    #[test]
    fn t_block_is_a_bijection_of_its_block() {
        let t = t_block(0);
        // endpoints fixed, interior strictly monotone with dyadic outputs
        assert_eq!(t.evaluate(&Dyadic::int(0)), Dyadic::int(0));
        assert_eq!(t.evaluate(&Dyadic::int(8)), Dyadic::int(8));
        let mut prev = Dyadic::int(0);
        for k in 1..=31 {
            let x = Dyadic::new(k, 2); // quarter-integer grid
            let y = t.evaluate(&x);
            assert!(y > prev);
            assert!(y > Dyadic::int(0) && y < Dyadic::int(8));
            prev = y;
        }
    }

    #[test]
    fn v0_is_conjugated_u0() {
        let direct = make_vn(0);
        let conj = PlMap::translation(2)
            .compose(&make_un(0))
            .compose(&PlMap::translation(-2));
        assert_eq!(direct, conj);
    }

    #[test]
    fn recursion_identity_holds() {
        for n in 0..=2 {
            assert!(check_recursion(n), "U_{} recursion failed", n + 1);
        }
    }

    #[test]
    fn un_fixes_block_boundaries() {
        let u2 = make_un(2);
        for m in 0..=3i128 {
            assert_eq!(u2.evaluate(&Dyadic::int(8 * m)), Dyadic::int(8 * m));
        }
        assert!(is_member(&u2.to_raw()));
    }

    #[test]
    fn brin_squier_small() {
        let report = brin_squier_check(2).unwrap();
        assert_eq!(report.words_checked, 16);
    }

    #[test]
    fn composition_agrees_with_pointwise_evaluation() {
        // independent oracle for the breakpoint-refinement algebra:
        // evaluating the composed map must equal applying the factors
        // one after another at every sample point
        let maps = [make_a(), make_b(), make_un(1), make_vn(1), make_b().invert()];
        let samples: Vec<Dyadic> = (-40..=40).map(|k| Dyadic::new(k, 2)).collect();
        for f in &maps {
            for g in &maps {
                let composed = f.compose(g);
                for x in &samples {
                    assert_eq!(composed.evaluate(x), f.evaluate(&g.evaluate(x)));
                }
            }
        }
    }

    #[test]
    fn double_inversion_is_structural_identity() {
        for f in [make_a(), make_b(), make_un(2), make_vn(3)] {
            assert_eq!(f.invert().invert(), f);
        }
    }

    #[test]
    fn canonicalization_merges_colinear() {
        // the midpoint of the slope-2 segment and the slope-1 segment
        // continuing the right tail both disappear
        let m = PlMap::new(
            vec![
                (Dyadic::int(0), Dyadic::int(0)),
                (Dyadic::int(1), Dyadic::int(2)),
                (Dyadic::int(2), Dyadic::int(4)),
                (Dyadic::int(3), Dyadic::int(5)),
            ],
            0,
            2,
        )
        .unwrap();
        assert_eq!(m.breakpoints().len(), 2);
        assert_eq!(m.evaluate(&Dyadic::new(1, 1)), Dyadic::int(1));
        assert_eq!(m.evaluate(&Dyadic::int(5)), Dyadic::int(7));
    }
}
