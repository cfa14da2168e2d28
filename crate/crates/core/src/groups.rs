//! The group-backend contract and the elementary backends: free groups,
//! symmetric groups and direct sums of symmetric groups.
//!
//! A backend supplies exact arithmetic and a decidable word problem for
//! one finitely generated group. Backends with a canonical form expose
//! it through `canonical_key`, which the ball machinery uses for
//! deduplication; backends without one declare themselves equality-only
//! and are deduplicated by pairwise identity checks.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::words::FreeWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse cycle notation: {0}")]
    CycleParse(String),
    #[error("point {0} out of range 1..={1}")]
    PointOutOfRange(usize, usize),
    #[error("order search exceeded budget of {0} multiplications")]
    OrderBudget(u64),
}

/// Contract every concrete group implements.
///
/// `multiply` composes left-to-right: `multiply(g, h)` is "g then h",
/// matching right-action conventions used throughout.
pub trait GroupBackend {
    type Elem: Clone;

    fn generator_count(&self) -> usize;
    fn generator(&self, i: usize) -> Self::Elem;
    /// Display letter for generator `i` (0-based), e.g. 'a', 'b', ...
    fn generator_letter(&self, i: usize) -> char {
        (b'a' + i as u8) as char
    }
    fn generator_is_involution(&self, i: usize) -> bool;

    fn identity(&self) -> Self::Elem;
    fn multiply(&self, g: &Self::Elem, h: &Self::Elem) -> Self::Elem;
    fn invert(&self, g: &Self::Elem) -> Self::Elem;
    fn is_identity(&self, g: &Self::Elem) -> bool;

    /// Canonical byte key, when the backend has a canonical form.
    /// `None` means the backend is equality-only.
    fn canonical_key(&self, _g: &Self::Elem) -> Option<Vec<u8>> {
        None
    }

    fn equal(&self, g: &Self::Elem, h: &Self::Elem) -> bool {
        match (self.canonical_key(g), self.canonical_key(h)) {
            (Some(a), Some(b)) => a == b,
            _ => self.is_identity(&self.multiply(g, &self.invert(h))),
        }
    }

    /// Evaluates a word in the backend's own generators.
    fn evaluate_word(&self, w: &FreeWord) -> Self::Elem {
        let tuple: Vec<Self::Elem> = (0..self.generator_count()).map(|i| self.generator(i)).collect();
        w.evaluate(self, &tuple)
    }

    fn power(&self, g: &Self::Elem, e: u64) -> Self::Elem {
        // square and multiply
        let mut base = g.clone();
        let mut e = e;
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }
}

/// Least `m >= 1` with `g^m = e`, within a multiplication budget.
/// `BudgetExceeded` means unknown, never a wrong value.
pub fn order<B: GroupBackend>(backend: &B, g: &B::Elem, budget: u64) -> Result<u64, GroupError> {
    let mut acc = g.clone();
    let mut m = 1u64;
    while m <= budget {
        if backend.is_identity(&acc) {
            return Ok(m);
        }
        acc = backend.multiply(&acc, g);
        m += 1;
    }
    Err(GroupError::OrderBudget(budget))
}

/// Least `2^j` with `g^(2^j) = e`, by repeated squaring. Sound for
/// 2-groups, where every order is a power of two.
pub fn order_pow2<B: GroupBackend>(backend: &B, g: &B::Elem, max_squarings: u32) -> Result<u64, GroupError> {
    let mut acc = g.clone();
    for j in 0..=max_squarings {
        if backend.is_identity(&acc) {
            return Ok(1u64 << j);
        }
        acc = backend.multiply(&acc, &acc);
    }
    Err(GroupError::OrderBudget(max_squarings as u64))
}

// ---------------------------------------------------------------------------
// Free group backend
// ---------------------------------------------------------------------------

/// The free group of rank `k`; elements are reduced words, the word
/// problem is emptiness of the reduced form.
pub struct FreeBackend {
    rank: usize,
}

impl FreeBackend {
    pub fn new(rank: usize) -> Self {
        assert!(rank >= 1);
        FreeBackend { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl GroupBackend for FreeBackend {
    type Elem = FreeWord;

    fn generator_count(&self) -> usize {
        self.rank
    }

    fn generator(&self, i: usize) -> FreeWord {
        assert!(i < self.rank);
        FreeWord::letter(i as i32 + 1)
    }

    fn generator_is_involution(&self, _i: usize) -> bool {
        false
    }

    fn identity(&self) -> FreeWord {
        FreeWord::empty()
    }

    fn multiply(&self, g: &FreeWord, h: &FreeWord) -> FreeWord {
        g.concat(h)
    }

    fn invert(&self, g: &FreeWord) -> FreeWord {
        g.inverse()
    }

    fn is_identity(&self, g: &FreeWord) -> bool {
        g.is_empty()
    }

    fn canonical_key(&self, g: &FreeWord) -> Option<Vec<u8>> {
        let mut key = Vec::with_capacity(4 * g.len());
        for &l in g.letters() {
            key.extend_from_slice(&l.to_le_bytes());
        }
        Some(key)
    }
}

// ---------------------------------------------------------------------------
// Symmetric group backend
// ---------------------------------------------------------------------------

/// Permutation of `{1..N}` stored as a 0-based image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymElement {
    images: Vec<u16>,
}

impl SymElement {
    pub fn identity(n: usize) -> Self {
        SymElement { images: (0..n as u16).collect() }
    }

    /// From a 0-based image array, which must be a bijection.
    pub fn from_images(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut seen = vec![false; images.len()];
            images.iter().all(|&v| {
                let fresh = !seen[v as usize];
                seen[v as usize] = true;
                fresh
            })
        });
        SymElement { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of `p` under the permutation, 1-based.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    fn compose(&self, other: &Self) -> Self {
        // self then other
        SymElement { images: self.images.iter().map(|&v| other.images[v as usize]).collect() }
    }

    fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as u16;
        }
        SymElement { images }
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                len += 1;
                p = self.images[p] as usize;
            }
            out.push(len);
        }
        out
    }

    /// Exact order as lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` over `{1..n}`.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self, GroupError> {
        let mut images: Vec<u16> = (0..n as u16).collect();
        let body = s.trim();
        if body.is_empty() || body == "()" || body == "e" {
            return Ok(SymElement { images });
        }
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| GroupError::CycleParse(rest.to_string()))?;
            let close = rest[open..]
                .find(')')
                .map(|c| open + c)
                .ok_or_else(|| GroupError::CycleParse(rest.to_string()))?;
            let inner = &rest[open + 1..close];
            let points: Vec<usize> = inner
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.trim().parse::<usize>().map_err(|_| GroupError::CycleParse(t.to_string())))
                .collect::<Result<_, _>>()?;
            for &p in &points {
                if p == 0 || p > n {
                    return Err(GroupError::PointOutOfRange(p, n));
                }
            }
            if points.len() >= 2 {
                for w in points.windows(2) {
                    images[w[0] - 1] = (w[1] - 1) as u16;
                }
                images[points[points.len() - 1] - 1] = (points[0] - 1) as u16;
            }
            rest = &rest[close + 1..];
        }
        // validate bijectivity (overlapping cycles would break it)
        let mut seen = vec![false; n];
        for &v in &images {
            if seen[v as usize] {
                return Err(GroupError::CycleParse(format!("not a bijection: {s}")));
            }
            seen[v as usize] = true;
        }
        Ok(SymElement { images })
    }
}

impl fmt::Debug for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        let n = self.images.len();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// `Sym(N)` with a configurable generating set.
pub struct SymBackend {
    degree: usize,
    generators: Vec<SymElement>,
}

impl SymBackend {
    /// Default generators: the transposition `(1 2)` and the `N`-cycle.
    pub fn new(degree: usize) -> Self {
        assert!(degree >= 1);
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(SymElement::parse_cycles("(1 2)", degree).unwrap());
        }
        if degree >= 3 {
            let cycle: Vec<String> = (1..=degree).map(|p| p.to_string()).collect();
            gens.push(SymElement::parse_cycles(&format!("({})", cycle.join(" ")), degree).unwrap());
        }
        SymBackend { degree, generators: gens }
    }

    pub fn with_generators(degree: usize, generators: Vec<SymElement>) -> Self {
        assert!(generators.iter().all(|g| g.degree() == degree));
        SymBackend { degree, generators }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// All `N!` elements, in a deterministic order.
    pub fn all_elements(&self) -> Vec<SymElement> {
        let mut out = vec![SymElement::identity(self.degree)];
        let mut images: Vec<u16> = (0..self.degree as u16).collect();
        // Heap's algorithm would shuffle order; plain lexicographic
        // next_permutation keeps it deterministic and sorted.
        while next_permutation(&mut images) {
            out.push(SymElement { images: images.clone() });
        }
        out.sort();
        out
    }
}

fn next_permutation(arr: &mut [u16]) -> bool {
    let n = arr.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

impl GroupBackend for SymBackend {
    type Elem = SymElement;

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, i: usize) -> SymElement {
        self.generators[i].clone()
    }

    fn generator_is_involution(&self, i: usize) -> bool {
        let g = &self.generators[i];
        !g.is_identity() && g.compose(g).is_identity()
    }

    fn identity(&self) -> SymElement {
        SymElement::identity(self.degree)
    }

    fn multiply(&self, g: &SymElement, h: &SymElement) -> SymElement {
        g.compose(h)
    }

    fn invert(&self, g: &SymElement) -> SymElement {
        g.inverse()
    }

    fn is_identity(&self, g: &SymElement) -> bool {
        g.is_identity()
    }

    fn canonical_key(&self, g: &SymElement) -> Option<Vec<u8>> {
        let mut key = Vec::with_capacity(2 * g.images.len());
        for &v in &g.images {
            key.extend_from_slice(&v.to_le_bytes());
        }
        Some(key)
    }
}

// ---------------------------------------------------------------------------
// Direct sums of symmetric groups
// ---------------------------------------------------------------------------

/// Element of `⊕_n Sym(n)`: finitely many nonidentity components,
/// component `n` living in `Sym(n)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DirectSumElement {
    components: BTreeMap<u32, SymElement>,
}

impl DirectSumElement {
    pub fn identity() -> Self {
        DirectSumElement { components: BTreeMap::new() }
    }

    /// Element supported on a single component.
    pub fn single(component: u32, perm: SymElement) -> Self {
        assert_eq!(perm.degree(), component as usize, "component n must live in Sym(n)");
        let mut components = BTreeMap::new();
        if !perm.is_identity() {
            components.insert(component, perm);
        }
        DirectSumElement { components }
    }

    pub fn component(&self, n: u32) -> Option<&SymElement> {
        self.components.get(&n)
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.components.keys().copied()
    }

    pub fn is_identity(&self) -> bool {
        self.components.is_empty()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut components = self.components.clone();
        for (&n, p) in &other.components {
            match components.remove(&n) {
                Some(q) => {
                    let r = q.compose(p);
                    if !r.is_identity() {
                        components.insert(n, r);
                    }
                }
                None => {
                    components.insert(n, p.clone());
                }
            }
        }
        DirectSumElement { components }
    }

    pub fn inverse(&self) -> Self {
        DirectSumElement {
            components: self.components.iter().map(|(&n, p)| (n, p.inverse())).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.components.values().map(|p| p.order()).fold(1, lcm)
    }
}

/// `⊕_{n<=max} Sym(n)` generated per component by the default
/// transposition and full cycle.
pub struct DirectSumBackend {
    max_component: u32,
    generators: Vec<DirectSumElement>,
}

impl DirectSumBackend {
    pub fn new(max_component: u32) -> Self {
        let mut generators = Vec::new();
        for n in 2..=max_component {
            let sym = SymBackend::new(n as usize);
            for i in 0..sym.generator_count() {
                generators.push(DirectSumElement::single(n, sym.generator(i)));
            }
        }
        DirectSumBackend { max_component, generators }
    }

    pub fn max_component(&self) -> u32 {
        self.max_component
    }
}

impl GroupBackend for DirectSumBackend {
    type Elem = DirectSumElement;

    fn generator_count(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, i: usize) -> DirectSumElement {
        self.generators[i].clone()
    }

    fn generator_is_involution(&self, i: usize) -> bool {
        let g = &self.generators[i];
        !g.is_identity() && g.multiply(g).is_identity()
    }

    fn identity(&self) -> DirectSumElement {
        DirectSumElement::identity()
    }

    fn multiply(&self, g: &DirectSumElement, h: &DirectSumElement) -> DirectSumElement {
        g.multiply(h)
    }

    fn invert(&self, g: &DirectSumElement) -> DirectSumElement {
        g.inverse()
    }

    fn is_identity(&self, g: &DirectSumElement) -> bool {
        g.is_identity()
    }

    fn canonical_key(&self, g: &DirectSumElement) -> Option<Vec<u8>> {
        let mut key = Vec::new();
        for (&n, p) in &g.components {
            key.extend_from_slice(&n.to_le_bytes());
            for q in 1..=p.degree() {
                key.extend_from_slice(&(p.apply(q) as u16).to_le_bytes());
            }
        }
        Some(key)
    }
}
