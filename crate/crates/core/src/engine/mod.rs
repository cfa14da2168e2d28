//! Exact ball enumeration and the complexity / growth machinery.
//!
//! `complexity` implements the stepwise scan: at step `m` it checks all
//! k-tuples of total length exactly `m` (drawn from the ball's
//! per-length strata via compositions of `m`) and stops at the first
//! witness. Every search is budgeted: a word that is a law for the
//! backend can never terminate the scan, so exhaustion is reported as
//! `BudgetExceeded`, never as a value.

mod combine;
mod mif;

pub use combine::{combine, CombineError};
pub use mif::{
    mif_complexity, mif_free_witness, mif_growth, mif_hard_word, FreeWitness, MifError,
};

use std::collections::HashMap;
use std::ops::Range;

use rayon::prelude::*;
use thiserror::Error;

use crate::groups::GroupBackend;
use crate::report::{EntryStatus, GrowthTable, SearchOutcome};
use crate::words::{letter_rank, FreeWord, Letter, ReducedWords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("ball enumeration exceeded the element budget of {limit}")]
    BallBudget { limit: usize },
    #[error("search needs ball radius {needed} but only {have} is available")]
    BallRadius { needed: usize, have: usize },
    #[error("no spotless tuple of total length <= {budget} found")]
    SpotlessNotFound { budget: u64 },
    #[error("word is trivial")]
    TrivialWord,
}

/// One BFS move: generator index plus whether the inverse was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub generator: usize,
    pub inverted: bool,
}

impl Move {
    pub fn letter(&self) -> Letter {
        let l = self.generator as Letter + 1;
        if self.inverted { -l } else { l }
    }
}

#[derive(Clone, Debug)]
pub struct BallEntry<E> {
    pub elem: E,
    pub len: usize,
    /// BFS certificate: `elem = entries[parent].elem * move`.
    pub parent: Option<(usize, Move)>,
}

/// The ball `B_S(r)`: every element of length at most `r`, each with its
/// exact word length, certified by the BFS level of first discovery.
#[derive(Debug)]
pub struct Ball<E> {
    entries: Vec<BallEntry<E>>,
    strata: Vec<Range<usize>>,
    radius: usize,
    /// True when BFS exhausted the whole group before hitting the radius.
    closed: bool,
}

impl<E: Clone> Ball<E> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Whether the ball is the entire group.
    pub fn is_whole_group(&self) -> bool {
        self.closed
    }

    pub fn entries(&self) -> &[BallEntry<E>] {
        &self.entries
    }

    pub fn stratum(&self, len: usize) -> &[BallEntry<E>] {
        match self.strata.get(len) {
            Some(r) => &self.entries[r.clone()],
            None => &[],
        }
    }

    pub fn max_len(&self) -> usize {
        self.strata.len().saturating_sub(1)
    }

    /// Geodesic word (in backend letters) for an entry, from the BFS tree.
    pub fn word_for(&self, index: usize) -> FreeWord {
        let mut letters = Vec::new();
        let mut cur = index;
        while let Some((p, mv)) = self.entries[cur].parent {
            letters.push(mv.letter());
            cur = p;
        }
        letters.reverse();
        FreeWord::from_letters(letters)
    }
}

fn moves_for<B: GroupBackend>(backend: &B) -> Vec<Move> {
    let mut moves = Vec::new();
    for i in 0..backend.generator_count() {
        moves.push(Move { generator: i, inverted: false });
        if !backend.generator_is_involution(i) {
            moves.push(Move { generator: i, inverted: true });
        }
    }
    moves
}

/// BFS ball of radius `r`. Deterministic: elements appear in discovery
/// order, expansion follows generator order.
pub fn ball<B: GroupBackend>(
    backend: &B,
    radius: usize,
    max_elems: usize,
) -> Result<Ball<B::Elem>, EngineError> {
    ball_inner(backend, Some(radius), max_elems)
}

/// BFS until the group is exhausted (for finite groups small enough to
/// materialize). Errors out at `max_elems`.
pub fn full_group<B: GroupBackend>(
    backend: &B,
    max_elems: usize,
) -> Result<Ball<B::Elem>, EngineError> {
    let b = ball_inner(backend, None, max_elems)?;
    debug_assert!(b.closed);
    Ok(b)
}

fn ball_inner<B: GroupBackend>(
    backend: &B,
    radius: Option<usize>,
    max_elems: usize,
) -> Result<Ball<B::Elem>, EngineError> {
    let moves = moves_for(backend);
    let keyed = backend.canonical_key(&backend.identity()).is_some();

    let mut entries: Vec<BallEntry<B::Elem>> =
        vec![BallEntry { elem: backend.identity(), len: 0, parent: None }];
    let mut strata: Vec<Range<usize>> = Vec::new();
    strata.push(0..1);
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    if keyed {
        index.insert(backend.canonical_key(&entries[0].elem).unwrap(), 0);
    }

    let mut level_start = 0usize;
    let mut level = 0usize;
    loop {
        if radius.is_some_and(|r| level >= r) {
            return Ok(Ball { entries, strata, radius: level, closed: false });
        }
        let level_end = entries.len();
        let mut found_new = false;
        for i in level_start..level_end {
            for mv in &moves {
                let gen = backend.generator(mv.generator);
                let step = if mv.inverted { backend.invert(&gen) } else { gen };
                let next = backend.multiply(&entries[i].elem, &step);
                let fresh = if keyed {
                    let key = backend.canonical_key(&next).unwrap();
                    if let std::collections::hash_map::Entry::Vacant(e) = index.entry(key) {
                        e.insert(entries.len());
                        true
                    } else {
                        false
                    }
                } else {
                    // equality-only dedup: quadratic but desk-scale
                    !entries.iter().any(|e| backend.equal(&e.elem, &next))
                };
                if fresh {
                    if entries.len() >= max_elems {
                        return Err(EngineError::BallBudget { limit: max_elems });
                    }
                    entries.push(BallEntry { elem: next, len: level + 1, parent: Some((i, *mv)) });
                    found_new = true;
                }
            }
        }
        if !found_new {
            return Ok(Ball { entries, strata, radius: level, closed: true });
        }
        strata.push(level_end..entries.len());
        level_start = level_end;
        level += 1;
    }
}

/// Re-multiplies each entry's BFS parent by its move and compares.
pub fn certify_ball<B: GroupBackend>(backend: &B, ball: &Ball<B::Elem>) -> bool {
    ball.entries.iter().all(|e| match e.parent {
        None => backend.is_identity(&e.elem) && e.len == 0,
        Some((p, mv)) => {
            let gen = backend.generator(mv.generator);
            let step = if mv.inverted { backend.invert(&gen) } else { gen };
            let prod = backend.multiply(&ball.entries[p].elem, &step);
            backend.equal(&prod, &e.elem) && e.len == ball.entries[p].len + 1
        }
    })
}

fn eval_refs<B: GroupBackend>(backend: &B, w: &FreeWord, tuple: &[&B::Elem]) -> B::Elem {
    let mut acc = backend.identity();
    for &l in w.letters() {
        let g = tuple[(l.unsigned_abs() - 1) as usize];
        let factor = if l > 0 { g.clone() } else { backend.invert(g) };
        acc = backend.multiply(&acc, &factor);
    }
    acc
}

/// Compositions of `m` into `k` parts, each within `0..=cap`
/// (or `1..=cap` when `positive`), in lexicographic order.
fn compositions(m: usize, k: usize, cap: usize, positive: bool) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; k];
    fn rec(
        m: usize,
        k: usize,
        cap: usize,
        positive: bool,
        pos: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pos == k {
            if m == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = if positive { 1 } else { 0 };
        for c in lo..=m.min(cap) {
            cur[pos] = c;
            rec(m - c, k, cap, positive, pos + 1, cur, out);
        }
    }
    rec(m, k, cap, positive, 0, &mut cur, &mut out);
    out
}

/// Runs `f` over all tuples drawn from the given strata sizes, in
/// lexicographic index order, stopping at the first `Some`.
fn scan_tuples<E, T>(
    strata: &[&[BallEntry<E>]],
    mut f: impl FnMut(&[&E]) -> Option<T>,
) -> Option<T> {
    let k = strata.len();
    if strata.iter().any(|s| s.is_empty()) {
        return None;
    }
    let mut idx = vec![0usize; k];
    loop {
        let tuple: Vec<&E> = (0..k).map(|i| &strata[i][idx[i]].elem).collect();
        if let Some(t) = f(&tuple) {
            return Some(t);
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < strata[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Witness found by the complexity scan.
#[derive(Clone, Debug)]
pub struct ComplexityWitness<E> {
    pub tuple: Vec<E>,
    pub lengths: Vec<usize>,
    pub total: u64,
}

pub struct ComplexityResult<E> {
    pub outcome: SearchOutcome,
    pub witness: Option<ComplexityWitness<E>>,
}

/// The least total tuple length `m <= budget` at which `w` does not
/// vanish, with a witness tuple. `BudgetExceeded` means `chi(w) > budget`
/// or `w` is a law for the backend.
///
/// The tuple rank is inferred from the word; variables beyond its
/// largest index would sit at the identity without changing the
/// minimum, so they are never scanned.
pub fn complexity<B>(
    backend: &B,
    ball: &Ball<B::Elem>,
    w: &FreeWord,
    budget: u64,
) -> Result<ComplexityResult<B::Elem>, EngineError>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    if w.is_empty() {
        return Err(EngineError::TrivialWord);
    }
    if !ball.is_whole_group() && (ball.radius() as u64) < budget {
        return Err(EngineError::BallRadius { needed: budget as usize, have: ball.radius() });
    }
    let k = w.max_index();
    for m in 1..=budget as usize {
        let comps = compositions(m, k, ball.max_len(), false);
        let hit = comps.par_iter().find_map_first(|comp| {
            let strata: Vec<&[BallEntry<B::Elem>]> =
                comp.iter().map(|&c| ball.stratum(c)).collect();
            scan_tuples(&strata, |tuple| {
                let v = eval_refs(backend, w, tuple);
                if backend.is_identity(&v) {
                    None
                } else {
                    Some(ComplexityWitness {
                        tuple: tuple.iter().map(|e| (*e).clone()).collect(),
                        lengths: comp.clone(),
                        total: m as u64,
                    })
                }
            })
        });
        if let Some(witness) = hit {
            return Ok(ComplexityResult {
                outcome: SearchOutcome::Exact(m as u64),
                witness: Some(witness),
            });
        }
    }
    Ok(ComplexityResult { outcome: SearchOutcome::BudgetExceeded { budget }, witness: None })
}

/// Canonical representative of a word under the transformations that
/// preserve complexity: cyclic rotation, inversion, permuting variables
/// and inverting variables. Past rank 5 the variable transforms are
/// skipped (the refinement stays a sound deduplication, just coarser).
pub fn word_class_rep(w: &FreeWord, k: usize) -> FreeWord {
    let perms = if k <= 5 { permutations(k) } else { vec![(0..k).collect()] };
    let mut best: Option<Vec<Letter>> = None;
    let mut consider = |cand: &[Letter]| {
        let better = match &best {
            None => true,
            Some(b) => cmp_letters(cand, b) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(cand.to_vec());
        }
    };
    let sign_patterns = if k <= 5 { 1u32 << k } else { 1 };
    for perm in &perms {
        for signs in 0..sign_patterns {
            let mapped: Vec<Letter> = w
                .letters()
                .iter()
                .map(|&l| {
                    let v = l.unsigned_abs() as usize - 1;
                    let img = perm[v] as Letter + 1;
                    let flip = (signs >> v) & 1 == 1;
                    let sign = (l > 0) != flip;
                    if sign { img } else { -img }
                })
                .collect();
            let n = mapped.len();
            for rot in 0..n.max(1) {
                let rotated: Vec<Letter> =
                    (0..n).map(|i| mapped[(i + rot) % n]).collect();
                consider(&rotated);
                let inv: Vec<Letter> = rotated.iter().rev().map(|l| -l).collect();
                consider(&inv);
            }
        }
    }
    FreeWord::from_letters(best.unwrap_or_default())
}

fn cmp_letters(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    let key = |ls: &[Letter]| ls.iter().map(|&l| letter_rank(l)).collect::<Vec<_>>();
    key(a).cmp(&key(b))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..k).collect();
    fn heap(n: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..n {
            heap(n - 1, items, out);
            if n.is_multiple_of(2) {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    heap(k, &mut items, &mut out);
    out.sort();
    out
}

/// The lawlessness growth table `A(m)` for `m <= n`: the maximum
/// complexity over nontrivial words of length at most `m` in rank `k`.
///
/// Words are deduplicated up to the complexity-preserving
/// transformations; only cyclically reduced representatives are scanned
/// since conjugation preserves vanishing sets.
pub fn lawlessness_growth<B>(
    backend: &B,
    ball: &Ball<B::Elem>,
    n: usize,
    k: usize,
    budget: u64,
) -> Result<GrowthTable, EngineError>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let mut table = GrowthTable::new(format!("A(n), rank {k}"));
    let mut running_max = 0u64;
    let mut hit_budget = false;
    let mut words = ReducedWords::new(k, n).peekable();
    for m in 1..=n {
        while let Some(w) = words.peek() {
            if w.len() > m {
                break;
            }
            let w = words.next().unwrap();
            if !w.is_cyclically_reduced() || word_class_rep(&w, k) != w {
                continue;
            }
            match complexity(backend, ball, &w, budget)?.outcome {
                SearchOutcome::Exact(v) => running_max = running_max.max(v),
                SearchOutcome::BudgetExceeded { .. } => hit_budget = true,
            }
        }
        let status =
            if hit_budget { EntryStatus::LowerBound { budget } } else { EntryStatus::Exact };
        table.push(m as u64, running_max, status);
    }
    Ok(table)
}

/// Growth over an explicit word set `W` instead of all short words,
/// keyed by word length.
pub fn growth_over_words<B>(
    backend: &B,
    ball: &Ball<B::Elem>,
    words: &[FreeWord],
    budget: u64,
) -> Result<GrowthTable, EngineError>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let mut sorted: Vec<&FreeWord> = words.iter().collect();
    sorted.sort_by_key(|w| w.len());
    let mut table = GrowthTable::new("A_W(l)");
    let mut running_max = 0u64;
    let mut hit_budget = false;
    for w in sorted {
        match complexity(backend, ball, w, budget)?.outcome {
            SearchOutcome::Exact(v) => running_max = running_max.max(v),
            SearchOutcome::BudgetExceeded { .. } => hit_budget = true,
        }
        let status =
            if hit_budget { EntryStatus::LowerBound { budget } } else { EntryStatus::Exact };
        table.push(w.len() as u64, running_max, status);
    }
    Ok(table)
}

#[derive(Clone, Debug)]
pub struct SpotlessTuple<E> {
    pub tuple: Vec<E>,
    pub lengths: Vec<usize>,
    pub total: u64,
}

/// Representatives of nontrivial words of length `<= l` under cyclic
/// rotation and inversion. These transformations preserve vanishing at
/// a fixed tuple, so spotlessness checks only need the representatives.
pub fn rotation_inverse_reps(k: usize, l: usize) -> Vec<FreeWord> {
    let mut checks: Vec<FreeWord> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for w in ReducedWords::new(k, l) {
        // non-cyclically-reduced words are covered by their core's class
        if !w.is_cyclically_reduced() {
            continue;
        }
        let orig = w.letters();
        let n = orig.len();
        let mut best = orig.to_vec();
        for rot in 0..n {
            let rotated: Vec<Letter> = (0..n).map(|i| orig[(i + rot) % n]).collect();
            let inv: Vec<Letter> = rotated.iter().rev().map(|l| -l).collect();
            for cand in [rotated, inv] {
                if cmp_letters(&cand, &best) == std::cmp::Ordering::Less {
                    best = cand;
                }
            }
        }
        if seen.insert(best.clone()) && best == orig {
            checks.push(w);
        }
    }
    checks
}

/// A `k`-tuple on which every nontrivial word of length at most `l`
/// survives, of minimal total length among those found.
pub fn find_spotless_tuple<B>(
    backend: &B,
    ball: &Ball<B::Elem>,
    l: usize,
    k: usize,
    budget: u64,
) -> Result<SpotlessTuple<B::Elem>, EngineError>
where
    B: GroupBackend + Sync,
    B::Elem: Clone + Send + Sync,
{
    let checks = rotation_inverse_reps(k, l);

    for m in k..=budget as usize {
        let comps = compositions(m, k, ball.max_len(), true);
        let hit = comps.par_iter().find_map_first(|comp| {
            let strata: Vec<&[BallEntry<B::Elem>]> =
                comp.iter().map(|&c| ball.stratum(c)).collect();
            scan_tuples(&strata, |tuple| {
                if checks.iter().all(|v| !backend.is_identity(&eval_refs(backend, v, tuple))) {
                    Some(SpotlessTuple {
                        tuple: tuple.iter().map(|e| (*e).clone()).collect(),
                        lengths: comp.clone(),
                        total: m as u64,
                    })
                } else {
                    None
                }
            })
        });
        if let Some(t) = hit {
            return Ok(t);
        }
    }
    Err(EngineError::SpotlessNotFound { budget })
}
