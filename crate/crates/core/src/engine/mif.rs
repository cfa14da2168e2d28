//! Mixed-identity machinery: complexity with coefficients, the hard-word
//! construction from commutators `[g, x]`, and the free-group witness
//! search.

use thiserror::Error;

use crate::engine::{combine, Ball, CombineError, EngineError};
use crate::groups::GroupBackend;
use crate::mixed::{MixedError, MixedWord};
use crate::report::{EntryStatus, GrowthTable, SearchOutcome};
use crate::words::{FreeWord, ReducedWords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MifError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Combine(#[from] CombineError),
    #[error(transparent)]
    Mixed(#[from] MixedError),
    #[error("hard word needs at least one nonidentity element in the ball")]
    EmptyBall,
    #[error("hard word of claimed complexity > {l} was killed by no substitution check")]
    HardWordUnverified { l: usize },
    #[error("hard word length {got} exceeds the bound 32(l+1)m^2 = {bound}")]
    HardWordTooLong { got: usize, bound: usize },
    #[error("witness search requires free rank >= 2")]
    RankTooSmall,
    #[error("no admissible base element u of length <= {0} found")]
    NoBaseElement(usize),
}

/// Least total length of a single element `g` with `mw(g) != e`, scanning
/// the ball by length. Exhaustion means complexity exceeds the budget or
/// `mw` is a mixed identity.
pub fn mif_complexity<B: GroupBackend>(
    backend: &B,
    ball: &Ball<B::Elem>,
    mw: &MixedWord,
    budget: u64,
) -> Result<SearchOutcome, EngineError> {
    if !ball.is_whole_group() && (ball.radius() as u64) < budget {
        return Err(EngineError::BallRadius { needed: budget as usize, have: ball.radius() });
    }
    for m in 0..=budget as usize {
        for entry in ball.stratum(m) {
            if !backend.is_identity(&mw.substitute(backend, &entry.elem)) {
                return Ok(SearchOutcome::Exact(m as u64));
            }
        }
    }
    Ok(SearchOutcome::BudgetExceeded { budget })
}

/// Enumerates every normalized mixed word of length at most `max_len`
/// whose coefficients come from the ball (as geodesic words), in a
/// deterministic order.
fn enumerate_mixed_words<B: GroupBackend>(ball: &Ball<B::Elem>, max_len: usize) -> Vec<MixedWord> {
    // geodesic words for nonidentity ball elements, grouped by length
    let mut coeff_words: Vec<Vec<FreeWord>> = vec![Vec::new(); ball.max_len() + 1];
    for (i, e) in ball.entries().iter().enumerate() {
        if e.len > 0 {
            coeff_words[e.len].push(ball.word_for(i));
        }
    }

    let mut out = Vec::new();
    // state: segments built so far, remaining budget, whether the word
    // currently ends with an x-power
    fn extend(
        coeff_words: &[Vec<FreeWord>],
        segments: &mut Vec<(FreeWord, i64)>,
        remaining: usize,
        ends_with_x: bool,
        out: &mut Vec<MixedWord>,
    ) {
        if !segments.is_empty() {
            out.push(raw_to_mixed(segments));
        }
        // append a coefficient (only directly after an x-power or at start)
        if ends_with_x || segments.is_empty() {
            for len in 1..=remaining.min(coeff_words.len() - 1) {
                for a in &coeff_words[len] {
                    segments.push((a.clone(), 0));
                    extend(coeff_words, segments, remaining - len, false, out);
                    segments.pop();
                }
            }
        }
        // append an x-power (only after a coefficient or at start)
        if !ends_with_x {
            for e in 1..=remaining as i64 {
                for k in [e, -e] {
                    if let Some(last) = segments.last_mut() {
                        if last.1 == 0 {
                            last.1 = k;
                            extend(coeff_words, segments, remaining - e as usize, true, out);
                            segments.last_mut().unwrap().1 = 0;
                            continue;
                        }
                    }
                    segments.push((FreeWord::empty(), k));
                    extend(coeff_words, segments, remaining - e as usize, true, out);
                    segments.pop();
                }
            }
        }
    }
    let mut segments = Vec::new();
    extend(&coeff_words, &mut segments, max_len, false, &mut out);
    out.sort_by_key(|m| m.len());
    out.dedup();
    out
}

fn raw_to_mixed(segments: &[(FreeWord, i64)]) -> MixedWord {
    // segments built by the enumerator are already alternating and
    // nontrivial, so no backend normalization is needed
    let mut raw = Vec::new();
    for (a, k) in segments {
        raw.push((a.clone(), *k));
    }
    MixedWord::from_alternating(raw)
}

/// MIF growth: the maximum mixed complexity over mixed words of length at
/// most `l` with ball-representable coefficients.
pub fn mif_growth<B: GroupBackend>(
    backend: &B,
    ball: &Ball<B::Elem>,
    l: usize,
    budget: u64,
) -> Result<GrowthTable, EngineError> {
    let words = enumerate_mixed_words::<B>(ball, l);
    let mut table = GrowthTable::new("M(l)");
    let mut running_max = 0u64;
    let mut hit_budget = false;
    let mut iter = words.into_iter().peekable();
    for m in 1..=l {
        while let Some(w) = iter.peek() {
            if w.len() > m {
                break;
            }
            let w = iter.next().unwrap();
            match mif_complexity(backend, ball, &w, budget)? {
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

/// The hard mixed word for level `l`: combines the commutators
/// `[g, x]` over all nonidentity `g` in `B_S(l)`. Every substitution
/// `x -> g` with `|g| <= l` kills it, so its complexity is at least
/// `l + 1`; its length is at most `32 (l+1) m^2`.
pub fn mif_hard_word<B>(
    backend: &B,
    ball: &Ball<B::Elem>,
    l: usize,
) -> Result<MixedWord, MifError>
where
    B: GroupBackend,
    B::Elem: Clone,
{
    if ball.radius() < l {
        return Err(EngineError::BallRadius { needed: l, have: ball.radius() }.into());
    }
    let mut coeffs: Vec<FreeWord> = Vec::new();
    for (i, e) in ball.entries().iter().enumerate() {
        if e.len >= 1 && e.len <= l {
            coeffs.push(ball.word_for(i));
        }
    }
    let m = coeffs.len();
    if m == 0 {
        return Err(MifError::EmptyBall);
    }

    // the commutators freely generate a rank-m subgroup of Γ * <x>;
    // combine the free generators there, then substitute back
    let mixed: Vec<MixedWord> =
        coeffs.iter().map(MixedWord::commutator_with_x).collect();
    let mw = if m == 1 {
        mixed[0].clone()
    } else {
        let gens: Vec<FreeWord> = (1..=m).map(|i| FreeWord::letter(i as i32)).collect();
        let template = combine(m, &gens)?;
        let mut acc = MixedWord::identity();
        let inverses: Vec<MixedWord> = mixed.iter().map(|w| w.inverse(backend)).collect();
        for &letter in template.letters() {
            let idx = (letter.unsigned_abs() - 1) as usize;
            let factor = if letter > 0 { &mixed[idx] } else { &inverses[idx] };
            acc = acc.multiply(backend, factor);
        }
        acc
    };

    if mw.is_identity_form() {
        return Err(CombineError::TrivialInput.into());
    }
    let bound = 32 * (l + 1) * m * m;
    if mw.len() > bound {
        return Err(MifError::HardWordTooLong { got: mw.len(), bound });
    }
    // the defining property, exhaustively
    for e in ball.entries() {
        if e.len <= l && !backend.is_identity(&mw.substitute(backend, &e.elem)) {
            return Err(MifError::HardWordUnverified { l });
        }
    }
    Ok(mw)
}

/// Witness produced for a mixed word over a free group.
#[derive(Clone, Debug)]
pub struct FreeWitness {
    /// Base element: not a proper power, commutes with no coefficient.
    pub base: FreeWord,
    /// Exponent satisfying the displayed length inequality.
    pub exponent: u32,
    /// `base^exponent`, the witness itself.
    pub witness: FreeWord,
    /// `mw(witness)`, checked not to commute with `base`.
    pub value: FreeWord,
}

/// Finds `u^m` with `mw(u^m)` not commuting with `u`, following the
/// centralizer-avoidance argument: `u` is the first ball element that is
/// not a proper power and commutes with no coefficient, and `m` is the
/// least exponent with `|u^m| >= |u^2| l + sum |a_i|`.
pub fn mif_free_witness(rank: usize, mw: &MixedWord) -> Result<FreeWitness, MifError> {
    if rank < 2 {
        return Err(MifError::RankTooSmall);
    }
    let fk = crate::groups::FreeBackend::new(rank);
    mw.check_all_coefficients_nontrivial(&fk)?;
    let coeffs: Vec<&FreeWord> = mw.segments().iter().map(|(a, _)| a).collect();
    let l = coeffs.len();
    let coeff_len_sum: usize = coeffs.iter().map(|a| a.len()).sum();

    let search_cap = 12usize;
    let mut base: Option<FreeWord> = None;
    'outer: for u in ReducedWords::new(rank, search_cap) {
        if u.free_root().map(|(_, e)| e).unwrap_or(0) != 1 {
            continue;
        }
        for a in &coeffs {
            if u.commutator(a).is_empty() {
                continue 'outer;
            }
        }
        base = Some(u);
        break;
    }
    let base = base.ok_or(MifError::NoBaseElement(search_cap))?;

    // |u^m| = 2|conj| + m|core|, so the least admissible m is a ceiling
    let (conj, core) = base.cyclic_reduce();
    let target = base.pow(2).len() * l + coeff_len_sum;
    let fixed = 2 * conj.len();
    let mut exponent = 1u32;
    if target > fixed {
        exponent = ((target - fixed).div_ceil(core.len())) as u32;
    }
    let witness = base.pow(exponent as i64);
    debug_assert!(witness.len() >= target);

    let value = mw.substitute(&fk, &witness);
    // Prop-level postcondition: the value does not commute with u
    assert!(
        !value.commutator(&base).is_empty(),
        "witness postcondition failed for {mw}: value {value} commutes with base {base}"
    );
    Ok(FreeWitness { base, exponent, witness, value })
}
