//! The full verification suite behind the `paper-check` command: every
//! check the acceptance gate runs, callable from the CLI with one
//! pass/fail line per criterion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::{self, combine, mif_complexity, mif_free_witness, mif_hard_word};
use crate::golod::{self, build_schedule, degree_power_spotcheck, gs_verify, parse_rational, TailSpec};
use crate::grigorchuk::{
    self, certify_y, element_order, power_complexity, torsion_growth, GrigBackend, PhiEmbedding,
};
use crate::groups::{FreeBackend, GroupBackend, SymBackend};
use crate::mixed::MixedWord;
use crate::report::SearchOutcome;
use crate::rfbounds::grig_rf_certificate;
use crate::slowgrowth::{
    is_identity_gamma, verify_slow, windowed_brute_force, GammaElement, GrowthFn, SparsePair,
    WitnessKind, WitnessRegistry,
};
use crate::thompson::{brin_squier_check, check_recursion, is_member, make_un, make_vn};
use crate::words::{random_reduced, FreeWord, ReducedWords};
use crate::wreath::{law_witness, shortest_law, LawSearch, LengthOracle, WreathBackend};

pub type CheckResult = Result<String, String>;

fn fail(msg: impl Into<String>) -> CheckResult {
    Err(msg.into())
}

/// Nested-loop reference for the complexity scan: per-length element
/// lists with linear-scan equality, then all splits and pairs.
fn reference_chi<B: GroupBackend>(backend: &B, w: &FreeWord, budget: u64) -> Option<u64>
where
    B::Elem: Clone,
{
    let equal =
        |a: &B::Elem, b: &B::Elem| backend.is_identity(&backend.multiply(a, &backend.invert(b)));
    let mut by_len: Vec<Vec<B::Elem>> = vec![vec![backend.identity()]];
    let mut known: Vec<B::Elem> = vec![backend.identity()];
    for l in 1..=budget as usize {
        let mut level: Vec<B::Elem> = Vec::new();
        for g in &by_len[l - 1] {
            for i in 0..backend.generator_count() {
                for inv in [false, true] {
                    if inv && backend.generator_is_involution(i) {
                        continue;
                    }
                    let step = if inv {
                        backend.invert(&backend.generator(i))
                    } else {
                        backend.generator(i)
                    };
                    let h = backend.multiply(g, &step);
                    if !known.iter().any(|x| equal(x, &h)) && !level.iter().any(|x| equal(x, &h)) {
                        level.push(h);
                    }
                }
            }
        }
        known.extend(level.iter().cloned());
        by_len.push(level);
    }
    for m in 1..=budget as usize {
        for lg in 0..=m {
            let lh = m - lg;
            for g in &by_len[lg] {
                for h in &by_len[lh] {
                    if !backend.is_identity(&w.evaluate(backend, &[g.clone(), h.clone()])) {
                        return Some(m as u64);
                    }
                }
            }
        }
    }
    None
}

pub fn check_oracle_equivalence() -> CheckResult {
    let budget = 6u64;
    let words: Vec<FreeWord> = ReducedWords::new(2, 4).collect();
    let s3 = SymBackend::new(3);
    let b3 = engine::full_group(&s3, 1000).map_err(|e| e.to_string())?;
    let w1 = WreathBackend::new(1);
    let bw = engine::full_group(&w1, 1000).map_err(|e| e.to_string())?;
    for w in &words {
        let fast = engine::complexity(&s3, &b3, w, budget).map_err(|e| e.to_string())?.outcome;
        if fast.exact() != reference_chi(&s3, w, budget) {
            return fail(format!("Sym(3) disagreement on {w}"));
        }
        let fast = engine::complexity(&w1, &bw, w, budget).map_err(|e| e.to_string())?.outcome;
        if fast.exact() != reference_chi(&w1, w, budget) {
            return fail(format!("W_1 disagreement on {w}"));
        }
    }
    Ok(format!("{} words agree on Sym(3) and W_1", words.len()))
}

pub fn check_bounded_growth() -> CheckResult {
    let f2 = FreeBackend::new(2);
    let ball = engine::ball(&f2, 2, 1000).map_err(|e| e.to_string())?;
    let table = engine::lawlessness_growth(&f2, &ball, 8, 2, 2).map_err(|e| e.to_string())?;
    if !table.all_exact() || !table.is_nondecreasing() {
        return fail("table not exact/monotone");
    }
    for e in &table.entries {
        if e.value > 2 {
            return fail(format!("A({}) = {} > 2", e.n, e.value));
        }
    }
    Ok("A_F2(n) <= 2 for n <= 8, exact".into())
}

pub fn check_wreath_laws() -> CheckResult {
    for n in 0..=4usize {
        let backend = WreathBackend::new(n);
        let oracle = if n <= 3 { LengthOracle::new(n, 40_000).ok() } else { None };
        for w in ReducedWords::new(2, n + 1) {
            let wit = law_witness(&w, n, 2).map_err(|e| e.to_string())?;
            if backend.is_identity(&w.evaluate(&backend, &wit.tuple)) {
                return fail(format!("witness failed for {w} in W_{n}"));
            }
            let bound = (n + 1) * (n + 1);
            if wit.total_construction_length() > bound {
                return fail(format!("length bound violated for {w} in W_{n}"));
            }
            if let Some(oracle) = &oracle {
                let exact: usize = wit.tuple.iter().map(|g| oracle.length(g).unwrap()).sum();
                if exact > bound {
                    return fail(format!("exact length {exact} > {bound} for {w} in W_{n}"));
                }
            }
        }
        match shortest_law(n, n + 1, 2).map_err(|e| e.to_string())? {
            LawSearch::NotFoundWithin(_) => {}
            LawSearch::Found(w) => return fail(format!("unexpected law {w} in W_{n}")),
        }
    }
    match shortest_law(1, 4, 2).map_err(|e| e.to_string())? {
        LawSearch::Found(w) if w == FreeWord::letter(1).pow(4) => {}
        other => return fail(format!("W_1 shortest law came out as {other:?}")),
    }
    Ok("witnesses within (n+1)^2 for n <= 4; shortest law of W_1 is x1^4".into())
}

pub fn check_combiner() -> CheckResult {
    let pool: Vec<FreeWord> = ["a", "b", "ab", "aB", "abAB", "abb"]
        .iter()
        .map(|s| FreeWord::parse(s).unwrap())
        .collect();
    let s3 = SymBackend::new(3);
    let b3 = engine::full_group(&s3, 100).map_err(|e| e.to_string())?;
    let w1 = WreathBackend::new(1);
    let bw = engine::full_group(&w1, 100).map_err(|e| e.to_string())?;

    let mut count = 0;
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for a in 0..pool.len() {
        subsets.push(vec![a]);
        for b in a + 1..pool.len() {
            subsets.push(vec![a, b]);
            for c in b + 1..pool.len() {
                subsets.push(vec![a, b, c]);
            }
        }
    }
    for subset in &subsets {
        let words: Vec<FreeWord> = subset.iter().map(|&i| pool[i].clone()).collect();
        let m = words.len();
        let max_len = words.iter().map(|w| w.len()).max().unwrap();
        let combined = combine(2, &words).map_err(|e| e.to_string())?;
        if combined.len() > 16 * m * m * max_len {
            return fail("length bound violated");
        }
        for g in b3.entries() {
            for h in b3.entries() {
                let tuple = [g.elem.clone(), h.elem.clone()];
                if words.iter().any(|w| s3.is_identity(&w.evaluate(&s3, &tuple)))
                    && !s3.is_identity(&combined.evaluate(&s3, &tuple))
                {
                    return fail("vanishing containment failed on Sym(3)");
                }
            }
        }
        for g in bw.entries() {
            for h in bw.entries() {
                let tuple = [g.elem.clone(), h.elem.clone()];
                if words.iter().any(|w| w1.is_identity(&w.evaluate(&w1, &tuple)))
                    && !w1.is_identity(&combined.evaluate(&w1, &tuple))
                {
                    return fail("vanishing containment failed on W_1");
                }
            }
        }
        count += 1;
    }
    Ok(format!("{count} subsets verified on Sym(3)^2 and W_1^2"))
}

pub fn check_grigorchuk(include_phi2: bool) -> CheckResult {
    let backend = GrigBackend::new();
    let ball = engine::ball(&backend, 6, 100_000).map_err(|e| e.to_string())?;
    for e in ball.entries() {
        let o = element_order(&e.elem, 64).map_err(|e| e.to_string())?;
        if !o.is_power_of_two() {
            return fail("non-2-power order found");
        }
    }
    let report = torsion_growth(6, 100_000).map_err(|e| e.to_string())?;
    if !report.table.all_exact() || report.table.value_at(1) != Some(2) {
        return fail("torsion table wrong");
    }
    for m in 0..=2u32 {
        let chi = power_complexity(m, 6, 100_000).map_err(|e| e.to_string())?;
        let chi_v = chi.exact().ok_or("power word exceeded budget")?;
        for n in 1..=6u64 {
            let pi_n = report.table.value_at(n).unwrap();
            if (chi_v > n) != (pi_n <= 1 << m) {
                return fail(format!("torsion equivalence failed at m={m}, n={n}"));
            }
        }
        let w = FreeWord::letter(1).pow(1i64 << m);
        let eng = engine::complexity(&backend, &ball, &w, 6).map_err(|e| e.to_string())?;
        if eng.outcome != SearchOutcome::Exact(chi_v) {
            return fail(format!("engine cross-check failed at m={m}"));
        }
    }
    let ys = grigorchuk::y_elements(5, 16, 1_000_000).map_err(|e| e.to_string())?;
    for c in certify_y(&ys.words) {
        if !c.support_ok || !c.recursion_bound_ok {
            return fail(format!("y_{} certificate failed", c.n));
        }
    }
    let phi = PhiEmbedding::new(1, 1_000_000).map_err(|e| e.to_string())?;
    let n1 = phi.verify_injective().map_err(|e| e.to_string())?;
    if n1 != 7 {
        return fail("W_1 should have 7 nontrivial elements");
    }
    phi.verify_homomorphism(100, 0x5eed).map_err(|e| e.to_string())?;
    let mut extra = String::new();
    if include_phi2 {
        let phi2 = PhiEmbedding::new(2, 1 << 22).map_err(|e| e.to_string())?;
        let n2 = phi2.verify_injective().map_err(|e| e.to_string())?;
        if n2 != 127 {
            return fail("W_2 should have 127 nontrivial elements");
        }
        extra = ", Phi_2 injective on 127 elements".to_string();
    }
    Ok(format!(
        "orders 2-powers on B(6) ({} elements), pi exact, y_n certified n <= 5, \
         Phi_1 injective{extra}",
        ball.len()
    ))
}

pub fn check_thompson() -> CheckResult {
    for n in 0..=5 {
        if !check_recursion(n) {
            return fail(format!("recursion failed at n={n}"));
        }
        if !is_member(&make_un(n).to_raw()) || !is_member(&make_vn(n).to_raw()) {
            return fail(format!("membership failed at n={n}"));
        }
    }
    let report = brin_squier_check(4).map_err(|e| e.to_string())?;
    Ok(format!("recursion n <= 5, {} words survive at (U_4, V_4)", report.words_checked))
}

pub fn check_golod() -> CheckResult {
    for p in [2u32, 3] {
        let checked = degree_power_spotcheck(p, 12, 20, 4, 0xfeed).map_err(|e| e.to_string())?;
        if checked.len() < 20 {
            return fail(format!("only {} degree checks at p={p}", checked.len()));
        }
    }
    let q = parse_rational("2").unwrap();
    let c = parse_rational("3/5").unwrap();
    let tau = parse_rational("3/4").unwrap();
    let schedule = build_schedule(2, 2, &q, &c, &tau, 4, 24).map_err(|e| e.to_string())?;
    if !schedule.certificate.accepted || schedule.m0 != 3 {
        return fail(format!("expected minimal m0 = 3, got {}", schedule.m0));
    }
    let tail = parse_rational(schedule.certificate.tail_bound.as_ref().unwrap()).unwrap();
    if tail >= parse_rational("1/2").unwrap() {
        return fail("certified tail not below 1/2");
    }
    let spec = TailSpec {
        p: 2,
        q,
        big_c: parse_rational("2").unwrap(),
        m0: schedule.m0 - 1,
        exact_blocks: 3,
    };
    let cert = gs_verify(2, &tau, &[], Some(&spec)).map_err(|e| e.to_string())?;
    if cert.accepted {
        return fail("decremented m0 should reject");
    }
    let _ = golod::ball_size_exact(2, 4);
    Ok(format!("degree-of-powers identity x40, minimal m0 = {}, decrement rejects", schedule.m0))
}

pub fn check_slow_growth() -> CheckResult {
    let sp = SparsePair::minimal(12);
    if !sp.check_difference_rigidity(12) || !sp.check_cross_rigidity(12) {
        return fail("sparse rigidity failed at N=12");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xabcd);
    let mut reg = WitnessRegistry::new(GrowthFn::Log2Plus2, SparsePair::minimal(38), 6);
    let max_shift = sp.q(4);
    for _ in 0..200 {
        let len = rng.random_range(1..=8);
        let mut e = GammaElement::identity();
        for _ in 0..len {
            let kind = if rng.random_bool(0.5) { WitnessKind::G } else { WitnessKind::H };
            let sign = if rng.random_bool(0.5) { 1 } else { -1 };
            let shift = rng.random_range(-max_shift..=max_shift);
            e = e.multiply(&GammaElement::from_factor(kind, sign, shift));
        }
        let window = max_shift + SparsePair::minimal(12).q(8) + 1;
        let fast = is_identity_gamma(&e, &mut reg).map_err(|e| e.to_string())?;
        let slow = windowed_brute_force(&e, &mut reg, window).map_err(|e| e.to_string())?;
        if fast != slow {
            return fail(format!("brute-force disagreement on {e:?}"));
        }
    }
    let f = GrowthFn::Log2Plus2;
    let mut reg = WitnessRegistry::new(f.clone(), SparsePair::minimal(38), 6);
    let report = verify_slow(&f, 6, &mut reg).map_err(|e| e.to_string())?;
    for e in &report.entries {
        let expected = 2 * (sp.q(e.level_index) - sp.p(e.level_index) + 1) as u64;
        if e.chi_bound != expected || e.chi_bound > e.f_n {
            return fail(format!("tuple length mismatch at n={}", e.n));
        }
    }
    let total: usize = report.entries.iter().map(|e| e.words_checked).sum();
    Ok(format!("rigidity at N=12, 200 brute-force agreements, {total} words below f"))
}

pub fn check_mixed_identities() -> CheckResult {
    let f2 = FreeBackend::new(2);
    for l in 1..=2usize {
        let small = engine::ball(&f2, l, 1000).map_err(|e| e.to_string())?;
        let mw = mif_hard_word(&f2, &small, l).map_err(|e| e.to_string())?;
        for e in small.entries() {
            if !f2.is_identity(&mw.substitute(&f2, &e.elem)) {
                return fail(format!("hard word at l={l} survived a short substitution"));
            }
        }
        let big = engine::ball(&f2, l + 1, 100_000).map_err(|e| e.to_string())?;
        match mif_complexity(&f2, &big, &mw, (l + 1) as u64).map_err(|e| e.to_string())? {
            // exhaustion at budget l+1 exceeds the required bound too
            SearchOutcome::Exact(v) if v > l as u64 => {}
            SearchOutcome::BudgetExceeded { .. } => {}
            other => return fail(format!("hard word complexity wrong at l={l}: {other:?}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x11d5);
    let mut produced = 0;
    let mut fitted_c: f64 = 0.0;
    while produced < 50 {
        let mw = random_mixed(&mut rng, 12);
        if mw.is_identity_form() || mw.check_all_coefficients_nontrivial(&f2).is_err() {
            continue;
        }
        let wit = mif_free_witness(2, &mw).map_err(|e| e.to_string())?;
        if wit.value.commutator(&wit.base).is_empty() {
            return fail("witness commutes with base");
        }
        let n = mw.len().max(2) as f64;
        fitted_c = fitted_c.max(wit.witness.len() as f64 / (n * n.ln()));
        produced += 1;
    }
    Ok(format!("hard words l <= 2; 50 witnesses verified, fitted C = {fitted_c:.2}"))
}

fn random_mixed(rng: &mut ChaCha8Rng, max_len: usize) -> MixedWord {
    let f2 = FreeBackend::new(2);
    let segments = rng.random_range(1..=3usize);
    let mut raw = Vec::new();
    let mut used = 0usize;
    for i in 0..segments {
        let budget = (max_len - used).saturating_sub(2 * (segments - i - 1) + 1);
        if budget < 2 {
            break;
        }
        let alen = rng.random_range(1..=(budget - 1).min(4));
        let coeff = random_reduced(rng, 2, alen);
        let emax = (budget - alen).min(3);
        let e = rng.random_range(1..=emax) as i64;
        let e = if rng.random_bool(0.5) { e } else { -e };
        used += alen + e.unsigned_abs() as usize;
        raw.push((coeff, e));
    }
    MixedWord::normalize(&f2, raw)
}

pub fn check_rf_certificates() -> CheckResult {
    let mut lines = Vec::new();
    for m in 0..=3u32 {
        let cert = grig_rf_certificate(m, 16, 1_000_000).map_err(|e| e.to_string())?;
        lines.push(format!(
            "m={m}: witness |g|={}, element length {} ({:?})",
            cert.witness_total_length, cert.element_length, cert.element_length_status
        ));
    }
    Ok(format!("Grigorchuk certificates m <= 3 [{}]", lines.join("; ")))
}

/// Every criterion with its label, in acceptance order.
pub fn all_checks(include_phi2: bool) -> Vec<(&'static str, CheckResult)> {
    vec![
        ("01 oracle-equivalence", check_oracle_equivalence()),
        ("02 bounded-case", check_bounded_growth()),
        ("03 wreath-laws", check_wreath_laws()),
        ("04 kozma-thom-combiner", check_combiner()),
        ("05 grigorchuk", check_grigorchuk(include_phi2)),
        ("06 thompson", check_thompson()),
        ("07 golod-shafarevich", check_golod()),
        ("08 slow-growth", check_slow_growth()),
        ("09 mixed-identities", check_mixed_identities()),
        ("10 rf-certificates", check_rf_certificates()),
    ]
}
