//! Golod-Shafarevich certificates: the truncated Magnus embedding into
//! noncommuting power series over F_p, the degree function, exact
//! rational verification of the defining inequality, and the
//! linear-torsion relation schedule.
//!
//! The presented group itself is never constructed (its word problem is
//! not decidable from the presentation); only the schedule and the
//! inequality are certified. All inequality arithmetic is exact.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::FreeWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GolodError {
    #[error("tau must be a rational strictly between 0 and 1, got {0}")]
    BadTau(String),
    #[error("c must satisfy 0 < c < log(q)/log(2k-1), got {0}")]
    BadC(String),
    #[error("exponent p^{0} too large for exact arithmetic")]
    ExponentTooLarge(u32),
    #[error("no m0 <= {0} makes the schedule accept")]
    NoAcceptingM0(u32),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("schedule invariant failed: a_{m} = {a} < |B({l})| = {ball}")]
    BallBoundViolated { m: u32, a: String, l: u64, ball: String },
    #[error("degree of input word is not exact within cap {0}")]
    DegreeNotExact(usize),
}

/// Truncated power series in noncommuting variables over F_p: monomials
/// are index strings of length at most `cap`, coefficients nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncSeries {
    p: u32,
    vars: usize,
    cap: usize,
    terms: BTreeMap<Vec<u8>, u32>,
}

impl TruncSeries {
    pub fn zero(p: u32, vars: usize, cap: usize) -> Self {
        assert!(p >= 2 && vars >= 1 && cap >= 1);
        TruncSeries { p, vars, cap, terms: BTreeMap::new() }
    }

    pub fn one(p: u32, vars: usize, cap: usize) -> Self {
        let mut s = Self::zero(p, vars, cap);
        s.terms.insert(Vec::new(), 1);
        s
    }

    /// The variable `u_i` (0-based).
    pub fn variable(p: u32, vars: usize, cap: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut s = Self::zero(p, vars, cap);
        s.terms.insert(vec![i as u8], 1);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Vec::new()).copied() == Some(1)
    }

    fn insert(&mut self, mono: Vec<u8>, coeff: u32) {
        let c = (self.terms.get(&mono).copied().unwrap_or(0) + coeff) % self.p;
        if c == 0 {
            self.terms.remove(&mono);
        } else {
            self.terms.insert(mono, c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.insert(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.p, self.vars, self.cap);
        for (m, &c) in &self.terms {
            out.terms.insert(m.clone(), self.p - c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Convolution product, truncated at the degree cap.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.p, self.vars, self.cap);
        for (ma, &ca) in &self.terms {
            for (mb, &cb) in &other.terms {
                if ma.len() + mb.len() > self.cap {
                    continue;
                }
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                out.insert(m, ca * cb % self.p);
            }
        }
        out
    }

    /// Minimal total degree of a stored monomial.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).min()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

/// Image of a reduced word under `x_i -> 1 + u_i`,
/// `x_i^-1 -> sum_j (-u_i)^j`, truncated at the cap.
pub fn magnus(w: &FreeWord, p: u32, vars: usize, cap: usize) -> TruncSeries {
    let vars = vars.max(w.max_index());
    let mut acc = TruncSeries::one(p, vars, cap);
    for &l in w.letters() {
        let i = (l.unsigned_abs() - 1) as usize;
        let u = TruncSeries::variable(p, vars, cap, i);
        let factor = if l > 0 {
            TruncSeries::one(p, vars, cap).add(&u)
        } else {
            // geometric inverse of 1 + u
            let mut f = TruncSeries::one(p, vars, cap);
            let mut pow = TruncSeries::one(p, vars, cap);
            let neg_u = u.neg();
            for _ in 1..=cap {
                pow = pow.mul(&neg_u);
                if pow.is_zero() {
                    break;
                }
                f = f.add(&pow);
            }
            f
        };
        acc = acc.mul(&factor);
    }
    acc
}

/// `D(w) = deg(magnus(w) - 1)`, exact within the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeBound {
    Exact(usize),
    /// All non-constant terms were truncated away.
    AtLeast(usize),
}

pub fn degree(w: &FreeWord, p: u32, cap: usize) -> DegreeBound {
    let vars = w.max_index().max(1);
    let m = magnus(w, p, vars, cap);
    let diff = m.sub(&TruncSeries::one(p, vars, cap));
    match diff.min_degree() {
        Some(d) => DegreeBound::Exact(d),
        None => DegreeBound::AtLeast(cap + 1),
    }
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// Scheduled tail of relations: block `m >= 1` holds at most
/// `a_m = C q^(p^m)` relations of degree at least `p^(m+m0)`, bounded by
/// `C ( sum_{m<=M} h^(p^m) + h^(p^(M+1))/(1-h) )` with `h = q tau^(p^m0)`.
#[derive(Clone, Debug)]
pub struct TailSpec {
    pub p: u32,
    pub q: BigRational,
    pub big_c: BigRational,
    pub m0: u32,
    /// Number of blocks summed exactly before the geometric bound.
    pub exact_blocks: u32,
}

/// Outcome of the inequality check, with every rational bound recorded.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GsCertificate {
    pub accepted: bool,
    pub k: u32,
    pub tau: String,
    pub finite_sum: String,
    pub tail_bound: Option<String>,
    /// Certified upper bound for `1 - k tau + sum_r tau^D(r)`.
    pub total_bound: String,
    pub reason: String,
}

fn pow_u32(p: u32, e: u32) -> Result<u32, GolodError> {
    let mut acc: u64 = 1;
    for _ in 0..e {
        acc *= p as u64;
        if acc > 1 << 26 {
            return Err(GolodError::ExponentTooLarge(e));
        }
    }
    Ok(acc as u32)
}

fn rat_pow(base: &BigRational, e: u32) -> BigRational {
    let n = base.numer().pow(e);
    let d = base.denom().pow(e);
    BigRational::new(n, d)
}

/// Exact verification of `1 - k tau + sum_{r in R} tau^D(r) < 0` for a
/// finite degree multiset plus an optional scheduled tail.
pub fn gs_verify(
    k: u32,
    tau: &BigRational,
    finite_degrees: &[u64],
    tail: Option<&TailSpec>,
) -> Result<GsCertificate, GolodError> {
    if !tau.is_positive() || *tau >= BigRational::one() {
        return Err(GolodError::BadTau(tau.to_string()));
    }
    let mut finite_sum = BigRational::zero();
    for &d in finite_degrees {
        finite_sum += rat_pow(tau, d as u32);
    }

    let mut tail_bound: Option<BigRational> = None;
    if let Some(spec) = tail {
        let pm0 = pow_u32(spec.p, spec.m0)?;
        let h = &spec.q * rat_pow(tau, pm0);
        if h >= BigRational::one() {
            let total = BigRational::one() - BigRational::from_integer(BigInt::from(k)) * tau
                + &finite_sum;
            return Ok(GsCertificate {
                accepted: false,
                k,
                tau: tau.to_string(),
                finite_sum: finite_sum.to_string(),
                tail_bound: None,
                total_bound: total.to_string(),
                reason: format!("tail bound inapplicable: h = q tau^(p^m0) = {h} >= 1"),
            });
        }
        let mut sum = BigRational::zero();
        for m in 1..=spec.exact_blocks {
            let e = pow_u32(spec.p, m)?;
            sum += rat_pow(&h, e);
        }
        let e = pow_u32(spec.p, spec.exact_blocks + 1)?;
        let geom = rat_pow(&h, e) / (BigRational::one() - &h);
        sum += geom;
        tail_bound = Some(&spec.big_c * sum);
    }

    let total = BigRational::one() - BigRational::from_integer(BigInt::from(k)) * tau
        + &finite_sum
        + tail_bound.clone().unwrap_or_else(BigRational::zero);
    let accepted = total < BigRational::zero();
    Ok(GsCertificate {
        accepted,
        k,
        tau: tau.to_string(),
        finite_sum: finite_sum.to_string(),
        tail_bound: tail_bound.map(|t| t.to_string()),
        total_bound: total.to_string(),
        reason: if accepted {
            "certified: 1 - k tau + sum < 0".to_string()
        } else {
            "certified bound is nonnegative".to_string()
        },
    })
}

/// `|B(l)|` in the free group of rank `k`, exactly.
pub fn ball_size_exact(k: u32, l: u64) -> BigInt {
    let mut total = BigInt::one();
    let mut stratum = BigInt::from(2 * k);
    for _ in 0..l {
        total += &stratum;
        stratum *= 2 * k - 1;
    }
    total
}

/// The relation schedule of the linear-torsion construction.
#[derive(Clone, Debug)]
pub struct Schedule {
    pub k: u32,
    pub p: u32,
    pub q: BigRational,
    pub c: BigRational,
    pub big_c: BigRational,
    pub m0: u32,
    /// `floor(a_m)` for `m = 0..=depth`.
    pub a_floor: Vec<BigInt>,
    /// `o(g) <= (p^(m0+1)/c) |g|`: the slope, exactly.
    pub torsion_slope: BigRational,
    pub certificate: GsCertificate,
}

/// Builds the schedule: validates the `c`-range, checks
/// `a_m >= |B(c p^m)|` for `m <= depth`, determines the least accepting
/// `m0`, and reports the torsion slope.
pub fn build_schedule(
    k: u32,
    p: u32,
    q: &BigRational,
    c: &BigRational,
    tau: &BigRational,
    depth: u32,
    max_m0: u32,
) -> Result<Schedule, GolodError> {
    if k < 2 || *q <= BigRational::one() {
        return Err(GolodError::BadC("need k >= 2 and q > 1".into()));
    }
    // 0 < c < log(q)/log(2k-1), exactly: (2k-1)^cn * qd^cd < qn^cd
    if !c.is_positive() {
        return Err(GolodError::BadC(c.to_string()));
    }
    let cn = c.numer().to_u32().ok_or(GolodError::BadC(c.to_string()))?;
    let cd = c.denom().to_u32().ok_or(GolodError::BadC(c.to_string()))?;
    let lhs = BigInt::from(2 * k - 1).pow(cn) * q.denom().pow(cd);
    let rhs = q.numer().pow(cd);
    if lhs >= rhs {
        return Err(GolodError::BadC(c.to_string()));
    }

    let big_c = BigRational::from_integer(BigInt::from(2));

    // a_m = C q^(p^m) must dominate the ball of radius floor(c p^m)
    let mut a_floor = vec![BigInt::zero()];
    let mut prev = BigInt::zero();
    for m in 1..=depth {
        let pm = pow_u32(p, m)?;
        let a = &big_c * rat_pow(q, pm);
        let floor = a.floor().to_integer();
        let radius = (c * BigRational::from_integer(BigInt::from(pm))).floor().to_integer();
        let l = radius.to_u64().unwrap_or(u64::MAX);
        let ball = ball_size_exact(k, l);
        if floor < ball {
            return Err(GolodError::BallBoundViolated {
                m,
                a: floor.to_string(),
                l,
                ball: ball.to_string(),
            });
        }
        if floor <= prev {
            return Err(GolodError::BadC(format!("a_{m} not strictly increasing")));
        }
        prev = floor.clone();
        a_floor.push(floor);
    }

    // least accepting m0 at this tau
    let mut chosen: Option<(u32, GsCertificate)> = None;
    for m0 in 0..=max_m0 {
        let spec = TailSpec { p, q: q.clone(), big_c: big_c.clone(), m0, exact_blocks: 3 };
        let cert = gs_verify(k, tau, &[], Some(&spec))?;
        if cert.accepted {
            chosen = Some((m0, cert));
            break;
        }
    }
    let (m0, certificate) = chosen.ok_or(GolodError::NoAcceptingM0(max_m0))?;

    let slope = BigRational::from_integer(BigInt::from(p).pow(m0 + 1)) / c.clone();
    Ok(Schedule {
        k,
        p,
        q: q.clone(),
        c: c.clone(),
        big_c,
        m0,
        a_floor,
        torsion_slope: slope,
        certificate,
    })
}

/// On-disk schedule description: rationals as strings, e.g.
/// `{"k":2,"p":2,"q":"2","c":"3/5","m0":3,"exact_blocks":3,"finite_degrees":[]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub k: u32,
    pub p: u32,
    pub q: String,
    #[serde(default)]
    pub c: Option<String>,
    pub m0: u32,
    #[serde(default = "default_blocks")]
    pub exact_blocks: u32,
    #[serde(default)]
    pub finite_degrees: Vec<u64>,
}

fn default_blocks() -> u32 {
    3
}

impl ScheduleFile {
    pub fn tail_spec(&self) -> Result<TailSpec, GolodError> {
        Ok(TailSpec {
            p: self.p,
            q: parse_rational(&self.q)?,
            big_c: BigRational::from_integer(BigInt::from(2)),
            m0: self.m0,
            exact_blocks: self.exact_blocks,
        })
    }
}

/// Parses `"3/4"` or `"2"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, GolodError> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int =
        |t: &str| t.trim().parse::<BigInt>().map_err(|_| GolodError::ParseRational(s.into()));
    match parts.as_slice() {
        [n] => Ok(BigRational::from_integer(parse_int(n)?)),
        [n, d] => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(GolodError::ParseRational(s.into()));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        _ => Err(GolodError::ParseRational(s.into())),
    }
}

/// Seeded spot-check of `D(w^p) = p D(w)` on random short words.
pub fn degree_power_spotcheck(
    p: u32,
    cap: usize,
    count: usize,
    max_len: usize,
    seed: u64,
) -> Result<Vec<(FreeWord, usize)>, GolodError> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut checked = Vec::new();
    let mut attempts = 0;
    while checked.len() < count {
        attempts += 1;
        if attempts > 100 * count {
            break;
        }
        let len = 1 + (attempts % max_len);
        let w = crate::words::random_reduced(&mut rng, 2, len);
        if w.is_empty() {
            continue;
        }
        let DegreeBound::Exact(d) = degree(&w, p, cap) else { continue };
        if (p as usize) * d > cap {
            continue;
        }
        let wp = w.pow(p as i64);
        match degree(&wp, p, cap) {
            DegreeBound::Exact(dp) if dp == p as usize * d => checked.push((w, d)),
            other => {
                return Err(GolodError::DegreeNotExact(match other {
                    DegreeBound::Exact(v) => v,
                    DegreeBound::AtLeast(v) => v,
                }))
            }
        }
    }
    Ok(checked)
}
