//! Solvers for `M1` and `Minf`.
//!
//! Exact cases:
//!
//! * `M1(a/b) = max(|a|, |b|)`: `H <= M1 <= M` and `H = M` in degree one.
//! * `M1(s)` for `s` in `rad(Q)` whenever one of a few structured
//!   factorizations reaches the lower bound `H(s)`.
//! * `Minf(s)` for `s` in `rad(Q)` equals the largest prime `P` in the support
//!   of `s`. A surd moving the prime `p` has measure at least `p`, and taking
//!   norms shows `Minf(s) >= Minf(s^L) >= P`; splitting `s` prime by prime
//!   reaches `P`. The first feasible ceiling `m = 2, 3, ...` is therefore `P`.
//!
//! Everything else returns certified bounds, with the candidate values
//! `M(beta)`, `beta in K_alpha`, listed when `K_alpha` is at most quadratic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::algnum::{galois_closure, AlgebraicNumber, ExponentVector, NumberField, RootOfUnity, SurdExpr};
use crate::arith::{factorize, largest_prime_factor, rational_height};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::format_algebraic;
use crate::heights::{height_of_surd, mahler_roots, measure_of_surd, weil_height, MeasureValue};
use crate::polycore::Interval;

use super::northcott::{length_bound_from_q, measure_candidates, q_of_field, QuadMeasure};
use super::Representation;

/// Largest upper bound for which the candidate value set is enumerated.
const CANDIDATE_CEILING: i64 = 8;

/// Node budget of the fewest-parts search before falling back to greedy splitting.
const SPLIT_BUDGET: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Metric,
    Ultrametric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Metric => "m1",
            Kind::Ultrametric => "minf",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Certificate {
    /// `q(alpha)`, when `K_alpha` is at most quadratic.
    pub q: Option<MeasureValue>,
    /// Largest length of an `M(alpha)`-restricted representation.
    pub length_bound: Option<u64>,
    pub kmax: u32,
    pub closure_degree: Option<usize>,
    /// Whether the exact value was verified to lie in `K_alpha`.
    pub location: bool,
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    pub kind: Kind,
    pub target: AlgebraicNumber,
    /// The certified value, when known.
    pub exact: Option<AlgebraicNumber>,
    /// The value, or the hull `[lower, upper]` when only bounds are known.
    pub value: MeasureValue,
    pub lower: MeasureValue,
    pub upper: MeasureValue,
    /// Values the measure can take between the bounds.
    pub candidates: Vec<AlgebraicNumber>,
    pub witness: Representation,
    pub certificate: Certificate,
}

fn value_string(exact: Option<&AlgebraicNumber>, value: &MeasureValue) -> String {
    match (exact, value.exact_string()) {
        (_, Some(s)) => s,
        (Some(x), None) => format_algebraic(x),
        (None, None) => value.to_string(),
    }
}

/// Witness factors in the expression grammar, joined by `*`.
pub fn witness_string(rep: &Representation) -> String {
    rep.factors.iter().map(format_algebraic).collect::<Vec<_>>().join("*")
}

impl SolveResult {
    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn value_string(&self) -> String {
        value_string(self.exact.as_ref(), &self.value)
    }

    /// Certificate fields in a fixed order.
    pub fn entries(&self) -> Vec<(&'static str, String)> {
        let opt = |s: Option<String>| s.unwrap_or_else(|| "none".into());
        let c = &self.certificate;
        vec![
            ("measure", self.kind.to_string()),
            ("target", format_algebraic(&self.target)),
            ("exact", self.is_exact().to_string()),
            ("value", self.value_string()),
            ("lower", self.lower.to_string()),
            ("upper", self.upper.to_string()),
            ("candidates", format!("[{}]", self.candidates.iter().map(format_algebraic).collect::<Vec<_>>().join(", "))),
            ("witness", witness_string(&self.witness)),
            ("q", opt(c.q.as_ref().map(|q| q.to_string()))),
            ("length_bound", opt(c.length_bound.map(|n| n.to_string()))),
            ("kmax", c.kmax.to_string()),
            ("closure_degree", opt(c.closure_degree.map(|n| n.to_string()))),
            ("location", c.location.to_string()),
            ("method", c.method.to_string()),
        ]
    }

    /// `key: value` lines in the order of [`SolveResult::entries`].
    pub fn record(&self) -> String {
        self.entries().iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
    }
}

/// True iff the exact value lies in `K_alpha`; for rational `alpha` this is integrality.
pub fn verify_location(result: &SolveResult, alpha: &AlgebraicNumber) -> bool {
    let Some(v) = &result.exact else {
        return false;
    };
    if alpha.degree() == 1 {
        return v.as_rational().is_some_and(|q| q.is_integer());
    }
    if v.degree() == 1 {
        return true;
    }
    galois_closure(alpha, Config::DEFAULT_CLOSURE_CAP).and_then(|(k, _)| k.contains(v)).unwrap_or(false)
}

struct Context {
    closure: Option<NumberField>,
    upper: MeasureValue,
}

fn context(alpha: &AlgebraicNumber, config: &Config) -> Context {
    let closure = galois_closure(alpha, config.closure_cap).ok().map(|(k, _)| k);
    Context { closure, upper: mahler_roots(alpha, &config.precision) }
}

fn certificate(ctx: &Context, config: &Config, method: &'static str) -> Certificate {
    let q = ctx.closure.as_ref().filter(|k| k.degree() <= 2).and_then(|k| q_of_field(k).ok());
    let length_bound = q.as_ref().and_then(|q| length_bound_from_q(q, &ctx.upper).ok());
    Certificate {
        q,
        length_bound,
        kmax: config.kmax,
        closure_degree: ctx.closure.as_ref().map(|k| k.degree()),
        location: false,
        method,
    }
}

fn finish(mut r: SolveResult) -> SolveResult {
    r.certificate.location = verify_location(&r, &r.target);
    r
}

fn measure_to_algebraic(m: &MeasureValue) -> Result<Option<AlgebraicNumber>> {
    match m.exact_form() {
        Some((b, e)) => Ok(Some(SurdExpr::new(RootOfUnity::one(), b.clone(), e.clone())?.to_algebraic()?)),
        None => Ok(None),
    }
}

fn hull(lower: &MeasureValue, upper: &MeasureValue) -> MeasureValue {
    MeasureValue::from_enclosure(Interval::new(lower.lo().clone(), upper.hi().clone()))
}

fn check_nonzero(alpha: &AlgebraicNumber) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("the measures are defined on nonzero numbers".into()));
    }
    Ok(())
}

fn surds_to_rep(target: &AlgebraicNumber, factors: &[SurdExpr]) -> Result<Representation> {
    let factors = factors.iter().map(|s| s.to_algebraic()).collect::<Result<Vec<_>>>()?;
    Representation::new(target.clone(), factors)
}

/// Splits off the root of unity: `-1` is folded into the first factor, other
/// roots of unity become a separate leading factor.
fn attach_torsion(unity: RootOfUnity, mut factors: Vec<SurdExpr>) -> Vec<SurdExpr> {
    if unity.is_one() {
        return factors;
    }
    if unity == RootOfUnity::minus_one() && !factors.is_empty() {
        factors[0] = factors[0].mul(&SurdExpr::integer(-1));
        return factors;
    }
    let mut out = vec![SurdExpr::root_of_unity(unity)];
    out.extend(factors);
    out
}

fn part(primes: Vec<BigInt>, exps: Vec<BigRational>) -> SurdExpr {
    ExponentVector { primes, exps, torsion: RootOfUnity::one() }.to_surd()
}

/// `M1` of a nonzero algebraic number.
pub fn m_one(alpha: &AlgebraicNumber, config: &Config) -> Result<SolveResult> {
    check_nonzero(alpha)?;
    let ctx = context(alpha, config);
    if let Some(q) = alpha.as_rational() {
        let v = MeasureValue::integer(rational_height(&q));
        return Ok(finish(SolveResult {
            kind: Kind::Metric,
            target: alpha.clone(),
            exact: Some(AlgebraicNumber::from_rational(BigRational::from_integer(rational_height(&q)))),
            value: v.clone(),
            lower: v.clone(),
            upper: v,
            candidates: Vec::new(),
            witness: Representation::trivial(alpha.clone()),
            certificate: certificate(&ctx, config, "degree-one"),
        }));
    }
    if let Some(s) = SurdExpr::from_algebraic(alpha)? {
        return m_one_surd(alpha, &s, &ctx, config);
    }
    let lower = weil_height(alpha, &config.precision);
    Ok(finish(SolveResult {
        kind: Kind::Metric,
        target: alpha.clone(),
        exact: None,
        value: hull(&lower, &ctx.upper),
        lower,
        upper: ctx.upper.clone(),
        candidates: Vec::new(),
        witness: Representation::trivial(alpha.clone()),
        certificate: certificate(&ctx, config, "bounds"),
    }))
}

fn m_one_surd(alpha: &AlgebraicNumber, s: &SurdExpr, ctx: &Context, config: &Config) -> Result<SolveResult> {
    let lower = height_of_surd(s);
    let ev = s.exponents();
    let mut plans: Vec<Vec<SurdExpr>> = vec![vec![s.clone()]];
    if !s.unity.is_one() {
        plans.push(attach_torsion(s.unity, vec![s.radical()]));
    }
    let (mut pos, mut neg) = ((Vec::new(), Vec::new()), (Vec::new(), Vec::new()));
    for (p, e) in ev.primes.iter().zip(&ev.exps) {
        let side = if e.is_positive() { &mut pos } else { &mut neg };
        side.0.push(p.clone());
        side.1.push(e.clone());
    }
    let split: Vec<SurdExpr> = [pos, neg].into_iter().filter(|p| !p.0.is_empty()).map(|(ps, es)| part(ps, es)).collect();
    plans.push(attach_torsion(s.unity, split));
    let per_prime: Vec<SurdExpr> =
        ev.primes.iter().zip(&ev.exps).map(|(p, e)| part(vec![p.clone()], vec![e.clone()])).collect();
    plans.push(attach_torsion(s.unity, per_prime));

    let mut best: Option<(MeasureValue, Vec<SurdExpr>)> = None;
    for plan in plans {
        if plan.is_empty() {
            continue;
        }
        let mut m = MeasureValue::one();
        for f in &plan {
            m = m.mul(&measure_of_surd(f)?);
        }
        let better = match &best {
            None => true,
            Some((bm, bp)) => match m.compare(bm) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => plan.len() < bp.len(),
                _ => false,
            },
        };
        if better {
            best = Some((m, plan));
        }
    }
    let (upper, plan) = best.expect("the trivial plan exists");
    let witness = surds_to_rep(alpha, &plan)?;
    let exact = if upper.compare(&lower) == Some(Ordering::Equal) { measure_to_algebraic(&upper)? } else { None };
    let value = if exact.is_some() { upper.clone() } else { hull(&lower, &upper) };
    let method = if exact.is_some() { "radical-height" } else { "bounds" };
    Ok(finish(SolveResult {
        kind: Kind::Metric,
        target: alpha.clone(),
        exact,
        value,
        lower,
        upper,
        candidates: Vec::new(),
        witness,
        certificate: certificate(ctx, config, method),
    }))
}

/// Factorization exponents of `n` as a vector over `primes`.
struct Splitter {
    primes: Vec<BigInt>,
    budget: usize,
}

impl Splitter {
    fn value(&self, exps: &[u32]) -> BigInt {
        self.primes.iter().zip(exps).fold(BigInt::one(), |acc, (p, &e)| acc * p.pow(e))
    }

    /// Divisors of `prod p^exps` in `(1, cap]`, descending, as exponent vectors.
    fn divisors(&self, exps: &[u32], cap: &BigInt) -> Vec<(BigInt, Vec<u32>)> {
        let mut out: Vec<(BigInt, Vec<u32>)> = vec![(BigInt::one(), Vec::new())];
        for (p, &e) in self.primes.iter().zip(exps) {
            let mut next = Vec::new();
            for (v, ex) in &out {
                let mut pv = v.clone();
                for k in 0..=e {
                    if &pv > cap {
                        break;
                    }
                    let mut ex2 = ex.clone();
                    ex2.push(k);
                    next.push((pv.clone(), ex2));
                    pv *= p;
                }
            }
            out = next;
        }
        out.retain(|(v, _)| !v.is_one());
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    fn dfs(&mut self, rem: &mut Vec<u32>, left: usize, prev: &BigInt, parts: &mut Vec<BigInt>) -> Option<bool> {
        if rem.iter().all(|&e| e == 0) {
            return Some(true);
        }
        if left == 0 {
            return Some(false);
        }
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        if self.value(rem) > prev.pow(left as u32) {
            return Some(false);
        }
        for (d, ex) in self.divisors(rem, prev) {
            for (r, e) in rem.iter_mut().zip(&ex) {
                *r -= e;
            }
            parts.push(d.clone());
            let found = self.dfs(rem, left - 1, &d, parts);
            if found != Some(false) {
                return found;
            }
            parts.pop();
            for (r, e) in rem.iter_mut().zip(&ex) {
                *r += e;
            }
        }
        Some(false)
    }
}

/// Splits `n >= 1` into the fewest factors `<= m` (each prime of `n` being
/// at most `m`), listed in decreasing order; among shortest splittings the
/// lexicographically largest.
fn fewest_parts(n: &BigInt, m: &BigInt) -> Vec<BigInt> {
    if n.is_one() {
        return Vec::new();
    }
    let fac = factorize(n);
    let total: u32 = fac.iter().map(|(_, e)| e).sum();
    let mut sp = Splitter { primes: fac.iter().map(|(p, _)| p.clone()).collect(), budget: SPLIT_BUDGET };
    let exps: Vec<u32> = fac.iter().map(|(_, e)| *e).collect();
    for depth in 1..=total as usize {
        let mut rem = exps.clone();
        let mut parts = Vec::new();
        match sp.dfs(&mut rem, depth, m, &mut parts) {
            Some(true) => return parts,
            Some(false) => {}
            None => break,
        }
    }
    let mut rem = exps;
    let mut parts = Vec::new();
    while rem.iter().any(|&e| e > 0) {
        let (d, ex) = sp.divisors(&rem, m).swap_remove(0);
        for (r, e) in rem.iter_mut().zip(&ex) {
            *r -= e;
        }
        parts.push(d);
    }
    parts
}

/// Witness for a rational target: numerator and denominator split into the
/// fewest parts `<= m`, paired, ordered by measure.
fn rational_witness(q: &BigRational, m: &BigInt) -> Vec<BigRational> {
    let nums = fewest_parts(&q.numer().abs(), m);
    let dens = fewest_parts(q.denom(), m);
    let n = nums.len().max(dens.len());
    if n == 0 {
        return vec![q.clone()];
    }
    let at = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::one);
    let mut pairs: Vec<(BigInt, BigInt)> = (0..n).map(|i| (at(&nums, i), at(&dens, i))).collect();
    pairs.sort_by(|a, b| {
        let (ma, mb) = (a.0.clone().max(a.1.clone()), b.0.clone().max(b.1.clone()));
        ma.cmp(&mb).then_with(|| a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1))
    });
    let mut out: Vec<BigRational> = pairs.into_iter().map(|(u, v)| BigRational::new(u, v)).collect();
    if q.is_negative() {
        out[0] = -out[0].clone();
    }
    out
}

/// Largest prime with nonzero exponent; `1` for torsion.
fn support_max(ev: &ExponentVector) -> BigInt {
    ev.primes.last().cloned().unwrap_or_else(BigInt::one)
}

/// `Minf` of a nonzero algebraic number.
pub fn m_inf(alpha: &AlgebraicNumber, config: &Config) -> Result<SolveResult> {
    check_nonzero(alpha)?;
    let ctx = context(alpha, config);
    if let Some(s) = SurdExpr::from_algebraic(alpha)? {
        let ev = s.exponents();
        let m = support_max(&ev);
        let factors: Vec<SurdExpr> = if s.exponent.is_integer() {
            let rad = s.radical().as_rational().expect("integral exponent");
            let parts = rational_witness(&rad, &m).into_iter().map(|q| SurdExpr::rational(q).expect("nonzero"));
            attach_torsion(s.unity, parts.collect())
        } else {
            let mut copies = Vec::new();
            for (p, e) in ev.primes.iter().zip(&ev.exps) {
                let unit = BigRational::new(e.numer().signum(), e.denom().clone());
                let n = e.numer().abs().to_usize().ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
                copies.extend(std::iter::repeat_n(part(vec![p.clone()], vec![unit]), n));
            }
            attach_torsion(s.unity, copies)
        };
        let factors = if factors.is_empty() { vec![s.clone()] } else { factors };
        let witness = surds_to_rep(alpha, &factors)?;
        let v = MeasureValue::integer(m.clone());
        let method = if alpha.degree() == 1 { "prime-support" } else { "radical-prime-support" };
        return Ok(finish(SolveResult {
            kind: Kind::Ultrametric,
            target: alpha.clone(),
            exact: Some(AlgebraicNumber::from_rational(BigRational::from_integer(m))),
            value: v.clone(),
            lower: v.clone(),
            upper: v,
            candidates: Vec::new(),
            witness,
            certificate: certificate(&ctx, config, method),
        }));
    }
    let f = alpha.minpoly();
    let norm = BigRational::new(f.constant_term(), f.leading());
    let lower_int = largest_prime_factor(norm.numer()).max(largest_prime_factor(norm.denom()));
    let lower = MeasureValue::integer(lower_int.clone());
    let upper = ctx.upper.clone();
    let mut candidates: Vec<QuadMeasure> = Vec::new();
    let ceiling = BigRational::from_integer(CANDIDATE_CEILING.into());
    if let Some(k) = ctx.closure.as_ref().filter(|k| k.degree() <= 2) {
        if upper.hi() <= &ceiling {
            let lo = QuadMeasure::Int(lower_int.to_i64().unwrap_or(i64::MAX));
            candidates = measure_candidates(k, upper.hi())?
                .into_iter()
                .filter(|c| c.compare(&lo) != Ordering::Less)
                .filter(|c| match upper.as_integer().and_then(|n| n.to_i64()) {
                    Some(n) => c.compare(&QuadMeasure::Int(n)) != Ordering::Greater,
                    None => true,
                })
                .collect();
        }
    }
    let (exact, value, method) = if candidates.len() == 1 {
        let c = candidates[0];
        let v = if upper.is_exact() { upper.clone() } else { c.to_measure() };
        (Some(c.to_algebraic()), v, "northcott-candidates")
    } else if lower.compare(&upper) == Some(Ordering::Equal) {
        (Some(AlgebraicNumber::from_rational(BigRational::from_integer(lower_int))), lower.clone(), "norm-bound")
    } else {
        (None, hull(&lower, &upper), "bounds")
    };
    Ok(finish(SolveResult {
        kind: Kind::Ultrametric,
        target: alpha.clone(),
        exact,
        value,
        lower,
        upper,
        candidates: candidates.iter().map(|c| c.to_algebraic()).collect(),
        witness: Representation::trivial(alpha.clone()),
        certificate: certificate(&ctx, config, method),
    }))
}
