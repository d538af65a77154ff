//! Acceptance suite: one PASS/FAIL line per criterion.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use mahler_core::algnum::{product_of_conjugates_over, NumberField, RootOfUnity, SurdExpr};
use mahler_core::config::pow2_neg;
use mahler_core::expr::parse_algebraic;
use mahler_core::heights::{mahler_places, mahler_roots, weil_height};
use mahler_core::metric::{
    m_inf, m_one, northcott_enumerate, q_of, reduce_representation, verify_location, Representation, SolveResult,
};
use mahler_core::polycore::is_irreducible;
use mahler_core::{AlgebraicNumber, Config, Error, IntPoly, MeasureValue};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn alg(s: &str) -> AlgebraicNumber {
    parse_algebraic(s).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(n: usize, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    if let Some(l) = limit {
        if el > l {
            o.ok = false;
            o.detail = format!("{}; runtime {:.1?} exceeds {:?}", o.detail, el, l);
        }
    }
    println!("{} {:>2} {}: {} ({:.2?})", if o.ok { "PASS" } else { "FAIL" }, n, name, o.detail, el);
    o.ok
}

// ---- 1 ----

fn lehmer() -> Outcome {
    let l = IntPoly::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1").unwrap();
    let x = AlgebraicNumber::roots_of(&l).into_iter().find(|a| a.is_real() && a.approx().0 > 1.0).unwrap();
    let m = mahler_roots(&x, &pow2_neg(60));
    let inside = m.lo() >= &r(117, 100) && m.hi() <= &r(118, 100);
    let narrow = m.enclosure().width() <= r(1, 1_000_000_000);
    let (lo, hi) = m.decimal_bounds(15);
    outcome(inside && narrow, format!("M in [{lo}, {hi}]"))
}

// ---- 2 ----

fn random_irreducibles(count: usize) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d61686c6572);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.gen_range(2..=8);
        let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-20..=20)).collect();
        if c[d] == 0 || c[0] == 0 {
            continue;
        }
        if c[d] < 0 {
            c.iter_mut().for_each(|x| *x = -*x);
        }
        let f = IntPoly::from_i64s(&c);
        if f.content().is_one() && is_irreducible(&f) {
            out.push(f);
        }
    }
    out
}

fn dual_pipeline() -> Outcome {
    let prec = pow2_neg(60);
    let tol = r(1, 1_000_000_000);
    let mut worst = 0.0f64;
    for f in random_irreducibles(200) {
        let x = AlgebraicNumber::from_index(&f, 0);
        let a = mahler_roots(&x, &prec);
        let b = mahler_places(&x, &prec);
        let Some(i) = a.enclosure().intersect(b.enclosure()) else {
            return outcome(false, format!("{f}: {a:?} and {b:?} are disjoint"));
        };
        let rel = i.width() / &i.lo;
        worst = worst.max(rel.to_f64().unwrap());
        if rel > tol {
            return outcome(false, format!("{f}: relative width {rel}"));
        }
    }
    outcome(true, format!("200 polynomials, worst relative width {worst:.2e}"))
}

// ---- 3 ----

fn surd_corpus() -> Vec<SurdExpr> {
    let bases = [r(2, 1), r(3, 1), r(5, 1), r(6, 1), r(3, 2), r(10, 1), r(2, 3), r(7, 1), r(12, 5), r(1, 5)];
    let exps = [r(1, 1), r(1, 2), r(1, 3), r(2, 3), r(-1, 2)];
    let unities = [(1, 0), (2, 1), (4, 1), (3, 1), (6, 5)];
    let mut out = Vec::new();
    for (i, b) in bases.iter().enumerate() {
        for (j, e) in exps.iter().enumerate() {
            let (m, k) = unities[(i + j) % unities.len()];
            out.push(SurdExpr::new(RootOfUnity::new(m, k), b.clone(), e.clone()).unwrap());
        }
    }
    out
}

fn height_identities() -> Outcome {
    let prec = pow2_neg(60);
    let h = |s: &SurdExpr| weil_height(&s.to_algebraic().unwrap(), &prec);
    let corpus = surd_corpus();
    let twists = [RootOfUnity::new(4, 1), RootOfUnity::new(3, 2), RootOfUnity::minus_one()];
    for (i, s) in corpus.iter().enumerate() {
        let hs = h(s);
        if !hs.is_exact() {
            return outcome(false, format!("H({s}) not exact"));
        }
        let z = SurdExpr::root_of_unity(twists[i % twists.len()]);
        if h(&z.mul(s)).compare(&hs) != Some(Ordering::Equal) {
            return outcome(false, format!("H(zeta * {s}) != H({s})"));
        }
        for n in -3..=3i64 {
            let lhs = h(&s.pow(n));
            let rhs = hs.pow(&BigRational::from_integer(n.abs().into()), 64);
            if lhs.compare(&rhs) != Some(Ordering::Equal) || !lhs.is_exact() {
                return outcome(false, format!("H({s}^{n}) = {lhs} but H({s})^{} = {rhs}", n.abs()));
            }
        }
    }
    outcome(true, format!("{} surds, twists and powers -3..3 exact", corpus.len()))
}

// ---- 4 ----

fn reduced_rationals(bound: i64) -> Vec<BigRational> {
    let mut out = Vec::new();
    for b in 1..=bound {
        for a in -bound..=bound {
            if a != 0 && a.gcd(&b) == 1 {
                out.push(r(a, b));
            }
        }
    }
    out
}

fn witness_product(res: &SolveResult, config: &Config) -> MeasureValue {
    res.witness.measure_product(config)
}

fn degree_one(results: &mut Vec<(AlgebraicNumber, SolveResult)>) -> Outcome {
    let cfg = Config::default();
    let qs = reduced_rationals(50);
    for q in &qs {
        let x = AlgebraicNumber::from_rational(q.clone());
        let res = m_one(&x, &cfg).unwrap();
        let h = q.numer().abs().max(q.denom().clone());
        let exact = res.exact.as_ref().and_then(|v| v.as_rational());
        if exact != Some(BigRational::from_integer(h.clone())) {
            return outcome(false, format!("M1({q}) = {:?}, expected {h}", res.value_string()));
        }
        if !res.witness.holds().unwrap() || witness_product(&res, &cfg).as_integer() != Some(h.clone()) {
            return outcome(false, format!("M1({q}): invalid witness"));
        }
        results.push((x, res));
    }
    outcome(true, format!("{} rationals with max(|a|,|b|) <= 50", qs.len()))
}

// ---- 5 ----

const PRIMES: [i64; 4] = [2, 3, 5, 7];
const SCALE: i128 = 60;

/// Exponent vectors `w / q` with reduced denominator `q <= 6`, tagged with the
/// least measure `max(prod p^(w+), prod p^(w-))` of a surd with that vector and
/// with `max |w_i|`. Measures never exceed 7 here, so `|w_i| <= 3` loses nothing.
fn oracle_generators() -> Vec<([i128; 4], i64, i64)> {
    let mut out = Vec::new();
    let range = -3..=3i64;
    for q in 1..=6i64 {
        for w0 in range.clone() {
            for w1 in range.clone() {
                for w2 in range.clone() {
                    for w3 in range.clone() {
                        let w = [w0, w1, w2, w3];
                        if w.iter().all(|&x| x == 0) || w.iter().fold(q, |g, &x| g.gcd(&x)) != 1 {
                            continue;
                        }
                        let (mut num, mut den) = (1i64, 1i64);
                        for (p, &e) in PRIMES.iter().zip(&w) {
                            if e > 0 {
                                num *= p.pow(e as u32);
                            } else {
                                den *= p.pow((-e) as u32);
                            }
                        }
                        let v = w.map(|x| x as i128 * SCALE / q as i128);
                        out.push((v, num.max(den), w.iter().map(|x| x.abs()).max().unwrap()));
                    }
                }
            }
        }
    }
    out
}

/// Hermite-style echelon basis of the integer span.
fn echelon(mut vs: Vec<[i128; 4]>) -> Vec<(usize, [i128; 4])> {
    let mut basis = Vec::new();
    for col in 0..4 {
        loop {
            vs.retain(|v| v.iter().any(|&x| x != 0));
            let Some(piv) = vs.iter().enumerate().filter(|(_, v)| v[col] != 0).min_by_key(|(_, v)| v[col].abs()).map(|(i, _)| i) else {
                break;
            };
            let p = vs[piv];
            let mut done = true;
            for (i, v) in vs.iter_mut().enumerate() {
                if i != piv && v[col] != 0 {
                    let k = v[col].div_euclid(p[col]);
                    for j in 0..4 {
                        v[j] -= k * p[j];
                    }
                    if v[col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                basis.push((col, vs.swap_remove(piv)));
                break;
            }
        }
    }
    basis
}

fn in_span(basis: &[(usize, [i128; 4])], t: [i128; 4]) -> bool {
    let mut t = t;
    for (col, row) in basis {
        if t[*col] % row[*col] != 0 {
            return false;
        }
        let k = t[*col] / row[*col];
        for j in 0..4 {
            t[j] -= k * row[j];
        }
    }
    t.iter().all(|&x| x == 0)
}

/// Least `m` such that the exponent vector `e` lies in the span of generators of measure `<= m`.
fn oracle_minf(e: [i64; 4], gens: &[([i128; 4], i64, i64)]) -> Option<i64> {
    let emax = e.iter().map(|x| x.abs()).max().unwrap().max(1);
    let t = e.map(|x| x as i128 * SCALE);
    (1..=7).find(|&m| {
        let vs: Vec<[i128; 4]> = gens
            .iter()
            .filter(|(_, meas, wmax)| *meas <= m && *wmax <= 3 * emax)
            .map(|(v, _, _)| *v)
            .collect();
        in_span(&echelon(vs), t)
    })
}

fn target_of(e: [i64; 4], sign: i64) -> BigRational {
    let mut q = BigRational::from_integer(sign.into());
    for (p, &k) in PRIMES.iter().zip(&e) {
        q *= BigRational::from_integer(BigInt::from(*p)).pow(k as i32);
    }
    q
}

fn ultrametric_oracle(results: &mut Vec<(AlgebraicNumber, SolveResult)>) -> Outcome {
    let cfg = Config::default();
    let gens = oracle_generators();
    let mut count = 0;
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                for d in -3..=3 {
                    let e = [a, b, c, d];
                    let expected = oracle_minf(e, &gens);
                    for sign in [1, -1] {
                        let q = target_of(e, sign);
                        let x = AlgebraicNumber::from_rational(q.clone());
                        let res = m_inf(&x, &cfg).unwrap();
                        let got = res.exact.as_ref().and_then(|v| v.as_rational()).and_then(|v| v.to_integer().to_i64());
                        if got.is_none() || got != expected {
                            return outcome(false, format!("Minf({q}) = {got:?}, oracle {expected:?}"));
                        }
                        if !res.witness.holds().unwrap() || res.witness.measure_max(&cfg).as_integer() != got.map(BigInt::from) {
                            return outcome(false, format!("Minf({q}): invalid witness"));
                        }
                        results.push((x, res));
                        count += 1;
                    }
                }
            }
        }
    }
    outcome(true, format!("{count} targets agree with the lattice oracle"))
}

// ---- 6 ----

fn factor_pool() -> Vec<AlgebraicNumber> {
    let mut pool = Vec::new();
    for (a, b) in [(1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (3, 1), (1, 3), (2, 2), (3, -2), (0, 2)] {
        let f = IntPoly::from_i64s(&[a * a + b * b, -2 * a, 1]);
        let x = if b == 0 || f.degree() == 0 {
            continue;
        } else {
            let roots = AlgebraicNumber::roots_of(&f.normalize());
            roots.into_iter().find(|z| (z.approx().1 - b as f64).abs() < 1e-6).unwrap()
        };
        pool.push(x);
    }
    for s in ["(2)^(1/2)", "3*(2)^(1/2)", "(3)^(1/2)", "-(6)^(1/2)", "(5)^(1/2)/2", "(2/3)^(1/2)", "zeta(4,1)*(2)^(1/2)", "2", "3", "1/2"] {
        pool.push(alg(s));
    }
    pool
}

fn random_representation(rng: &mut ChaCha8Rng, pool: &[AlgebraicNumber], targets: &[AlgebraicNumber]) -> Representation {
    loop {
        let target = targets[rng.gen_range(0..targets.len())].clone();
        let k = rng.gen_range(1..=3);
        let mut factors: Vec<AlgebraicNumber> = (0..k - 1).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let rest = AlgebraicNumber::product(&factors).unwrap();
        let Ok(last) = target.div(&rest) else { continue };
        if last.degree() > 4 {
            continue;
        }
        factors.push(last);
        if let Ok(rep) = Representation::new(target, factors) {
            return rep;
        }
    }
}

fn reduction_suite() -> Outcome {
    let cfg = Config::default();
    let prec = pow2_neg(80);
    let pool = factor_pool();
    let targets: Vec<AlgebraicNumber> = ["2", "6", "1/2", "(2)^(1/2)", "2*(2)^(1/2)", "(6)^(1/2)", "root(x^2-2x+2,1)"].iter().map(|s| alg(s)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut nontrivial = 0;
    for i in 0..100 {
        let rep = random_representation(&mut rng, &pool, &targets);
        let red = match reduce_representation(&rep, &cfg) {
            Ok(red) => red,
            Err(e) => return outcome(false, format!("case {i}: {e} for {rep:?}")),
        };
        // (i) zeta * target = prod beta, multiplying by resultants only
        let prod = AlgebraicNumber::product(&red.reduced.factors).unwrap();
        let lhs = red.reduced.zeta.to_algebraic().mul(&rep.target).unwrap();
        if lhs != prod {
            return outcome(false, format!("case {i}: product identity fails"));
        }
        for ((b, a), &ord) in red.reduced.factors.iter().zip(&rep.factors).zip(&red.orders) {
            if b != a {
                nontrivial += 1;
            }
            // (ii) beta^r lies in K_alpha
            let power = b.pow_int(ord as i64).unwrap();
            if red.field.embed(&power).unwrap().is_none() {
                return outcome(false, format!("case {i}: beta^{ord} not in K"));
            }
            // (iii) M(beta) <= M(alpha) by the place pipeline
            let (mb, ma) = (mahler_places(b, &prec), mahler_places(a, &prec));
            if mb.lo() > ma.hi() || mahler_roots(b, &prec).compare(&mahler_roots(a, &prec)) == Some(Ordering::Greater) {
                return outcome(false, format!("case {i}: M(beta) = {mb} > M(alpha) = {ma}"));
            }
        }
    }
    outcome(true, format!("100 representations, {nontrivial} factors moved"))
}

// ---- 7 ----

fn location(results: &[(AlgebraicNumber, SolveResult)]) -> Outcome {
    for (x, res) in results {
        let ok = res.exact.as_ref().and_then(|v| v.as_rational()).is_some_and(|v| v.is_integer());
        if !ok || !verify_location(res, x) || !res.certificate.location {
            return outcome(false, format!("{:?} for {x:?}", res.value_string()));
        }
    }
    let mut control = results[0].1.clone();
    control.exact = Some(AlgebraicNumber::from_rational(r(5, 2)));
    if verify_location(&control, &results[0].0) {
        return outcome(false, "negative control 5/2 accepted");
    }
    outcome(true, format!("{} exact rational results in K_alpha; 5/2 rejected", results.len()))
}

// ---- 8 ----

fn non_galois() -> Outcome {
    let f = IntPoly::parse("x^3-x-1").unwrap();
    let roots = AlgebraicNumber::roots_of(&f);
    let g1 = roots.iter().find(|z| z.is_real()).unwrap().clone();
    let g2 = roots.iter().find(|z| !z.is_real()).unwrap().clone();
    let k1 = NumberField::new(g1.clone());
    let k2 = NumberField::new(g2.clone());
    let h = k1.minpoly_over(&g2).unwrap();
    if h.len() != 3 {
        return outcome(false, "gamma_2 is not quadratic over Q(gamma_1)");
    }
    // g2 g3 = h(0) for the monic quadratic h
    let prod = k1.to_algebraic(&h[0]).unwrap();
    let expected = g1.inv().unwrap();
    let inside = k2.contains(&prod).unwrap();
    let refused = matches!(product_of_conjugates_over(&g2, &k1), Err(Error::NotGalois));
    outcome(
        prod == expected && !inside && refused,
        format!("gamma_2 gamma_3 = 1/gamma_1 not in Q(gamma_2): {}; non-Galois field refused: {refused}", !inside),
    )
}

// ---- 9 ----

fn northcott_counts() -> Outcome {
    let n = northcott_enumerate(&NumberField::rationals(), &r(3, 1)).unwrap().len();
    let q = q_of(&AlgebraicNumber::from_integer(6), Config::DEFAULT_CLOSURE_CAP).unwrap();
    outcome(n == 14 && q.as_integer() == Some(2.into()), format!("|H <= 3| = {n}, q = {q}"))
}

// ---- 10 ----

fn inequality_lattice() -> Outcome {
    let cfg = Config::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let sample = |rng: &mut ChaCha8Rng| {
        let e = [0; 4].map(|_: i64| rng.gen_range(-2..=2i64));
        target_of(e, if rng.gen_bool(0.5) { 1 } else { -1 })
    };
    let int = |res: &SolveResult| res.exact.as_ref().and_then(|v| v.as_rational()).map(|v| v.to_integer());
    for _ in 0..150 {
        let (a, b) = (sample(&mut rng), sample(&mut rng));
        let ab = &a * &b;
        let mut vals = Vec::new();
        for q in [&a, &b, &ab] {
            let x = AlgebraicNumber::from_rational(q.clone());
            let (mi, mo) = (int(&m_inf(&x, &cfg).unwrap()), int(&m_one(&x, &cfg).unwrap()));
            let (Some(mi), Some(mo)) = (mi, mo) else {
                return outcome(false, format!("non-exact result for {q}"));
            };
            let m = q.numer().abs().max(q.denom().clone());
            if !(mi <= mo && mo <= m) {
                return outcome(false, format!("Minf <= M1 <= M fails at {q}: {mi}, {mo}, {m}"));
            }
            vals.push((mi, mo));
        }
        if vals[2].0 > vals[0].0.clone().max(vals[1].0.clone()) {
            return outcome(false, format!("strong triangle fails for {a}, {b}"));
        }
        if vals[2].1 > &vals[0].1 * &vals[1].1 {
            return outcome(false, format!("submultiplicativity fails for {a}, {b}"));
        }
    }
    outcome(true, "150 pairs")
}

fn main() {
    let mut rational_results = Vec::new();
    let mut ok = true;
    ok &= run(1, "Lehmer value", Some(Duration::from_secs(5)), lehmer);
    ok &= run(2, "dual-pipeline agreement", Some(Duration::from_secs(60)), dual_pipeline);
    ok &= run(3, "height identities", None, height_identities);
    ok &= run(4, "degree-one metric measure", None, || degree_one(&mut rational_results));
    ok &= run(5, "ultrametric oracle equivalence", Some(Duration::from_secs(600)), || ultrametric_oracle(&mut rational_results));
    ok &= run(6, "reduction theorem suite", None, reduction_suite);
    ok &= run(7, "location certificates", None, || location(&rational_results));
    ok &= run(8, "non-Galois counterexample", None, non_galois);
    ok &= run(9, "Northcott counts", None, northcott_counts);
    ok &= run(10, "inequality lattice", None, inequality_lattice);
    if !ok {
        std::process::exit(1);
    }
}
