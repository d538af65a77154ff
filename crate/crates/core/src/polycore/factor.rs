//! Factorization over Q: squarefree decomposition, then factorization
//! modulo a prime, multifactor Hensel lifting and subset recombination.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::polycore::modp::{self, Fp};
use crate::polycore::IntPoly;

/// `p = constant * prod factor^multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub constant: BigRational,
    pub factors: Vec<(IntPoly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self) -> (BigRational, IntPoly) {
        let prod = self
            .factors
            .iter()
            .fold(IntPoly::one(), |acc, (f, m)| acc.mul(&f.pow(*m as u32)));
        (self.constant.clone(), prod)
    }
}

/// Squarefree decomposition (Yun). Returns primitive coprime factors `g_i` with
/// `pp(p) = prod g_i^i` up to sign; factors of degree 0 are dropped.
pub fn squarefree_decomposition(p: &IntPoly) -> Vec<(IntPoly, usize)> {
    let f = p.normalize();
    if f.degree() == 0 {
        return Vec::new();
    }
    let fr = f.to_ratpoly();
    let d = fr.derivative();
    let a0 = fr.gcd(&d);
    let mut b = fr.div_rem(&a0).0;
    let c = d.div_rem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = b.gcd(&dd);
        let nb = b.div_rem(&a).0;
        let nc = dd.div_rem(&a).0;
        if a.degree() > 0 {
            out.push((a.to_intpoly(), i));
        }
        dd = nc.sub(&nb.derivative());
        b = nb;
        i += 1;
    }
    out
}

/// Primitive squarefree part with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> IntPoly {
    squarefree_decomposition(p)
        .into_iter()
        .fold(IntPoly::one(), |acc, (g, _)| acc.mul(&g))
        .normalize()
}

pub fn is_squarefree(p: &IntPoly) -> bool {
    if p.degree() == 0 || squarefree_modular(p) {
        return true;
    }
    let f = p.to_ratpoly();
    f.gcd(&f.derivative()).degree() == 0
}

/// True if `p` is squarefree modulo one of a few primes not dividing its
/// leading coefficient, which proves it squarefree over Q. False is inconclusive.
pub fn squarefree_modular(p: &IntPoly) -> bool {
    if p.degree() == 0 {
        return true;
    }
    let lead = p.leading();
    small_primes().skip(5).take(8).any(|q| {
        if (&lead % BigInt::from(q)).is_zero() {
            return false;
        }
        let f = reduce_mod(p, q);
        modp::deg(&modp::gcd(&f, &modp::derivative(&f, q), q)) == 0
    })
}

/// Factors `p` into irreducibles over Q.
///
/// Factors are primitive with positive leading coefficient and sorted by
/// degree, then coefficients.
pub fn factor_rational(p: &IntPoly) -> Factorization {
    assert!(!p.is_zero(), "factor_rational of the zero polynomial");
    let normal = p.normalize();
    let constant = BigRational::new(p.leading(), normal.leading());
    let mut factors: Vec<(IntPoly, usize)> = Vec::new();
    let v = normal.x_valuation();
    if v > 0 {
        factors.push((IntPoly::x(), v));
    }
    let rest = normal.shift_down(v);
    for (g, m) in squarefree_decomposition(&rest) {
        for h in factor_squarefree(&g) {
            factors.push((h, m));
        }
    }
    factors.sort_by(|a, b| a.0.cmp_canonical(&b.0).then(a.1.cmp(&b.1)));
    Factorization { constant, factors }
}

/// Distinct irreducible factors, sorted.
pub fn irreducible_factors(p: &IntPoly) -> Vec<IntPoly> {
    factor_rational(p).factors.into_iter().map(|(f, _)| f).collect()
}

pub fn is_irreducible(p: &IntPoly) -> bool {
    let f = factor_rational(p);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod(f: &IntPoly, p: u64) -> Fp {
    let pb = BigInt::from(p);
    modp::trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn subset_sums(degrees: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0usize]);
    for &d in degrees {
        let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
        sums.extend(next);
    }
    sums
}

/// Factors a primitive squarefree polynomial with nonzero constant term.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.normalize();
    let n = f.degree();
    if n <= 1 {
        return vec![f];
    }
    let lc = f.leading();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f4c7);
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 8 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod(&f, p);
        if modp::deg(&modp::gcd(&fp, &modp::derivative(&fp, p), p)) > 0 {
            continue;
        }
        tried += 1;
        let facs = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        let degs: Vec<usize> = facs.iter().map(modp::deg).collect();
        let sums = subset_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if allowed.as_ref().unwrap().len() <= 2 {
            return vec![f];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("no suitable prime");
    let allowed = allowed.unwrap();

    // Coefficient bound for factors of lc * f (von zur Gathen & Gerhard 15.19).
    let a = f.max_abs_coeff();
    let bound = (BigInt::from(n + 1).sqrt() + 1u32) * (BigInt::one() << n) * &a * lc.abs();
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&f, &facs, p, k);
    recombine(&f, lifted, &modulus, &allowed)
}

fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_poly(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn from_fp(f: &Fp) -> IntPoly {
    IntPoly::new(f.iter().map(|&c| BigInt::from(c)).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ lc(f) prod facs (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &IntPoly, facs: &[Fp], p: u64, k: u32) -> Vec<IntPoly> {
    let modulus = BigInt::from(p).pow(k);
    lift_rec(&mod_poly(f, &modulus), facs, p, k, &modulus)
}

fn lift_rec(f: &IntPoly, facs: &[Fp], p: u64, k: u32, modulus: &BigInt) -> Vec<IntPoly> {
    if facs.len() == 1 {
        let inv = mod_inverse(&f.leading(), modulus);
        return vec![mod_poly(&f.scale(&inv), modulus)];
    }
    let mid = facs.len() / 2;
    let g0 = facs[..mid]
        .iter()
        .fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let lcp = reduce_mod(&IntPoly::constant(f.leading()), p);
    let h0 = facs[mid..]
        .iter()
        .fold(lcp, |acc, g| modp::mul(&acc, g, p));
    let (g, h) = lift_pair(f, &g0, &h0, p, k, modulus);
    let mut out = lift_rec(&g, &facs[..mid], p, k, modulus);
    out.extend(lift_rec(&h, &facs[mid..], p, k, modulus));
    out
}

/// Linear Hensel lifting of `f ≡ g0 h0 (mod p)`, `g0` monic, to modulus `p^k`.
fn lift_pair(f: &IntPoly, g0: &Fp, h0: &Fp, p: u64, k: u32, modulus: &BigInt) -> (IntPoly, IntPoly) {
    let (one, _s, t) = modp::ext_gcd(g0, h0, p);
    debug_assert_eq!(one, vec![1u64]);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let pb = BigInt::from(p);
    let mut q = pb.clone();
    for _ in 1..k {
        let diff = f.sub(&g.mul(&h));
        let e = IntPoly::new(diff.coeffs().iter().map(|c| c / &q).collect());
        let ep = reduce_mod(&e, p);
        // sigma h0 + tau g0 = e (mod p), deg sigma < deg g0
        let sigma = modp::rem(&modp::mul(&t, &ep, p), g0, p);
        let rest = modp::sub(&ep, &modp::mul(&sigma, h0, p), p);
        let (tau, r) = modp::div_rem(&rest, g0, p);
        debug_assert!(r.is_empty());
        g = g.add(&from_fp(&sigma).scale(&q));
        h = h.add(&from_fp(&tau).scale(&q));
        q *= &pb;
    }
    (mod_poly(&g, modulus), mod_poly(&h, modulus))
}

/// `s`-element subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

fn combinations(n: usize, s: usize) -> Combinations {
    Combinations { n, idx: (0..s).collect(), done: s > n }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let s = self.idx.len();
        match (0..s).rev().find(|&i| self.idx[i] != i + self.n - s) {
            None => self.done = true,
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..s {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
        }
        Some(out)
    }
}

fn recombine(
    f: &IntPoly,
    lifted: Vec<IntPoly>,
    modulus: &BigInt,
    allowed: &BTreeSet<usize>,
) -> Vec<IntPoly> {
    let mut remaining = lifted;
    let mut fstar = f.clone();
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        let b = fstar.leading();
        let target0 = &b * fstar.constant_term();
        let half: BigInt = modulus / 2;
        let (one, minus_one) = (BigInt::one(), -BigInt::one());
        let (f_one, f_minus_one) = (fstar.eval_int(&one), fstar.eval_int(&minus_one));
        for subset in combinations(remaining.len(), s) {
            let d: usize = subset.iter().map(|&i| remaining[i].degree()).sum();
            if !allowed.contains(&d) {
                continue;
            }
            // constant term of b * prod must divide b * f*(0)
            let mut c = subset.iter().fold(b.clone(), |acc, &i| (acc * remaining[i].constant_term()).mod_floor(modulus));
            if c > half {
                c -= modulus;
            }
            if c.is_zero() || !(&target0 % &c).is_zero() {
                continue;
            }
            let prod = subset
                .iter()
                .fold(IntPoly::constant(b.clone()), |acc, &i| {
                    mod_poly(&acc.mul(&remaining[i]), modulus)
                });
            let g = symmetric_mod(&prod, modulus).normalize();
            let c0 = g.constant_term();
            if !c0.is_zero() && !(fstar.constant_term() % &c0).is_zero() {
                continue;
            }
            let divides_at = |x: &BigInt, fx: &BigInt| {
                let gx = g.eval_int(x);
                if fx.is_zero() {
                    true
                } else {
                    !gx.is_zero() && (fx % &gx).is_zero()
                }
            };
            if !divides_at(&one, &f_one) || !divides_at(&minus_one, &f_minus_one) {
                continue;
            }
            if let Some(q) = fstar.div_exact(&g) {
                hit = Some((subset, g, q));
                break;
            }
        }
        match hit {
            Some((subset, g, q)) => {
                found.push(g);
                fstar = q.normalize();
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, r)| r)
                    .collect();
            }
            None => s += 1,
        }
    }
    if fstar.degree() > 0 || fstar.leading().sign() == Sign::Minus {
        found.push(fstar.normalize());
    }
    found.retain(|g| g.degree() > 0);
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn check_round_trip(s: &str) -> Factorization {
        let f = p(s);
        let fac = factor_rational(&f);
        let (c, prod) = fac.expand();
        assert_eq!(prod.to_ratpoly().scale(&c), f.to_ratpoly(), "{s}");
        for (g, _) in &fac.factors {
            assert!(g.is_normalized());
        }
        fac
    }

    #[test]
    fn spec_examples() {
        let fac = check_round_trip("x^4-4");
        assert_eq!(fac.factors, vec![(p("x^2-2"), 1), (p("x^2+2"), 1)]);
        let fac = check_round_trip("x^2-2x+1");
        assert_eq!(fac.factors, vec![(p("x-1"), 2)]);
        let lehmer = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";
        let fac = check_round_trip(lehmer);
        assert_eq!(fac.factors, vec![(p(lehmer), 1)]);
    }

    #[test]
    fn harder_cases() {
        // Swinnerton-Dyer style: irreducible but splits mod every prime.
        let fac = check_round_trip("x^4-10x^2+1");
        assert_eq!(fac.factors.len(), 1);
        let fac = check_round_trip("x^12-1");
        assert_eq!(fac.factors.len(), 6);
        let fac = check_round_trip("-12x^5+18x^3-6x");
        assert_eq!(fac.constant, BigRational::from_integer((-6).into()));
        assert_eq!(fac.factors[0], (p("x-1"), 1));
        assert_eq!(fac.factors[1], (p("x"), 1));
        assert_eq!(fac.factors[3], (p("2x^2-1"), 1));
        // frozen from an independent computer algebra system
        let fac = check_round_trip("6x^4+5x^3-17x^2-6x+12");
        assert_eq!(fac.factors, vec![(p("x-1"), 1), (p("6x^3+11x^2-6x-12"), 1)]);
        let fac = check_round_trip("x^16-8x^14+20x^12-16x^10+2x^8+1");
        assert_eq!(
            fac.factors,
            vec![
                (p("x-1"), 2),
                (p("x+1"), 2),
                (p("x^6-3x^4-3x^2-1"), 1),
                (p("x^6-3x^4+x^2-1"), 1)
            ]
        );
    }

    #[test]
    fn product_of_known_factors() {
        let a = p("x^3-x-1");
        let b = p("2x^2+3");
        let c = p("x^5-x^2+7x-3");
        let f = a.mul(&b).mul(&c).mul(&b);
        let fac = factor_rational(&f);
        let mut expect = vec![(b.clone(), 2), (a.clone(), 1), (c.clone(), 1)];
        expect.sort_by(|x, y| x.0.cmp_canonical(&y.0));
        assert_eq!(fac.factors, expect);
    }

    #[test]
    fn squarefree_decomposition_multiplicities() {
        let f = p("x-1").pow(3).mul(&p("x^2+1")).mul(&p("x+2").pow(2));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(p("x^2+1"), 1), (p("x+2"), 2), (p("x-1"), 3)]);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]
        #[test]
        fn round_trip_random(
            a in proptest::collection::vec(-6i64..=6, 1..=5),
            b in proptest::collection::vec(-6i64..=6, 1..=5),
        ) {
            let f = IntPoly::from_i64s(&a).mul(&IntPoly::from_i64s(&b));
            proptest::prop_assume!(!f.is_zero());
            let fac = factor_rational(&f);
            let (c, prod) = fac.expand();
            proptest::prop_assert_eq!(prod.to_ratpoly().scale(&c), f.to_ratpoly());
            for (g, _) in &fac.factors {
                proptest::prop_assert!(g.degree() <= 1 || is_irreducible_bruteforce(g));
            }
        }
    }

    /// Irreducibility oracle for small polynomials: no factor of degree
    /// d <= n/2 passes through integer interpolation at rational points...
    /// here simply: no rational root and, for degree 4, no quadratic factor
    /// found by Kronecker-style search over small integer quadratics.
    fn is_irreducible_bruteforce(g: &IntPoly) -> bool {
        let n = g.degree();
        let lc = g.leading();
        let c0 = g.constant_term();
        if c0.is_zero() {
            return n == 1;
        }
        // rational root test
        let divs = |v: &BigInt| -> Vec<i64> {
            let v = v.abs().to_i64().unwrap();
            (1..=v).filter(|d| v % d == 0).collect()
        };
        for a in divs(&c0) {
            for b in divs(&lc) {
                for s in [-1, 1] {
                    let r = BigRational::new((s * a).into(), b.into());
                    if g.eval_rational(&r).is_zero() {
                        return false;
                    }
                }
            }
        }
        if n >= 4 {
            for a in 1..=lc.abs().to_i64().unwrap() {
                for b in -12i64..=12 {
                    for c in -(c0.abs().to_i64().unwrap())..=c0.abs().to_i64().unwrap() {
                        let q = IntPoly::from_i64s(&[c, b, a]);
                        if c != 0 && g.div_exact(&q).is_some() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}
