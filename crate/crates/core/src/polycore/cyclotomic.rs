//! Cyclotomic polynomials and the Kronecker test.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::polycore::factor::squarefree_part;
use crate::polycore::IntPoly;

pub fn euler_phi(mut m: u64) -> u64 {
    let mut out = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

fn mobius(mut m: u64) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// The `m`-th cyclotomic polynomial `prod_{d | m} (x^d - 1)^mu(m/d)`.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1);
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let xd = IntPoly::monomial(BigInt::one(), d as usize).sub(&IntPoly::one());
        match mobius(m / d) {
            1 => num = num.mul(&xd),
            -1 => den = den.mul(&xd),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic division is exact")
}

/// Roots of the result are the squares of the roots of `f` (Graeffe step).
fn graeffe(f: &IntPoly) -> IntPoly {
    let h = f.mul(&f.negate_var());
    let coeffs: Vec<BigInt> = h.coeffs().iter().step_by(2).cloned().collect();
    IntPoly::new(coeffs).normalize()
}

fn within_binomial_bound(f: &IntPoly) -> bool {
    let n = f.degree();
    let mut binom = BigInt::one();
    for (k, c) in f.coeffs().iter().enumerate() {
        if c.abs() > binom {
            return false;
        }
        binom = binom * BigInt::from(n - k) / BigInt::from(k + 1);
    }
    true
}

/// True iff every root of `p` is zero or a root of unity, i.e. the
/// normalized polynomial has Mahler measure 1.
///
/// Squaring maps roots of unity to roots of unity, so the squarefree Graeffe
/// iterates of a cyclotomic product cycle through finitely many polynomials
/// with binomially bounded coefficients; a root off the unit circle makes
/// the coefficients grow past that bound instead.
pub fn is_cyclotomic_product(p: &IntPoly) -> bool {
    assert!(!p.is_zero());
    let f = p.normalize();
    let f = f.shift_down(f.x_valuation());
    if f.degree() == 0 {
        return true;
    }
    if !f.leading().is_one() || !f.constant_term().abs().is_one() {
        return false;
    }
    let mut g = squarefree_part(&f);
    let mut seen = HashSet::new();
    loop {
        if !within_binomial_bound(&g) {
            return false;
        }
        if !seen.insert(g.clone()) {
            return true;
        }
        g = squarefree_part(&graeffe(&g));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), p("x-1"));
        assert_eq!(cyclotomic_poly(4), p("x^2+1"));
        assert_eq!(cyclotomic_poly(12), p("x^4-x^2+1"));
        assert_eq!(cyclotomic_poly(15).degree(), 8);
        assert_eq!(euler_phi(36), 12);
    }

    #[test]
    fn spec_examples() {
        assert!(is_cyclotomic_product(&p("x^2+x+1")));
        assert!(!is_cyclotomic_product(&p("x^2-x-1")));
        assert!(is_cyclotomic_product(&p("x^3-x")));
        assert!(!is_cyclotomic_product(&p(
            "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"
        )));
        assert!(!is_cyclotomic_product(&p("2x^2+1")));
        // reciprocal, monic, unit constant, yet not cyclotomic
        assert!(!is_cyclotomic_product(&p("x^4-x^3-x^2-x+1")));
    }

    /// Oracle: divide out every cyclotomic polynomial of small degree.
    fn by_division(f: &IntPoly) -> bool {
        let f = f.normalize();
        let mut g = f.shift_down(f.x_valuation());
        for m in 1..=64u64 {
            if euler_phi(m) as usize > g.degree().max(1) {
                continue;
            }
            let c = cyclotomic_poly(m);
            while g.degree() >= c.degree() {
                match g.div_exact(&c) {
                    Some(q) => g = q,
                    None => break,
                }
            }
        }
        g.degree() == 0 && g.leading().abs().is_one()
    }

    #[test]
    fn exhaustive_small_degree_against_division() {
        let range = -2i64..=2;
        for a0 in range.clone() {
            for a1 in range.clone() {
                for a2 in range.clone() {
                    for a3 in range.clone() {
                        for a4 in [0i64, 1, 2] {
                            let f = IntPoly::from_i64s(&[a0, a1, a2, a3, a4]);
                            if f.is_zero() {
                                continue;
                            }
                            assert_eq!(is_cyclotomic_product(&f), by_division(&f), "{f}");
                        }
                    }
                }
            }
        }
    }
}
