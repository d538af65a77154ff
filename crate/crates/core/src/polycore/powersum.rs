//! Power sums of roots and the composed products built from them.
//!
//! For a polynomial with roots `r_1..r_n`, `p_k = sum r_i^k`. The products
//! `{a_i b_j}` of the roots of two polynomials have power sums
//! `p_k(f) p_k(g)`, which gives annihilating polynomials for products and
//! sums of algebraic numbers without bivariate resultants.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polycore::{IntPoly, RatPoly};

/// Power sums `p_0..=p_count` of the roots of `f` (with multiplicity).
pub fn power_sums(f: &RatPoly, count: usize) -> Vec<BigRational> {
    let n = f.degree();
    let monic = f.monic();
    // c[i] is the coefficient of x^i in the monic polynomial.
    let c = monic.coeffs();
    let mut p = Vec::with_capacity(count + 1);
    p.push(BigRational::from_integer(BigInt::from(n)));
    for k in 1..=count {
        let mut s = BigRational::zero();
        for i in 1..=k.min(n) {
            let ci = &c[n - i];
            if i == k {
                s += ci * BigRational::from_integer(BigInt::from(k));
            } else {
                s += ci * &p[k - i];
            }
        }
        p.push(-s);
    }
    p
}

/// Monic polynomial of degree `n` whose roots have power sums `p[1..=n]`.
pub fn from_power_sums(p: &[BigRational], n: usize) -> RatPoly {
    // e_k = (1/k) sum_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let mut e = vec![BigRational::one()];
    for k in 1..=n {
        let mut s = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                s += term;
            } else {
                s -= term;
            }
        }
        e.push(s / BigRational::from_integer(BigInt::from(k)));
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (k, ek) in e.iter().enumerate() {
        coeffs[n - k] = if k % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    RatPoly::new(coeffs)
}

/// Polynomial whose roots are all products `a_i * b_j`.
pub fn composed_product(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let n = f.degree() * g.degree();
    let pf = power_sums(&f.to_ratpoly(), n);
    let pg = power_sums(&g.to_ratpoly(), n);
    let p: Vec<BigRational> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
    from_power_sums(&p, n).to_intpoly()
}

/// Polynomial whose roots are all sums `a_i + b_j`.
pub fn composed_sum(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let n = f.degree() * g.degree();
    let pf = power_sums(&f.to_ratpoly(), n);
    let pg = power_sums(&g.to_ratpoly(), n);
    let mut p = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for i in 0..=k {
            s += BigRational::from_integer(binom.clone()) * &pf[i] * &pg[k - i];
            binom = binom * BigInt::from(k - i) / BigInt::from(i + 1);
        }
        p.push(s);
    }
    from_power_sums(&p, n).to_intpoly()
}

/// Polynomial whose roots are the `k`-th powers of the roots of `f`.
pub fn power_roots(f: &IntPoly, k: usize) -> IntPoly {
    let n = f.degree();
    let pf = power_sums(&f.to_ratpoly(), n * k);
    let p: Vec<BigRational> = (0..=n).map(|i| pf[i * k].clone()).collect();
    from_power_sums(&p, n).to_intpoly()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn newton_round_trip() {
        let f = p("2x^3-3x+7");
        let ps = power_sums(&f.to_ratpoly(), 3);
        assert_eq!(from_power_sums(&ps, 3).to_intpoly(), f);
    }

    #[test]
    fn composed_examples() {
        // sqrt2 * sqrt3 roots: +-sqrt6 each twice
        assert_eq!(composed_product(&p("x^2-2"), &p("x^2-3")), p("x^4-12x^2+36"));
        // sqrt2 + sqrt3
        assert_eq!(composed_sum(&p("x^2-2"), &p("x^2-3")), p("x^4-10x^2+1"));
        // golden ratio squared
        assert_eq!(power_roots(&p("x^2-x-1"), 2), p("x^2-3x+1"));
        // non-monic: roots 2/3 and 1/2 -> product 1/3
        assert_eq!(composed_product(&p("3x-2"), &p("2x-1")), p("3x-1"));
    }
}
