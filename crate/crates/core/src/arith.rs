//! Small integer helpers: trial-division factorization and perfect powers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Prime factorization of `|n|` by trial division, primes ascending.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factorize(0)");
    let mut out = Vec::new();
    let mut push = |p: BigInt, n: &mut BigInt| {
        let mut e = 0;
        while (&*n % &p).is_zero() {
            *n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(BigInt::from(2), &mut n);
    let mut p = BigInt::from(3);
    while &p * &p <= n {
        push(p.clone(), &mut n);
        p += 2;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Exponents of a nonzero rational over its prime support (denominator primes negative).
pub fn rational_exponents(q: &BigRational) -> Vec<(BigInt, i64)> {
    let mut out: Vec<(BigInt, i64)> = Vec::new();
    if !q.numer().abs().is_one() {
        out.extend(factorize(q.numer()).into_iter().map(|(p, e)| (p, e as i64)));
    }
    if !q.denom().is_one() {
        out.extend(factorize(q.denom()).into_iter().map(|(p, e)| (p, -(e as i64))));
    }
    out.sort();
    out
}

/// Largest prime dividing `n`, or 1 for `n = ±1`.
pub fn largest_prime_factor(n: &BigInt) -> BigInt {
    if n.abs().is_one() {
        return BigInt::one();
    }
    factorize(n).pop().map(|(p, _)| p).unwrap()
}

/// Writes `|q| = d^k` with `k` maximal; returns `(d, k)`. `|q| = 1` gives `(1, 1)`.
pub fn perfect_power(q: &BigRational) -> (BigRational, u32) {
    let q = q.abs();
    if q.is_one() {
        return (q, 1);
    }
    let exps = rational_exponents(&q);
    let k = exps.iter().fold(0i64, |g, (_, e)| g.gcd(e)).unsigned_abs() as u32;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, e) in exps {
        let e = e / k as i64;
        if e > 0 {
            num *= p.pow(e as u32);
        } else {
            den *= p.pow((-e) as u32);
        }
    }
    (BigRational::new(num, den), k)
}

/// `q^e` for an integer exponent.
pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let r = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

/// `max(|a|, |b|)` for `q = a/b` in lowest terms.
pub fn rational_height(q: &BigRational) -> BigInt {
    q.numer().abs().max(q.denom().abs())
}

pub fn to_u64(n: &BigInt) -> Option<u64> {
    n.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn factorization() {
        let f = factorize(&BigInt::from(360));
        assert_eq!(f, vec![(2.into(), 3), (3.into(), 2), (5.into(), 1)]);
        assert_eq!(largest_prime_factor(&BigInt::from(-12)), BigInt::from(3));
        assert_eq!(largest_prime_factor(&BigInt::from(1)), BigInt::from(1));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(&r(8, 27)), (r(2, 3), 3));
        assert_eq!(perfect_power(&r(-4, 1)), (r(2, 1), 2));
        assert_eq!(perfect_power(&r(12, 1)), (r(12, 1), 1));
        assert_eq!(perfect_power(&r(1, 1)), (r(1, 1), 1));
        assert_eq!(rational_exponents(&r(-12, 5)), vec![(2.into(), 2), (3.into(), 1), (5.into(), -1)]);
    }
}
