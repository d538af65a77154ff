use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polycore::ratpoly::RatPoly;

/// Dense univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored constant term first. Trailing zeros are always
/// trimmed, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `b x - a`, the primitive linear polynomial vanishing at `a/b`.
    pub fn linear_for(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()]).normalize()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient. Zero maps to zero.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn is_normalized(&self) -> bool {
        self.is_zero() || (self.leading().is_positive() && self.content().is_one())
    }

    pub fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn negate_var(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(x^k)`.
    pub fn inflate(&self, k: usize) -> Self {
        assert!(k >= 1);
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Self::new(out)
    }

    /// Number of leading zero coefficients at the constant end (power of x dividing p).
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divide by `x^k`; panics if not exact.
    pub fn shift_down(&self, k: usize) -> Self {
        assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Horner on numerator with homogenised denominator powers.
        if self.is_zero() {
            return BigRational::zero();
        }
        let (p, q) = (x.numer(), x.denom());
        let n = self.degree();
        let mut acc = BigInt::zero();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc = sum c_k p^k q^(n-k)
        BigRational::new(acc, q.pow(n as u32))
    }

    /// Exact division over Z. Returns `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < d.degree() {
            return None;
        }
        let mut r = self.coeffs.clone();
        let dl = d.leading();
        let dd = d.degree();
        let mut q = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (quot, rem) = top.div_rem(&dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &quot * dc;
            }
            q[k] = quot;
        }
        if r.iter().all(Zero::is_zero) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder `prem(self, d)`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let mut r = self.clone();
        let dl = d.leading();
        let dd = d.degree();
        while !r.is_zero() && r.degree() >= dd {
            let shift = r.degree() - dd;
            let rl = r.leading();
            let lhs = r.scale(&dl);
            let rhs = Self::monomial(rl, shift).mul(d);
            r = lhs.sub(&rhs);
        }
        r
    }

    /// Greatest common divisor, normalized (primitive, positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let mut a = self.normalize();
        let mut b = other.normalize();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.normalize();
        }
        a.normalize()
    }

    pub fn to_ratpoly(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Deterministic ordering: degree first, then coefficients from the leading end.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// Parses the textual grammar, e.g. `x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1`.
    pub fn parse(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc: Vec<BigInt> = Vec::new();
        let mut i = 0;
        let bad = |msg: &str, at: usize| Error::Parse(format!("{msg} at offset {at} in {s:?}"));
        while i < chars.len() {
            let mut sign = BigInt::one();
            if chars[i] == '+' || chars[i] == '-' {
                if chars[i] == '-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad("expected '+' or '-'", i));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coef = if i > start {
                let digits: String = chars[start..i].iter().collect();
                BigInt::from_str(&digits).map_err(|_| bad("bad integer", start))?
            } else {
                BigInt::one()
            };
            let has_digits = i > start;
            if i < chars.len() && chars[i] == '*' {
                if !has_digits {
                    return Err(bad("dangling '*'", i));
                }
                i += 1;
                if i >= chars.len() || chars[i] != 'x' {
                    return Err(bad("expected 'x' after '*'", i));
                }
            }
            let mut exp = 0usize;
            if i < chars.len() && chars[i] == 'x' {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let es = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(bad("expected exponent", es));
                    }
                    let digits: String = chars[es..i].iter().collect();
                    exp = digits.parse().map_err(|_| bad("bad exponent", es))?;
                    if exp > 4096 {
                        return Err(bad("exponent too large", es));
                    }
                }
            } else if !has_digits {
                return Err(bad("expected term", start));
            }
            if acc.len() <= exp {
                acc.resize(exp + 1, BigInt::zero());
            }
            acc[exp] += sign * coef;
        }
        Ok(Self::new(acc))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    write!(f, "x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl FromStr for IntPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(p("6x^2-4").normalize(), p("3x^2-2"));
        assert_eq!(p("-x+1").normalize(), p("x-1"));
        assert_eq!(IntPoly::zero().normalize(), IntPoly::zero());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";
        assert_eq!(p(s).to_string(), s);
        assert_eq!(p(" 3 x ^ 2 - 2 "), IntPoly::from_i64s(&[-2, 0, 3]));
        assert_eq!(p("2*x^3+x-x"), IntPoly::from_i64s(&[0, 0, 0, 2]));
        assert_eq!(p("-5"), IntPoly::from_i64s(&[-5]));
        assert_eq!(p("x^2+x^2"), IntPoly::from_i64s(&[0, 0, 2]));
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x^", "3*", "x+*2", "nonsense(", "x^2 y", "2x^"] {
            assert!(IntPoly::parse(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn gcd_and_exact_division() {
        let a = p("x^2-1");
        let b = p("x^2+2x+1");
        assert_eq!(a.gcd(&b), p("x+1"));
        assert_eq!(a.div_exact(&p("x-1")), Some(p("x+1")));
        assert_eq!(a.div_exact(&p("2x-1")), None);
        assert_eq!(p("6x^2-6").gcd(&p("4x-4")), p("x-1"));
    }

    #[test]
    fn eval_rational_matches_direct() {
        let f = p("3x^3-2x+7");
        let x = BigRational::new(BigInt::from(-2), BigInt::from(3));
        let direct = BigRational::from_integer(3.into()) * &x * &x * &x
            - BigRational::from_integer(2.into()) * &x
            + BigRational::from_integer(7.into());
        assert_eq!(f.eval_rational(&x), direct);
    }
}
