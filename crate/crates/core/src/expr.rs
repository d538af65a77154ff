//! Expression grammar for algebraic numbers.
//!
//! ```text
//! expr   := ['-'] power (('*' | '/') ['-'] power)*
//! power  := atom ['^' exp]
//! exp    := int | '-' int | '(' ['-'] int ['/' int] ')'
//! atom   := int | int '/' int | '(' expr ')' | 'zeta(' m ',' j ')' | 'root(' poly ',' k ')'
//! ```
//!
//! `root(f, k)` is the `k`-th root (0-based, ordered by real then imaginary
//! part) of the irreducible polynomial `f`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::{AlgebraicNumber, RootOfUnity, SurdExpr};
use crate::error::{Error, Result};
use crate::polycore::{is_irreducible, IntPoly};

/// A parsed value, kept as a surd for as long as possible.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Surd(SurdExpr),
    Algebraic(AlgebraicNumber),
}

impl Value {
    pub fn to_algebraic(&self) -> Result<AlgebraicNumber> {
        match self {
            Value::Surd(s) => s.to_algebraic(),
            Value::Algebraic(a) => Ok(a.clone()),
        }
    }

    pub fn as_surd(&self) -> Option<&SurdExpr> {
        match self {
            Value::Surd(s) => Some(s),
            Value::Algebraic(_) => None,
        }
    }

    fn mul(self, other: Value) -> Result<Value> {
        match (self, other) {
            (Value::Surd(a), Value::Surd(b)) => Ok(Value::Surd(a.mul(&b))),
            (a, b) => Ok(Value::Algebraic(a.to_algebraic()?.mul(&b.to_algebraic()?)?)),
        }
    }

    fn inv(self) -> Result<Value> {
        match self {
            Value::Surd(s) => Ok(Value::Surd(s.inv())),
            Value::Algebraic(a) => Ok(Value::Algebraic(a.inv()?)),
        }
    }

    fn pow(self, e: &BigRational) -> Result<Value> {
        if e.is_integer() {
            let n = e.to_integer().to_i64().ok_or_else(|| Error::Parse("exponent too large".into()))?;
            return match self {
                Value::Surd(s) => Ok(Value::Surd(s.pow(n))),
                Value::Algebraic(a) => Ok(Value::Algebraic(a.pow_int(n)?)),
            };
        }
        match self {
            Value::Surd(s) if s.unity.is_one() => Ok(Value::Surd(s.pow_rational(e)?)),
            Value::Surd(s) if s.is_rational() => {
                let q = s.as_rational().unwrap();
                Ok(Value::Surd(SurdExpr::new(RootOfUnity::one(), q, e.clone())?))
            }
            _ => Err(Error::Parse("fractional powers apply to rational or positive surd bases only".into())),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

fn perr<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            perr(format!("expected '{}' at position {}", c as char, self.pos))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(format!("expected an integer at position {start}"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(b'-');
        let n = self.int()?;
        Ok(if neg { -n } else { n })
    }

    fn small(&mut self) -> Result<i64> {
        self.signed_int()?.to_i64().ok_or_else(|| Error::Parse("integer too large".into()))
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let k = kw.as_bytes();
        if self.s[self.pos..].starts_with(k) && self.s.get(self.pos + k.len()) == Some(&b'(') {
            self.pos += k.len() + 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let neg = self.eat(b'-');
        let mut v = self.power()?;
        if neg {
            v = v.mul(Value::Surd(SurdExpr::integer(-1)))?;
        }
        loop {
            if self.eat(b'*') {
                let neg = self.eat(b'-');
                let mut w = self.power()?;
                if neg {
                    w = w.mul(Value::Surd(SurdExpr::integer(-1)))?;
                }
                v = v.mul(w)?;
            } else if self.eat(b'/') {
                let w = self.power()?;
                v = v.mul(w.inv()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let p = self.signed_int()?;
            let q = if self.eat(b'/') { self.int()? } else { BigInt::one() };
            self.expect(b')')?;
            if q.is_zero() {
                return perr("zero exponent denominator");
            }
            BigRational::new(p, q)
        } else {
            BigRational::from_integer(self.signed_int()?)
        };
        base.pow(&e)
    }

    fn atom(&mut self) -> Result<Value> {
        if self.keyword("zeta") {
            let m = self.small()?;
            self.expect(b',')?;
            let j = self.small()?;
            self.expect(b')')?;
            if m < 1 {
                return perr("zeta order must be positive");
            }
            return Ok(Value::Surd(SurdExpr::root_of_unity(RootOfUnity::new(m as u64, j))));
        }
        if self.keyword("root") {
            let start = self.pos;
            while self.peek().is_some_and(|c| c != b',') {
                self.pos += 1;
            }
            let poly = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
            let f = IntPoly::parse(poly)?.normalize();
            self.expect(b',')?;
            let k = self.small()?;
            self.expect(b')')?;
            if f.degree() == 0 || !is_irreducible(&f) {
                return perr(format!("root() needs an irreducible polynomial, got {poly}"));
            }
            if k < 0 || k as usize >= f.degree() {
                return perr(format!("root index {k} out of range"));
            }
            let a = AlgebraicNumber::from_index(&f, k as usize);
            return Ok(match SurdExpr::from_algebraic(&a) {
                Ok(Some(s)) => Value::Surd(s),
                _ => Value::Algebraic(a),
            });
        }
        if self.eat(b'(') {
            let v = self.expr()?;
            self.expect(b')')?;
            return Ok(v);
        }
        let n = self.int()?;
        let q = if self.peek() == Some(b'/') && self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let d = self.int()?;
            if d.is_zero() {
                return perr("zero denominator");
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(n)
        };
        if q.is_zero() {
            return perr("zero is not allowed");
        }
        Ok(Value::Surd(SurdExpr::rational(q)?))
    }
}

/// Parses an expression in the grammar above.
pub fn parse(input: &str) -> Result<Value> {
    let cleaned: Vec<u8> = input.bytes().filter(|c| !c.is_ascii_whitespace()).collect();
    if cleaned.is_empty() {
        return perr("empty expression");
    }
    let mut p = Parser { s: &cleaned, pos: 0 };
    let v = p.expr()?;
    if p.pos != cleaned.len() {
        return perr(format!("unexpected '{}' at position {}", cleaned[p.pos] as char, p.pos));
    }
    Ok(v)
}

/// Parses an expression and returns the algebraic number it denotes.
pub fn parse_algebraic(input: &str) -> Result<AlgebraicNumber> {
    parse(input)?.to_algebraic()
}

/// Canonical text for `x`: a surd when `x` lies in rad(Q), else `root(f,k)`.
pub fn format_algebraic(x: &AlgebraicNumber) -> String {
    match SurdExpr::from_algebraic(x) {
        Ok(Some(s)) => s.to_string(),
        _ => format!("root({},{})", x.minpoly(), x.index()),
    }
}

/// Text for a rational, as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_surds() {
        let v = parse("zeta(4,1)*(2)^(1/2)").unwrap();
        assert_eq!(v.to_algebraic().unwrap().minpoly(), &IntPoly::parse("x^2+2").unwrap());
        assert_eq!(parse("-12").unwrap().as_surd().unwrap().as_rational(), Some(r(-12, 1)));
        assert_eq!(parse("2*2*3").unwrap().as_surd().unwrap().as_rational(), Some(r(12, 1)));
        assert_eq!(parse("2/3 * 3/2").unwrap().as_surd().unwrap().as_rational(), Some(r(1, 1)));
        assert_eq!(parse("(8/27)^(1/3)").unwrap().as_surd().unwrap().as_rational(), Some(r(2, 3)));
        assert_eq!(parse("2^-2").unwrap().as_surd().unwrap().as_rational(), Some(r(1, 4)));
        let s = parse("(2)^(1/2)*(2)^(1/2)").unwrap();
        assert_eq!(s.as_surd().unwrap().as_rational(), Some(r(2, 1)));
    }

    #[test]
    fn parses_roots() {
        let v = parse("root(x^2-x-1, 1)").unwrap();
        assert!(matches!(v, Value::Algebraic(_)));
        let a = v.to_algebraic().unwrap();
        assert!((a.approx().0 - 1.618034).abs() < 1e-5);
        assert_eq!(parse_algebraic(&format_algebraic(&a)).unwrap(), a);
        let s = parse("root(x^2+2,1)").unwrap();
        assert_eq!(s.as_surd().unwrap().to_string(), "zeta(4,1)*(2)^(1/2)");
        let g = parse_algebraic("root(x^2-2x+2,1)*root(x^2-2x+2,0)").unwrap();
        assert_eq!(g.as_rational(), Some(r(2, 1)));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["nonsense(", "", "2*", "(2", "zeta(0,1)", "root(x^2-1,0)", "0", "1/0", "2^(1/0)", "3)"] {
            assert!(matches!(parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn formats() {
        assert_eq!(format_rational(&r(-2, 3)), "-2/3");
        assert_eq!(format_rational(&r(5, 1)), "5");
        let x = parse_algebraic("zeta(8,3)*(3/2)^(2/3)").unwrap();
        assert_eq!(parse_algebraic(&format_algebraic(&x)).unwrap(), x);
    }
}
