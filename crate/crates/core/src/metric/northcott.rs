//! Elements of bounded height in `Q` and in quadratic fields.
//!
//! A quadratic `x` with primitive minimal polynomial `a x^2 + b x + c` has
//! `M(x) = max(a, c)` when its roots are complex and
//! `M(x) = max(a, |c|, (|b| + sqrt(D)) / 2)` when they are real. Since
//! `H(x)^2 = M(x)`, the bound `H <= B` confines `a, |c| <= B^2` and `|b| <= 2 B^2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::algnum::{galois_closure, AlgebraicNumber, FieldElem, NumberField};
use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::heights::MeasureValue;
use crate::polycore::{IntPoly, Interval};

/// Measure of a quadratic minimal polynomial: an integer or `(b + sqrt(d)) / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuadMeasure {
    Int(i64),
    Surd { b: i64, d: i64 },
}

impl QuadMeasure {
    fn enclosure(&self, bits: u32) -> Interval {
        match *self {
            QuadMeasure::Int(n) => Interval::from_int(n),
            QuadMeasure::Surd { b, d } => {
                let s = Interval::point(BigRational::from_integer(d.into())).nth_root(2, bits);
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                Interval::new(
                    (&s.lo + BigRational::from_integer(b.into())) * &half,
                    (&s.hi + BigRational::from_integer(b.into())) * &half,
                )
            }
        }
    }

    /// Exact comparison. Distinct values `b + sqrt(d)` with `d` not a square
    /// never coincide, so refinement terminates.
    pub fn compare(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let mut bits = 64;
        loop {
            let (x, y) = (self.enclosure(bits), other.enclosure(bits));
            if x.hi < y.lo {
                return Ordering::Less;
            }
            if y.hi < x.lo {
                return Ordering::Greater;
            }
            bits *= 2;
        }
    }

    pub fn to_algebraic(&self) -> AlgebraicNumber {
        match *self {
            QuadMeasure::Int(n) => AlgebraicNumber::from_integer(n),
            QuadMeasure::Surd { b, d } => {
                let f = IntPoly::from_i64s(&[(b * b - d) / 4, -b, 1]);
                AlgebraicNumber::from_index(&f, 1)
            }
        }
    }

    pub fn to_measure(&self) -> MeasureValue {
        match *self {
            QuadMeasure::Int(n) => MeasureValue::integer(n.into()),
            QuadMeasure::Surd { .. } => MeasureValue::from_enclosure(self.enclosure(128)),
        }
    }
}

/// A primitive irreducible quadratic `a x^2 + b x + c` with discriminant `k^2 d0`.
#[derive(Clone, Copy, Debug)]
struct QuadEntry {
    a: i64,
    b: i64,
    k: i64,
    measure: QuadMeasure,
}

impl QuadEntry {
    fn is_torsion(&self) -> bool {
        self.a == 1 && self.measure == QuadMeasure::Int(1)
    }
}

/// Squarefree part with sign.
fn squarefree_part(n: i64) -> i64 {
    let mut s: i64 = 1;
    for (p, e) in factorize(&BigInt::from(n.abs())) {
        if e % 2 == 1 {
            s *= p.to_i64().unwrap();
        }
    }
    s * n.signum()
}

fn le_rational(x: i128, t: &BigRational) -> bool {
    BigRational::from_integer(x.into()) <= *t
}

/// Quadratic minimal polynomials of field discriminant class `d0` with `M <= t`.
fn quadratic_entries(d0: i64, t: &BigRational) -> Vec<QuadEntry> {
    let tn = t.floor().to_integer().to_i64().unwrap_or(i64::MAX).min(1 << 20);
    let bmax = (t * BigRational::from_integer(2.into())).floor().to_integer().to_i64().unwrap_or(i64::MAX).min(1 << 21);
    let two_t = t * BigRational::from_integer(2.into());
    let mut out = Vec::new();
    for a in 1..=tn {
        for c in -tn..=tn {
            if c == 0 {
                continue;
            }
            for b in -bmax..=bmax {
                let disc = b * b - 4 * a * c;
                if disc == 0 || disc % d0 != 0 {
                    continue;
                }
                let q = disc / d0;
                if q <= 0 {
                    continue;
                }
                let k = q.sqrt();
                if k * k != q || a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                let measure = if disc < 0 {
                    QuadMeasure::Int(a.max(c))
                } else {
                    let n = a.max(c.abs());
                    let slack = 2 * n - b.abs();
                    if slack < 0 || disc > slack * slack {
                        let room = &two_t - BigRational::from_integer(b.abs().into());
                        if room.is_negative() || BigRational::from_integer(disc.into()) > &room * &room {
                            continue;
                        }
                        QuadMeasure::Surd { b: b.abs(), d: disc }
                    } else {
                        QuadMeasure::Int(n)
                    }
                };
                if let QuadMeasure::Int(n) = measure {
                    if !le_rational(n as i128, t) {
                        continue;
                    }
                }
                out.push(QuadEntry { a, b, k, measure });
            }
        }
    }
    out
}

/// A quadratic field as `Q(w)` with `w = 2 a t + b`, `w^2 = k^2 d0`, for
/// the generator `t` with minimal polynomial `a x^2 + b x + c`.
struct QuadField {
    d0: i64,
    k: i64,
    w: FieldElem,
}

fn quad_field(field: &NumberField) -> Result<QuadField> {
    let f = field.generator().minpoly();
    let too_big = || Error::UnsupportedDegree { what: "quadratic field discriminant", degree: 2, cap: 2 };
    let a = f.coeff(2).to_i64().ok_or_else(too_big)?;
    let b = f.coeff(1).to_i64().ok_or_else(too_big)?;
    let c = f.coeff(0).to_i64().ok_or_else(too_big)?;
    let disc = b.checked_mul(b).zip(a.checked_mul(c).and_then(|x| x.checked_mul(4))).ok_or_else(too_big)?;
    let disc = disc.0 - disc.1;
    let d0 = squarefree_part(disc);
    let k = (disc / d0).sqrt();
    let theta = field.theta();
    let w = field.add(
        &field.scale(&theta, &BigRational::from_integer((2 * a).into())),
        &field.from_int(b),
    );
    Ok(QuadField { d0, k, w })
}

fn check_supported(field: &NumberField) -> Result<()> {
    if field.degree() > 2 {
        return Err(Error::UnsupportedDegree { what: "northcott enumeration", degree: field.degree(), cap: 2 });
    }
    Ok(())
}

/// Nonzero rationals of height at most `b`, ordered by height, numerator size,
/// denominator, then sign.
fn rationals_up_to(b: &BigRational) -> Vec<BigRational> {
    let n = b.floor().to_integer().to_i64().unwrap_or(0);
    let mut out: Vec<(i64, i64, i64)> = Vec::new();
    for den in 1..=n {
        for num in 1..=n {
            if num.gcd(&den) == 1 {
                out.push((num, den, 1));
                out.push((num, den, -1));
            }
        }
    }
    out.sort_by_key(|&(p, q, s)| (p.max(q), p, q, -s));
    out.into_iter().map(|(p, q, s)| BigRational::new((s * p).into(), q.into())).collect()
}

/// The complete list `{x in K^*: H(x) <= b}` for `K = Q` or `K` quadratic.
pub fn northcott_enumerate(field: &NumberField, b: &BigRational) -> Result<Vec<FieldElem>> {
    check_supported(field)?;
    if b < &BigRational::one() {
        return Ok(Vec::new());
    }
    let mut out: Vec<FieldElem> = rationals_up_to(b).into_iter().map(|q| field.from_rational(q)).collect();
    if field.is_rationals() {
        return Ok(out);
    }
    let qf = quad_field(field)?;
    for e in quadratic_entries(qf.d0, &(b * b)) {
        let two_a = BigRational::from_integer((2 * e.a).into());
        let mid = field.from_rational(BigRational::from_integer((-e.b).into()) / &two_a);
        let step = BigRational::new(e.k.into(), qf.k.into()) / &two_a;
        let off = field.scale(&qf.w, &step);
        out.push(field.sub(&mid, &off));
        out.push(field.add(&mid, &off));
    }
    Ok(out)
}

/// `q(alpha)`: the least height of a non-torsion element of `K_alpha`.
pub fn q_of(alpha: &AlgebraicNumber, cap: usize) -> Result<MeasureValue> {
    if alpha.degree() > 2 {
        // K_alpha contains Q(alpha), so its degree already exceeds 2.
        return Err(Error::UnsupportedDegree { what: "q(alpha) closure", degree: alpha.degree(), cap: 2 });
    }
    let (field, _) = galois_closure(alpha, cap)?;
    q_of_field(&field)
}

/// Least height of a non-torsion element of `field`.
pub fn q_of_field(field: &NumberField) -> Result<MeasureValue> {
    check_supported(field)?;
    let two = BigRational::from_integer(2.into());
    if field.is_rationals() {
        return Ok(MeasureValue::integer(2.into()));
    }
    let qf = quad_field(field)?;
    // compare H^2: the rational 2 contributes 4
    let mut best = QuadMeasure::Int(4);
    for e in quadratic_entries(qf.d0, &(&two * &two)) {
        if !e.is_torsion() && e.measure.compare(&best) == Ordering::Less {
            best = e.measure;
        }
    }
    let half = BigRational::new(BigInt::one(), two.to_integer());
    Ok(match best {
        QuadMeasure::Int(n) => MeasureValue::exact(BigRational::from_integer(n.into()), half),
        QuadMeasure::Surd { .. } => MeasureValue::from_enclosure(best.enclosure(160).nth_root(2, 128)),
    })
}

/// Largest `N` with `q^(N-1) <= b`; undecided comparisons count as `<=`.
pub fn length_bound_from_q(q: &MeasureValue, b: &MeasureValue) -> Result<u64> {
    if q.lo() <= &BigRational::one() {
        return Err(Error::InvalidArgument("q must exceed 1".into()));
    }
    let mut n: u64 = 1;
    loop {
        let p = q.pow(&BigRational::from_integer(n.into()), 128);
        if p.compare(b) == Some(Ordering::Greater) {
            return Ok(n);
        }
        n += 1;
        if n > 1 << 20 {
            return Err(Error::InvalidArgument("length bound too large".into()));
        }
    }
}

/// `floor(1 + log B / log q(alpha))`.
pub fn length_bound(alpha: &AlgebraicNumber, b: &MeasureValue, cap: usize) -> Result<u64> {
    length_bound_from_q(&q_of(alpha, cap)?, b)
}

/// Distinct values `M(beta)` for non-torsion `beta` in `field` with `M(beta) <= upper`, ascending.
pub fn measure_candidates(field: &NumberField, upper: &BigRational) -> Result<Vec<QuadMeasure>> {
    check_supported(field)?;
    let n = upper.floor().to_integer().to_i64().unwrap_or(0);
    let mut out: Vec<QuadMeasure> = (2..=n).map(QuadMeasure::Int).collect();
    if !field.is_rationals() {
        let qf = quad_field(field)?;
        for e in quadratic_entries(qf.d0, upper) {
            if !e.is_torsion() && !out.contains(&e.measure) {
                out.push(e.measure);
            }
        }
    }
    out.sort_by(|x, y| x.compare(y));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::SurdExpr;
    use crate::heights::weil_height;
    use crate::config::pow2_neg;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn field(f: &str) -> NumberField {
        NumberField::new(AlgebraicNumber::from_index(&IntPoly::parse(f).unwrap(), 1))
    }

    #[test]
    fn rational_counts() {
        let q = NumberField::rationals();
        let xs = northcott_enumerate(&q, &r(3, 1)).unwrap();
        assert_eq!(xs.len(), 14);
        let one = northcott_enumerate(&q, &r(1, 1)).unwrap();
        assert_eq!(one.len(), 2);
        // |{x: H(x) <= n}| = 2 (2 sum_{k<=n} phi(k) - 1)
        let five = northcott_enumerate(&q, &r(5, 1)).unwrap();
        assert_eq!(five.len(), 2 * (2 * (1 + 1 + 2 + 2 + 4) - 1));
    }

    #[test]
    fn gaussian_torsion() {
        let k = field("x^2+1");
        let xs = northcott_enumerate(&k, &r(1, 1)).unwrap();
        assert_eq!(xs.len(), 4);
        for x in &xs {
            assert!(k.to_algebraic(x).unwrap().is_torsion());
        }
    }

    #[test]
    fn quadratic_heights_within_bound() {
        for f in ["x^2-2", "x^2+3", "x^2-x-1"] {
            let k = field(f);
            let b = r(3, 2);
            let xs = northcott_enumerate(&k, &b).unwrap();
            assert!(!xs.is_empty());
            for x in &xs {
                let a = k.to_algebraic(x).unwrap();
                assert!(weil_height(&a, &pow2_neg(40)).lo() <= &b, "{f}: {a:?}");
            }
        }
    }

    #[test]
    fn q_values() {
        assert_eq!(q_of(&AlgebraicNumber::from_integer(6), 12).unwrap().as_integer(), Some(2.into()));
        assert_eq!(q_of(&AlgebraicNumber::from_rational(r(1, 2)), 12).unwrap().as_integer(), Some(2.into()));
        let s2 = SurdExpr::new(crate::algnum::RootOfUnity::one(), r(2, 1), r(1, 2)).unwrap().to_algebraic().unwrap();
        let q = q_of(&s2, 12).unwrap();
        assert_eq!(q.exact_form(), Some((&r(2, 1), &r(1, 2))));
        let phi = AlgebraicNumber::from_index(&IntPoly::parse("x^2-x-1").unwrap(), 1);
        let q = q_of(&phi, 12).unwrap();
        assert!(q.lo() > &r(127, 100) && q.hi() < &r(128, 100));
    }

    #[test]
    fn length_bounds() {
        let two = MeasureValue::integer(2.into());
        assert_eq!(length_bound_from_q(&two, &MeasureValue::integer(6.into())).unwrap(), 3);
        assert_eq!(length_bound_from_q(&two, &two).unwrap(), 2);
        assert_eq!(length_bound_from_q(&two, &MeasureValue::one()).unwrap(), 1);
        let s2 = MeasureValue::exact(r(2, 1), r(1, 2));
        assert_eq!(length_bound_from_q(&s2, &MeasureValue::integer(8.into())).unwrap(), 7);
    }

    #[test]
    fn candidate_values() {
        let k = field("x^2-5");
        let c = measure_candidates(&k, &r(2, 1)).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].to_algebraic().minpoly(), &IntPoly::parse("x^2-x-1").unwrap());
        assert_eq!(c[1], QuadMeasure::Int(2));
    }
}
