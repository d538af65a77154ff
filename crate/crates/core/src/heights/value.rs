use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{perfect_power, rational_exponents, rational_pow};
use crate::polycore::interval::to_decimal;
use crate::polycore::Interval;

/// Bits used for the enclosure attached to an exact value.
pub const EXACT_BITS: u32 = 96;

/// A real number `>= 1`, exact as `base^exponent` when known, always with an enclosure.
#[derive(Clone, PartialEq, Eq)]
pub struct MeasureValue {
    exact: Option<(BigRational, BigRational)>,
    enclosure: Interval,
}

fn enclose_power(base: &BigRational, exponent: &BigRational, bits: u32) -> Interval {
    let p = exponent.numer().to_i64().expect("exponent numerator fits i64");
    let q = exponent.denom().to_u32().expect("exponent denominator fits u32");
    let v = rational_pow(base, p);
    if q == 1 {
        Interval::point(v)
    } else {
        Interval::point(v).nth_root(q, bits)
    }
}

impl MeasureValue {
    /// `base^exponent` with `base >= 1` and `exponent >= 0`, canonicalized.
    pub fn exact(base: BigRational, exponent: BigRational) -> Self {
        assert!(base >= BigRational::one() && !exponent.is_negative(), "measure values are >= 1");
        if base.is_one() || exponent.is_zero() {
            return Self::one();
        }
        let (d, k) = perfect_power(&base);
        let e = exponent * BigRational::from_integer(k.into());
        let enclosure = enclose_power(&d, &e, EXACT_BITS);
        MeasureValue { exact: Some((d, e)), enclosure }
    }

    pub fn integer(n: BigInt) -> Self {
        Self::exact(BigRational::from_integer(n), BigRational::one())
    }

    pub fn one() -> Self {
        MeasureValue {
            exact: Some((BigRational::one(), BigRational::one())),
            enclosure: Interval::from_int(1),
        }
    }

    /// Enclosure-only value; the lower end is clamped to 1.
    pub fn from_enclosure(iv: Interval) -> Self {
        let one = BigRational::one();
        let lo = iv.lo.max(one.clone());
        let hi = iv.hi.max(one);
        MeasureValue { exact: None, enclosure: Interval::new(lo, hi) }
    }

    /// `prod p^e` over the given prime exponents, which must give a value `>= 1`.
    pub fn from_prime_exponents(exps: &[(BigInt, BigRational)]) -> Self {
        let mut acc: BTreeMap<BigInt, BigRational> = BTreeMap::new();
        for (p, e) in exps {
            *acc.entry(p.clone()).or_insert_with(BigRational::zero) += e;
        }
        acc.retain(|_, e| !e.is_zero());
        if acc.is_empty() {
            return Self::one();
        }
        let q = acc.values().fold(BigInt::one(), |l, e| l.lcm(e.denom()));
        let qr = BigRational::from_integer(q.clone());
        let mut base = BigRational::one();
        for (p, e) in &acc {
            let k = (e * &qr).to_integer().to_i64().expect("exponent fits i64");
            base *= rational_pow(&BigRational::from_integer(p.clone()), k);
        }
        Self::exact(base, BigRational::new(BigInt::one(), q))
    }

    pub fn exact_form(&self) -> Option<(&BigRational, &BigRational)> {
        self.exact.as_ref().map(|(b, e)| (b, e))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn enclosure(&self) -> &Interval {
        &self.enclosure
    }

    pub fn lo(&self) -> &BigRational {
        &self.enclosure.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.enclosure.hi
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.exact, Some((b, _)) if b.is_one())
    }

    /// The value as a rational, when exact with an integral exponent.
    pub fn as_rational(&self) -> Option<BigRational> {
        let (b, e) = self.exact.as_ref()?;
        if !e.is_integer() {
            return None;
        }
        Some(rational_pow(b, e.to_integer().to_i64()?))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Prime exponents of an exact value.
    pub fn prime_exponents(&self) -> Option<Vec<(BigInt, BigRational)>> {
        let (b, e) = self.exact.as_ref()?;
        if b.is_one() {
            return Some(Vec::new());
        }
        Some(rational_exponents(b).into_iter().map(|(p, k)| (p, BigRational::from_integer(k.into()) * e)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self.prime_exponents(), other.prime_exponents()) {
            (Some(mut a), Some(b)) => {
                a.extend(b);
                Self::from_prime_exponents(&a)
            }
            _ => Self::from_enclosure(self.enclosure.mul(&other.enclosure)),
        }
    }

    /// `self^e` for a rational `e >= 0`; enclosures use `bits` for roots.
    pub fn pow(&self, e: &BigRational, bits: u32) -> Self {
        assert!(!e.is_negative());
        if e.is_zero() {
            return Self::one();
        }
        if let Some((b, x)) = &self.exact {
            return Self::exact(b.clone(), x * e);
        }
        let p = e.numer().to_u32().expect("exponent fits u32");
        let q = e.denom().to_u32().expect("exponent fits u32");
        let iv = self.enclosure.pow(p);
        Self::from_enclosure(if q == 1 { iv } else { iv.nth_root(q, bits) })
    }

    pub fn max(&self, other: &Self) -> Self {
        match self.compare(other) {
            Some(Ordering::Less) => other.clone(),
            Some(_) => self.clone(),
            None => Self::from_enclosure(Interval::new(
                self.lo().clone().max(other.lo().clone()),
                self.hi().clone().max(other.hi().clone()),
            )),
        }
    }

    /// Certified comparison; `None` when undecided at the current enclosures.
    pub fn compare(&self, other: &Self) -> Option<Ordering> {
        if let (Some((b1, e1)), Some((b2, e2))) = (&self.exact, &other.exact) {
            if b1 == b2 && e1 == e2 {
                return Some(Ordering::Equal);
            }
        }
        if self.hi() < other.lo() {
            return Some(Ordering::Less);
        }
        if other.hi() < self.lo() {
            return Some(Ordering::Greater);
        }
        let ((b1, e1), (b2, e2)) = (self.exact.as_ref()?, other.exact.as_ref()?);
        let u1 = e1.numer() * e2.denom();
        let u2 = e2.numer() * e1.denom();
        let x = rational_pow(b1, u1.to_i64()?);
        let y = rational_pow(b2, u2.to_i64()?);
        Some(x.cmp(&y))
    }

    /// Whether the enclosure may contain `q` (always exact for exact values).
    pub fn contains(&self, q: &BigRational) -> bool {
        self.enclosure.contains(q)
    }

    pub fn to_f64(&self) -> f64 {
        self.enclosure.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Outward-rounded decimal bounds.
    pub fn decimal_bounds(&self, digits: usize) -> (String, String) {
        (to_decimal(self.lo(), digits, false), to_decimal(self.hi(), digits, true))
    }

    /// Exact form in the surd grammar, e.g. `2`, `(3/2)^(1/3)`.
    pub fn exact_string(&self) -> Option<String> {
        let (b, e) = self.exact.as_ref()?;
        if let Some(q) = self.as_rational() {
            return Some(q.to_string());
        }
        let base = if b.is_integer() { b.to_string() } else { format!("{}/{}", b.numer(), b.denom()) };
        Some(format!("({base})^({}/{})", e.numer(), e.denom()))
    }
}

impl fmt::Debug for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_string() {
            Some(s) => write!(f, "{s}"),
            None => write!(f, "{:?}", self.enclosure),
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact_string() {
            Some(s) => write!(f, "{s}"),
            None => {
                let (lo, hi) = self.decimal_bounds(12);
                write!(f, "[{lo}, {hi}]")
            }
        }
    }
}
