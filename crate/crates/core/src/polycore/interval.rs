//! Closed rational intervals with outward dyadic rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn two_pow(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Largest `k / 2^bits` not above `q`.
pub fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    let n = (q.numer() * &s).div_floor(q.denom());
    BigRational::new(n, s)
}

/// Smallest `k / 2^bits` not below `q`.
pub fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let s = two_pow(bits);
    let n = (q.numer() * &s).div_ceil(q.denom());
    BigRational::new(n, s)
}

/// Lower bound for `q^(1/n)`, `q >= 0`, accurate to `2^-bits`.
pub fn root_floor(q: &BigRational, n: u32, bits: u32) -> BigRational {
    assert!(!q.is_negative());
    let scale = two_pow(bits * n);
    let v = (q.numer() * &scale).div_floor(q.denom());
    BigRational::new(v.nth_root(n), two_pow(bits))
}

/// Upper bound for `q^(1/n)`, `q >= 0`, accurate to `2^-bits`.
pub fn root_ceil(q: &BigRational, n: u32, bits: u32) -> BigRational {
    assert!(!q.is_negative());
    let scale = two_pow(bits * n);
    let v = (q.numer() * &scale).div_ceil(q.denom());
    let r = v.nth_root(n);
    let r = if r.pow(n) == v { r } else { r + 1 };
    BigRational::new(r, two_pow(bits))
}

/// Decimal string of `q` rounded down (`up = false`) or up to `digits` places.
pub fn to_decimal(q: &BigRational, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = q.numer() * &scale;
    let n = if up {
        scaled.div_ceil(q.denom())
    } else {
        scaled.div_floor(q.denom())
    };
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(n.into()))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn recip(&self) -> Option<Interval> {
        if self.contains(&BigRational::zero()) {
            return None;
        }
        Some(Interval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn pow(&self, e: u32) -> Interval {
        (0..e).fold(Interval::from_int(1), |acc, _| acc.mul(self))
    }

    /// Enclosure of `{ |x| : x in self }`.
    pub fn abs(&self) -> Interval {
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: BigRational::zero(),
                hi: self.hi.clone().max(-&self.lo),
            }
        } else if self.hi.is_positive() || self.hi.is_zero() && !self.lo.is_negative() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Enclosure of `max(1, x)`.
    pub fn max_one(&self) -> Interval {
        let one = BigRational::one();
        Interval {
            lo: self.lo.clone().max(one.clone()),
            hi: self.hi.clone().max(one),
        }
    }

    /// Outward rounding to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval {
            lo: floor_dyadic(&self.lo, bits),
            hi: ceil_dyadic(&self.hi, bits),
        }
    }

    /// Enclosure of the nonnegative `n`-th root; `self` must be nonnegative.
    pub fn nth_root(&self, n: u32, bits: u32) -> Interval {
        Interval {
            lo: root_floor(&self.lo, n, bits),
            hi: root_ceil(&self.hi, n, bits),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

/// Axis-aligned complex rectangle `re + i im`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(q: BigRational) -> Self {
        ComplexInterval {
            re: Interval::point(q),
            im: Interval::point(BigRational::zero()),
        }
    }

    pub fn width(&self) -> BigRational {
        self.re.width().max(self.im.width())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul(&ComplexInterval::real(q.clone()))
    }

    pub fn norm_sq(&self) -> Interval {
        let a = self.re.abs();
        let b = self.im.abs();
        a.mul(&a).add(&b.mul(&b))
    }

    /// `None` when the rectangle may contain zero.
    pub fn recip(&self) -> Option<Self> {
        let inv = self.norm_sq().recip()?;
        Some(ComplexInterval {
            re: self.re.mul(&inv),
            im: self.im.neg().mul(&inv),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ComplexInterval::real(BigRational::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn contains_zero(&self) -> bool {
        self.re.contains(&BigRational::zero()) && self.im.contains(&BigRational::zero())
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexInterval {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", to_decimal(&self.lo, 12, false), to_decimal(&self.hi, 12, true))
    }
}
