//! Explicit elements of rad(Q): a root of unity times a positive real radical.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algnum::AlgebraicNumber;
use crate::arith::{perfect_power, rational_exponents, rational_pow};
use crate::error::{Error, Result};
use crate::polycore::interval::{root_ceil, root_floor};
use crate::polycore::{cyclotomic_poly, euler_phi, ComplexInterval, IntPoly, Interval};

/// `zeta_m^j = exp(2 pi i j / m)`, stored with `gcd(j, m) = 1` and `0 <= j < m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    pub order: u64,
    pub index: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, index: i64) -> Self {
        assert!(order >= 1);
        let j = index.rem_euclid(order as i64) as u64;
        if j == 0 {
            return RootOfUnity { order: 1, index: 0 };
        }
        let g = j.gcd(&order);
        RootOfUnity { order: order / g, index: j / g }
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, index: 0 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, index: 1 }
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn mul(&self, o: &Self) -> Self {
        let l = self.order.lcm(&o.order);
        let j = self.index * (l / self.order) + o.index * (l / o.order);
        Self::new(l, j as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.order, -(self.index as i64))
    }

    pub fn pow(&self, n: i64) -> Self {
        let j = (self.index as i128 * n as i128).rem_euclid(self.order as i128);
        Self::new(self.order, j as i64)
    }

    /// As an algebraic number: the `k`-th root of `Phi_m` by angle is the
    /// `k`-th residue coprime to `m`.
    pub fn to_algebraic(&self) -> AlgebraicNumber {
        match self.order {
            1 => return AlgebraicNumber::from_integer(1),
            2 => return AlgebraicNumber::from_integer(-1),
            _ => {}
        }
        let phi = cyclotomic_poly(self.order);
        let mut by_angle: Vec<(f64, usize)> = AlgebraicNumber::from_index(&phi, 0)
            .conjugates()
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let (re, im) = z.approx();
                (im.atan2(re).rem_euclid(std::f64::consts::TAU), i)
            })
            .collect();
        by_angle.sort_by(|a, b| a.0.total_cmp(&b.0));
        let k = (1..self.order).filter(|j| j.gcd(&self.order) == 1).position(|j| j == self.index).unwrap();
        AlgebraicNumber::from_index(&phi, by_angle[k].1)
    }

    /// The root of unity equal to `x`, if `x` is torsion.
    pub fn from_algebraic(x: &AlgebraicNumber) -> Option<Self> {
        if !x.is_torsion() {
            return None;
        }
        let d = x.degree() as u64;
        let m = (1..=2 * d * d + 2).find(|&m| euler_phi(m) == d && &cyclotomic_poly(m) == x.minpoly())?;
        (0..m as i64).map(|j| Self::new(m, j)).filter(|u| u.order == m).find(|u| &u.to_algebraic() == x)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta({},{})", self.order, self.index)
    }
}

/// `zeta_m^j * base^exponent` with `base > 0` not a perfect power and the
/// real positive branch of the radical. A negative base is folded into the
/// root of unity as `(-c)^(p/q) = zeta_{2q}^p c^(p/q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdExpr {
    pub unity: RootOfUnity,
    pub base: BigRational,
    pub exponent: BigRational,
}

impl SurdExpr {
    pub fn new(unity: RootOfUnity, base: BigRational, exponent: BigRational) -> Result<Self> {
        if base.is_zero() {
            return Err(Error::InvalidArgument("surd base must be nonzero".into()));
        }
        let mut unity = unity;
        if base.is_negative() {
            let p = exponent.numer().to_i64().ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
            let q = exponent.denom().to_u64().ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
            unity = unity.mul(&RootOfUnity::new(2 * q, p));
        }
        let (d, k) = perfect_power(&base);
        let exponent = exponent * BigRational::from_integer(k.into());
        let (base, exponent) = if d.is_one() || exponent.is_zero() {
            (BigRational::one(), BigRational::zero())
        } else if exponent.is_negative() {
            (d.recip(), -exponent)
        } else {
            (d, exponent)
        };
        Ok(SurdExpr { unity, base, exponent })
    }

    pub fn rational(q: BigRational) -> Result<Self> {
        Self::new(RootOfUnity::one(), q, BigRational::one())
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into())).expect("nonzero")
    }

    pub fn root_of_unity(u: RootOfUnity) -> Self {
        SurdExpr { unity: u, base: BigRational::one(), exponent: BigRational::zero() }
    }

    pub fn is_rational(&self) -> bool {
        self.exponent.is_integer() && self.unity.order <= 2
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        let v = rational_pow(&self.base, self.exponent.to_integer().to_i64()?);
        Some(if self.unity.order == 2 { -v } else { v })
    }

    /// The real positive radical `base^exponent`.
    pub fn radical(&self) -> SurdExpr {
        SurdExpr { unity: RootOfUnity::one(), ..self.clone() }
    }

    pub fn exponents(&self) -> ExponentVector {
        ExponentVector::from_surd(self)
    }

    pub fn mul(&self, other: &SurdExpr) -> SurdExpr {
        self.exponents().mul(&other.exponents()).to_surd()
    }

    pub fn inv(&self) -> SurdExpr {
        self.exponents().inv().to_surd()
    }

    pub fn pow(&self, n: i64) -> SurdExpr {
        self.exponents().pow(n).to_surd()
    }

    /// Real positive radical raised to a rational power; torsion must be trivial
    /// unless the power is an integer.
    pub fn pow_rational(&self, e: &BigRational) -> Result<SurdExpr> {
        if e.is_integer() {
            return Ok(self.pow(e.to_integer().to_i64().unwrap()));
        }
        if !self.unity.is_one() {
            return Err(Error::InvalidArgument("rational power of a non-positive surd is ambiguous".into()));
        }
        SurdExpr::new(RootOfUnity::one(), self.base.clone(), &self.exponent * e)
    }

    /// Enclosure of the value at roughly `2^-bits` accuracy (radical part only
    /// when the root of unity is trivial or -1).
    pub fn radical_enclosure(&self, bits: u32) -> Interval {
        if self.exponent.is_zero() {
            return Interval::from_int(1);
        }
        let p = self.exponent.numer().to_i64().unwrap();
        let q = self.exponent.denom().to_u32().unwrap();
        let c = rational_pow(&self.base, p);
        Interval::new(root_floor(&c, q, bits), root_ceil(&c, q, bits))
    }

    /// `x` as a surd when `x` lies in rad(Q). Such `x` has all conjugates of
    /// one modulus `|a_0/a_d|^(1/d)`, and `x` over that radical is torsion.
    pub fn from_algebraic(x: &AlgebraicNumber) -> Result<Option<SurdExpr>> {
        if let Some(q) = x.as_rational() {
            return Self::rational(q).map(Some);
        }
        let moduli: Vec<Interval> = x.conjugates().iter().map(|c| c.root_box().modulus_sq()).collect();
        if moduli.iter().any(|a| moduli.iter().any(|b| !a.overlaps(b))) {
            return Ok(None);
        }
        let f = x.minpoly();
        let d = x.degree();
        let c = BigRational::new(f.constant_term().abs(), f.leading().abs());
        // zeta^d = +-x^d / c is torsion exactly when x is in rad(Q)
        let w = x.pow_int(d as i64)?.scale(&c.recip());
        let Some(wz) = RootOfUnity::from_algebraic(&w) else {
            return Ok(None);
        };
        let radical = SurdExpr::new(RootOfUnity::one(), c, BigRational::new(BigInt::one(), BigInt::from(d)))?;
        let m = 2 * d as u64 * wz.order;
        let (re, im) = x.approx();
        let j0 = (im.atan2(re) / std::f64::consts::TAU * m as f64).round() as i64;
        for j in [j0, j0 - 1, j0 + 1] {
            let s = SurdExpr { unity: RootOfUnity::new(m, j), ..radical.clone() };
            if &s.to_algebraic()? == x {
                return Ok(Some(s));
            }
        }
        Err(Error::BranchSearch("root of unity of a rad(Q) element not located".into()))
    }

    /// The algebraic number denoted by the surd.
    pub fn to_algebraic(&self) -> Result<AlgebraicNumber> {
        let radical = if self.exponent.is_zero() {
            AlgebraicNumber::from_integer(1)
        } else if self.exponent.is_integer() {
            AlgebraicNumber::from_rational(rational_pow(&self.base, self.exponent.to_integer().to_i64().unwrap()))
        } else {
            let p = self.exponent.numer().to_i64().unwrap();
            let q = self.exponent.denom().to_usize().unwrap();
            let c = rational_pow(&self.base, p);
            // x^q - c is irreducible: c > 0 is not an l-th power for any prime l | q.
            let f = IntPoly::monomial(c.denom().clone(), q).sub(&IntPoly::constant(c.numer().clone()));
            AlgebraicNumber::select_root(&[f.normalize()], |bits| {
                Some(ComplexInterval::new(self.radical_enclosure(bits), Interval::from_int(0)))
            })?
        };
        match self.unity.order {
            1 => Ok(radical),
            2 => Ok(radical.neg()),
            _ => self.unity.to_algebraic().mul(&radical),
        }
    }
}

impl fmt::Display for SurdExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let radical = if self.exponent.is_zero() {
            None
        } else if self.exponent.is_integer() {
            Some(format!("{}", rational_pow(&self.base, self.exponent.to_integer().to_i64().unwrap())))
        } else {
            Some(format!("({})^({})", self.base, self.exponent))
        };
        match (self.unity.order, radical) {
            (1, Some(r)) => write!(f, "{r}"),
            (2, Some(r)) => write!(f, "-{r}"),
            (_, Some(r)) => write!(f, "{}*{r}", self.unity),
            (_, None) => write!(f, "{}", self.unity),
        }
    }
}

/// `zeta * prod p_i^{e_i}` with rational exponents, primes ascending, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    pub primes: Vec<BigInt>,
    pub exps: Vec<BigRational>,
    pub torsion: RootOfUnity,
}

impl ExponentVector {
    pub fn one() -> Self {
        ExponentVector { primes: Vec::new(), exps: Vec::new(), torsion: RootOfUnity::one() }
    }

    fn from_pairs(mut pairs: Vec<(BigInt, BigRational)>, torsion: RootOfUnity) -> Self {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let mut primes: Vec<BigInt> = Vec::new();
        let mut exps: Vec<BigRational> = Vec::new();
        for (p, e) in pairs {
            if primes.last() == Some(&p) {
                *exps.last_mut().unwrap() += e;
            } else {
                primes.push(p);
                exps.push(e);
            }
        }
        let (primes, exps) = primes.into_iter().zip(exps).filter(|(_, e)| !e.is_zero()).unzip();
        ExponentVector { primes, exps, torsion }
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let torsion = if q.is_negative() { RootOfUnity::minus_one() } else { RootOfUnity::one() };
        let pairs = rational_exponents(q).into_iter().map(|(p, e)| (p, BigRational::from_integer(e.into()))).collect();
        Self::from_pairs(pairs, torsion)
    }

    pub fn from_surd(s: &SurdExpr) -> Self {
        let pairs = rational_exponents(&s.base)
            .into_iter()
            .map(|(p, e)| (p, BigRational::from_integer(e.into()) * &s.exponent))
            .collect();
        Self::from_pairs(pairs, s.unity)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let pairs = self.primes.iter().cloned().zip(self.exps.iter().cloned());
        let pairs = pairs.chain(o.primes.iter().cloned().zip(o.exps.iter().cloned())).collect();
        Self::from_pairs(pairs, self.torsion.mul(&o.torsion))
    }

    pub fn inv(&self) -> Self {
        ExponentVector {
            primes: self.primes.clone(),
            exps: self.exps.iter().map(|e| -e).collect(),
            torsion: self.torsion.inv(),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Self::one();
        }
        let k = BigRational::from_integer(n.into());
        ExponentVector {
            primes: self.primes.clone(),
            exps: self.exps.iter().map(|e| e * &k).collect(),
            torsion: self.torsion.pow(n),
        }
    }

    pub fn is_torsion(&self) -> bool {
        self.primes.is_empty()
    }

    /// Least common denominator of the exponents.
    pub fn denominator(&self) -> BigInt {
        self.exps.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    pub fn to_surd(&self) -> SurdExpr {
        let q = self.denominator();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in self.primes.iter().zip(&self.exps) {
            let k = (e * BigRational::from_integer(q.clone())).to_integer();
            let k = k.to_i64().unwrap();
            if k > 0 {
                num *= p.pow(k as u32);
            } else {
                den *= p.pow((-k) as u32);
            }
        }
        SurdExpr::new(self.torsion, BigRational::new(num, den), BigRational::new(BigInt::one(), q))
            .expect("nonzero base")
    }
}
