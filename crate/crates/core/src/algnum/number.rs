use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::config::{pow2_neg, Config};
use crate::error::{Error, Result};
use crate::polycore::powersum::{composed_product, composed_sum, power_roots};
use crate::polycore::{
    irreducible_factors, is_cyclotomic_product, isolate_roots, refine_root, ComplexInterval, IntPoly, Interval,
    RatPoly, RootBox,
};

/// Precision of the canonical isolating boxes that index the roots of a minimal polynomial.
pub const REFERENCE_BITS: u32 = 24;

const MAX_SELECT_BITS: u32 = 1 << 14;

thread_local! {
    static REFERENCE: RefCell<HashMap<IntPoly, Vec<RootBox>>> = RefCell::new(HashMap::new());
}

/// Canonical isolating boxes of `f` at precision `2^-REFERENCE_BITS`, sorted by center.
pub fn reference_boxes(f: &IntPoly) -> Vec<RootBox> {
    if let Some(b) = REFERENCE.with(|c| c.borrow().get(f).cloned()) {
        return b;
    }
    let boxes = isolate_roots(f, &pow2_neg(REFERENCE_BITS));
    REFERENCE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 4096 {
            c.clear();
        }
        c.insert(f.clone(), boxes.clone());
    });
    boxes
}

/// An algebraic number: an irreducible minimal polynomial together with the
/// index of one of its roots in the canonical root order.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    index: usize,
    root: RootBox,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly && self.index == other.index
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.minpoly.hash(state);
        self.index.hash(state);
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "Alg({}, #{}, ~{re:.6}{im:+.6}i)", self.minpoly, self.index)
    }
}

impl AlgebraicNumber {
    pub fn from_rational(q: BigRational) -> Self {
        let minpoly = IntPoly::linear_for(&q);
        let root = RootBox::exact(&q, &pow2_neg(REFERENCE_BITS), 1);
        AlgebraicNumber { minpoly, index: 0, root }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The `index`-th root (canonical order) of an irreducible polynomial.
    pub fn from_index(minpoly: &IntPoly, index: usize) -> Self {
        let minpoly = minpoly.normalize();
        let boxes = reference_boxes(&minpoly);
        AlgebraicNumber { root: boxes[index].clone(), minpoly, index }
    }

    /// Every distinct root of `p`, grouped by irreducible factor.
    pub fn roots_of(p: &IntPoly) -> Vec<AlgebraicNumber> {
        irreducible_factors(p)
            .iter()
            .flat_map(|f| (0..f.degree()).map(move |i| Self::from_index(f, i)))
            .collect()
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn root_box(&self) -> &RootBox {
        &self.root
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    pub fn is_zero(&self) -> bool {
        self.minpoly == IntPoly::x()
    }

    pub fn is_real(&self) -> bool {
        self.root.real
    }

    /// The same number with its box refined to width `<= precision`.
    pub fn refined(&self, precision: &BigRational) -> Self {
        let mut out = self.clone();
        out.root = self.refined_box(precision);
        out
    }

    pub fn refined_box(&self, precision: &BigRational) -> RootBox {
        if let Some(q) = self.as_rational() {
            return RootBox::exact(&q, precision, 1);
        }
        refine_root(&self.minpoly, &self.root, precision)
    }

    /// Rectangle enclosing the value, of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> ComplexInterval {
        if let Some(q) = self.as_rational() {
            return ComplexInterval::real(q);
        }
        self.refined_box(&pow2_neg(bits)).enclosure()
    }

    /// Enclosure of `|x|`.
    pub fn modulus(&self, bits: u32) -> Interval {
        if let Some(q) = self.as_rational() {
            return Interval::point(q.abs());
        }
        self.refined_box(&pow2_neg(bits + 2)).modulus(bits + 2)
    }

    pub fn approx(&self) -> (f64, f64) {
        let (re, im) = self.root.center();
        let im = if self.root.real { 0.0 } else { im.to_f64().unwrap_or(f64::NAN) };
        (re.to_f64().unwrap_or(f64::NAN), im)
    }

    /// All roots of the minimal polynomial, in canonical order.
    pub fn conjugates(&self) -> Vec<AlgebraicNumber> {
        (0..self.degree()).map(|i| Self::from_index(&self.minpoly, i)).collect()
    }

    /// True iff the number is a root of unity.
    pub fn is_torsion(&self) -> bool {
        !self.is_zero() && self.minpoly.leading().is_one() && is_cyclotomic_product(&self.minpoly)
    }

    /// Picks the unique root among the candidate irreducible polynomials
    /// whose isolating box meets every enclosure `enclose(bits)`.
    pub fn select_root<F>(candidates: &[IntPoly], mut enclose: F) -> Result<Self>
    where
        F: FnMut(u32) -> Option<ComplexInterval>,
    {
        let mut alive: Vec<(usize, usize, RootBox)> = Vec::new();
        for (ci, f) in candidates.iter().enumerate() {
            for (ri, b) in reference_boxes(f).into_iter().enumerate() {
                alive.push((ci, ri, b));
            }
        }
        let mut bits = REFERENCE_BITS;
        loop {
            if let Some(enc) = enclose(bits) {
                alive.retain(|(_, _, b)| {
                    let eb = b.enclosure();
                    eb.re.overlaps(&enc.re) && eb.im.overlaps(&enc.im)
                });
            }
            match alive.len() {
                0 => return Err(Error::Refinement("no candidate root matches the enclosure".into())),
                1 => {
                    let (ci, ri, b) = alive.pop().unwrap();
                    return Ok(AlgebraicNumber { minpoly: candidates[ci].clone(), index: ri, root: b });
                }
                _ => {}
            }
            if bits >= MAX_SELECT_BITS {
                return Err(Error::Refinement("root selection did not separate candidates".into()));
            }
            bits *= 2;
            let prec = pow2_neg(bits);
            for (ci, _, b) in alive.iter_mut() {
                let f = &candidates[*ci];
                *b = if f.degree() == 1 {
                    RootBox::exact(&BigRational::new(-f.coeff(0), f.coeff(1)), &prec, 1)
                } else {
                    refine_root(f, b, &prec)
                };
            }
        }
    }

    fn check_degree(what: &'static str, degree: usize) -> Result<()> {
        let cap = Config::DEFAULT_DEGREE_CAP;
        if degree > cap {
            return Err(Error::UnsupportedDegree { what, degree, cap });
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        if let Some(q) = self.as_rational() {
            return Self::from_rational(-q);
        }
        let f = self.minpoly.negate_var().normalize();
        Self::select_root(&[f], |bits| {
            let e = self.enclosure(bits);
            Some(ComplexInterval::new(e.re.neg(), e.im.neg()))
        })
        .expect("negation is exact")
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Ok(Self::from_rational(a + b));
        }
        Self::check_degree("sum", self.degree() * other.degree())?;
        let h = composed_sum(&self.minpoly, &other.minpoly);
        let cands = irreducible_factors(&h);
        Self::select_root(&cands, |bits| Some(self.enclosure(bits).add(&other.enclosure(bits))))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `q * self` for a rational `q`.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::from_integer(0);
        }
        if let Some(a) = self.as_rational() {
            return Self::from_rational(a * q);
        }
        // roots q a: f(x / q) scaled to integers
        let d = self.degree() as i32;
        let coeffs: Vec<BigRational> = self
            .minpoly
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| BigRational::from_integer(c.clone()) * q.pow(d - k as i32))
            .collect();
        let f = RatPoly::new(coeffs).to_intpoly();
        Self::select_root(&[f], |bits| Some(self.enclosure(bits).scale(q))).expect("scaling is exact")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let Some(q) = other.as_rational() {
            return Ok(self.scale(&q));
        }
        if let Some(q) = self.as_rational() {
            return Ok(other.scale(&q));
        }
        Self::check_degree("product", self.degree() * other.degree())?;
        let h = composed_product(&self.minpoly, &other.minpoly);
        let cands = irreducible_factors(&h);
        Self::select_root(&cands, |bits| Some(self.enclosure(bits).mul(&other.enclosure(bits))))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        let f = self.minpoly.reverse().normalize();
        Self::select_root(&[f], |bits| self.enclosure(bits).recip())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one());
        }
        if n < 0 {
            return self.pow_int(-n)?.inv();
        }
        if n == 1 {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(crate::arith::rational_pow(&q, n)));
        }
        let h = power_roots(&self.minpoly, n as usize);
        let cands = irreducible_factors(&h);
        Self::select_root(&cands, |bits| {
            let extra = (n as u64).ilog2() + 8;
            let m = self.modulus(4).hi.to_f64().unwrap_or(1.0).max(1.0).log2().ceil() as u32;
            Some(self.enclosure(bits + extra + m * n as u32).pow(n as u32))
        })
    }

    /// Product `prod xs`, empty product is 1.
    pub fn product(xs: &[AlgebraicNumber]) -> Result<Self> {
        xs.iter().try_fold(Self::one(), |acc, x| acc.mul(x))
    }

    /// `p(self)` for an integer polynomial, as an enclosure.
    pub fn eval_enclosure(&self, p: &IntPoly, bits: u32) -> ComplexInterval {
        let z = self.enclosure(bits);
        p.coeffs().iter().rev().fold(ComplexInterval::real(BigRational::zero()), |acc, c| {
            acc.mul(&z).add(&ComplexInterval::real(BigRational::from_integer(c.clone())))
        })
    }

    /// Numerator and denominator of the minimal polynomial's extreme coefficients.
    pub fn extreme_coefficients(&self) -> (BigInt, BigInt) {
        (self.minpoly.constant_term(), self.minpoly.leading())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt(n: i64) -> AlgebraicNumber {
        let f = IntPoly::from_i64s(&[-n, 0, 1]);
        AlgebraicNumber::from_index(&f, 1)
    }

    #[test]
    fn products() {
        let s2 = sqrt(2);
        assert_eq!(s2.mul(&s2).unwrap(), AlgebraicNumber::from_integer(2));
        let s6 = s2.mul(&sqrt(3)).unwrap();
        assert_eq!(s6.minpoly(), &p("x^2-6"));
        assert!(s6.approx().0 > 0.0);
        // (1+i)(1-i) = 2
        let f = p("x^2-2x+2");
        let a = AlgebraicNumber::from_index(&f, 0);
        let b = AlgebraicNumber::from_index(&f, 1);
        assert_eq!(a.mul(&b).unwrap(), AlgebraicNumber::from_integer(2));
    }

    #[test]
    fn inverse_and_powers() {
        let q = AlgebraicNumber::from_rational(r(2, 3));
        assert_eq!(q.inv().unwrap(), AlgebraicNumber::from_rational(r(3, 2)));
        assert_eq!(sqrt(2).pow_int(4).unwrap(), AlgebraicNumber::from_integer(4));
        let phi = AlgebraicNumber::from_index(&p("x^2-x-1"), 1);
        let phi2 = phi.pow_int(2).unwrap();
        assert_eq!(phi2.minpoly(), &p("x^2-3x+1"));
        assert_eq!(phi2.index(), 1);
        assert_eq!(phi.pow_int(-1).unwrap().minpoly(), &p("x^2+x-1"));
        assert!(AlgebraicNumber::from_integer(0).inv().is_err());
    }

    #[test]
    fn conjugates_and_torsion() {
        let c = sqrt(2).conjugates();
        assert_eq!(c.len(), 2);
        assert!(c[0].approx().0 < 0.0);
        let g = AlgebraicNumber::from_index(&p("x^3-x-1"), 0);
        assert_eq!(g.conjugates().iter().filter(|x| x.is_real()).count(), 1);
        assert_eq!(AlgebraicNumber::from_integer(5).conjugates().len(), 1);
        assert!(AlgebraicNumber::from_index(&p("x^2+x+1"), 0).is_torsion());
        assert!(AlgebraicNumber::from_integer(-1).is_torsion());
        assert!(!sqrt(2).is_torsion());
    }

    #[test]
    fn sums_and_negation() {
        let s = sqrt(2).add(&sqrt(3)).unwrap();
        assert_eq!(s.minpoly(), &p("x^4-10x^2+1"));
        assert!((s.approx().0 - 3.146264).abs() < 1e-5);
        assert_eq!(sqrt(2).neg(), sqrt(2).conjugates()[0]);
        assert_eq!(sqrt(2).sub(&sqrt(2)).unwrap(), AlgebraicNumber::from_integer(0));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(24))]
        #[test]
        fn mul_commutative_associative(a in 2i64..8, b in 2i64..8, c in -3i64..4) {
            proptest::prop_assume!(c != 0);
            let (x, y, z) = (sqrt(a), sqrt(b), AlgebraicNumber::from_integer(c));
            let xy = x.mul(&y).unwrap();
            proptest::prop_assert_eq!(&xy, &y.mul(&x).unwrap());
            proptest::prop_assert_eq!(xy.mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        }
    }
}
