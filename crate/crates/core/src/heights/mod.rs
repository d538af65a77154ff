//! Weil heights and Mahler measures.
//!
//! Two independent pipelines compute `M(x)`: [`mahler_roots`] multiplies the
//! moduli of all conjugates outside the unit disc, while [`mahler_places`]
//! walks the places of `Q(x)`, reading the finite places from Newton polygons
//! and the infinite ones from real embeddings and complex conjugate pairs.
//! Elements of `rad(Q)` get exact values.

mod value;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use value::{MeasureValue, EXACT_BITS};

use crate::algnum::{AlgebraicNumber, SurdExpr};
use crate::arith::{factorize, rational_height};
use crate::config::pow2_neg;
use crate::error::{Error, Result};
use crate::polycore::roots::precision_bits;
use crate::polycore::{factor_rational, IntPoly, Interval};

/// An archimedean place: a real embedding (local degree 1) or a pair of
/// complex conjugate embeddings (local degree 2, represented by the root
/// with positive imaginary part).
#[derive(Clone, Debug)]
pub struct ArchimedeanPlace {
    pub index: usize,
    pub local_degree: usize,
    /// Enclosure of `|x|^local_degree` in this embedding.
    pub modulus_pow: Interval,
}

/// The `p`-adic data of `x`: root valuations from the Newton polygon.
#[derive(Clone, Debug)]
pub struct NonArchimedeanPlace {
    pub prime: BigInt,
    /// `(valuation, number of roots)` per polygon segment.
    pub valuations: Vec<(BigRational, usize)>,
    /// `log_p` of the contribution of the places above `p` to `H(x)`.
    pub height_exponent: BigRational,
}

#[derive(Clone, Debug)]
pub struct PlaceDecomposition {
    pub degree: usize,
    pub archimedean: Vec<ArchimedeanPlace>,
    pub nonarchimedean: Vec<NonArchimedeanPlace>,
}

fn v_p(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

/// Lower convex hull of `(i, v_p(a_i))`, returned as root valuations with counts.
pub fn newton_polygon(f: &IntPoly, p: &BigInt) -> Vec<(BigRational, usize)> {
    let pts: Vec<(i64, i64)> = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64, v_p(c, p)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| {
            let len = w[1].0 - w[0].0;
            (BigRational::new((w[0].1 - w[1].1).into(), len.into()), len as usize)
        })
        .collect()
}

/// `M(x)` for `x` in `rad(Q)`: all conjugates share one modulus, so
/// `M = max(|a_0|, |a_d|)`. `None` when `x` is not in `rad(Q)`.
pub fn rad_q_measure(x: &AlgebraicNumber) -> Option<BigInt> {
    let f = x.minpoly();
    SurdExpr::from_algebraic(x).ok()?.map(|_| f.constant_term().abs().max(f.leading().abs()))
}

fn work_bits(x: &AlgebraicNumber, precision: &BigRational) -> u32 {
    let d = x.degree() as u32;
    let size = x.minpoly().max_abs_coeff().bits() as u32;
    precision_bits(precision) + 8 + 2 * (32 - d.leading_zeros()) + size
}

/// `M(x) = |a_d| prod max(1, |x_i|)` over the conjugates.
pub fn mahler_roots(x: &AlgebraicNumber, precision: &BigRational) -> MeasureValue {
    if let Some(q) = x.as_rational() {
        return MeasureValue::integer(rational_height(&q));
    }
    if x.is_torsion() {
        return MeasureValue::one();
    }
    if let Some(m) = rad_q_measure(x) {
        return MeasureValue::integer(m);
    }
    let bits = work_bits(x, precision);
    let prec = pow2_neg(bits);
    let one = BigRational::one();
    let moduli: Vec<Interval> = x.conjugates().iter().map(|c| c.refined_box(&prec).modulus(bits)).collect();
    if moduli.iter().all(|m| m.lo > one) {
        return MeasureValue::integer(x.minpoly().constant_term().abs());
    }
    if moduli.iter().all(|m| m.hi < one) {
        return MeasureValue::integer(x.minpoly().leading().abs());
    }
    let lead = Interval::point(BigRational::from_integer(x.minpoly().leading().abs()));
    let iv = moduli.iter().map(|m| m.max_one()).fold(lead, |acc, m| acc.mul(&m));
    MeasureValue::from_enclosure(iv)
}

/// Mahler measure of a nonzero integer polynomial, `|a_d| prod max(1, |root|)`,
/// as the product of the measures of its irreducible factors.
pub fn polynomial_measure(f: &IntPoly, precision: &BigRational) -> Result<MeasureValue> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fac = factor_rational(f);
    let constant = MeasureValue::exact(fac.constant.abs(), BigRational::one());
    Ok(fac.factors.iter().fold(constant, |acc, (g, m)| {
        let mg = if g == &IntPoly::x() { MeasureValue::one() } else { mahler_roots(&AlgebraicNumber::from_index(g, 0), precision) };
        acc.mul(&mg.pow(&BigRational::from_integer((*m).into()), EXACT_BITS))
    }))
}

/// Place-by-place decomposition of `x`.
pub fn places(x: &AlgebraicNumber, precision: &BigRational) -> PlaceDecomposition {
    let f = x.minpoly();
    let d = x.degree();
    let bits = work_bits(x, precision);
    let prec = pow2_neg(bits);
    let mut archimedean = Vec::new();
    for (i, c) in x.conjugates().iter().enumerate() {
        let b = c.refined_box(&prec);
        if b.real || d == 1 {
            let re = if d == 1 { Interval::point(c.as_rational().unwrap()) } else { b.re() };
            archimedean.push(ArchimedeanPlace { index: i, local_degree: 1, modulus_pow: re.abs() });
        } else if b.center().1.is_positive() {
            archimedean.push(ArchimedeanPlace { index: i, local_degree: 2, modulus_pow: b.modulus_sq() });
        }
    }
    let nonarchimedean = factorize(&f.leading())
        .into_iter()
        .map(|(p, _)| {
            let valuations = newton_polygon(f, &p);
            let e: BigRational = valuations
                .iter()
                .filter(|(v, _)| v.is_negative())
                .map(|(v, n)| -v * BigRational::from_integer((*n).into()))
                .sum();
            NonArchimedeanPlace { prime: p, valuations, height_exponent: e / BigRational::from_integer(d.into()) }
        })
        .collect();
    PlaceDecomposition { degree: d, archimedean, nonarchimedean }
}

impl PlaceDecomposition {
    /// `M(x) = H(x)^d` assembled from the local factors.
    pub fn measure(&self) -> MeasureValue {
        let d = BigRational::from_integer(self.degree.into());
        let finite: Vec<(BigInt, BigRational)> =
            self.nonarchimedean.iter().map(|v| (v.prime.clone(), &v.height_exponent * &d)).collect();
        let finite = MeasureValue::from_prime_exponents(&finite);
        let arch = self.archimedean.iter().fold(Interval::from_int(1), |acc, v| acc.mul(&v.modulus_pow.max_one()));
        if arch.width().is_zero() {
            return finite.mul(&MeasureValue::exact(arch.lo, BigRational::one()));
        }
        MeasureValue::from_enclosure(finite.enclosure().mul(&arch))
    }

    /// Product formula `prod_v |x|_v = 1` in exponent bookkeeping: the polygon
    /// valuations above each `p | a_0 a_d` sum to `v_p(a_0/a_d)`, and the
    /// archimedean product encloses `|a_0/a_d|`.
    pub fn product_formula_holds(&self, f: &IntPoly) -> bool {
        let (a0, ad) = (f.constant_term(), f.leading());
        let mut primes: Vec<BigInt> = factorize(&(&a0 * &ad)).into_iter().map(|(p, _)| p).collect();
        primes.dedup();
        let finite_ok = primes.iter().all(|p| {
            let total: BigRational =
                newton_polygon(f, p).iter().map(|(v, n)| v * BigRational::from_integer((*n).into())).sum();
            total == BigRational::from_integer((v_p(&a0, p) - v_p(&ad, p)).into())
        });
        let arch = self.archimedean.iter().fold(Interval::from_int(1), |acc, v| acc.mul(&v.modulus_pow));
        finite_ok && arch.contains(&BigRational::new(a0.abs(), ad.abs()))
    }
}

/// `M(x)` as `H(x)^deg`, with `H` taken over all places of `Q(x)`.
pub fn mahler_places(x: &AlgebraicNumber, precision: &BigRational) -> MeasureValue {
    if x.is_torsion() {
        return MeasureValue::one();
    }
    places(x, precision).measure()
}

/// `H(x) = M(x)^(1/deg)`.
pub fn weil_height(x: &AlgebraicNumber, precision: &BigRational) -> MeasureValue {
    let d = BigRational::new(BigInt::one(), x.degree().into());
    mahler_roots(x, precision).pow(&d, precision_bits(precision) + 4)
}

/// Exact `H` of a surd: `H(zeta r^e) = H(r)^|e|`.
pub fn height_of_surd(s: &SurdExpr) -> MeasureValue {
    if s.exponent.is_zero() {
        return MeasureValue::one();
    }
    MeasureValue::exact(BigRational::from_integer(rational_height(&s.base)), s.exponent.abs())
}

/// Exact `M` of a surd: `H(s)^deg(s)`.
pub fn measure_of_surd(s: &SurdExpr) -> Result<MeasureValue> {
    let d = s.to_algebraic()?.degree();
    Ok(height_of_surd(s).pow(&BigRational::from_integer(d.into()), EXACT_BITS))
}

/// Certified comparison of `M(x)` and `M(y)`, refining up to `2^-max_bits`.
pub fn compare_measures(x: &AlgebraicNumber, y: &AlgebraicNumber, max_bits: u32) -> Option<Ordering> {
    let mut bits = 32;
    loop {
        let prec = pow2_neg(bits);
        if let Some(o) = mahler_roots(x, &prec).compare(&mahler_roots(y, &prec)) {
            return Some(o);
        }
        if bits >= max_bits {
            return None;
        }
        bits *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algnum::RootOfUnity;
    use crate::polycore::cyclotomic_poly;
    use proptest::prelude::*;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn prec() -> BigRational {
        pow2_neg(60)
    }

    #[test]
    fn lehmer_measure() {
        let l = p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
        let x = AlgebraicNumber::roots_of(&l).into_iter().find(|a| a.is_real() && a.approx().0 > 1.0).unwrap();
        let m = mahler_roots(&x, &prec());
        assert!(m.lo() >= &r(117, 100) && m.hi() <= &r(118, 100));
        assert!(m.enclosure().width() <= r(1, 1_000_000_000));
        let m2 = mahler_places(&x, &prec());
        assert!(m.enclosure().overlaps(m2.enclosure()));
    }

    #[test]
    fn polynomial_measures() {
        let m = polynomial_measure(&p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"), &prec()).unwrap();
        assert!(m.lo() >= &r(117, 100) && m.hi() <= &r(118, 100));
        assert_eq!(polynomial_measure(&p("6x^3-6x"), &prec()).unwrap().as_integer(), Some(6.into()));
        assert_eq!(polynomial_measure(&p("3x^5-2x^4-12x^3+8x^2+12x-8"), &prec()).unwrap().as_integer(), Some(12.into()));
        assert_eq!(polynomial_measure(&p("x^4+x^3+x^2+x+1"), &prec()).unwrap().as_integer(), Some(1.into()));
        assert_eq!(polynomial_measure(&IntPoly::zero(), &prec()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn small_examples() {
        let s2 = AlgebraicNumber::from_index(&p("x^2-2"), 1);
        assert_eq!(mahler_roots(&s2, &prec()).as_integer(), Some(2.into()));
        assert!(mahler_places(&s2, &prec()).contains(&r(2, 1)));
        let q = AlgebraicNumber::from_rational(r(2, 3));
        assert_eq!(mahler_roots(&q, &prec()).as_integer(), Some(3.into()));
        assert_eq!(mahler_places(&q, &prec()).as_integer(), Some(3.into()));
        let z5 = AlgebraicNumber::from_index(&cyclotomic_poly(5), 2);
        assert!(mahler_places(&z5, &prec()).is_one());
        assert_eq!(weil_height(&s2, &prec()).exact_form(), Some((&r(2, 1), &r(1, 2))));
        assert_eq!(weil_height(&q, &prec()).as_integer(), Some(3.into()));
    }

    #[test]
    fn places_of_non_monic_numbers() {
        // 3x^2 - 2x + 6: roots (1 +- i sqrt 17)/3 of modulus sqrt 2 > 1, not in rad(Q), so M = |a_0|
        let x = AlgebraicNumber::from_index(&p("3x^2-2x+6"), 0);
        let d = places(&x, &prec());
        assert_eq!(d.nonarchimedean.len(), 1);
        assert_eq!(d.nonarchimedean[0].height_exponent, r(1, 2));
        assert!(d.product_formula_holds(x.minpoly()));
        let m = mahler_roots(&x, &prec());
        assert_eq!(m.as_integer(), Some(6.into()));
        assert!(mahler_places(&x, &prec()).contains(&r(6, 1)));
        let y = AlgebraicNumber::from_index(&p("4x^3-6x+3"), 0);
        let pd = places(&y, &prec());
        assert!(pd.product_formula_holds(y.minpoly()));
        assert!(mahler_roots(&y, &prec()).enclosure().overlaps(pd.measure().enclosure()));
    }

    #[test]
    fn newton_polygons() {
        // 4x^2 + 2x + 1 at 2: root valuations -1, -1
        assert_eq!(newton_polygon(&p("4x^2+2x+1"), &2.into()), vec![(r(-1, 1), 2)]);
        assert_eq!(newton_polygon(&p("x^2+2x+4"), &2.into()), vec![(r(1, 1), 2)]);
        assert_eq!(newton_polygon(&p("2x^2+x+2"), &2.into()), vec![(r(1, 1), 1), (r(-1, 1), 1)]);
    }

    #[test]
    fn surd_measures() {
        let s = |b: i64, num: i64, den: i64| SurdExpr::new(RootOfUnity::one(), r(b, 1), r(num, den)).unwrap();
        assert_eq!(measure_of_surd(&s(2, 1, 2)).unwrap().as_integer(), Some(2.into()));
        assert_eq!(measure_of_surd(&s(2, 1, 3)).unwrap().as_integer(), Some(2.into()));
        assert_eq!(measure_of_surd(&s(4, 1, 2)).unwrap().as_integer(), Some(2.into()));
        let t = SurdExpr::new(RootOfUnity::new(8, 1), r(3, 2), r(2, 3)).unwrap();
        let m = measure_of_surd(&t).unwrap();
        let x = t.to_algebraic().unwrap();
        assert_eq!(mahler_roots(&x, &prec()), m);
        assert!(mahler_places(&x, &prec()).contains(&m.as_rational().unwrap()));
    }

    #[test]
    fn kronecker_on_small_polynomials() {
        let mut seen = 0;
        for code in 0..5i64.pow(5) {
            let mut c = Vec::new();
            let mut k = code;
            for _ in 0..5 {
                c.push(k % 5 - 2);
                k /= 5;
            }
            let f = IntPoly::from_i64s(&c);
            if f.degree() == 0 || f.coeff(0).is_zero() {
                continue;
            }
            for g in crate::polycore::irreducible_factors(&f) {
                let x = AlgebraicNumber::from_index(&g, 0);
                let m = mahler_roots(&x, &pow2_neg(30));
                assert_eq!(m.contains(&BigRational::one()), x.is_torsion(), "{g}");
                assert_eq!(m.is_one(), x.is_torsion());
                seen += 1;
            }
        }
        assert!(seen > 500);
    }

    #[test]
    fn conjugates_share_measures() {
        let f = p("x^4-2x^3+5x-3");
        let ms: Vec<MeasureValue> =
            AlgebraicNumber::roots_of(&f).iter().map(|c| mahler_roots(c, &pow2_neg(40))).collect();
        assert!(ms.iter().all(|m| m == &ms[0]));
    }

    fn surd_strategy() -> impl Strategy<Value = SurdExpr> {
        (1u64..7, 0i64..6, 1i64..13, 1i64..13, -3i64..4, 1i64..4).prop_filter_map("nonzero", |(m, j, a, b, e, q)| {
            (e != 0).then(|| SurdExpr::new(RootOfUnity::new(m, j), r(a, b), r(e, q)).ok()).flatten()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn height_identities(s in surd_strategy(), n in -4i64..5, m in 1u64..7, j in 0i64..6) {
            let h = height_of_surd(&s);
            let zeta = SurdExpr::root_of_unity(RootOfUnity::new(m, j));
            prop_assert_eq!(height_of_surd(&zeta.mul(&s)), h.clone());
            let hn = height_of_surd(&s.pow(n));
            prop_assert_eq!(hn, h.pow(&BigRational::from_integer(n.abs().into()), EXACT_BITS));
            let x = s.to_algebraic().unwrap();
            let hw = weil_height(&x, &pow2_neg(40));
            prop_assert_eq!(hw, h);
        }

        #[test]
        fn triangle_inequality(a in surd_strategy(), b in surd_strategy()) {
            let prec = pow2_neg(40);
            let (x, y) = (a.to_algebraic().unwrap(), b.to_algebraic().unwrap());
            let xy = a.mul(&b).to_algebraic().unwrap();
            let lhs = weil_height(&xy, &prec);
            let rhs = weil_height(&x, &prec).mul(&weil_height(&y, &prec));
            prop_assert!(lhs.hi() <= rhs.hi());
            prop_assert_ne!(lhs.compare(&rhs), Some(Ordering::Greater));
        }
    }
}
