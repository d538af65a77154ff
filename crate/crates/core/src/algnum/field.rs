//! Number fields `Q(theta)` given by a primitive element, polynomials over
//! them, and norm-based (Trager) factorization.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algnum::AlgebraicNumber;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::polycore::factor::{squarefree_modular, squarefree_part};
use crate::polycore::powersum::{composed_sum, from_power_sums, power_sums};
use crate::polycore::{irreducible_factors, ComplexInterval, IntPoly, RatPoly};

/// Element of a number field: rational coordinates in the power basis
/// `1, theta, ..., theta^(n-1)`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldElem {
    coeffs: Vec<BigRational>,
}

impl FieldElem {
    fn from_ratpoly(p: RatPoly) -> Self {
        FieldElem { coeffs: p.into_coeffs() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn to_ratpoly(&self) -> RatPoly {
        RatPoly::new(self.coeffs.clone())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})t"),
                _ => format!("({c})t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Polynomial over a number field, constant term first.
pub type KPoly = Vec<FieldElem>;

#[derive(Clone, Debug)]
pub struct NumberField {
    generator: AlgebraicNumber,
    modulus: RatPoly,
    traces: Vec<BigRational>,
    cap: usize,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.generator == other.generator
    }
}

impl NumberField {
    pub fn new(generator: AlgebraicNumber) -> Self {
        let modulus = generator.minpoly().to_ratpoly().monic();
        let n = modulus.degree();
        let traces = power_sums(&modulus, n.saturating_sub(1));
        NumberField { generator, modulus, traces, cap: Config::DEFAULT_CLOSURE_CAP }
    }

    pub fn rationals() -> Self {
        Self::new(AlgebraicNumber::one())
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree()
    }

    pub fn generator(&self) -> &AlgebraicNumber {
        &self.generator
    }

    pub fn is_rationals(&self) -> bool {
        self.degree() == 1
    }

    fn check_cap(&self) -> Result<()> {
        if self.degree() > self.cap {
            return Err(Error::UnsupportedDegree { what: "number field", degree: self.degree(), cap: self.cap });
        }
        Ok(())
    }

    // ---- element arithmetic ----

    pub fn reduce(&self, p: &RatPoly) -> FieldElem {
        FieldElem::from_ratpoly(p.rem(&self.modulus))
    }

    pub fn from_rational(&self, q: BigRational) -> FieldElem {
        FieldElem::from_ratpoly(RatPoly::constant(q))
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::default()
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// The generator `theta` as a field element.
    pub fn theta(&self) -> FieldElem {
        self.reduce(&RatPoly::x())
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem::from_ratpoly(a.to_ratpoly().add(&b.to_ratpoly()))
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem::from_ratpoly(a.to_ratpoly().sub(&b.to_ratpoly()))
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem::from_ratpoly(a.to_ratpoly().neg())
    }

    pub fn scale(&self, a: &FieldElem, q: &BigRational) -> FieldElem {
        FieldElem::from_ratpoly(a.to_ratpoly().scale(q))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.reduce(&a.to_ratpoly().mul(&b.to_ratpoly()))
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = a.to_ratpoly().ext_gcd(&self.modulus);
        debug_assert!(g.degree() == 0);
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElem, n: i64) -> Result<FieldElem> {
        let base = if n < 0 { self.inv(a)? } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self, a: &FieldElem) -> BigRational {
        a.coeffs.iter().zip(&self.traces).map(|(c, t)| c * t).sum()
    }

    /// Characteristic polynomial of multiplication by `a` (monic, degree n).
    pub fn charpoly(&self, a: &FieldElem) -> RatPoly {
        let n = self.degree();
        let mut p = vec![BigRational::from_integer(BigInt::from(n))];
        let mut pw = self.one();
        for _ in 1..=n {
            pw = self.mul(&pw, a);
            p.push(self.trace(&pw));
        }
        from_power_sums(&p, n)
    }

    pub fn norm(&self, a: &FieldElem) -> BigRational {
        if let Some(q) = a.as_rational() {
            return num_traits::pow(q, self.degree());
        }
        let c = self.charpoly(a).coeff(0);
        if self.degree() % 2 == 1 {
            -c
        } else {
            c
        }
    }

    /// Minimal polynomial over Q (primitive, irreducible).
    pub fn minpoly(&self, a: &FieldElem) -> IntPoly {
        if let Some(q) = a.as_rational() {
            return IntPoly::linear_for(&q);
        }
        squarefree_part(&self.charpoly(a).to_intpoly())
    }

    /// Enclosure of the value of `a` under the embedding fixed by the generator.
    pub fn enclosure(&self, a: &FieldElem, bits: u32) -> ComplexInterval {
        if let Some(q) = a.as_rational() {
            return ComplexInterval::real(q);
        }
        let n = self.degree() as u32;
        let m = self.generator.modulus(4).hi.clone().max(BigRational::one());
        let extra = num_traits::ToPrimitive::to_f64(&m).unwrap_or(1.0).log2().ceil() as u32 * n + 8;
        let t = self.generator.enclosure(bits + extra);
        a.coeffs.iter().rev().fold(ComplexInterval::real(BigRational::zero()), |acc, c| {
            acc.mul(&t).add(&ComplexInterval::real(c.clone()))
        })
    }

    pub fn to_algebraic(&self, a: &FieldElem) -> Result<AlgebraicNumber> {
        if let Some(q) = a.as_rational() {
            return Ok(AlgebraicNumber::from_rational(q));
        }
        let f = self.minpoly(a);
        AlgebraicNumber::select_root(&[f], |bits| Some(self.enclosure(a, bits)))
    }

    /// The element of this field equal to `x`, if any.
    pub fn embed(&self, x: &AlgebraicNumber) -> Result<Option<FieldElem>> {
        if let Some(q) = x.as_rational() {
            return Ok(Some(self.from_rational(q)));
        }
        if !self.degree().is_multiple_of(x.degree()) {
            return Ok(None);
        }
        self.check_cap()?;
        let f = self.poly_from_int(x.minpoly());
        for (g, _) in self.factor(&f)? {
            if g.len() != 2 {
                continue;
            }
            let c = self.neg(&g[0]);
            let v = AlgebraicNumber::select_root(&[x.minpoly().clone()], |bits| Some(self.enclosure(&c, bits)))?;
            if &v == x {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, x: &AlgebraicNumber) -> Result<bool> {
        Ok(self.embed(x)?.is_some())
    }

    // ---- polynomials over the field ----

    fn trim(mut p: KPoly) -> KPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn poly_from_int(&self, p: &IntPoly) -> KPoly {
        p.coeffs().iter().map(|c| self.from_rational(BigRational::from_integer(c.clone()))).collect()
    }

    pub fn poly_from_rat(&self, p: &RatPoly) -> KPoly {
        p.coeffs().iter().map(|c| self.from_rational(c.clone())).collect()
    }

    pub fn poly_add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        Self::trim((0..n).map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn poly_sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.len().max(b.len());
        let z = self.zero();
        Self::trim((0..n).map(|i| self.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect())
    }

    pub fn poly_scale(&self, a: &KPoly, c: &FieldElem) -> KPoly {
        Self::trim(a.iter().map(|x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // multiply as polynomials in (x, t) and reduce each coefficient once
        let mut out = vec![RatPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xp = x.to_ratpoly();
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(&xp.mul(&y.to_ratpoly()));
            }
        }
        Self::trim(out.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn poly_degree(p: &KPoly) -> usize {
        p.len().saturating_sub(1)
    }

    pub fn poly_monic(&self, p: &KPoly) -> Result<KPoly> {
        let lc = p.last().ok_or(Error::ZeroPolynomial)?;
        let inv = self.inv(lc)?;
        Ok(self.poly_scale(p, &inv))
    }

    pub fn poly_divrem(&self, a: &KPoly, b: &KPoly) -> Result<(KPoly, KPoly)> {
        let lc = b.last().ok_or(Error::ZeroPolynomial)?;
        let inv = self.inv(lc)?;
        let mut r = a.clone();
        if r.len() < b.len() {
            return Ok((Vec::new(), r));
        }
        let db = b.len() - 1;
        let mut q = vec![self.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let t = self.mul(&r[k + db], &inv);
            if t.is_zero() {
                continue;
            }
            for (j, bc) in b.iter().enumerate() {
                r[k + j] = self.sub(&r[k + j], &self.mul(&t, bc));
            }
            q[k] = t;
        }
        r.truncate(db);
        Ok((Self::trim(q), Self::trim(r)))
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &KPoly, b: &KPoly) -> Result<KPoly> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.poly_divrem(&a, &b)?.1;
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_derivative(&self, p: &KPoly) -> KPoly {
        Self::trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| self.scale(c, &BigRational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    pub fn poly_eval(&self, p: &KPoly, a: &FieldElem) -> FieldElem {
        p.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, a), c))
    }

    /// `p(x + c)`.
    pub fn poly_shift(&self, p: &KPoly, c: &FieldElem) -> KPoly {
        let lin = vec![c.clone(), self.one()];
        p.iter().rev().fold(Vec::new(), |acc, coef| self.poly_add(&self.poly_mul(&acc, &lin), &vec![coef.clone()]))
    }

    /// Enclosure of `p(z)` for a complex enclosure `z`.
    pub fn poly_eval_enclosure(&self, p: &KPoly, z: &ComplexInterval, bits: u32) -> ComplexInterval {
        p.iter().rev().fold(ComplexInterval::real(BigRational::zero()), |acc, c| {
            acc.mul(z).add(&self.enclosure(c, bits))
        })
    }

    /// `Norm_{K/Q}(p)`, by interpolating the element norms `N(p(t))` at integer points.
    pub fn poly_norm(&self, p: &KPoly) -> RatPoly {
        if self.is_rationals() {
            return RatPoly::new(p.iter().map(|c| c.as_rational().unwrap()).collect());
        }
        let d = Self::poly_degree(p) * self.degree();
        let xs: Vec<BigRational> = (0..=d as i64).map(|t| BigRational::from_integer(t.into())).collect();
        let ys: Vec<BigRational> = xs.iter().map(|x| self.norm(&self.poly_eval(p, &self.from_rational(x.clone())))).collect();
        interpolate(&xs, &ys)
    }

    /// Primitive `Norm_{K/Q}(p(x - s theta))` up to a constant. For rational `p`
    /// this is the composed sum of `p` with the minimal polynomial of `s theta`.
    fn shifted_norm(&self, p: &KPoly, s: i64) -> IntPoly {
        let st = self.scale(&self.theta(), &BigRational::from_integer(s.into()));
        let rational: Option<Vec<BigRational>> = p.iter().map(|c| c.as_rational()).collect();
        match rational {
            Some(c) if !self.is_rationals() => {
                let n = self.degree();
                let sb = BigRational::from_integer(s.into());
                let scaled: Vec<BigRational> =
                    self.modulus.coeffs().iter().enumerate().map(|(k, c)| c * num_traits::pow(sb.clone(), n - k)).collect();
                composed_sum(&RatPoly::new(c).to_intpoly(), &RatPoly::new(scaled).to_intpoly())
            }
            _ => self.poly_norm(&self.poly_shift(p, &self.neg(&st))).to_intpoly(),
        }
    }

    /// Irreducible factorization over this field: monic factors with multiplicities
    /// such that `lc(p) * prod g^m = p`.
    pub fn factor(&self, p: &KPoly) -> Result<Vec<(KPoly, usize)>> {
        self.check_cap()?;
        if p.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_rationals() {
            let ip = RatPoly::new(p.iter().map(|c| c.as_rational().unwrap()).collect()).to_intpoly();
            let fac = crate::polycore::factor_rational(&ip);
            return fac
                .factors
                .iter()
                .map(|(g, m)| Ok((self.poly_monic(&self.poly_from_int(g))?, *m)))
                .collect();
        }
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(p)? {
            for h in self.factor_squarefree(&g)? {
                out.push((h, m));
            }
        }
        Ok(out)
    }

    /// Yun's algorithm over the field; factors are monic.
    fn squarefree_decomposition(&self, p: &KPoly) -> Result<Vec<(KPoly, usize)>> {
        let f = self.poly_monic(p)?;
        if Self::poly_degree(&f) == 0 {
            return Ok(Vec::new());
        }
        let d = self.poly_derivative(&f);
        let a0 = self.poly_gcd(&f, &d)?;
        let mut b = self.poly_divrem(&f, &a0)?.0;
        let c = self.poly_divrem(&d, &a0)?.0;
        let mut dd = self.poly_sub(&c, &self.poly_derivative(&b));
        let mut out = Vec::new();
        let mut i = 1;
        while Self::poly_degree(&b) > 0 {
            let a = self.poly_gcd(&b, &dd)?;
            let nb = self.poly_divrem(&b, &a)?.0;
            let nc = self.poly_divrem(&dd, &a)?.0;
            if Self::poly_degree(&a) > 0 {
                out.push((a, i));
            }
            dd = self.poly_sub(&nc, &self.poly_derivative(&nb));
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    /// Trager's algorithm for a monic squarefree polynomial.
    fn factor_squarefree(&self, g: &KPoly) -> Result<Vec<KPoly>> {
        if Self::poly_degree(g) <= 1 {
            return Ok(vec![g.clone()]);
        }
        let theta = self.theta();
        for s in shifts().take(40) {
            let st = self.scale(&theta, &BigRational::from_integer(s.into()));
            let h = self.poly_shift(g, &self.neg(&st));
            let norm = self.shifted_norm(g, s);
            if !squarefree_modular(&norm) {
                continue;
            }
            let parts = irreducible_factors(&norm);
            if parts.len() == 1 {
                return Ok(vec![g.clone()]);
            }
            let mut out = Vec::new();
            for n in parts {
                let d = self.poly_gcd(&h, &self.poly_from_int(&n))?;
                if Self::poly_degree(&d) > 0 {
                    out.push(self.poly_shift(&d, &st));
                }
            }
            out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| format!("{a:?}").cmp(&format!("{b:?}"))));
            return Ok(out);
        }
        Err(Error::Refinement("no squarefree norm shift found".into()))
    }

    /// Monic irreducible factor over this field of the minimal polynomial of `x`
    /// that vanishes at `x`.
    pub fn minpoly_over(&self, x: &AlgebraicNumber) -> Result<KPoly> {
        let facs = self.factor(&self.poly_from_int(x.minpoly()))?;
        let facs: Vec<KPoly> = facs.into_iter().map(|(g, _)| g).collect();
        if facs.len() == 1 {
            return Ok(facs.into_iter().next().unwrap());
        }
        let mut alive: Vec<usize> = (0..facs.len()).collect();
        let mut bits = 24;
        while alive.len() > 1 {
            let z = x.enclosure(bits);
            alive.retain(|&i| self.poly_eval_enclosure(&facs[i], &z, bits).contains_zero());
            bits *= 2;
            if bits > 1 << 14 {
                return Err(Error::Refinement("could not separate factors over the field".into()));
            }
        }
        let i = *alive.first().ok_or_else(|| Error::Refinement("no factor vanishes".into()))?;
        Ok(facs[i].clone())
    }

    /// True iff the generator's minimal polynomial splits into linear factors here.
    pub fn is_galois(&self) -> Result<bool> {
        if self.is_rationals() || self.degree() == 2 {
            return Ok(true);
        }
        let f = self.poly_from_int(self.generator.minpoly());
        Ok(self.factor(&f)?.iter().all(|(g, _)| g.len() == 2))
    }
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).map(|k: i64| if k % 2 == 1 { k / 2 + 1 } else { -(k / 2) })
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut p = RatPoly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let lin = RatPoly::new(vec![-xs[i].clone(), BigRational::one()]);
        p = p.mul(&lin).add(&RatPoly::constant(dd[i].clone()));
    }
    p
}

/// Signed product of the conjugates of `x` over the Galois field `k`:
/// `(-1)^r g(0)` for the monic factor `g` (degree `r`) of the minimal
/// polynomial of `x` over `k` vanishing at `x`.
pub fn product_of_conjugates_over(x: &AlgebraicNumber, k: &NumberField) -> Result<FieldElem> {
    k.check_cap()?;
    if !k.is_galois()? {
        return Err(Error::NotGalois);
    }
    let g = k.minpoly_over(x)?;
    let c0 = g[0].clone();
    Ok(if (g.len() - 1) % 2 == 1 { k.neg(&c0) } else { c0 })
}

/// Galois closure of `Q(x)` with the embedding of `x` into it.
pub fn galois_closure(x: &AlgebraicNumber, cap: usize) -> Result<(NumberField, FieldElem)> {
    if x.degree() == 1 {
        let k = NumberField::rationals().with_cap(cap);
        let e = k.from_rational(x.as_rational().unwrap());
        return Ok((k, e));
    }
    if x.degree() > cap {
        return Err(Error::UnsupportedDegree { what: "galois closure", degree: x.degree(), cap });
    }
    let mut k = NumberField::new(x.clone()).with_cap(cap);
    let f = x.minpoly();
    let conj = x.conjugates();
    loop {
        let facs = k.factor(&k.poly_from_int(f))?;
        let Some((g, _)) = facs.iter().find(|(g, _)| g.len() > 2) else {
            break;
        };
        let e = g.len() - 1;
        let degree = k.degree() * e;
        if degree > cap {
            return Err(Error::UnsupportedDegree { what: "galois closure", degree, cap });
        }
        let beta = root_of_factor(&k, g, &conj)?;
        let mut next = None;
        for s in shifts().skip(1).take(40) {
            let sq = BigRational::from_integer(s.into());
            let norm = k.shifted_norm(g, s);
            if !squarefree_modular(&norm) {
                continue;
            }
            let gen = AlgebraicNumber::select_root(&[norm], |bits| {
                Some(beta.enclosure(bits).add(&k.generator().enclosure(bits).scale(&sq)))
            })?;
            next = Some(NumberField::new(gen).with_cap(cap));
            break;
        }
        k = next.ok_or_else(|| Error::Refinement("no primitive element found".into()))?;
    }
    let e = k.embed(x)?.ok_or_else(|| Error::Refinement("element does not embed in its closure".into()))?;
    Ok((k, e))
}

/// A conjugate of `x` that is a root of the factor `g` over `k`.
fn root_of_factor(k: &NumberField, g: &KPoly, conj: &[AlgebraicNumber]) -> Result<AlgebraicNumber> {
    let r = g.len() - 1;
    let mut bits = 24;
    loop {
        let vanishing: Vec<&AlgebraicNumber> = conj
            .iter()
            .filter(|c| k.poly_eval_enclosure(g, &c.enclosure(bits), bits).contains_zero())
            .collect();
        if vanishing.len() == r {
            return Ok(vanishing[0].clone());
        }
        bits *= 2;
        if bits > 1 << 14 {
            return Err(Error::Refinement("could not locate the roots of a factor".into()));
        }
    }
}
