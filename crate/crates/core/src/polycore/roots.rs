//! Certified complex root isolation.
//!
//! Approximations come from Aberth-Ehrlich iteration in fixed-point big
//! integer arithmetic. Each approximation `z_i` is certified by the
//! inclusion disc of radius `n |p(z_i)| / (|a_n| prod_{j != i} |z_i - z_j|)`:
//! the union of these discs contains every root, and a connected component
//! made of `k` discs contains exactly `k` roots. All certificate arithmetic
//! is exact.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polycore::factor::squarefree_decomposition;
use crate::polycore::interval::{ceil_dyadic, floor_dyadic, root_ceil, root_floor, ComplexInterval, Interval};
use crate::polycore::IntPoly;

/// Closed rectangle `[re_lo, re_hi] x [im_lo, im_hi]` holding exactly
/// `multiplicity` roots of its polynomial (counted with multiplicity).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RootBox {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
    pub multiplicity: usize,
    /// Whether the enclosed root is certified real.
    pub real: bool,
}

impl RootBox {
    fn around(re: BigRational, im: BigRational, radius: &BigRational, multiplicity: usize, real: bool) -> Self {
        RootBox {
            re_lo: &re - radius,
            re_hi: &re + radius,
            im_lo: &im - radius,
            im_hi: &im + radius,
            multiplicity,
            real,
        }
    }

    /// Box around an exactly known rational root.
    pub fn exact(r: &BigRational, precision: &BigRational, multiplicity: usize) -> Self {
        let rad = precision / BigRational::from_integer(4.into());
        Self::around(r.clone(), BigRational::zero(), &rad, multiplicity, true)
    }

    pub fn re(&self) -> Interval {
        Interval::new(self.re_lo.clone(), self.re_hi.clone())
    }

    pub fn im(&self) -> Interval {
        Interval::new(self.im_lo.clone(), self.im_hi.clone())
    }

    /// Enclosure of the root; the imaginary part is exactly zero for real roots.
    pub fn enclosure(&self) -> ComplexInterval {
        let im = if self.real { Interval::point(BigRational::zero()) } else { self.im() };
        ComplexInterval::new(self.re(), im)
    }

    pub fn center(&self) -> (BigRational, BigRational) {
        (self.re().mid(), self.im().mid())
    }

    /// The larger of the two side lengths.
    pub fn width(&self) -> BigRational {
        let a = &self.re_hi - &self.re_lo;
        let b = &self.im_hi - &self.im_lo;
        a.max(b)
    }

    pub fn intersects(&self, other: &RootBox) -> bool {
        self.re().overlaps(&other.re()) && self.im().overlaps(&other.im())
    }

    pub fn contains_box(&self, other: &RootBox) -> bool {
        self.re().contains_interval(&other.re()) && self.im().contains_interval(&other.im())
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re().contains(re) && self.im().contains(im)
    }

    /// Complex conjugate box.
    pub fn mirror(&self) -> RootBox {
        RootBox {
            re_lo: self.re_lo.clone(),
            re_hi: self.re_hi.clone(),
            im_lo: -&self.im_hi,
            im_hi: -&self.im_lo,
            multiplicity: self.multiplicity,
            real: self.real,
        }
    }

    /// Enclosure of `|z|^2` over the box.
    pub fn modulus_sq(&self) -> Interval {
        let re = self.re().abs();
        let im = self.im().abs();
        if self.real {
            return re.mul(&re);
        }
        re.mul(&re).add(&im.mul(&im))
    }

    /// Enclosure of `|z|` over the box, rounded outward to `2^-bits`.
    pub fn modulus(&self, bits: u32) -> Interval {
        if self.real {
            return self.re().abs().round_out(bits);
        }
        let sq = self.modulus_sq();
        Interval::new(root_floor(&sq.lo, 2, bits), root_ceil(&sq.hi, 2, bits))
    }
}

impl std::fmt::Debug for RootBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RootBox(re {:?}, im {:?}, m={}, real={})", self.re(), self.im(), self.multiplicity, self.real)
    }
}

/// Bits needed so that `2^-bits <= precision`.
pub fn precision_bits(precision: &BigRational) -> u32 {
    assert!(precision.is_positive(), "precision must be positive");
    let mut bits = 0u32;
    let mut v = BigRational::one();
    while &v > precision {
        v /= BigRational::from_integer(2.into());
        bits += 1;
    }
    bits
}

/// Fixed-point complex number `(re + i im) / 2^w`.
#[derive(Clone, Debug, PartialEq)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

impl Fx {
    fn zero() -> Self {
        Fx { re: BigInt::zero(), im: BigInt::zero() }
    }
    fn add(&self, o: &Fx) -> Fx {
        Fx { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Fx) -> Fx {
        Fx { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Fx, w: u32) -> Fx {
        Fx {
            re: (&self.re * &o.re - &self.im * &o.im) >> w,
            im: (&self.re * &o.im + &self.im * &o.re) >> w,
        }
    }
    fn div(&self, o: &Fx, w: u32) -> Option<Fx> {
        let d = &o.re * &o.re + &o.im * &o.im;
        if d.is_zero() {
            return None;
        }
        Some(Fx {
            re: ((&self.re * &o.re + &self.im * &o.im) << w) / &d,
            im: ((&self.im * &o.re - &self.re * &o.im) << w) / &d,
        })
    }
    fn norm_sq(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }
    fn rescale(&self, from: u32, to: u32) -> Fx {
        if to >= from {
            Fx { re: &self.re << (to - from), im: &self.im << (to - from) }
        } else {
            Fx { re: &self.re >> (from - to), im: &self.im >> (from - to) }
        }
    }
    fn from_f64(z: Complex64, w: u32) -> Fx {
        let conv = |v: f64| -> BigInt {
            let (m, e) = frexp(v);
            let mant = BigInt::from((m * (1u64 << 53) as f64) as i64);
            let shift = e - 53 + w as i32;
            if shift >= 0 {
                mant << shift as u32
            } else {
                mant >> (-shift) as u32
            }
        };
        Fx { re: conv(z.re), im: conv(z.im) }
    }
}

fn frexp(v: f64) -> (f64, i32) {
    if v == 0.0 || !v.is_finite() {
        return (0.0, 0);
    }
    let e = v.abs().log2().floor() as i32 + 1;
    (v / 2f64.powi(e), e)
}

/// `(p(z), p'(z))` in fixed point.
fn eval_fx(coeffs: &[BigInt], z: &Fx, w: u32) -> (Fx, Fx) {
    let mut val = Fx::zero();
    let mut der = Fx::zero();
    for c in coeffs.iter().rev() {
        der = der.mul(z, w).add(&val);
        val = val.mul(z, w).add(&Fx { re: c << w, im: BigInt::zero() });
    }
    (val, der)
}

fn aberth_f64(coeffs: &[BigInt]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].to_f64()?;
    let c: Vec<f64> = coeffs.iter().map(|a| a.to_f64().map(|v| v / lc)).collect::<Option<_>>()?;
    if c.iter().any(|v| !v.is_finite()) {
        return None;
    }
    // Fujiwara-style bound for the initial circle.
    let radius = (0..n)
        .map(|k| c[k].abs().powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 1.1;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
            let step = w / (Complex64::new(1.0, 0.0) - w * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z.iter().all(|v| v.is_finite()).then_some(z)
}

/// One sweep of Aberth iteration; returns the largest step (fixed-point units).
fn aberth_sweep(coeffs: &[BigInt], z: &mut [Fx], w: u32) -> BigInt {
    let n = z.len();
    let one = Fx { re: BigInt::one() << w, im: BigInt::zero() };
    let mut max_step = BigInt::zero();
    for i in 0..n {
        let (v, d) = eval_fx(coeffs, &z[i], w);
        if v.re.is_zero() && v.im.is_zero() {
            continue;
        }
        let nudge = Fx { re: BigInt::from(i + 1), im: BigInt::from(2 * i + 1) };
        let Some(ratio) = v.div(&d, w) else {
            z[i] = z[i].add(&nudge);
            continue;
        };
        let mut s = Fx::zero();
        let mut collided = false;
        for j in 0..n {
            if j == i {
                continue;
            }
            match one.div(&z[i].sub(&z[j]), w) {
                Some(t) => s = s.add(&t),
                None => collided = true,
            }
        }
        if collided {
            z[i] = z[i].add(&nudge);
            continue;
        }
        let denom = one.sub(&ratio.mul(&s, w));
        let step = ratio.div(&denom, w).unwrap_or(ratio);
        z[i] = z[i].sub(&step);
        let m = step.re.abs().max(step.im.abs());
        if m > max_step {
            max_step = m;
        }
    }
    max_step
}

/// Certified disc radii (rounded up to `2^-w`) for the approximations `z`,
/// or `None` if some pair of approximations coincides.
fn inclusion_radii(coeffs: &[BigInt], z: &[Fx], w: u32) -> Option<Vec<BigInt>> {
    let n = z.len();
    let s = BigInt::one() << w;
    let lc = coeffs[n].clone();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // acc = 2^{wn} p(z_i), exact Gaussian integer Horner.
        let mut acc = Fx { re: lc.clone(), im: BigInt::zero() };
        let mut spow = BigInt::one();
        for k in (0..n).rev() {
            spow *= &s;
            acc = Fx {
                re: &acc.re * &z[i].re - &acc.im * &z[i].im + &coeffs[k] * &spow,
                im: &acc.re * &z[i].im + &acc.im * &z[i].re,
            };
        }
        let mut q = Fx { re: BigInt::one(), im: BigInt::zero() };
        for j in 0..n {
            if j != i {
                let d = z[i].sub(&z[j]);
                q = Fx {
                    re: &q.re * &d.re - &q.im * &d.im,
                    im: &q.re * &d.im + &q.im * &d.re,
                };
            }
        }
        let qn = q.norm_sq();
        if qn.is_zero() {
            return None;
        }
        // r^2 = n^2 |acc|^2 / (lc^2 |q|^2 2^{2w}); in units of 2^-w:
        // (r 2^w)^2 = n^2 |acc|^2 / (lc^2 |q|^2).
        let num = BigInt::from(n * n) * acc.norm_sq();
        let den = &lc * &lc * qn;
        let sq = num.div_ceil(&den);
        let mut r = sq.sqrt();
        if &r * &r < sq {
            r += 1;
        }
        out.push(r + 1);
    }
    Some(out)
}

/// Tries to certify; returns boxes in fixed-point units when all boxes are
/// pairwise disjoint and no wider than `max_width`.
fn certify(coeffs: &[BigInt], z: &[Fx], w: u32, max_width: &BigInt) -> Option<Vec<(Fx, BigInt, bool)>> {
    let radii = inclusion_radii(coeffs, z, w)?;
    let n = z.len();
    for r in &radii {
        if &(r * 2) > max_width {
            return None;
        }
    }
    let apart = |a: &Fx, ra: &BigInt, b: &Fx, rb: &BigInt| -> bool {
        let sum = ra + rb;
        (&a.re - &b.re).abs() > sum || (&a.im - &b.im).abs() > sum
    };
    for i in 0..n {
        for j in i + 1..n {
            if !apart(&z[i], &radii[i], &z[j], &radii[j]) {
                return None;
            }
        }
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mirror = Fx { re: z[i].re.clone(), im: -&z[i].im };
        let hits: Vec<usize> = (0..n).filter(|&j| !apart(&mirror, &radii[i], &z[j], &radii[j])).collect();
        if hits.len() != 1 {
            return None;
        }
        out.push((z[i].clone(), radii[i].clone(), hits[0] == i));
    }
    Some(out)
}

fn to_box(c: &Fx, r: &BigInt, w: u32, multiplicity: usize, real: bool) -> RootBox {
    let s = BigInt::one() << w;
    let q = |v: &BigInt| BigRational::new(v.clone(), s.clone());
    let (re, im, rad) = (q(&c.re), q(&c.im), q(r));
    RootBox::around(re, im, &rad, multiplicity, real)
}

/// Isolates the roots of a squarefree polynomial of degree >= 2.
fn isolate_squarefree(f: &IntPoly, precision: &BigRational) -> Vec<RootBox> {
    let coeffs = f.coeffs().to_vec();
    let n = f.degree();
    let bits = precision_bits(precision);
    let mut w = (bits + 8).max(64);
    let seeds = aberth_f64(&coeffs);
    let mut z: Vec<Fx> = match seeds {
        Some(s) => s.into_iter().map(|c| Fx::from_f64(c, w)).collect(),
        None => {
            let bound: BigInt = f.max_abs_coeff() * 2 / f.leading().abs() + 1;
            let bf = bound.to_f64().unwrap_or(1e300).min(1e300);
            (0..n)
                .map(|k| {
                    Fx::from_f64(
                        Complex64::from_polar(bf, std::f64::consts::TAU * (k as f64 + 0.25) / n as f64 + 0.4),
                        w,
                    )
                })
                .collect()
        }
    };
    loop {
        let max_width = BigInt::one() << (w - bits);
        for _ in 0..400 {
            let step = aberth_sweep(&coeffs, &mut z, w);
            if step < BigInt::from(16) {
                break;
            }
        }
        if let Some(cert) = certify(&coeffs, &z, w, &max_width) {
            let boxes: Vec<RootBox> = cert.iter().map(|(c, r, real)| to_box(c, r, w, 1, *real)).collect();
            return symmetrize(boxes);
        }
        assert!(w < (1 << 20), "root isolation failed to converge for {f}");
        let nw = w * 2;
        z = z.iter().map(|v| v.rescale(w, nw)).collect();
        w = nw;
    }
}

/// Replaces the lower box of each conjugate pair by the mirror image of the
/// upper one, so that both share their real interval exactly.
fn symmetrize(mut boxes: Vec<RootBox>) -> Vec<RootBox> {
    let upper: Vec<usize> = (0..boxes.len()).filter(|&i| !boxes[i].real && boxes[i].center().1.is_positive()).collect();
    let original = boxes.clone();
    for i in upper {
        let m = original[i].mirror();
        let partners: Vec<usize> = (0..boxes.len()).filter(|&j| j != i && original[j].intersects(&m)).collect();
        if let [j] = partners[..] {
            boxes[j] = m;
        }
    }
    let disjoint = (0..boxes.len()).all(|i| (i + 1..boxes.len()).all(|j| !boxes[i].intersects(&boxes[j])));
    if disjoint {
        boxes
    } else {
        original
    }
}

fn isolate_factor(g: &IntPoly, precision: &BigRational, multiplicity: usize) -> Vec<RootBox> {
    if g.degree() == 1 {
        let r = BigRational::new(-g.coeff(0), g.coeff(1));
        return vec![RootBox::exact(&r, precision, multiplicity)];
    }
    let mut boxes = isolate_squarefree(g, precision);
    for b in &mut boxes {
        b.multiplicity = multiplicity;
    }
    boxes
}

/// Isolating boxes for all distinct roots of `p`, each of width at most
/// `precision`, carrying multiplicities that sum to `deg p`.
pub fn isolate_roots(p: &IntPoly, precision: &BigRational) -> Vec<RootBox> {
    assert!(!p.is_zero(), "isolate_roots of the zero polynomial");
    let v = p.x_valuation();
    let rest = p.shift_down(v);
    let parts = squarefree_decomposition(&rest);
    let mut prec = precision.clone();
    loop {
        let mut boxes = Vec::new();
        if v > 0 {
            boxes.push(RootBox::exact(&BigRational::zero(), &prec, v));
        }
        for (g, m) in &parts {
            boxes.extend(isolate_factor(g, &prec, *m));
        }
        let disjoint = (0..boxes.len()).all(|i| (i + 1..boxes.len()).all(|j| !boxes[i].intersects(&boxes[j])));
        if disjoint {
            sort_boxes(&mut boxes);
            return boxes;
        }
        prec /= BigRational::from_integer(16.into());
    }
}

/// Deterministic order: by real part, then imaginary part of the center.
pub fn sort_boxes(boxes: &mut [RootBox]) {
    boxes.sort_by(|a, b| {
        let (ar, ai) = a.center();
        let (br, bi) = b.center();
        ar.cmp(&br).then(ai.cmp(&bi))
    });
}

/// Shrinks `b`, which isolates a simple root of the squarefree `f`, to
/// width at most `precision`.
pub fn refine_root(f: &IntPoly, b: &RootBox, precision: &BigRational) -> RootBox {
    if &b.width() <= precision {
        return b.clone();
    }
    if f.degree() == 1 {
        let r = BigRational::new(-f.coeff(0), f.coeff(1));
        return RootBox::exact(&r, precision, b.multiplicity);
    }
    if let Some(nb) = newton_refine(f, b, precision) {
        return nb;
    }
    let mut prec = precision.clone();
    loop {
        let hits: Vec<RootBox> = isolate_roots(f, &prec).into_iter().filter(|c| c.intersects(b)).collect();
        if hits.len() == 1 {
            let mut out = hits.into_iter().next().unwrap();
            out.multiplicity = b.multiplicity;
            return out;
        }
        prec /= BigRational::from_integer(16.into());
    }
}

/// Newton iteration from the box center. Any point `z` has a root of `f`
/// within `n |f(z) / f'(z)|`; when that disc lies inside `b` it must hold
/// the root isolated by `b`.
fn newton_refine(f: &IntPoly, b: &RootBox, precision: &BigRational) -> Option<RootBox> {
    let n = f.degree();
    let coeffs = f.coeffs();
    let bits = precision_bits(precision);
    let w = bits + 32;
    let (cr, ci) = b.center();
    let s = BigInt::one() << w;
    let fx = |q: &BigRational| (q.numer() * &s).div_floor(q.denom());
    let mut z = Fx { re: fx(&cr), im: if b.real { BigInt::zero() } else { fx(&ci) } };
    for _ in 0..64 {
        let (v, d) = eval_fx(coeffs, &z, w);
        let step = v.div(&d, w)?;
        z = z.sub(&step);
        if b.real {
            z.im = BigInt::zero();
        }
        if step.re.abs().max(step.im.abs()) < BigInt::from(4) {
            break;
        }
    }
    // exact certificate: radius^2 = n^2 |f(z)|^2 / |f'(z)|^2 at the rational point z
    let zr = BigRational::new(z.re.clone(), s.clone());
    let zi = BigRational::new(z.im.clone(), s.clone());
    let (vr, vi, dr, di) = eval_exact(coeffs, &zr, &zi);
    let dn = &dr * &dr + &di * &di;
    if dn.is_zero() {
        return None;
    }
    let r2 = BigRational::from_integer(BigInt::from(n * n)) * (&vr * &vr + &vi * &vi) / dn;
    let rad = root_ceil(&r2, 2, w);
    let cand = RootBox::around(zr, zi, &rad, b.multiplicity, b.real);
    if !b.contains_box(&cand) {
        return None;
    }
    let re = cand.re().intersect(&b.re())?;
    let mut im = cand.im().intersect(&b.im())?;
    if b.real {
        im = Interval::new(-&rad, rad.clone());
    }
    let out = RootBox {
        re_lo: floor_dyadic(&re.lo, w),
        re_hi: ceil_dyadic(&re.hi, w),
        im_lo: floor_dyadic(&im.lo, w),
        im_hi: ceil_dyadic(&im.hi, w),
        multiplicity: b.multiplicity,
        real: b.real,
    };
    (&out.width() <= precision).then_some(out)
}

/// `f(z)` and `f'(z)` for a rational complex point, as real/imaginary parts.
fn eval_exact(coeffs: &[BigInt], zr: &BigRational, zi: &BigRational) -> (BigRational, BigRational, BigRational, BigRational) {
    let (mut vr, mut vi) = (BigRational::zero(), BigRational::zero());
    let (mut dr, mut di) = (BigRational::zero(), BigRational::zero());
    for c in coeffs.iter().rev() {
        let ndr = &dr * zr - &di * zi + &vr;
        let ndi = &dr * zi + &di * zr + &vi;
        dr = ndr;
        di = ndi;
        let nvr = &vr * zr - &vi * zi + BigRational::from_integer(c.clone());
        let nvi = &vr * zi + &vi * zr;
        vr = nvr;
        vi = nvi;
    }
    (vr, vi, dr, di)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::pow2_neg;

    fn p(s: &str) -> IntPoly {
        IntPoly::parse(s).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Bisection oracle for a real root of `f` on `[lo, hi]` with a sign change.
    fn bisect(f: &IntPoly, mut lo: BigRational, mut hi: BigRational, steps: usize) -> (BigRational, BigRational) {
        let flo = f.eval_rational(&lo);
        for _ in 0..steps {
            let mid = (&lo + &hi) / r(2, 1);
            let fm = f.eval_rational(&mid);
            if fm.is_zero() {
                return (mid.clone(), mid);
            }
            if fm.is_negative() == flo.is_negative() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo, hi)
    }

    #[test]
    fn sqrt2_boxes() {
        let f = p("x^2-2");
        let boxes = isolate_roots(&f, &r(1, 100));
        assert_eq!(boxes.len(), 2);
        let (lo, hi) = bisect(&f, r(1, 1), r(2, 1), 40);
        assert!(boxes[1].real && boxes[1].re().overlaps(&Interval::new(lo.clone(), hi.clone())));
        assert!(boxes[0].re().overlaps(&Interval::new(-hi, -lo)));
        for b in &boxes {
            assert!(b.width() <= r(1, 100));
        }
    }

    #[test]
    fn linear_and_imaginary() {
        let boxes = isolate_roots(&p("x-3"), &r(1, 1000));
        assert_eq!(boxes.len(), 1);
        assert!(boxes[0].contains_point(&r(3, 1), &r(0, 1)));
        let boxes = isolate_roots(&p("x^2+1"), &r(1, 1000));
        assert_eq!(boxes.len(), 2);
        assert!(boxes[0].contains_point(&r(0, 1), &r(-1, 1)));
        assert!(boxes[1].contains_point(&r(0, 1), &r(1, 1)));
        assert!(!boxes[0].real && !boxes[1].real);
    }

    #[test]
    fn multiplicities_and_zero() {
        let f = p("x-1").pow(2).mul(&p("x^2+1")).mul(&p("x").pow(3));
        let boxes = isolate_roots(&f, &r(1, 100));
        let total: usize = boxes.iter().map(|b| b.multiplicity).sum();
        assert_eq!(total, f.degree());
        assert_eq!(boxes.len(), 4);
    }

    #[test]
    fn lehmer_roots_at_high_precision() {
        let f = p("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1");
        let prec = pow2_neg(60);
        let boxes = isolate_roots(&f, &prec);
        assert_eq!(boxes.len(), 10);
        assert_eq!(boxes.iter().filter(|b| b.real).count(), 2);
        let (lo, hi) = bisect(&f, r(1, 1), r(2, 1), 80);
        let big = boxes.last().unwrap();
        assert!(big.real && big.re().overlaps(&Interval::new(lo, hi)));
    }

    #[test]
    fn refinement_shrinks_same_root() {
        let f = p("x^3-x-1");
        let boxes = isolate_roots(&f, &r(1, 10));
        for b in &boxes {
            let nb = refine_root(&f, b, &pow2_neg(80));
            assert!(nb.width() <= pow2_neg(80));
            assert!(b.intersects(&nb));
            assert_eq!(nb.real, b.real);
        }
    }

    #[test]
    fn close_roots_separate() {
        // roots 1/1000 apart
        let f = p("1000x-1000").mul(&p("1000x-1001")).mul(&p("x^2+x+7"));
        let boxes = isolate_roots(&f, &r(1, 10));
        assert_eq!(boxes.len(), 4);
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(40))]
        #[test]
        fn boxes_disjoint_and_counted(c in proptest::collection::vec(-9i64..=9, 2..=8)) {
            let f = IntPoly::from_i64s(&c);
            proptest::prop_assume!(f.degree() >= 1);
            let boxes = isolate_roots(&f, &r(1, 1 << 20));
            let total: usize = boxes.iter().map(|b| b.multiplicity).sum();
            proptest::prop_assert_eq!(total, f.degree());
            for i in 0..boxes.len() {
                for j in i + 1..boxes.len() {
                    proptest::prop_assert!(!boxes[i].intersects(&boxes[j]));
                }
            }
        }
    }
}
