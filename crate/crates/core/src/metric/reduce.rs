//! Moving representations into `rad(K_alpha)`.
//!
//! For a factor `a` of degree `r` over a Galois field `K`, the product `P` of
//! its conjugates over `K` lies in `K`, and an `r`-th root `b` of `P` satisfies
//! `M(b) <= M(a)`. Taking norms from the compositum shows that the target over
//! the product of the chosen roots is a root of unity.

use std::cmp::Ordering;

use num_integer::Integer;

use crate::algnum::{galois_closure, AlgebraicNumber, NumberField, RootOfUnity};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::heights::{compare_measures, mahler_roots};
use crate::polycore::irreducible_factors;

use super::{product, Representation};

/// Output of [`reduce_representation`]: `target = zeta * prod reduced.factors`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub field: NumberField,
    pub zeta: RootOfUnity,
    pub reduced: Representation,
    /// `r_n = [K(a_n) : K]`.
    pub orders: Vec<usize>,
    /// Products of conjugates `P_n = b_n^(r_n)`, elements of `K`.
    pub norms: Vec<AlgebraicNumber>,
    /// Whether `M(b_n) <= M(a_n)` was decided by certified comparison
    /// rather than by overlapping enclosures.
    pub measure_certified: Vec<bool>,
}

/// Degree over `field` and the signed product of conjugates over `field`.
fn relative_norm(x: &AlgebraicNumber, field: &NumberField) -> Result<(usize, AlgebraicNumber)> {
    let g = field.minpoly_over(x)?;
    let r = g.len() - 1;
    let c0 = g[0].clone();
    let p = if r % 2 == 1 { field.neg(&c0) } else { c0 };
    Ok((r, field.to_algebraic(&p)?))
}

/// True iff some power of `x` lies in the Galois field `field`.
pub fn in_rad(x: &AlgebraicNumber, field: &NumberField) -> Result<bool> {
    if !field.is_galois()? {
        return Err(Error::NotGalois);
    }
    let (r, p) = relative_norm(x, field)?;
    Ok(p.div(&x.pow_int(r as i64)?)?.is_torsion())
}

/// The `r`-th roots of `p`, sorted by decreasing real part, then decreasing imaginary part.
fn rth_roots(p: &AlgebraicNumber, r: usize) -> Result<Vec<AlgebraicNumber>> {
    let h = p.minpoly();
    let mut out = Vec::new();
    for f in irreducible_factors(&h.inflate(r)) {
        for b in AlgebraicNumber::roots_of(&f) {
            let power = AlgebraicNumber::select_root(std::slice::from_ref(h), |bits| {
                Some(b.enclosure(bits + 8 * r as u32).pow(r as u32))
            })?;
            if &power == p {
                out.push(b);
            }
        }
    }
    if out.len() != r {
        return Err(Error::BranchSearch(format!("found {} of {} roots", out.len(), r)));
    }
    out.sort_by(|x, y| {
        let ((xr, xi), (yr, yi)) = (x.approx(), y.approx());
        if (xr - yr).abs() > 1e-9 * (1.0 + xr.abs()) {
            yr.total_cmp(&xr)
        } else {
            yi.total_cmp(&xi)
        }
    });
    Ok(out)
}

fn measure_at_most(b: &AlgebraicNumber, a: &AlgebraicNumber, config: &Config) -> Result<bool> {
    if b == a {
        return Ok(true);
    }
    match mahler_roots(b, &config.precision).compare(&mahler_roots(a, &config.precision)) {
        Some(Ordering::Greater) => Err(Error::InvalidRepresentation("reduction increased a measure".into())),
        Some(_) => Ok(true),
        None => match compare_measures(b, a, 512) {
            Some(Ordering::Greater) => Err(Error::InvalidRepresentation("reduction increased a measure".into())),
            Some(_) => Ok(true),
            None => Ok(false),
        },
    }
}

/// Rewrites `target = a_1 ... a_N` as `target = zeta b_1 ... b_N` with
/// `b_n` in `rad(K_target)` and `M(b_n) <= M(a_n)`.
pub fn reduce_representation(rep: &Representation, config: &Config) -> Result<Reduction> {
    if !rep.holds()? {
        return Err(Error::InvalidRepresentation("product of factors differs from the target".into()));
    }
    let (field, _) = galois_closure(&rep.target, config.closure_cap)?;
    let mut betas = Vec::with_capacity(rep.len());
    let mut orders = Vec::with_capacity(rep.len());
    let mut norms = Vec::with_capacity(rep.len());
    for a in &rep.factors {
        let (r, p) = relative_norm(a, &field)?;
        let b = if r == 1 { a.clone() } else { rth_roots(&p, r)?.swap_remove(0) };
        betas.push(b);
        orders.push(r);
        norms.push(p);
    }
    let lhs = rep.zeta.to_algebraic().mul(&rep.target)?;
    let quotient = lhs.div(&product(&betas)?)?;
    let mut zeta = RootOfUnity::from_algebraic(&quotient)
        .ok_or_else(|| Error::BranchSearch("target over the reduced product is not torsion".into()))?;
    if !zeta.is_one() {
        if let Some(n) = orders.iter().position(|&r| (r as u64).is_multiple_of(zeta.order)) {
            betas[n] = zeta.to_algebraic().mul(&betas[n])?;
            zeta = RootOfUnity::one();
        }
    }
    let reduced = Representation { target: rep.target.clone(), factors: betas, zeta: zeta.inv().mul(&rep.zeta) };
    if !reduced.holds()? {
        return Err(Error::BranchSearch("reduced product identity failed".into()));
    }
    let mut measure_certified = Vec::with_capacity(rep.len());
    for (n, (b, a)) in reduced.factors.iter().zip(&rep.factors).enumerate() {
        if !field.contains(&b.pow_int(orders[n] as i64)?)? {
            return Err(Error::BranchSearch("reduced factor is not a root of a field element".into()));
        }
        measure_certified.push(measure_at_most(b, a, config)?);
    }
    Ok(Reduction { field, zeta, reduced, orders, norms, measure_certified })
}

/// Output of [`project_to_field`]: `rep` represents `zeta * target^power` by elements of the field.
#[derive(Clone, Debug)]
pub struct Projection {
    pub power: usize,
    pub orders: Vec<usize>,
    pub rep: Representation,
}

/// Raises a representation with factors in `rad(field)` to the power
/// `L = lcm(L_n)`, where `L_n = [field(a_n) : field]`, and regroups it as
/// `prod P_n^(L / L_n)` with `P_n` the product of conjugates of `a_n`.
pub fn project_to_field(rep: &Representation, field: &NumberField) -> Result<Projection> {
    let mut orders = Vec::with_capacity(rep.len());
    let mut norms = Vec::with_capacity(rep.len());
    for a in &rep.factors {
        if !in_rad(a, field)? {
            return Err(Error::InvalidRepresentation("factor is not in rad of the field".into()));
        }
        let (r, p) = relative_norm(a, field)?;
        orders.push(r);
        norms.push(p);
    }
    let power = orders.iter().fold(1usize, |l, &r| l.lcm(&r));
    let factors: Vec<AlgebraicNumber> = norms
        .iter()
        .zip(&orders)
        .map(|(p, &r)| p.pow_int((power / r) as i64))
        .collect::<Result<_>>()?;
    let target = rep.target.pow_int(power as i64)?;
    let quotient = product(&factors)?.div(&target)?;
    let zeta = RootOfUnity::from_algebraic(&quotient)
        .ok_or_else(|| Error::BranchSearch("projected product is not a torsion multiple of the target".into()))?;
    Ok(Projection { power, orders, rep: Representation { target, factors, zeta } })
}

/// [`project_to_field`] over the Galois closure of the target.
pub fn project_to_closure(rep: &Representation, config: &Config) -> Result<Projection> {
    let (field, _) = galois_closure(&rep.target, config.closure_cap)?;
    project_to_field(rep, &field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_algebraic;
    use crate::heights::mahler_places;

    fn a(s: &str) -> AlgebraicNumber {
        parse_algebraic(s).unwrap()
    }

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn gaussian_norms() {
        let rep = Representation::new(a("2"), vec![a("root(x^2-2x+2,1)"), a("root(x^2-2x+2,0)")]).unwrap();
        let red = reduce_representation(&rep, &cfg()).unwrap();
        assert!(red.zeta.is_one());
        assert_eq!(red.orders, vec![2, 2]);
        for b in &red.reduced.factors {
            assert_eq!(b, &a("(2)^(1/2)"));
        }
    }

    #[test]
    fn identity_on_rationals() {
        let rep = Representation::trivial(a("2"));
        let red = reduce_representation(&rep, &cfg()).unwrap();
        assert_eq!(red.reduced.factors, vec![a("2")]);
        assert!(red.zeta.is_one());
    }

    #[test]
    fn signed_norm_branch() {
        let rep = Representation::new(a("6"), vec![a("3*(2)^(1/2)"), a("(2)^(1/2)")]).unwrap();
        let red = reduce_representation(&rep, &cfg()).unwrap();
        assert_eq!(red.norms, vec![a("-18"), a("-2")]);
        assert!(red.reduced.holds().unwrap());
        let p = cfg().precision;
        for (b, m) in red.reduced.factors.iter().zip([18, 2]) {
            assert!(mahler_places(b, &p).contains(&num_rational::BigRational::from_integer(m.into())));
            assert_eq!(crate::heights::mahler_roots(b, &p).as_integer(), Some(m.into()));
        }
    }

    #[test]
    fn membership() {
        let k = NumberField::new(a("(2)^(1/2)"));
        assert!(in_rad(&a("(2)^(1/4)"), &k).unwrap());
        assert!(in_rad(&a("zeta(8,1)"), &k).unwrap());
        assert!(!in_rad(&a("root(x^2-x-1,1)"), &k).unwrap());
    }

    #[test]
    fn projections() {
        let q = NumberField::rationals();
        let s2 = a("(2)^(1/2)");
        let rep = Representation::new(a("2"), vec![s2.clone(), s2.clone()]).unwrap();
        let pr = project_to_field(&rep, &q).unwrap();
        assert_eq!(pr.power, 2);
        assert_eq!(pr.rep.target, a("4"));
        assert_eq!(pr.rep.factors, vec![a("-2"), a("-2")]);
        assert!(pr.rep.zeta.is_one());

        let c3 = a("(3)^(1/3)");
        let rep = Representation::new(s2.mul(&c3).unwrap(), vec![s2, c3]).unwrap();
        let pr = project_to_field(&rep, &q).unwrap();
        assert_eq!(pr.power, 6);
        assert_eq!(pr.rep.factors, vec![a("-8"), a("9")]);
        assert_eq!(pr.rep.target, a("72"));
        assert_eq!(pr.rep.zeta, RootOfUnity::minus_one());

        let rep = Representation::trivial(a("5/3"));
        let pr = project_to_field(&rep, &q).unwrap();
        assert_eq!((pr.power, pr.rep.factors.clone()), (1, vec![a("5/3")]));
    }
}
