//! Metric and ultrametric Mahler measures.
//!
//! A [`Representation`] writes a target `alpha` as a product of factors.
//! `M1(alpha)` is the infimum of the product of the factor measures and
//! `Minf(alpha)` the infimum of their maximum, over all representations.
//! Optimal factors can be taken in `rad(K_alpha)`, where `K_alpha` is the
//! Galois closure of `Q(alpha)`; [`reduce_representation`] moves an arbitrary
//! representation there without increasing any factor measure.
//!
//! Rational targets, and more generally targets in `rad(Q)` for `Minf`, are
//! solved exactly. Other targets get certified bounds, narrowed to a finite
//! candidate set by [`northcott`] enumeration when `K_alpha` is at most quadratic.

pub mod northcott;
pub mod reduce;
pub mod solve;

use std::cmp::Ordering;

use crate::algnum::{AlgebraicNumber, NumberField, RootOfUnity, SurdExpr};
use crate::error::{Error, Result};
use crate::heights::{mahler_roots, MeasureValue};
use crate::config::Config;

pub use northcott::{length_bound, length_bound_from_q, measure_candidates, northcott_enumerate, q_of, q_of_field, QuadMeasure};
pub use reduce::{in_rad, project_to_closure, project_to_field, reduce_representation, Projection, Reduction};
pub use solve::{m_inf, m_one, verify_location, Certificate, Kind, SolveResult};

/// `zeta * target = factors[0] * ... * factors[N-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub target: AlgebraicNumber,
    pub factors: Vec<AlgebraicNumber>,
    pub zeta: RootOfUnity,
}

impl Representation {
    /// Checks the product identity exactly.
    pub fn new(target: AlgebraicNumber, factors: Vec<AlgebraicNumber>) -> Result<Self> {
        Self::with_torsion(target, factors, RootOfUnity::one())
    }

    pub fn with_torsion(target: AlgebraicNumber, factors: Vec<AlgebraicNumber>, zeta: RootOfUnity) -> Result<Self> {
        let rep = Representation { target, factors, zeta };
        if !rep.holds()? {
            return Err(Error::InvalidRepresentation("product of factors differs from the target".into()));
        }
        Ok(rep)
    }

    /// The one-factor representation `alpha = alpha`.
    pub fn trivial(target: AlgebraicNumber) -> Self {
        Representation { factors: vec![target.clone()], target, zeta: RootOfUnity::one() }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn torsion_slack(&self) -> bool {
        !self.zeta.is_one()
    }

    /// Recomputes the product identity.
    pub fn holds(&self) -> Result<bool> {
        if self.factors.is_empty() {
            return Err(Error::InvalidRepresentation("no factors".into()));
        }
        let prod = product(&self.factors)?;
        let lhs = if self.zeta.is_one() { self.target.clone() } else { self.zeta.to_algebraic().mul(&self.target)? };
        Ok(prod == lhs)
    }

    pub fn measures(&self, config: &Config) -> Vec<MeasureValue> {
        self.factors.iter().map(|f| mahler_roots(f, &config.precision)).collect()
    }

    /// Product of the factor measures.
    pub fn measure_product(&self, config: &Config) -> MeasureValue {
        self.measures(config).iter().fold(MeasureValue::one(), |acc, m| acc.mul(m))
    }

    /// Largest factor measure.
    pub fn measure_max(&self, config: &Config) -> MeasureValue {
        self.measures(config).iter().fold(MeasureValue::one(), |acc, m| acc.max(m))
    }

    /// Number of torsion factors.
    pub fn torsion_count(&self) -> usize {
        self.factors.iter().filter(|f| f.is_torsion()).count()
    }
}

/// A representation checked against the three conditions of a
/// `B`-restricted representation.
#[derive(Clone, Debug)]
pub struct RestrictedRep {
    pub rep: Representation,
    pub bound: MeasureValue,
    pub within_bound: bool,
    pub in_rad: bool,
    pub single_torsion: bool,
}

impl RestrictedRep {
    pub fn check(rep: Representation, bound: MeasureValue, field: &NumberField, config: &Config) -> Result<Self> {
        let within_bound = !matches!(rep.measure_product(config).compare(&bound), Some(Ordering::Greater) | None);
        let mut all_in = true;
        for f in &rep.factors {
            all_in &= in_rad(f, field)?;
        }
        let single_torsion = rep.torsion_count() <= 1;
        Ok(RestrictedRep { rep, bound, within_bound, in_rad: all_in, single_torsion })
    }

    pub fn is_valid(&self) -> bool {
        self.within_bound && self.in_rad && self.single_torsion
    }
}

/// Exact product, multiplying in the surd group when every factor is a surd.
pub fn product(xs: &[AlgebraicNumber]) -> Result<AlgebraicNumber> {
    let mut surds = Vec::with_capacity(xs.len());
    for x in xs {
        match SurdExpr::from_algebraic(x)? {
            Some(s) => surds.push(s),
            None => return AlgebraicNumber::product(xs),
        }
    }
    surds.iter().fold(SurdExpr::integer(1), |acc, s| acc.mul(s)).to_algebraic()
}
