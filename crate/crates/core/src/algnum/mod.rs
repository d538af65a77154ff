//! Exact arithmetic on algebraic numbers, explicit surds and number fields.

pub mod field;
pub mod number;
pub mod surd;

pub use field::{galois_closure, product_of_conjugates_over, FieldElem, KPoly, NumberField};
pub use number::AlgebraicNumber;
pub use surd::{ExponentVector, RootOfUnity, SurdExpr};

use crate::error::Result;

/// The algebraic number denoted by a surd.
pub fn from_surd(s: &SurdExpr) -> Result<AlgebraicNumber> {
    s.to_algebraic()
}

/// Factors a polynomial over a number field into monic irreducibles with multiplicities.
pub fn factor_over_field(p: &KPoly, k: &NumberField) -> Result<Vec<(KPoly, usize)>> {
    k.factor(p)
}
