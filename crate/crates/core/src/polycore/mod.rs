//! Integer and rational polynomials, factorization over Q, cyclotomic
//! detection and certified root isolation.

pub mod cyclotomic;
pub mod factor;
pub mod interval;
pub mod intpoly;
pub(crate) mod modp;
pub mod powersum;
pub mod ratpoly;
pub mod resultant;
pub mod roots;

pub use cyclotomic::{cyclotomic_poly, euler_phi, is_cyclotomic_product};
pub use factor::{factor_rational, irreducible_factors, is_irreducible, Factorization};
pub use interval::{ComplexInterval, Interval};
pub use intpoly::IntPoly;
pub use ratpoly::RatPoly;
pub use resultant::resultant;
pub use roots::{isolate_roots, refine_root, RootBox};

/// Primitive part with positive leading coefficient.
pub fn normalize(p: &IntPoly) -> IntPoly {
    p.normalize()
}
