//! Inputs shared by the criterion benches.

use mahler_core::expr::parse_algebraic;
use mahler_core::{AlgebraicNumber, IntPoly};

pub const LEHMER: &str = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

pub fn lehmer() -> IntPoly {
    IntPoly::parse(LEHMER).expect("valid polynomial")
}

pub fn number(s: &str) -> AlgebraicNumber {
    parse_algebraic(s).expect("valid expression")
}

/// Targets for the metric solvers, rationals and surds.
pub fn metric_targets() -> Vec<(&'static str, AlgebraicNumber)> {
    ["360", "3/20", "(12)^(1/2)", "zeta(4,1)*(5)^(1/2)", "(2)^(1/3)"].into_iter().map(|s| (s, number(s))).collect()
}
