pub mod algnum;
pub mod arith;
pub mod config;
pub mod error;
pub mod expr;
pub mod heights;
pub mod metric;
pub mod polycore;

pub use algnum::{AlgebraicNumber, ExponentVector, FieldElem, NumberField, RootOfUnity, SurdExpr};
pub use config::Config;
pub use error::{Error, Result};
pub use heights::{MeasureValue, PlaceDecomposition};
pub use metric::{Representation, SolveResult};
pub use polycore::{IntPoly, RatPoly, RootBox};
