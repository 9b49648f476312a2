//! Multigraded commutative algebra over a field: Gröbner bases for graded
//! modules, differential modules and their free flag resolutions, and the
//! toric BGG functors between modules over a polynomial ring and its dual
//! exterior algebra.

pub mod bgg;
pub mod cli;
pub mod complex;
pub mod degree;
pub mod diffmod;
pub mod error;
pub mod exterior;
pub mod field;
pub mod groebner;
pub mod json;
pub mod linalg;
pub mod matrix;
pub mod module;
pub mod parse;
pub mod poly;
pub mod render;
pub mod strands;

pub use degree::{GradingSpec, Multidegree};
pub use error::{Error, Result};
pub use exterior::{ExtAlgebra, ExtElement, ExtMonomial};
pub use field::{Coeff, FieldSpec};
pub use matrix::{FreeModule, GradedMatrix};
pub use poly::{PolyRing, Polynomial};
