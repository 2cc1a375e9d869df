//! Exact arithmetic: rationals, sparse polynomials, truncated series,
//! Laurent polynomials and fraction-free linear algebra over polynomial
//! rings.

mod bipoly;
mod gcd;
mod laurent;
pub mod linalg;
mod matrix;
mod poly;
mod rat;
mod series;
pub mod univariate;

pub use bipoly::BiPoly;
pub use gcd::{content_in, poly_gcd, poly_gcd_all};
pub use laurent::LaurentPoly;
pub use matrix::{normalize_vector, PolyMatrix};
pub use poly::{Exponents, ParamPoly, Vars};
pub use rat::{ParseRatError, Rat};
pub use series::PowerSeries;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable sets differ: {left:?} vs {right:?}")]
    VarMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotExact,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
