//! Quantum differential equations: period series, cyclic-vector
//! elimination, coefficient matching and parameter solving.

mod eliminate;
mod operator;
mod period;
mod regularized;
mod solve;

pub use eliminate::{cyclic_rows, eliminate, Elimination};
pub use operator::{match_equations, DiffOperator, MatchedEquation};
pub use period::{
    period_coefficients, verra_coefficient, PeriodSource, PeriodSpec, VERRA_PERIOD_TAG,
};
pub use regularized::{verra_regularized, RegularizedSource};
pub use solve::{
    solve_parameters, Assignment, LinearizedSystem, Rejection, SolveError, SolveReport,
};

use thiserror::Error;

use crate::algebra::AlgebraError;

/// Matching depth below the truncation order.
pub const MATCH_SLACK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QdeError {
    #[error("invalid period: {0}")]
    BadPeriod(String),
    #[error("operator has no nonzero coefficient")]
    ZeroOperator,
    #[error("operator coefficients involve parameters")]
    ParametersPresent,
    #[error("coefficients are not even in t")]
    NotEven,
    #[error("component {0} out of range for a {1}x{1} system")]
    BadComponent(usize, usize),
    #[error("no linear dependence among the first {0} cyclic rows")]
    NoDependence(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
