//! Exact polynomial and rational-function arithmetic over Q, exact linear
//! solving in Q(z), and numeric root extraction.

mod intpoly;
mod linsolve;
pub(crate) mod modular;
mod poly;
mod precise;
mod rational;
mod roots;

use thiserror::Error;

pub use intpoly::IntPoly;
pub use linsolve::solve_linear_system;
pub use poly::Polynomial;
pub use rational::{gcd_reduce, rf_equal, RationalFunction};
pub use roots::{roots, DEFAULT_ROOT_TOL};

pub(crate) use roots::{f64_coefficients, relative_residual};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("matrix is singular over the rational-function field")]
    Singular,
    #[error("system dimensions do not match")]
    DimensionMismatch,
    #[error("cannot take roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("root iteration did not reach the requested residual")]
    RootsNotConverged,
    #[error("internal algebra invariant violated: {0}")]
    Internal(&'static str),
}
