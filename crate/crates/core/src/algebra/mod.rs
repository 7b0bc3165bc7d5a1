//! Exact symbolic substrate: Gaussian-rational coefficients, sparse
//! multivariate polynomials over named variables, univariate rational
//! functions, and the canonical Poisson bracket.

mod complex;
mod poly;
mod ratfun;

pub use complex::ComplexRational;
pub use poly::{poisson_bracket, Exponents, NumericPolynomial, Polynomial, Variables};
pub use ratfun::{Order, RationalFunction, UnivariatePolynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("operands use different variable names")]
    VariableMismatch,
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("arity {arity} is not a phase space with {degrees} degrees of freedom")]
    NotPhaseSpace { arity: usize, degrees: usize },
    #[error("zero denominator")]
    ZeroDenominator,
}
