//! Exact arithmetic: pair-variable polynomials, determinants, lex Gröbner
//! bases, univariate factoring and certified algebraic numbers.

pub mod algebraic;
pub mod det;
pub mod groebner;
pub mod hp;
pub mod pairvar;
pub mod poly;
pub mod quadratic;
pub mod roots;
pub mod scalar;
pub mod solve;
pub mod univariate;

use thiserror::Error;

pub use algebraic::{AlgebraicNumber, ToAlgebraic};
pub use det::det;
pub use groebner::{groebner_lex, reduce, GroebnerBasis};
pub use hp::{HpComplex, DEFAULT_PRECISION, ZERO_THRESHOLD};
pub use pairvar::PairVar;
pub use poly::{Monomial, MultiPoly};
pub use quadratic::QElem;
pub use scalar::{int, parse_rational, rat, rational_string, FieldScalar, Ring, Scalar};
pub use solve::{solve_zero_dim, SolutionPoint};
pub use univariate::UniPoly;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgError {
    #[error("matrix is not square: {rows} rows but row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no value supplied for {0}")]
    MissingVar(PairVar),
    #[error("ideal is positive-dimensional: no univariate eliminant for {0}")]
    PositiveDimensional(String),
    #[error("root isolation failed: {0}")]
    RootIsolation(String),
    #[error("solution check failed: {0}")]
    Verification(String),
}
