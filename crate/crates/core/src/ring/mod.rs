//! Exact Laurent polynomials over the integers, their fraction field, and
//! matrices over it with a bar involution.

mod gcd;
mod laurent;
mod matrix;
mod parse;
mod ratfunc;
mod var;

use thiserror::Error;

pub use gcd::gcd;
pub use laurent::{EvalFailure, LaurentPoly, Monomial};
pub use matrix::{nullspace, BallMatrix, Involution, RingMatrix};
pub use parse::{parse_laurent, parse_ratfunc, ExprError};
pub use ratfunc::{RatEvalFailure, RatFunc};
pub use var::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("dimension mismatch ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("variable '{0}' is declared both inverted and fixed")]
    InvolutionConflict(String),
    #[error("variable '{0}' is not declared")]
    UndeclaredVariable(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("a denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("no value given for variable '{0}'")]
    MissingValue(String),
    #[error("precision insufficient")]
    PrecisionInsufficient,
}
