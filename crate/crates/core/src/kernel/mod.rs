//! Exact arithmetic: polynomials, rational functions, linear algebra,
//! resultants and differential forms in `dx`, `dy`.

mod forms;
mod gcd;
mod linalg;
mod mpoly;
mod parse;
mod ppoly;
mod ratfunc;
mod resultant;

pub use forms::{exterior_derivative, matrix_curvature, Form1, Form2, FormMatrix};
pub use gcd::gcd;
pub use linalg::{determinant, generic_rank, solve_linear, solve_linear_multi, Matrix};
pub use mpoly::{MPoly, Monomial, Var};
pub use parse::{parse_expr, parse_form1, parse_ppoly, parse_ratfunc, Expr, ExprError};
pub use ppoly::PPoly;
pub use ratfunc::RatFunc;
pub use resultant::{resultant_p, resultant_ppoly, sylvester_matrix};

use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("cannot differentiate a rational function in `{0}`")]
    InvalidVariable(Var),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate resultant input: {0}")]
    DegenerateInput(&'static str),
    #[error("singular linear system")]
    SingularSystem,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Partial derivative of a polynomial in any of `x`, `y`, `p`.
pub fn partial_poly(f: &MPoly, v: Var) -> MPoly {
    f.derivative(v)
}

/// Partial derivative of a rational function; `p` is rejected.
pub fn partial_ratfunc(f: &RatFunc, v: Var) -> Result<RatFunc, KernelError> {
    f.derivative(v)
}
