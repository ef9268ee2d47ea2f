//! Resultants in the variable `p` via the Sylvester matrix.

use super::linalg::{determinant, Matrix};
use super::mpoly::MPoly;
use super::ppoly::PPoly;
use super::ratfunc::RatFunc;
use super::KernelError;

/// Sylvester matrix of `f` and `g` in `p`: `deg g` shifted copies of the
/// coefficients of `f`, then `deg f` shifted copies of those of `g`,
/// highest powers first.
pub fn sylvester_matrix(f: &PPoly, g: &PPoly) -> Result<Matrix, KernelError> {
    let m = f.degree().ok_or(KernelError::DegenerateInput("first polynomial is zero"))?;
    let n = g.degree().ok_or(KernelError::DegenerateInput("second polynomial is zero"))?;
    let size = m + n;
    let fc = f.descending_padded(m + 1);
    let gc = g.descending_padded(n + 1);
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![RatFunc::zero(); size];
        row[shift..shift + m + 1].clone_from_slice(&fc);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![RatFunc::zero(); size];
        row[shift..shift + n + 1].clone_from_slice(&gc);
        rows.push(row);
    }
    Ok(rows)
}

pub fn resultant_ppoly(f: &PPoly, g: &PPoly) -> Result<RatFunc, KernelError> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(KernelError::DegenerateInput("polynomial is zero in p")),
    };
    if m == 0 {
        return Ok(f.coeff(0).pow(n as u32));
    }
    if n == 0 {
        return Ok(g.coeff(0).pow(m as u32));
    }
    determinant(&sylvester_matrix(f, g)?)
}

/// `Res_p(f, g)` for polynomials in `x`, `y`, `p`.
pub fn resultant_p(f: &MPoly, g: &MPoly) -> Result<RatFunc, KernelError> {
    resultant_ppoly(&PPoly::from_mpoly(f), &PPoly::from_mpoly(g))
}
