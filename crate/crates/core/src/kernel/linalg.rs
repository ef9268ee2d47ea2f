//! Fraction-free linear algebra over the rational-function field.
//!
//! Rows are first scaled to polynomial entries, then Bareiss elimination
//! runs with exact polynomial division, so no intermediate gcds are needed.

use super::mpoly::MPoly;
use super::ratfunc::RatFunc;
use super::KernelError;

/// Dense row-major matrix of rational functions.
pub type Matrix = Vec<Vec<RatFunc>>;

/// Polynomial rows plus the rational factor each row was multiplied by.
struct PolyRows {
    rows: Vec<Vec<MPoly>>,
    scale: Vec<MPoly>,
}

fn clear_row_denominators(m: &[Vec<RatFunc>]) -> PolyRows {
    let mut rows = Vec::with_capacity(m.len());
    let mut scale = Vec::with_capacity(m.len());
    for row in m {
        let l = RatFunc::lcm_of_denominators(row.iter());
        let lr = RatFunc::from_poly(l.clone());
        rows.push(
            row.iter()
                .map(|e| (e * &lr).to_poly().expect("lcm clears denominators"))
                .collect(),
        );
        scale.push(l);
    }
    PolyRows { rows, scale }
}

fn pick_pivot(rows: &[Vec<MPoly>], col: usize, from: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&r| !rows[r][col].is_zero())
        .min_by_key(|&r| (rows[r][col].len(), rows[r][col].total_degree()))
}

/// Bareiss elimination in place; returns the pivot positions `(row, col)` and
/// the number of row swaps. Only the first `ncols_pivot` columns are pivot
/// candidates, the rest are carried along (augmented right-hand sides).
fn bareiss(rows: &mut [Vec<MPoly>], ncols_pivot: usize) -> (Vec<(usize, usize)>, usize) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut prev = MPoly::one();
    let mut r = 0;
    let mut swaps = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols_pivot {
        if r == nrows {
            break;
        }
        let Some(pr) = pick_pivot(rows, c, r) else {
            continue;
        };
        if pr != r {
            rows.swap(pr, r);
            swaps += 1;
        }
        let piv = rows[r][c].clone();
        for i in (r + 1)..nrows {
            let lead = rows[i][c].clone();
            for j in (c + 1)..ncols {
                let t = &(&piv * &rows[i][j]) - &(&lead * &rows[r][j]);
                rows[i][j] = t
                    .div_exact(&prev)
                    .expect("Bareiss division is exact");
            }
            rows[i][c] = MPoly::zero();
        }
        // entries of the pivot row left of later pivots stay as they are
        prev = piv;
        pivots.push((r, c));
        r += 1;
    }
    (pivots, swaps)
}

/// Solves `m * x = b` for each right-hand side column in `rhs`.
pub fn solve_linear_multi(m: &Matrix, rhs: &[Vec<RatFunc>]) -> Result<Vec<Vec<RatFunc>>, KernelError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(KernelError::Dimension(format!("matrix is not square ({} rows)", n)));
    }
    if rhs.iter().any(|b| b.len() != n) {
        return Err(KernelError::Dimension("right-hand side length".into()));
    }
    let aug: Matrix = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let PolyRows { mut rows, .. } = clear_row_denominators(&aug);
    let (pivots, _) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Err(KernelError::SingularSystem);
    }
    let mut sols = Vec::with_capacity(rhs.len());
    for k in 0..rhs.len() {
        let mut x = vec![RatFunc::zero(); n];
        for i in (0..n).rev() {
            let mut acc = RatFunc::from_poly(rows[i][n + k].clone());
            for j in (i + 1)..n {
                if !rows[i][j].is_zero() && !x[j].is_zero() {
                    acc = &acc - &x[j].mul_poly(&rows[i][j]);
                }
            }
            x[i] = &acc / &RatFunc::from_poly(rows[i][i].clone());
        }
        sols.push(x);
    }
    Ok(sols)
}

/// Unique solution of `m * x = b`.
pub fn solve_linear(m: &Matrix, b: &[RatFunc]) -> Result<Vec<RatFunc>, KernelError> {
    Ok(solve_linear_multi(m, &[b.to_vec()])?.remove(0))
}

/// Determinant via fraction-free elimination.
pub fn determinant(m: &Matrix) -> Result<RatFunc, KernelError> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(KernelError::Dimension("determinant of non-square matrix".into()));
    }
    if n == 0 {
        return Ok(RatFunc::one());
    }
    let PolyRows { mut rows, scale } = clear_row_denominators(m);
    let (pivots, swaps) = bareiss(&mut rows, n);
    if pivots.len() < n {
        return Ok(RatFunc::zero());
    }
    let mut det = RatFunc::from_poly(rows[n - 1][n - 1].clone());
    if swaps % 2 == 1 {
        det = -det;
    }
    let s = scale.iter().fold(MPoly::one(), |acc, l| &acc * l);
    Ok(&det / &RatFunc::from_poly(s))
}

/// Rank over the field of rational functions.
pub fn generic_rank(m: &Matrix) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let PolyRows { mut rows, .. } = clear_row_denominators(m);
    bareiss(&mut rows, ncols).0.len()
}
