//! The rank matrix `(k_{mℓ})` and the web rank as its corank.

use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::conn::{curvature, multi_indices, ConnectionData, CurvatureData};
use crate::error::{Result, WebError};
use crate::kernel::{generic_rank, Matrix, RatFunc, Rational, Var};
use crate::webdef::{Warning, WebEquation};

/// Derivative multi-indices `(a, b)` with `a + b <= n`, graded-lex.
pub fn row_indices(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(multi_indices).collect()
}

/// Rows `∂^α(k·f)` after substituting `∂f = -γ f`: starting from the first
/// curvature row, `row_{α+e} = ∂_e row_α - row_α γ_e`. The parent of a
/// multi-index is reached through `x` whenever it has an `x`-part.
pub fn rank_matrix_from(conn: &ConnectionData, curv: &CurvatureData) -> Matrix {
    let d = conn.d();
    let pi = curv.k_row.len();
    let gx = conn.gamma().component(Var::X);
    let gy = conn.gamma().component(Var::Y);
    let idx = row_indices(d - 3);
    let mut rows: Vec<Vec<RatFunc>> = Vec::with_capacity(idx.len());
    rows.push(curv.k_row.clone());
    for &(a, b) in idx.iter().skip(1) {
        let (parent, dir, g) = if a > 0 { ((a - 1, b), Var::X, &gx) } else { ((a, b - 1), Var::Y, &gy) };
        let pr = &rows[idx.iter().position(|&m| m == parent).expect("parent precedes child")];
        let row: Vec<RatFunc> = (0..pi)
            .map(|l| {
                let mut acc = pr[l].d(dir);
                for (i, ri) in pr.iter().enumerate() {
                    if !ri.is_zero() && !g[i][l].is_zero() {
                        acc = &acc - &(ri * &g[i][l]);
                    }
                }
                acc
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn rank_matrix(web: &WebEquation) -> Result<Matrix> {
    let (conn, curv) = curvature(web)?;
    Ok(rank_matrix_from(&conn, &curv))
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub kml: Matrix,
    pub generic_rank: usize,
    pub web_rank: usize,
    pub det_is_zero: bool,
    /// The rank is the generic one; the base point lies on the discriminant
    /// locus or at a pole of a coefficient.
    pub base_point_singular: bool,
}

/// Exact rank over the field of rational functions. A point where some
/// `r x r` minor is defined and nonzero proves rank `>= r`; when that bound
/// is already full, no symbolic elimination is needed.
pub fn exact_generic_rank(m: &Matrix) -> usize {
    let full = m.len().min(m.first().map_or(0, |r| r.len()));
    let lower = sampled_rank(m, 5, 0x5eed);
    if lower == full {
        return full;
    }
    let r = generic_rank(m);
    debug_assert!(r >= lower);
    r
}

pub fn rank_report(web: &WebEquation, kml: Matrix) -> RankReport {
    let pi = kml.len();
    let generic_rank = exact_generic_rank(&kml);
    RankReport {
        kml,
        generic_rank,
        web_rank: pi - generic_rank,
        det_is_zero: generic_rank < pi,
        base_point_singular: web.warnings().contains(&Warning::SingularBasePoint),
    }
}

pub fn web_rank(web: &WebEquation) -> Result<RankReport> {
    Ok(rank_report(web, rank_matrix(web)?))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(m: &[Vec<Rational>]) -> usize {
    let mut m = m.to_vec();
    let nr = m.len();
    let nc = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..nc {
        let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..nr {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..nc {
                    let t = &m[r][j] * &f;
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Cross-check of the generic rank: the largest rank of `kml` evaluated at
/// `draws` random rational points where every entry is defined.
pub fn sampled_rank(kml: &Matrix, draws: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    let mut done = 0;
    let mut attempts = 0;
    while done < draws && attempts < 50 * draws.max(1) {
        attempts += 1;
        let x = Rational::new(rng.gen_range(-97i64..=97).into(), rng.gen_range(1i64..=13).into());
        let y = Rational::new(rng.gen_range(-97i64..=97).into(), rng.gen_range(1i64..=13).into());
        let vals: Option<Vec<Vec<Rational>>> = kml
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&x, &y)).collect())
            .collect();
        if let Some(vals) = vals {
            best = best.max(rational_rank(&vals));
            done += 1;
        }
    }
    best
}

/// The predicate behind `is_exceptional_5web`.
pub fn exceptional_from(first_row_zero: bool, v1_nonzero: bool) -> bool {
    first_row_zero && v1_nonzero
}

/// A non-linearizable 5-web of maximal rank: flat curvature with `v_1 != 0`.
pub fn is_exceptional_5web(web: &WebEquation) -> Result<bool> {
    if web.d() != 5 {
        return Err(WebError::UnsupportedDegree {
            required: 5,
            found: web.d(),
        });
    }
    let (conn, curv) = curvature(web)?;
    Ok(exceptional_from(curv.is_flat(), !conn.system().pair0().v(1).is_zero()))
}
