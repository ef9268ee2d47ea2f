//! The system `M(d)`, its adapted basis of solutions, the connection form,
//! its curvature and the trace of the curvature.

pub mod jets;

use rayon::prelude::*;

use crate::assoc::{associated_pairs, fundamental_form_from_pair, obstructions, AssociatedPair, FundamentalForm};
use crate::error::{Result, WebError};
use crate::kernel::{matrix_curvature, rat, solve_linear_multi, Form1, Form2, FormMatrix, Matrix, RatFunc, Var};
use crate::webdef::WebEquation;

pub use jets::{multi_indices, Jet, JetLayout, JetSystem};

/// The `(d-1) x (d-2)` coefficient matrix `A`; column `j` multiplies `b_{j+3}`.
#[derive(Clone, Debug)]
pub struct SystemMatrix {
    d: usize,
    pairs: Vec<AssociatedPair>,
    alpha: FundamentalForm,
    a: Matrix,
}

impl SystemMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &Matrix {
        &self.a
    }

    /// 0-based entry.
    pub fn get(&self, m: usize, j: usize) -> &RatFunc {
        &self.a[m][j]
    }

    /// 1-based entry `A_{ij}`.
    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.a[i - 1][j - 1]
    }

    pub fn pairs(&self) -> &[AssociatedPair] {
        &self.pairs
    }

    pub fn pair0(&self) -> &AssociatedPair {
        &self.pairs[0]
    }

    pub fn alpha(&self) -> &FundamentalForm {
        &self.alpha
    }
}

/// Column `j` is `-(U_i + ∂_p V_i)` read coefficient by coefficient, `i = d-3-j`.
pub fn system_matrix_from_pairs(web: &WebEquation, pairs: Vec<AssociatedPair>) -> Result<SystemMatrix> {
    let d = web.d();
    let alpha = fundamental_form_from_pair(web, &pairs[0])?;
    let mut a: Matrix = vec![vec![RatFunc::zero(); d - 2]; d - 1];
    for j in 0..(d - 2) {
        let pair = &pairs[d - 3 - j];
        let col = &pair.u_poly() + &pair.v_poly().dp();
        for (m, row) in a.iter_mut().enumerate() {
            row[j] = -col.coeff(m);
        }
    }
    if a[0][d - 3] != *alpha.a1() || a[1][d - 3] != *alpha.a2() {
        return Err(WebError::Assertion("order-zero column of the system matrix is not α".into()));
    }
    if let Some(expected) = closed_form_system(web, &pairs[0], &alpha) {
        if expected != a {
            return Err(WebError::Assertion(format!("system matrix for d = {} differs from its closed form", d)));
        }
    }
    Ok(SystemMatrix { d, pairs, alpha, a })
}

pub fn system_matrix(web: &WebEquation) -> Result<SystemMatrix> {
    system_matrix_from_pairs(web, associated_pairs(web)?)
}

/// Closed forms for `d = 4, 5`, written through `α`, `V` and the coefficients.
fn closed_form_system(web: &WebEquation, pair0: &AssociatedPair, alpha: &FundamentalForm) -> Option<Matrix> {
    let v = |k: usize| pair0.v(k).clone();
    let a1 = alpha.a1().clone();
    let a2 = alpha.a2().clone();
    match web.d() {
        4 => Some(vec![
            vec![-v(4), a1.clone()],
            vec![&a1 - &v(3), a2.clone()],
            vec![&a2 - &v(2), v(1)],
        ]),
        5 => {
            let r = |i: usize| &(web.a(i) / web.a(0)) * &v(1);
            let two = |f: RatFunc| f.scale(&rat(2, 1));
            Some(vec![
                vec![r(5), -v(5), a1.clone()],
                vec![&r(4) - &two(v(5)), &a1 - &v(4), a2.clone()],
                vec![&(&a1 - &two(v(4))) + &r(3), &a2 - &v(3), &two(v(2)) - &r(1)],
                vec![&(&a2 - &two(v(3))) + &r(2), &v(2) - &r(1), v(1)],
            ])
        }
        _ => None,
    }
}

/// `tr γ` directly from the entries of `A`:
/// `Σ_q q A_{d-q-1,q} dx + (d-1-q) A_{d-q,q} dy`, `q = 1..d-2` (1-based).
pub fn closed_form_trace(sys: &SystemMatrix) -> Form1 {
    let d = sys.d;
    let a = &sys.a;
    let mut tx = RatFunc::zero();
    let mut ty = RatFunc::zero();
    for q in 1..=(d - 2) {
        tx = &tx + &a[d - q - 2][q - 1].scale(&rat(q as i64, 1));
        ty = &ty + &a[d - q - 1][q - 1].scale(&rat((d - 1 - q) as i64, 1));
    }
    Form1::new(tx, ty)
}

/// `k_1 = d(tr γ)`, without building the basis.
pub fn trace_curvature(web: &WebEquation) -> Result<RatFunc> {
    Ok(closed_form_trace(&system_matrix(web)?).d().c)
}

/// A basis `e_1..e_π` of the solution space of `M(d)` (as full jets up to
/// order `d-2`) and the connection form `γ` with `D e_j = Σ_i γ_{ij} e_i`.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    system: SystemMatrix,
    jets: JetSystem,
    basis: Vec<Vec<RatFunc>>,
    gamma: FormMatrix<Form1>,
}

impl ConnectionData {
    pub fn d(&self) -> usize {
        self.system.d
    }

    pub fn system(&self) -> &SystemMatrix {
        &self.system
    }

    pub fn jets(&self) -> &JetSystem {
        &self.jets
    }

    pub fn gamma(&self) -> &FormMatrix<Form1> {
        &self.gamma
    }

    /// Full jet of `e_j` (0-based).
    pub fn basis_jet(&self, j: usize) -> &[RatFunc] {
        &self.basis[j]
    }

    /// `∂_x^a ∂_y^b b_{comp+3}` of `e_j`.
    pub fn basis_value(&self, j: usize, jet: Jet) -> &RatFunc {
        &self.basis[j][self.jets.layout().index(jet)]
    }

    /// Values of `e_j` on the free coordinates.
    pub fn free_coordinates(&self, j: usize) -> Vec<RatFunc> {
        self.jets.free().iter().map(|f| self.basis_value(j, *f).clone()).collect()
    }
}

/// Free-coordinate values of the adapted basis. The first vector is the
/// unit on the single free jet of top order `d-3`; the others are units on
/// the remaining free jets, lowest order first. For `d = 4` the basis is
/// `e_1: ∂_y b_4 = 1`, `e_2: b_3 = -1`, `e_3: b_4 = 1, ∂_y b_4 = -A_{22}`.
fn basis_seeds(sys: &SystemMatrix, free: &[Jet]) -> Vec<Vec<RatFunc>> {
    let n = free.len();
    let unit = |k: usize| -> Vec<RatFunc> {
        (0..n).map(|i| if i == k { RatFunc::one() } else { RatFunc::zero() }).collect()
    };
    if sys.d == 4 {
        let mut e2 = vec![RatFunc::zero(); 3];
        e2[0] = RatFunc::int(-1);
        let mut e3 = vec![RatFunc::zero(); 3];
        e3[1] = RatFunc::one();
        e3[2] = -sys.a[1][1].clone();
        return vec![unit(2), e2, e3];
    }
    let top = n - 1;
    std::iter::once(unit(top)).chain((0..top).map(unit)).collect()
}

/// `σ` with `Φ[σ(i)][i] = 1` and every other entry zero, if `Φ` has that shape.
fn unit_permutation(phi: &Matrix) -> Option<Vec<usize>> {
    let n = phi.len();
    let mut sigma = Vec::with_capacity(n);
    for i in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&r| !phi[r][i].is_zero()).collect();
        match nz.as_slice() {
            [r] if phi[*r][i].is_one() && !sigma.contains(r) => sigma.push(*r),
            _ => return None,
        }
    }
    Some(sigma)
}

pub fn connection_from_system(system: SystemMatrix) -> Result<ConnectionData> {
    let d = system.d;
    let pi = crate::webdef::pi_d(d);
    let jets = JetSystem::new(d, &system.a);
    if jets.kernel_dimension() != pi || !jets.top_symbol_is_invertible() {
        return Err(WebError::ProlongationFailure {
            expected: pi,
            found: jets.kernel_dimension(),
        });
    }
    let free = jets.free().to_vec();
    let seeds = basis_seeds(&system, &free);
    let basis: Vec<Vec<RatFunc>> = seeds.par_iter().map(|s| jets.lift(s)).collect();

    let layout = jets.layout();
    let phi: Matrix = free
        .iter()
        .map(|f| basis.iter().map(|e| e[layout.index(*f)].clone()).collect())
        .collect();
    let mut rhs = Vec::with_capacity(2 * pi);
    for dir in [Var::X, Var::Y] {
        for e in &basis {
            rhs.push(
                free.iter()
                    .map(|f| &e[layout.index(*f)].d(dir) - &e[layout.index(f.shifted(dir))])
                    .collect::<Vec<_>>(),
            );
        }
    }
    let cols = match unit_permutation(&phi) {
        Some(sigma) => rhs
            .iter()
            .map(|b| sigma.iter().map(|&r| b[r].clone()).collect())
            .collect(),
        None => solve_linear_multi(&phi, &rhs)?,
    };
    let mut gamma = FormMatrix::zeros(pi, pi);
    for i in 0..pi {
        for j in 0..pi {
            gamma.set(i, j, Form1::new(cols[j][i].clone(), cols[pi + j][i].clone()));
        }
    }
    Ok(ConnectionData {
        system,
        jets,
        basis,
        gamma,
    })
}

pub fn connection_matrix(web: &WebEquation) -> Result<ConnectionData> {
    connection_from_system(system_matrix(web)?)
}

#[derive(Clone, Debug)]
pub struct CurvatureData {
    pub k: FormMatrix<Form2>,
    /// `k_1..k_π`, the only nonzero row of `K`.
    pub k_row: Vec<RatFunc>,
}

impl CurvatureData {
    pub fn k1(&self) -> &RatFunc {
        &self.k_row[0]
    }

    pub fn is_flat(&self) -> bool {
        self.k_row.iter().all(RatFunc::is_zero)
    }
}

/// `K = dγ + γ∧γ`; every row but the first must vanish, and `k_1` must
/// agree with the closed-form trace.
pub fn curvature_of(conn: &ConnectionData) -> Result<CurvatureData> {
    let k = matrix_curvature(&conn.gamma)?;
    for i in 1..k.rows() {
        if k.row(i).iter().any(|w| !w.is_zero()) {
            return Err(WebError::AdaptedBasisViolation(i + 1));
        }
    }
    let k_row: Vec<RatFunc> = k.row(0).iter().map(|w| w.c.clone()).collect();
    let trace = closed_form_trace(&conn.system).d().c;
    if trace != k_row[0] || conn.gamma.trace().d().c != k_row[0] {
        return Err(WebError::Assertion("trace of the curvature differs from k_1".into()));
    }
    Ok(CurvatureData { k, k_row })
}

pub fn curvature(web: &WebEquation) -> Result<(ConnectionData, CurvatureData)> {
    let conn = connection_matrix(web)?;
    let curv = curvature_of(&conn)?;
    Ok((conn, curv))
}

/// First row of the curvature of a 4-web after the change of basis with
/// `P = [[1/3, -v_3/3, v_2/3], [0, 1, 0], [0, 0, 1]]`:
/// `(k_1, ∂_x k_1 + L_1, ∂_y k_1 + L_2)`.
pub fn normal_basis_curvature_4web(web: &WebEquation) -> Result<[RatFunc; 3]> {
    if web.d() != 4 {
        return Err(WebError::UnsupportedDegree {
            required: 4,
            found: web.d(),
        });
    }
    let (conn, curv) = curvature(web)?;
    normal_basis_from(&conn, &curv)
}

pub fn normal_basis_from(conn: &ConnectionData, curv: &CurvatureData) -> Result<[RatFunc; 3]> {
    let pair0 = conn.system.pair0();
    let v = |k: usize| pair0.v(k);
    let (l1, l2) = obstructions(v(4), v(3), v(2), v(1));
    let [k1, k2, k3] = [&curv.k_row[0], &curv.k_row[1], &curv.k_row[2]];
    let three = rat(3, 1);
    let n2 = &k2.scale(&three) - &(v(3) * k1);
    let n3 = &k3.scale(&three) + &(v(2) * k1);
    if n2 != &k1.d(Var::X) + &l1 || n3 != &k1.d(Var::Y) + &l2 {
        return Err(WebError::Assertion("curvature components k_2, k_3 versus L_1, L_2".into()));
    }
    Ok([k1.clone(), n2, n3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Rational;
    use crate::webdef::SlopeWeb;

    fn origin() -> (Rational, Rational) {
        (rat(0, 1), rat(0, 1))
    }

    fn x() -> RatFunc {
        RatFunc::var(Var::X)
    }
    fn y() -> RatFunc {
        RatFunc::var(Var::Y)
    }

    fn web(slopes: Vec<RatFunc>) -> WebEquation {
        SlopeWeb::from_slopes(slopes, origin()).unwrap().web().clone()
    }

    #[test]
    fn three_web_connection_is_alpha() {
        let w = web(vec![y(), RatFunc::one(), RatFunc::int(-1)]);
        let (conn, curv) = curvature(&w).unwrap();
        let alpha = conn.system().alpha().alpha.clone();
        assert_eq!(conn.gamma().get(0, 0), &alpha);
        assert_eq!(curv.k_row[0], alpha.d().c);
    }

    #[test]
    fn four_web_gamma_matches_closed_form() {
        let w = web(vec![y(), RatFunc::one(), RatFunc::int(-1), x()]);
        let conn = connection_matrix(&w).unwrap();
        let s = conn.system();
        let p = s.pair0();
        let v = |k: usize| p.v(k).clone();
        let a1 = s.alpha().a1().clone();
        let a2 = s.alpha().a2().clone();
        let g = conn.gamma();
        assert_eq!(g.get(0, 0), &Form1::new(a1.clone(), &a2 - &v(2)));
        assert_eq!(g.get(1, 0), &Form1::new(RatFunc::int(-1), RatFunc::zero()));
        assert_eq!(g.get(2, 0), &Form1::new(RatFunc::zero(), RatFunc::int(-1)));
        assert_eq!(g.get(1, 1), &Form1::new(&a1 - &v(3), &a2 - &v(2)));
        assert_eq!(g.get(1, 2), &Form1::new(RatFunc::zero(), -v(1)));
        assert_eq!(g.get(2, 1), &Form1::new(v(4), RatFunc::zero()));
        assert_eq!(g.get(2, 2), &Form1::new(a1.clone(), a2.clone()));
        let xi1 = Form1::new(
            &v(4).d(Var::Y) + &(&v(4) * &v(2)),
            &(&(&v(1) * &v(4)) + &(&a2 - &v(2)).d(Var::X)) - &(&a1 - &v(3)).d(Var::Y),
        );
        let xi2 = Form1::new(
            &(&v(4) * &v(1)) - &(&a2.d(Var::X) - &a1.d(Var::Y)),
            &(&v(1) * &v(3)) - &v(1).d(Var::X),
        );
        assert_eq!(g.get(0, 1), &xi1);
        assert_eq!(g.get(0, 2), &xi2);
    }

    #[test]
    fn five_web_curvature_rows_and_trace() {
        let w = web(vec![y(), RatFunc::one(), RatFunc::int(-1), RatFunc::zero(), x()]);
        let (conn, curv) = curvature(&w).unwrap();
        let s = conn.system();
        let v = |k: usize| s.pair0().v(k).clone();
        let q = |i: usize| &(w.a(i) / w.a(0)) * &v(1);
        let da = &s.alpha().a2().d(Var::X) - &s.alpha().a1().d(Var::Y);
        let expected = &(&(&(&da.scale(&rat(6, 1)) + &v(4).d(Var::Y).scale(&rat(4, 1)))
            - &v(3).d(Var::X).scale(&rat(8, 1)))
            + &q(2).d(Var::X).scale(&rat(3, 1)))
            - &q(3).d(Var::Y);
        assert_eq!(curv.k_row[0], expected);
    }

    #[test]
    fn six_web_trace_matches_basis() {
        let w = web(vec![y(), RatFunc::one(), RatFunc::int(-1), RatFunc::zero(), x(), RatFunc::int(2)]);
        let (conn, curv) = curvature(&w).unwrap();
        assert_eq!(conn.gamma().trace().d().c, curv.k_row[0]);
        assert_eq!(closed_form_trace(conn.system()).d().c, curv.k_row[0]);
    }

    #[test]
    fn normal_basis_relations() {
        let w = web(vec![y(), RatFunc::one(), RatFunc::int(-1), x()]);
        let n = normal_basis_curvature_4web(&w).unwrap();
        assert!(!n[0].is_zero());
        let w3 = web(vec![y(), RatFunc::one(), RatFunc::int(-1)]);
        assert!(matches!(
            normal_basis_curvature_4web(&w3),
            Err(WebError::UnsupportedDegree { required: 4, found: 3 })
        ));
    }
}
