//! Associated polynomials, the linearization polynomial, the fundamental
//! form and the classification predicates.

use crate::error::{Result, WebError};
use crate::kernel::{rat, solve_linear_multi, Form1, Form2, PPoly, RatFunc, Var};
use crate::webdef::WebEquation;

/// `(U_i, V_i)` with `p^i (∂_x F + p ∂_y F) = U_i F + V_i ∂_p F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedPair {
    order: usize,
    /// `u_2..u_d`
    u: Vec<RatFunc>,
    /// `v_1..v_d`
    v: Vec<RatFunc>,
}

impl AssociatedPair {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn d(&self) -> usize {
        self.v.len()
    }

    /// `u_k`, `2 <= k <= d`; `U = u_2 p^{d-2} + ... + u_d`.
    pub fn u(&self, k: usize) -> &RatFunc {
        &self.u[k - 2]
    }

    /// `v_k`, `1 <= k <= d`; `V = v_1 p^{d-1} + ... + v_d`.
    pub fn v(&self, k: usize) -> &RatFunc {
        &self.v[k - 1]
    }

    pub fn u_coeffs(&self) -> &[RatFunc] {
        &self.u
    }

    pub fn v_coeffs(&self) -> &[RatFunc] {
        &self.v
    }

    pub fn u_poly(&self) -> PPoly {
        PPoly::from_descending(&self.u)
    }

    pub fn v_poly(&self) -> PPoly {
        PPoly::from_descending(&self.v)
    }
}

/// `p^i (∂_x F + p ∂_y F)`.
fn transported(web: &WebEquation, i: usize) -> PPoly {
    web.poly().total_derivative().shift(i)
}

/// Checks the defining identity exactly.
pub fn defining_identity_holds(web: &WebEquation, pair: &AssociatedPair) -> bool {
    let f = web.poly();
    let lhs = transported(web, pair.order);
    let rhs = &(&pair.u_poly() * f) + &(&pair.v_poly() * &f.dp());
    lhs == rhs
}

/// All pairs of orders `0..=d-3`, from one fraction-free elimination of the
/// Sylvester system with `d-2` right-hand sides.
pub fn associated_pairs(web: &WebEquation) -> Result<Vec<AssociatedPair>> {
    let d = web.d();
    let n = 2 * d - 1;
    let f = web.poly();
    let fp = f.dp();
    // column k < d-1: u_{k+2} p^{d-2-k} F; column d-1+k: v_{k+1} p^{d-1-k} F_p
    let mut cols: Vec<PPoly> = Vec::with_capacity(n);
    for k in 0..(d - 1) {
        cols.push(f.shift(d - 2 - k));
    }
    for k in 0..d {
        cols.push(fp.shift(d - 1 - k));
    }
    let m: Vec<Vec<RatFunc>> = (0..n)
        .map(|row| cols.iter().map(|c| c.coeff(row)).collect())
        .collect();
    let rhs: Vec<Vec<RatFunc>> = (0..=(d - 3))
        .map(|i| {
            let t = transported(web, i);
            (0..n).map(|row| t.coeff(row)).collect()
        })
        .collect();
    let sols = solve_linear_multi(&m, &rhs).map_err(|e| match e {
        crate::kernel::KernelError::SingularSystem => WebError::NonReduced,
        other => other.into(),
    })?;
    let pairs: Vec<AssociatedPair> = sols
        .into_iter()
        .enumerate()
        .map(|(i, mut s)| {
            let v = s.split_off(d - 1);
            AssociatedPair { order: i, u: s, v }
        })
        .collect();
    for pair in &pairs {
        if !defining_identity_holds(web, pair) {
            return Err(WebError::Assertion(format!(
                "defining identity of order {}",
                pair.order
            )));
        }
    }
    Ok(pairs)
}

pub fn associated_polynomials(web: &WebEquation, i: usize) -> Result<AssociatedPair> {
    let max = web.d() - 3;
    if i > max {
        return Err(WebError::Order { order: i, max });
    }
    Ok(associated_pairs(web)?.swap_remove(i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationData {
    /// `P = -V`.
    pub p: PPoly,
    /// `l_1..l_d`, coefficients of `P` from the highest power down.
    pub l: Vec<RatFunc>,
    /// Degree of `P` in `p`; `None` when `P = 0`.
    pub effective_degree: Option<usize>,
    pub l1: Option<RatFunc>,
    pub l2: Option<RatFunc>,
}

/// The two linearizability obstructions, from `(c_d, c_{d-1}, c_{d-2}, c_{d-3})`.
///
/// The arguments are the trailing coefficients of `V`; with this sign
/// convention the obstructions satisfy the curvature relations
/// `3 k_2 = ∂_x k_1 + v_3 k_1 + L_1` and `3 k_3 = ∂_y k_1 - v_2 k_1 + L_2` for 4-webs.
pub fn obstructions(c0: &RatFunc, c1: &RatFunc, c2: &RatFunc, c3: &RatFunc) -> (RatFunc, RatFunc) {
    let three = RatFunc::int(3);
    let x = |f: &RatFunc| f.d(Var::X);
    let y = |f: &RatFunc| f.d(Var::Y);

    let t1 = &x(c2) - &(&RatFunc::int(2) * &y(c1));
    let l1 = -x(&t1) - c1 * &t1 - &three * &y(&y(c0)) - &three * &y(&(c2 * c0))
        + &three * &x(&(c0 * c3))
        + &three * &(c0 * &x(c3));

    let t2 = &(&RatFunc::int(2) * &x(c2)) - &y(c1);
    let l2 = y(&t2) - c2 * &t2 - &three * &x(&x(c3)) + &three * &x(&(c1 * c3))
        - &three * &y(&(c0 * c3))
        - &three * &(c3 * &y(c0));
    (l1, l2)
}

pub fn linearization_from_pair(pair0: &AssociatedPair) -> LinearizationData {
    let d = pair0.d();
    let l: Vec<RatFunc> = pair0.v_coeffs().iter().map(|v| -v).collect();
    let p = PPoly::from_descending(&l);
    let effective_degree = p.degree();
    let (l1, l2) = if d >= 4 {
        let (a, b) = obstructions(pair0.v(d), pair0.v(d - 1), pair0.v(d - 2), pair0.v(d - 3));
        (Some(a), Some(b))
    } else {
        (None, None)
    };
    LinearizationData {
        p,
        l,
        effective_degree,
        l1,
        l2,
    }
}

pub fn linearization_polynomial(web: &WebEquation) -> Result<LinearizationData> {
    Ok(linearization_from_pair(&associated_polynomials(web, 0)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalForm {
    pub alpha: Form1,
}

impl FundamentalForm {
    pub fn a1(&self) -> &RatFunc {
        &self.alpha.cx
    }

    pub fn a2(&self) -> &RatFunc {
        &self.alpha.cy
    }
}

/// Power sums `s_0..s_m` of the roots of `F`, from Newton's identities on
/// the coefficients.
pub fn power_sums(web: &WebEquation, m: usize) -> Vec<RatFunc> {
    let d = web.d();
    let a0 = web.a(0);
    // e_k = (-1)^k a_k / a_0
    let e: Vec<RatFunc> = (0..=d)
        .map(|k| {
            let q = web.a(k) / a0;
            if k % 2 == 1 {
                -q
            } else {
                q
            }
        })
        .collect();
    let mut s = vec![RatFunc::int(d as i64)];
    for j in 1..=m {
        let mut acc = RatFunc::zero();
        for k in 1..j.min(d + 1) {
            let t = &e[k] * &s[j - k];
            acc = if k % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        if j <= d {
            let t = e[j].scale(&rat(j as i64, 1));
            acc = if j % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        s.push(acc);
    }
    s
}

/// `α` written through the coefficients of `F` and the power sums of its roots.
pub fn alpha_from_power_sums(web: &WebEquation, pair0: &AssociatedPair) -> Form1 {
    let d = web.d();
    let s = power_sums(web, d - 2);
    let a0 = web.a(0);
    let v = |k: usize| pair0.v(k);
    let mut cx = -(&a0.d(Var::X) / a0) - (web.a(1) / a0).d(Var::Y);
    for i in 1..d {
        cx = &cx + &(v(i) * &s[d - 1 - i]);
    }
    cx = &cx - v(d - 1);
    let mut cy = -(&a0.d(Var::Y) / a0);
    for i in 1..(d - 1) {
        cy = &cy + &(v(i) * &s[d - 2 - i]);
    }
    cy = &cy - &v(d - 2).scale(&rat(2, 1));
    Form1::new(cx, cy)
}

/// `α = -(u_d + v_{d-1}) dx - (u_{d-1} + 2 v_{d-2}) dy`, the order-zero
/// column of the system matrix.
pub fn fundamental_form_from_pair(web: &WebEquation, pair0: &AssociatedPair) -> Result<FundamentalForm> {
    let d = web.d();
    let a1 = -(pair0.u(d) + pair0.v(d - 1));
    let a2 = -(pair0.u(d - 1) + &pair0.v(d - 2).scale(&rat(2, 1)));
    let alpha = Form1::new(a1, a2);
    if alpha != alpha_from_power_sums(web, pair0) {
        return Err(WebError::Assertion("power-sum expression of the fundamental form".into()));
    }
    Ok(FundamentalForm { alpha })
}

pub fn fundamental_form(web: &WebEquation) -> Result<FundamentalForm> {
    fundamental_form_from_pair(web, &associated_polynomials(web, 0)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_linear: bool,
    pub is_algebraic: bool,
    /// `None` for 3-webs, where the obstructions are not defined.
    pub linearizable_candidate: Option<bool>,
}

impl Classification {
    /// Combines the three ingredients: `V = 0`, `∂_y²(a_1/a_0) = 0`, and for
    /// `d >= 4` whether `deg P <= 3` with vanishing obstructions.
    pub fn from_parts(v_zero: bool, a1_second_derivative_zero: bool, linearizable: Option<bool>) -> Self {
        Classification {
            is_linear: v_zero,
            is_algebraic: v_zero && a1_second_derivative_zero,
            linearizable_candidate: linearizable,
        }
    }
}

pub fn classify_from_pair(web: &WebEquation, pair0: &AssociatedPair) -> Classification {
    let v_zero = pair0.v_coeffs().iter().all(RatFunc::is_zero);
    let ratio = web.a(1) / web.a(0);
    let second = ratio.d(Var::Y).d(Var::Y);
    let lin = linearization_from_pair(pair0);
    let linearizable = match (&lin.l1, &lin.l2) {
        (Some(l1), Some(l2)) => {
            Some(lin.effective_degree.map_or(true, |k| k <= 3) && l1.is_zero() && l2.is_zero())
        }
        _ => None,
    };
    Classification::from_parts(v_zero, second.is_zero(), linearizable)
}

pub fn classify(web: &WebEquation) -> Result<Classification> {
    Ok(classify_from_pair(web, &associated_polynomials(web, 0)?))
}

/// Differences between the invariants of `g F` and those of `F`; all zero
/// when the invariance relations hold.
#[derive(Clone, Debug)]
pub struct InvarianceResiduals {
    /// `V_i^{gF} - V_i^F`
    pub v: Vec<PPoly>,
    /// `U_i^{gF} - U_i^F - p^i (∂_x g + p ∂_y g) / g`
    pub u: Vec<PPoly>,
    /// `dα^{gF} - dα^F`
    pub d_alpha: Form2,
}

impl InvarianceResiduals {
    pub fn is_zero(&self) -> bool {
        self.v.iter().all(PPoly::is_zero) && self.u.iter().all(PPoly::is_zero) && self.d_alpha.is_zero()
    }
}

pub fn invariance_check(web: &WebEquation, g: &RatFunc) -> Result<InvarianceResiduals> {
    let scaled = web.rescale(g)?;
    let before = associated_pairs(web)?;
    let after = associated_pairs(&scaled)?;
    let shift = PPoly::from_ascending(vec![&g.d(Var::X) / g, &g.d(Var::Y) / g]);
    let v = before
        .iter()
        .zip(&after)
        .map(|(b, a)| &a.v_poly() - &b.v_poly())
        .collect();
    let u = before
        .iter()
        .zip(&after)
        .map(|(b, a)| &(&a.u_poly() - &b.u_poly()) - &shift.shift(b.order()))
        .collect();
    let d_alpha = &fundamental_form_from_pair(&scaled, &after[0])?.alpha.d()
        - &fundamental_form_from_pair(web, &before[0])?.alpha.d();
    Ok(InvarianceResiduals { v, u, d_alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};
    use crate::webdef::SlopeWeb;

    fn origin() -> (Rational, Rational) {
        (rat(0, 1), rat(0, 1))
    }

    #[test]
    fn parallel_web_has_zero_pair() {
        let sw = SlopeWeb::from_slopes(vec![RatFunc::int(0), RatFunc::int(1), RatFunc::int(2)], origin()).unwrap();
        let pair = associated_polynomials(sw.web(), 0).unwrap();
        assert!(pair.u_coeffs().iter().all(RatFunc::is_zero));
        assert!(pair.v_coeffs().iter().all(RatFunc::is_zero));
        assert!(fundamental_form(sw.web()).unwrap().alpha.is_zero());
    }

    #[test]
    fn order_out_of_range() {
        let sw = SlopeWeb::from_slopes(vec![RatFunc::int(0), RatFunc::int(1), RatFunc::int(2)], origin()).unwrap();
        assert_eq!(
            associated_polynomials(sw.web(), 1).unwrap_err(),
            WebError::Order { order: 1, max: 0 }
        );
    }

    #[test]
    fn newton_power_sums_of_constant_roots() {
        let sw = SlopeWeb::from_slopes(
            vec![RatFunc::int(1), RatFunc::int(2), RatFunc::int(3)],
            origin(),
        )
        .unwrap();
        let s = power_sums(sw.web(), 4);
        let expected = [3, 6, 14, 36, 98];
        for (k, e) in expected.iter().enumerate() {
            assert_eq!(s[k], RatFunc::int(*e), "s_{}", k);
        }
    }

    #[test]
    fn synthetic_classification_logic() {
        let c = Classification::from_parts(true, false, Some(true));
        assert!(c.is_linear && !c.is_algebraic);
        let c = Classification::from_parts(false, true, None);
        assert!(!c.is_linear && !c.is_algebraic && c.linearizable_candidate.is_none());
        assert!(Classification::from_parts(true, true, Some(true)).is_algebraic);
    }
}
