//! Differential forms in `dx`, `dy` with rational-function coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::mpoly::Var;
use super::ratfunc::RatFunc;
use super::KernelError;

/// `cx dx + cy dy`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form1 {
    pub cx: RatFunc,
    pub cy: RatFunc,
}

/// `c dx^dy`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Form2 {
    pub c: RatFunc,
}

impl Form1 {
    pub fn new(cx: RatFunc, cy: RatFunc) -> Self {
        Form1 { cx, cy }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn dx() -> Self {
        Form1::new(RatFunc::one(), RatFunc::zero())
    }

    pub fn dy() -> Self {
        Form1::new(RatFunc::zero(), RatFunc::one())
    }

    /// Differential of a function.
    pub fn gradient(f: &RatFunc) -> Self {
        Form1::new(f.d(Var::X), f.d(Var::Y))
    }

    pub fn is_zero(&self) -> bool {
        self.cx.is_zero() && self.cy.is_zero()
    }

    pub fn component(&self, v: Var) -> &RatFunc {
        match v {
            Var::X => &self.cx,
            Var::Y => &self.cy,
            Var::P => panic!("forms have no dp component"),
        }
    }

    pub fn scale(&self, f: &RatFunc) -> Self {
        Form1::new(&self.cx * f, &self.cy * f)
    }

    /// Exterior derivative.
    pub fn d(&self) -> Form2 {
        Form2 {
            c: &self.cy.d(Var::X) - &self.cx.d(Var::Y),
        }
    }

    pub fn wedge(&self, o: &Form1) -> Form2 {
        Form2 {
            c: &(&self.cx * &o.cy) - &(&self.cy * &o.cx),
        }
    }
}

/// Free-function form of [`Form1::d`].
pub fn exterior_derivative(w: &Form1) -> Form2 {
    w.d()
}

impl Form2 {
    pub fn new(c: RatFunc) -> Self {
        Form2 { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }
}

impl Add for &Form1 {
    type Output = Form1;
    fn add(self, o: &Form1) -> Form1 {
        Form1::new(&self.cx + &o.cx, &self.cy + &o.cy)
    }
}

impl Sub for &Form1 {
    type Output = Form1;
    fn sub(self, o: &Form1) -> Form1 {
        Form1::new(&self.cx - &o.cx, &self.cy - &o.cy)
    }
}

impl Neg for &Form1 {
    type Output = Form1;
    fn neg(self) -> Form1 {
        Form1::new(-&self.cx, -&self.cy)
    }
}

impl Mul<&RatFunc> for &Form1 {
    type Output = Form1;
    fn mul(self, f: &RatFunc) -> Form1 {
        self.scale(f)
    }
}

impl Add for &Form2 {
    type Output = Form2;
    fn add(self, o: &Form2) -> Form2 {
        Form2::new(&self.c + &o.c)
    }
}

impl Sub for &Form2 {
    type Output = Form2;
    fn sub(self, o: &Form2) -> Form2 {
        Form2::new(&self.c - &o.c)
    }
}

impl Neg for &Form2 {
    type Output = Form2;
    fn neg(self) -> Form2 {
        Form2::new(-&self.c)
    }
}

impl std::iter::Sum for Form2 {
    fn sum<I: Iterator<Item = Form2>>(iter: I) -> Form2 {
        iter.fold(Form2::zero(), |a, b| &a + &b)
    }
}

/// Coefficient text, parenthesized when it is a sum so that a trailing
/// `dx`/`dy` binds to the whole expression.
fn coeff_text(c: &RatFunc) -> String {
    let s = c.to_string();
    if c.is_polynomial() && c.num().len() > 1 {
        format!("({})", s)
    } else {
        s
    }
}

impl fmt::Display for Form1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cx.is_zero(), self.cy.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{} dx", coeff_text(&self.cx)),
            (true, false) => write!(f, "{} dy", coeff_text(&self.cy)),
            (false, false) => write!(f, "{} dx + {} dy", coeff_text(&self.cx), coeff_text(&self.cy)),
        }
    }
}

/// Printed as its `dx^dy` coefficient.
impl fmt::Display for Form2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.c.fmt(f)
    }
}

/// Rectangular row-major matrix of forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Clone + Default> FormMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FormMatrix {
            rows,
            cols,
            entries: vec![T::default(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, KernelError> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != nc) {
            return Err(KernelError::Dimension("ragged rows".into()));
        }
        Ok(FormMatrix {
            rows: nr,
            cols: nc,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> FormMatrix<U> {
        FormMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl FormMatrix<Form1> {
    /// Matrix of the `dx` (or `dy`) coefficients.
    pub fn component(&self, v: Var) -> Vec<Vec<RatFunc>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|w| w.component(v).clone()).collect())
            .collect()
    }

    pub fn trace(&self) -> Form1 {
        (0..self.rows.min(self.cols)).fold(Form1::zero(), |acc, i| &acc + self.get(i, i))
    }
}

impl FormMatrix<Form2> {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Form2::is_zero)
    }
}

/// `K = dγ + γ∧γ`.
pub fn matrix_curvature(gamma: &FormMatrix<Form1>) -> Result<FormMatrix<Form2>, KernelError> {
    let n = gamma.rows();
    if gamma.cols() != n {
        return Err(KernelError::Dimension(format!(
            "curvature of a {}x{} matrix",
            n,
            gamma.cols()
        )));
    }
    let mut k = FormMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut c = gamma.get(i, j).d().c;
            for l in 0..n {
                let w = gamma.get(i, l).wedge(gamma.get(l, j));
                if !w.is_zero() {
                    c = &c + &w.c;
                }
            }
            k.set(i, j, Form2::new(c));
        }
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RatFunc {
        RatFunc::var(Var::X)
    }
    fn y() -> RatFunc {
        RatFunc::var(Var::Y)
    }

    #[test]
    fn d_of_y_dx() {
        assert_eq!(Form1::new(y(), RatFunc::zero()).d(), Form2::new(RatFunc::int(-1)));
    }

    #[test]
    fn d_of_one_variable_dy_form() {
        let a = &RatFunc::one() / &(&y() + &RatFunc::int(3));
        assert!(Form1::new(RatFunc::zero(), a).d().is_zero());
    }

    #[test]
    fn curvature_of_scalar_is_d() {
        let a = Form1::new(&x() * &y(), &x() / &y());
        let g = FormMatrix::from_rows(vec![vec![a.clone()]]).unwrap();
        assert_eq!(matrix_curvature(&g).unwrap().get(0, 0), &a.d());
    }

    #[test]
    fn non_square_curvature_rejected() {
        let g = FormMatrix::<Form1>::zeros(2, 3);
        assert!(matches!(matrix_curvature(&g), Err(KernelError::Dimension(_))));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Form1::zero().to_string(), "0");
        assert_eq!(Form1::new(&x() + &y(), RatFunc::zero()).to_string(), "(x + y) dx");
        assert_eq!(Form1::new(-x(), &RatFunc::one() / &y()).to_string(), "-x dx + (1)/(y) dy");
    }
}
