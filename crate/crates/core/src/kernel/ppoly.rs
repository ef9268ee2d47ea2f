//! Polynomials in `p` whose coefficients are rational functions of `x`, `y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::mpoly::{MPoly, Var};
use super::ratfunc::RatFunc;
use super::Rational;

/// `coeffs[k]` multiplies `p^k`; trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PPoly {
    coeffs: Vec<RatFunc>,
}

impl PPoly {
    pub fn zero() -> Self {
        PPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_ascending(vec![c])
    }

    /// `p`.
    pub fn p() -> Self {
        Self::from_ascending(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn from_ascending(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        PPoly { coeffs }
    }

    /// From coefficients listed highest power first (`c[0] p^n + ... + c[n]`).
    pub fn from_descending(c: &[RatFunc]) -> Self {
        Self::from_ascending(c.iter().rev().cloned().collect())
    }

    /// Splits a polynomial in `x`, `y`, `p` by powers of `p`.
    pub fn from_mpoly(f: &MPoly) -> Self {
        Self::from_ascending(f.coeffs_in(Var::P).into_iter().map(RatFunc::from_poly).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `p^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn ascending(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficients padded to `len`, highest power first.
    pub fn descending_padded(&self, len: usize) -> Vec<RatFunc> {
        (0..len).rev().map(|k| self.coeff(k)).collect()
    }

    pub fn map<F: FnMut(&RatFunc) -> RatFunc>(&self, f: F) -> Self {
        Self::from_ascending(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        self.map(|a| a * c)
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![RatFunc::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::from_ascending(v)
    }

    /// Derivative in `p`.
    pub fn dp(&self) -> Self {
        Self::from_ascending(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Coefficient-wise derivative in `x` or `y`.
    pub fn d(&self, v: Var) -> Self {
        self.map(|c| c.d(v))
    }

    /// The vector field `X = d/dx + p d/dy` applied to `self`.
    pub fn total_derivative(&self) -> Self {
        &self.d(Var::X) + &self.d(Var::Y).shift(1)
    }

    /// Evaluates at `p = q` for a rational function `q`.
    pub fn eval_at(&self, q: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    pub fn eval_point(&self, x: &Rational, y: &Rational, p: &Rational) -> Option<Rational> {
        let mut acc = Rational::from_integer(0.into());
        for c in self.coeffs.iter().rev() {
            acc = acc * p + c.eval(x, y)?;
        }
        Some(acc)
    }
}

impl Add for &PPoly {
    type Output = PPoly;
    fn add(self, o: &PPoly) -> PPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        PPoly::from_ascending((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl Sub for &PPoly {
    type Output = PPoly;
    fn sub(self, o: &PPoly) -> PPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        PPoly::from_ascending((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl Mul for &PPoly {
    type Output = PPoly;
    fn mul(self, o: &PPoly) -> PPoly {
        if self.is_zero() || o.is_zero() {
            return PPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        PPoly::from_ascending(out)
    }
}

impl Neg for &PPoly {
    type Output = PPoly;
    fn neg(self) -> PPoly {
        self.map(|c| -c)
    }
}

impl fmt::Display for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*p", c)?,
                _ => write!(f, "({})*p^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PPoly({})", self)
    }
}
