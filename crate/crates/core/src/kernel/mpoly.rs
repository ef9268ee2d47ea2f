//! Sparse multivariate polynomials in `x`, `y`, `p` over the rationals.
//!
//! Terms are kept sorted in decreasing graded-lexicographic order with
//! `p > x > y`, and zero coefficients are never stored, so structural
//! equality is mathematical equality.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// One of the three variables the engine knows about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    P,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::P => "p",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector `p^p * x^x * y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub p: u32,
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { p: 0, x: 0, y: 0 };

    pub fn new(x: u32, y: u32, p: u32) -> Self {
        Monomial { p, x, y }
    }

    pub fn var(v: Var) -> Self {
        Self::ONE.with(v, 1)
    }

    pub fn degree(self) -> u32 {
        self.p + self.x + self.y
    }

    pub fn exp(self, v: Var) -> u32 {
        match v {
            Var::X => self.x,
            Var::Y => self.y,
            Var::P => self.p,
        }
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        match v {
            Var::X => self.x = e,
            Var::Y => self.y = e,
            Var::P => self.p = e,
        }
        self
    }

    pub fn mul(self, o: Monomial) -> Monomial {
        Monomial {
            p: self.p + o.p,
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    pub fn divides(self, o: Monomial) -> bool {
        self.p <= o.p && self.x <= o.x && self.y <= o.y
    }

    /// `o / self`, assuming `self.divides(o)`.
    pub fn quotient_of(self, o: Monomial) -> Monomial {
        Monomial {
            p: o.p - self.p,
            x: o.x - self.x,
            y: o.y - self.y,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.p.cmp(&other.p))
            .then(self.x.cmp(&other.x))
            .then(self.y.cmp(&other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(Monomial::ONE, c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    /// Terms in decreasing graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(v) > 0)
            .map(|(m, c)| {
                let e = m.exp(v);
                (m.with(v, e - 1), c * Rational::from_integer(BigInt::from(e)))
            });
        // Differentiation can break the ordering only between terms that
        // collide; re-normalize through the map path.
        Self::from_terms(terms)
    }

    /// Evaluates at a point given as `(x, y, p)`.
    pub fn eval(&self, x: &Rational, y: &Rational, p: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            if m.x > 0 {
                t *= pow_rat(x, m.x);
            }
            if m.y > 0 {
                t *= pow_rat(y, m.y);
            }
            if m.p > 0 {
                t *= pow_rat(p, m.p);
            }
            acc += t;
        }
        acc
    }

    /// Substitutes a rational value for one variable.
    pub fn substitute(&self, v: Var, val: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let e = m.exp(v);
            (m.with(v, 0), c * pow_rat(val, e))
        }))
    }

    /// Coefficients with respect to `v`: `result[k]` multiplies `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let deg = match self.degree_in(v) {
            Some(d) => d as usize,
            None => return Vec::new(),
        };
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.with(v, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // stripping a variable preserves relative order only up to
                // ties broken by that variable, so re-sort
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: t }
            })
            .collect()
    }

    /// Inverse of [`MPoly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(k, c)| {
            c.terms
                .iter()
                .map(move |(m, a)| (m.with(v, m.exp(v) + k as u32), a.clone()))
        }))
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Gcd of coefficient numerators, after clearing denominators.
    pub fn integer_content(&self) -> BigInt {
        let l = self.denominator_lcm();
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| {
            let n = c.numer() * (&l / c.denom());
            acc.gcd(&n)
        })
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.terms[0].clone();
        let dc_inv = dc.recip();
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !dm.divides(*m) {
                    return None;
                }
                out.push((dm.quotient_of(*m), c * &dc_inv));
            }
            return Some(MPoly { terms: out });
        }
        let mut rem: BTreeMap<std::cmp::Reverse<Monomial>, Rational> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(*m), c.clone()))
            .collect();
        let mut quot = Vec::new();
        while let Some((std::cmp::Reverse(lm), lc)) = rem.pop_first() {
            if !dm.divides(lm) || lm.degree() < dm.degree() {
                return None;
            }
            let qm = dm.quotient_of(lm);
            let qc = &lc * &dc_inv;
            for (m, c) in &d.terms[1..] {
                let key = std::cmp::Reverse(m.mul(qm));
                let delta = c * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(MPoly { terms: quot })
    }

    /// Monic normalization: divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => Self::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn map_coeffs<F: FnMut(&Rational) -> Rational>(&self, mut f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    num_traits::pow::pow(r.clone(), e as usize)
}

fn merge(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], negate_b: bool) -> MPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    MPoly { terms: out }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        merge(&self.terms, &o.terms, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        merge(&self.terms, &o.terms, true)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(*mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $method(self, o: MPoly) -> MPoly {
                (&self).$method(&o)
            }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $method(self, o: &MPoly) -> MPoly {
                (&self).$method(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

pub(crate) fn fmt_rational_abs(c: &Rational) -> String {
    let a = c.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

pub(crate) fn fmt_monomial(m: Monomial) -> String {
    let mut parts = Vec::new();
    for (v, e) in [(Var::P, m.p), (Var::X, m.x), (Var::Y, m.y)] {
        match e {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing graded-lex order, `*` products and
/// `^` powers, e.g. `p^4 + p^2*y^2 - p*y`.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mono = fmt_monomial(*m);
            let coeff = fmt_rational_abs(c);
            if mono.is_empty() {
                f.write_str(&coeff)?;
            } else if c.abs().is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", coeff, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::X)
    }
    fn y() -> MPoly {
        MPoly::var(Var::Y)
    }
    fn p() -> MPoly {
        MPoly::var(Var::P)
    }

    fn section8() -> MPoly {
        &(&p().pow(4) + &(&y().pow(2) * &p().pow(2))) - &(&y() * &p())
    }

    #[test]
    fn graded_lex_order_p_over_x_over_y() {
        assert!(Monomial::new(0, 0, 1) > Monomial::new(1, 0, 0));
        assert!(Monomial::new(1, 0, 0) > Monomial::new(0, 1, 0));
        assert!(Monomial::new(0, 2, 0) > Monomial::new(0, 0, 1));
        assert!(Monomial::new(0, 1, 1) > Monomial::new(1, 1, 0));
    }

    #[test]
    fn derivative_in_p_of_section8_presentation() {
        let dp = section8().derivative(Var::P);
        let expected = &(&(&p().pow(3) * &MPoly::int(4)) + &(&(&y().pow(2) * &p()) * &MPoly::int(2)))
            - &y();
        assert_eq!(dp, expected);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        assert!(MPoly::int(7).derivative(Var::X).is_zero());
    }

    #[test]
    fn exact_division_round_trip() {
        let a = &(&x() + &y()) * &(&p() - &MPoly::int(3));
        let b = &x() + &y();
        assert_eq!(a.div_exact(&b).unwrap(), &p() - &MPoly::int(3));
        assert!(a.div_exact(&(&x() - &y())).is_none());
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(section8().to_string(), "p^4 + p^2*y^2 - p*y");
        assert_eq!(MPoly::zero().to_string(), "0");
        let q = &(&x() * &MPoly::constant(Rational::new(3.into(), 2.into()))) - &MPoly::one();
        assert_eq!(q.to_string(), "3/2*x - 1");
    }

    #[test]
    fn coeffs_in_round_trip() {
        let f = section8();
        let cs = f.coeffs_in(Var::P);
        assert_eq!(cs.len(), 5);
        assert_eq!(cs[1], -&y());
        assert_eq!(MPoly::from_coeffs_in(Var::P, &cs), f);
    }
}
