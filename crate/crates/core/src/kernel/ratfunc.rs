//! Normalized rational functions in `x`, `y`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd, ZPoly};
use super::mpoly::{MPoly, Var};
use super::{KernelError, Rational};

/// `num / den` in lowest terms with a monic denominator.
///
/// Neither part may mention `p`. Two values are equal as rational functions
/// exactly when they are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn int(c: i64) -> Self {
        Self::from_poly(MPoly::int(c))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn var(v: Var) -> Self {
        assert!(v != Var::P, "rational functions live in x, y only");
        Self::from_poly(MPoly::var(v))
    }

    /// Wraps a polynomial in `x`, `y`.
    pub fn from_poly(num: MPoly) -> Self {
        debug_assert!(!num.contains_var(Var::P));
        RatFunc {
            num,
            den: MPoly::one(),
        }
    }

    /// Normalizes `num / den`.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if num.contains_var(Var::P) || den.contains_var(Var::P) {
            return Err(KernelError::InvalidVariable(Var::P));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MPoly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.num.contains_var(v) || self.den.contains_var(v)
    }

    pub fn recip(&self) -> Result<Self, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            RatFunc {
                num: self.num.scale(c),
                den: self.den.clone(),
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        RatFunc {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Formal partial derivative in `x` or `y`.
    pub fn derivative(&self, v: Var) -> Result<Self, KernelError> {
        if v == Var::P {
            return Err(KernelError::InvalidVariable(Var::P));
        }
        Ok(self.d(v))
    }

    /// Partial derivative for a variable known to be `x` or `y`.
    pub fn d(&self, v: Var) -> Self {
        debug_assert!(v != Var::P);
        let dn = self.num.derivative(v);
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::normalized(dn, self.den.clone());
        }
        // (n' q - n q') / q^2, where q = den / gcd(den, den')
        let g = gcd(&self.den, &dd);
        let q = self.den.div_exact(&g).expect("gcd divides");
        let dq = dd.div_exact(&g).expect("gcd divides");
        let top = &(&dn * &q) - &(&self.num * &dq);
        Self::normalized(top, &self.den * &q)
    }

    /// Derivative `d^a/dx^a d^b/dy^b`.
    pub fn d_multi(&self, a: usize, b: usize) -> Self {
        let mut r = self.clone();
        for _ in 0..a {
            r = r.d(Var::X);
        }
        for _ in 0..b {
            r = r.d(Var::Y);
        }
        r
    }

    /// Value at `(x, y)`; `None` when the denominator vanishes there.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Option<Rational> {
        let zero = Rational::zero();
        let d = self.den.eval(x, y, &zero);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x, y, &zero) / d)
        }
    }

    /// Integer-coefficient numerator and denominator with joint content 1 and
    /// a positive leading denominator coefficient; this is the serialized form.
    pub fn integer_parts(&self) -> (MPoly, MPoly) {
        let l = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        let lr = Rational::from_integer(l);
        let n = self.num.scale(&lr);
        let d = self.den.scale(&lr);
        let c = n.integer_content().gcd(&d.integer_content());
        let c = if c.is_zero() { BigInt::one() } else { c };
        let cr = Rational::from_integer(c).recip();
        (n.scale(&cr), d.scale(&cr))
    }

    /// Common denominator of a list, as a primitive integer polynomial.
    pub fn lcm_of_denominators<'a, I: IntoIterator<Item = &'a RatFunc>>(items: I) -> MPoly {
        let mut acc = MPoly::one();
        for r in items {
            if r.den.is_one() {
                continue;
            }
            let g = gcd(&acc, &r.den);
            acc = &acc * &r.den.div_exact(&g).expect("gcd divides");
        }
        ZPoly::primitive_of(&acc).to_mpoly()
    }

    /// `self * m` for a polynomial `m`.
    pub fn mul_poly(&self, m: &MPoly) -> Self {
        self * &RatFunc::from_poly(m.clone())
    }

    /// `self` as a polynomial; `None` if the denominator is not constant.
    pub fn to_poly(&self) -> Option<MPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFunc::normalized(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &o.den) + &o.num,
                den: o.den.clone(),
            };
        }
        if o.den.is_one() {
            return RatFunc {
                num: &self.num + &(&o.num * &self.den),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let num = &(&self.num * &o.den) + &(&o.num * &self.den);
            return RatFunc::make_monic(num, &self.den * &o.den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = o.den.div_exact(&g).expect("gcd divides");
        let t = &(&self.num * &d1) + &(&o.num * &b1);
        if t.is_zero() {
            return RatFunc::zero();
        }
        let g2 = gcd(&t, &g);
        if g2.is_one() {
            RatFunc::make_monic(t, &(&b1 * &d1) * &g)
        } else {
            let t = t.div_exact(&g2).expect("gcd divides");
            let g = g.div_exact(&g2).expect("gcd divides");
            RatFunc::make_monic(t, &(&b1 * &d1) * &g)
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        // cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)(c/d)
        let g1 = if o.den.is_one() { MPoly::one() } else { gcd(&self.num, &o.den) };
        let g2 = if self.den.is_one() { MPoly::one() } else { gcd(&o.num, &self.den) };
        let (a, d) = if g1.is_one() {
            (self.num.clone(), o.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                o.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_one() {
            (o.num.clone(), self.den.clone())
        } else {
            (
                o.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        RatFunc::make_monic(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::recip`] to handle it.
    fn div(self, o: &RatFunc) -> RatFunc {
        self * &o.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, o: RatFunc) -> RatFunc {
                (&self).$method(&o)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, o: &RatFunc) -> RatFunc {
                (&self).$method(o)
            }
        }
        impl $tr<RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, o: RatFunc) -> RatFunc {
                self.$method(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| &a + &b)
    }
}

/// Canonical text: `num` alone for polynomials with integer coefficients,
/// otherwise `(num)/(den)` with integer coefficients on both sides.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let (n, d) = self.integer_parts();
        if d.is_one() {
            write!(f, "{}", n)
        } else if d.as_constant().map_or(false, |c| c.is_negative()) {
            unreachable!("denominator normalized to positive leading coefficient")
        } else {
            write!(f, "({})/({})", n, d)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", self)
    }
}
