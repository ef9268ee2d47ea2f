//! Web presentations `F = a_0 p^d + ... + a_d` and slope-presented webs.

use std::fmt;

use crate::error::{Result, WebError};
use crate::kernel::{resultant_ppoly, MPoly, PPoly, RatFunc, Rational, Var};

/// `(d-1)(d-2)/2`, the maximal rank of a planar `d`-web.
pub fn pi_d(d: usize) -> usize {
    (d - 1) * (d - 2) / 2
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The discriminant or a coefficient is zero or undefined at the base point.
    SingularBasePoint,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::SingularBasePoint => f.write_str("base point lies on the discriminant locus"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct WebEquation {
    d: usize,
    coeffs: Vec<RatFunc>,
    poly: PPoly,
    base_point: (Rational, Rational),
    resultant: RatFunc,
    warnings: Vec<Warning>,
}

impl WebEquation {
    /// Validates `a_0 p^d + ... + a_d`; `coeffs` lists `a_0..a_d`.
    pub fn from_coefficients(d: usize, coeffs: Vec<RatFunc>, base_point: (Rational, Rational)) -> Result<Self> {
        if d < 3 {
            return Err(WebError::Degree(d));
        }
        if coeffs.len() != d + 1 {
            return Err(WebError::CoefficientCount {
                expected: d + 1,
                found: coeffs.len(),
            });
        }
        if coeffs[0].is_zero() {
            return Err(WebError::LeadingCoefficient);
        }
        let poly = PPoly::from_descending(&coeffs);
        let resultant = resultant_ppoly(&poly, &poly.dp())?;
        if resultant.is_zero() {
            return Err(WebError::NonReduced);
        }
        let (bx, by) = &base_point;
        let regular = coeffs.iter().all(|c| c.eval(bx, by).is_some())
            && resultant.eval(bx, by).map_or(false, |r| r != Rational::from_integer(0.into()));
        let warnings = if regular { vec![] } else { vec![Warning::SingularBasePoint] };
        Ok(WebEquation {
            d,
            coeffs,
            poly,
            base_point,
            resultant,
            warnings,
        })
    }

    /// Reads the degree and coefficients off a polynomial in `x`, `y`, `p`.
    pub fn from_poly(f: &MPoly, base_point: (Rational, Rational)) -> Result<Self> {
        let d = f.degree_in(Var::P).unwrap_or(0) as usize;
        let coeffs = f
            .coeffs_in(Var::P)
            .into_iter()
            .rev()
            .map(RatFunc::from_poly)
            .collect::<Vec<_>>();
        let mut padded = coeffs;
        padded.resize(d + 1, RatFunc::zero());
        Self::from_coefficients(d, padded, base_point)
    }

    /// Reads the degree and coefficients off `F` as a polynomial in `p`.
    pub fn from_ppoly(f: &PPoly, base_point: (Rational, Rational)) -> Result<Self> {
        let d = f.degree().unwrap_or(0);
        Self::from_coefficients(d, f.descending_padded(d + 1), base_point)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `a_0..a_d`.
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn a(&self, i: usize) -> &RatFunc {
        &self.coeffs[i]
    }

    /// `F` as a polynomial in `p`.
    pub fn poly(&self) -> &PPoly {
        &self.poly
    }

    pub fn base_point(&self) -> &(Rational, Rational) {
        &self.base_point
    }

    /// `Res_p(F, ∂_p F)`.
    pub fn discriminant(&self) -> &RatFunc {
        &self.resultant
    }

    pub fn pi(&self) -> usize {
        pi_d(self.d)
    }

    pub fn warnings(&self) -> &[Warning] {
        &self.warnings
    }

    /// Multiplies every coefficient by `g`, which must be invertible at the base point.
    pub fn rescale(&self, g: &RatFunc) -> Result<WebEquation> {
        let (bx, by) = &self.base_point;
        match g.eval(bx, by) {
            Some(v) if v != Rational::from_integer(0.into()) => {}
            _ => return Err(WebError::NonInvertibleRescale),
        }
        let coeffs = self.coeffs.iter().map(|a| a * g).collect();
        WebEquation::from_coefficients(self.d, coeffs, self.base_point.clone())
    }
}

pub fn discriminant(web: &WebEquation) -> RatFunc {
    web.discriminant().clone()
}

pub fn rescale(web: &WebEquation, g: &RatFunc) -> Result<WebEquation> {
    web.rescale(g)
}

/// A web given by its slopes `p_1..p_d`, together with the expanded presentation.
#[derive(Clone, Debug)]
pub struct SlopeWeb {
    web: WebEquation,
    slopes: Vec<RatFunc>,
}

impl SlopeWeb {
    pub fn from_slopes(slopes: Vec<RatFunc>, base_point: (Rational, Rational)) -> Result<Self> {
        let d = slopes.len();
        if d < 3 {
            return Err(WebError::Degree(d));
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if slopes[i] == slopes[j] {
                    return Err(WebError::DuplicateSlope(i + 1, j + 1));
                }
            }
        }
        let product = slopes.iter().fold(PPoly::constant(RatFunc::one()), |acc, s| {
            &acc * &PPoly::from_ascending(vec![-s, RatFunc::one()])
        });
        let l = RatFunc::from_poly(RatFunc::lcm_of_denominators(product.ascending()));
        let coeffs = product.scale(&l).descending_padded(d + 1);
        let web = WebEquation::from_coefficients(d, coeffs, base_point)?;
        Ok(SlopeWeb { web, slopes })
    }

    pub fn web(&self) -> &WebEquation {
        &self.web
    }

    pub fn slopes(&self) -> &[RatFunc] {
        &self.slopes
    }

    pub fn d(&self) -> usize {
        self.slopes.len()
    }
}

pub fn from_slopes(slopes: Vec<RatFunc>, base_point: (Rational, Rational)) -> Result<SlopeWeb> {
    SlopeWeb::from_slopes(slopes, base_point)
}
