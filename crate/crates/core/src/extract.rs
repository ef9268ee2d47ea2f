//! Extracted sub-webs, Blaschke curvatures and the trace formula.

use rayon::prelude::*;

use crate::assoc::{associated_polynomials, fundamental_form, fundamental_form_from_pair};
use crate::conn::trace_curvature;
use crate::error::{Result, WebError};
use crate::kernel::{Form2, RatFunc, Var};
use crate::webdef::SlopeWeb;

/// The web of the slopes at the given 0-based positions.
pub fn extract_subweb(sw: &SlopeWeb, subset: &[usize]) -> Result<SlopeWeb> {
    if subset.len() < 3 {
        return Err(WebError::Degree(subset.len()));
    }
    let slopes = subset.iter().map(|&i| sw.slopes()[i].clone()).collect();
    SlopeWeb::from_slopes(slopes, sw.web().base_point().clone())
}

/// `dα` of a 3-web.
pub fn blaschke_curvature(sw3: &SlopeWeb) -> Result<Form2> {
    if sw3.d() != 3 {
        return Err(WebError::Degree(sw3.d()));
    }
    Ok(fundamental_form(sw3.web())?.alpha.d())
}

/// All increasing index triples of `0..d`.
pub fn triples(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..d {
        for j in (i + 1)..d {
            for k in (j + 1)..d {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ExtractionReport {
    pub triples: Vec<[usize; 3]>,
    pub blaschke: Vec<Form2>,
    pub sum: Form2,
    pub k1_form: Form2,
    pub residual: Form2,
}

impl ExtractionReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `k_1` against the sum of the Blaschke curvatures of every extracted 3-web.
pub fn trace_formula_check(sw: &SlopeWeb) -> Result<ExtractionReport> {
    let triples = triples(sw.d());
    let blaschke: Vec<Form2> = triples
        .par_iter()
        .map(|t| blaschke_curvature(&extract_subweb(sw, t)?))
        .collect::<Result<_>>()?;
    let sum: Form2 = blaschke.iter().cloned().sum();
    let k1_form = Form2::new(trace_curvature(sw.web())?);
    let residual = &k1_form - &sum;
    Ok(ExtractionReport {
        triples,
        blaschke,
        sum,
        k1_form,
        residual,
    })
}

/// Residuals of the three relations between a 4-web and the 3-web left
/// after removing the slope `p_k` (1-based `k`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtractedResiduals {
    pub a2: RatFunc,
    pub a1: RatFunc,
    pub v: RatFunc,
}

impl ExtractedResiduals {
    pub fn is_zero(&self) -> bool {
        self.a2.is_zero() && self.a1.is_zero() && self.v.is_zero()
    }
}

pub fn extracted_relations_4web(sw: &SlopeWeb, k: usize) -> Result<ExtractedResiduals> {
    if sw.d() != 4 {
        return Err(WebError::Degree(sw.d()));
    }
    if k == 0 || k > 4 {
        return Err(WebError::Order { order: k, max: 4 });
    }
    let rest: Vec<usize> = (0..4).filter(|&i| i != k - 1).collect();
    let sub = extract_subweb(sw, &rest)?;
    let alpha_k = fundamental_form(sub.web())?;

    let pair0 = associated_polynomials(sw.web(), 0)?;
    let alpha = fundamental_form_from_pair(sw.web(), &pair0)?;
    let pk = &sw.slopes()[k - 1];
    let v = |i: usize| pair0.v(i);

    let a2 = &(&(alpha.a2() - v(2)) - &(v(1) * pk)) - alpha_k.a2();
    let a1 = &(&(&(&(alpha.a1() - &pk.d(Var::Y)) - v(3)) - &(v(2) * pk)) - &(v(1) * &(pk * pk)))
        - alpha_k.a1();
    let vr = &(&pair0.v_poly().eval_at(pk) + &pk.d(Var::X)) + &(pk * &pk.d(Var::Y));
    Ok(ExtractedResiduals { a2, a1, v: vr })
}

/// Every extracted 3-web has vanishing Blaschke curvature.
pub fn is_hexagonal(sw: &SlopeWeb) -> Result<bool> {
    for t in triples(sw.d()) {
        if !blaschke_curvature(&extract_subweb(sw, &t)?)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{rat, Rational};

    fn origin() -> (Rational, Rational) {
        (rat(0, 1), rat(0, 1))
    }

    fn sw(slopes: Vec<RatFunc>) -> SlopeWeb {
        SlopeWeb::from_slopes(slopes, origin()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<RatFunc> {
        v.iter().map(|&c| RatFunc::int(c)).collect()
    }

    #[test]
    fn subweb_of_constants() {
        let w = sw(ints(&[0, 1, 2, 3]));
        let s = extract_subweb(&w, &[0, 1, 2]).unwrap();
        assert_eq!(s.slopes(), ints(&[0, 1, 2]).as_slice());
        assert!(blaschke_curvature(&s).unwrap().is_zero());
        assert_eq!(extract_subweb(&w, &[0, 1]).unwrap_err(), WebError::Degree(2));
        assert!(is_hexagonal(&w).unwrap());
    }

    #[test]
    fn trace_formula_small() {
        let x = RatFunc::var(Var::X);
        let y = RatFunc::var(Var::Y);
        let w = sw(vec![RatFunc::int(0), RatFunc::int(1), RatFunc::int(2), &x + &y]);
        let r = trace_formula_check(&w).unwrap();
        assert!(r.holds(), "residual {}", r.residual);
        assert_eq!(r.triples.len(), 4);
        for k in 1..=4 {
            assert!(extracted_relations_4web(&w, k).unwrap().is_zero(), "k = {}", k);
        }
        let w2 = sw(vec![y, RatFunc::int(1), RatFunc::int(-1), x]);
        for k in 1..=4 {
            assert!(extracted_relations_4web(&w2, k).unwrap().is_zero(), "k = {}", k);
        }
    }
}
