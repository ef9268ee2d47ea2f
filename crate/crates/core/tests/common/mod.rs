#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use webconn_core::kernel::{parse_ratfunc, rat, RatFunc, Rational, Var};
use webconn_core::webdef::{SlopeWeb, WebEquation};
use webconn_core::WebError;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn base() -> (Rational, Rational) {
    (rat(1, 3), rat(2, 5))
}

pub fn r(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

pub fn rs(v: &[&str]) -> Vec<RatFunc> {
    v.iter().map(|s| r(s)).collect()
}

/// Random polynomial in `x`, `y` of total degree at most `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: u32, bound: i64) -> RatFunc {
    let x = RatFunc::var(Var::X);
    let y = RatFunc::var(Var::Y);
    let mut acc = RatFunc::zero();
    for n in 0..=deg {
        for b in 0..=n {
            let c = rng.gen_range(-bound..=bound);
            if c != 0 {
                acc = &acc + &(&x.pow(n - b) * &y.pow(b)).scale(&rat(c, 1));
            }
        }
    }
    acc
}

/// `d` distinct random slopes of degree at most `deg`.
pub fn random_slope_web(rng: &mut ChaCha8Rng, d: usize, deg: u32) -> SlopeWeb {
    loop {
        let slopes: Vec<RatFunc> = (0..d).map(|_| random_poly(rng, deg, 2)).collect();
        match SlopeWeb::from_slopes(slopes, base()) {
            Ok(sw) => return sw,
            Err(WebError::DuplicateSlope(..)) => continue,
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}

/// Random reduced presentation with polynomial coefficients.
pub fn random_coefficient_web(rng: &mut ChaCha8Rng, d: usize) -> WebEquation {
    loop {
        let mut coeffs: Vec<RatFunc> = (0..=d).map(|_| random_poly(rng, 1, 2)).collect();
        coeffs[0] = &coeffs[0] + &RatFunc::int(3);
        match WebEquation::from_coefficients(d, coeffs, base()) {
            Ok(w) => return w,
            Err(WebError::NonReduced) | Err(WebError::LeadingCoefficient) => continue,
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}

/// Constant slopes `0, 1, ..., d-1`.
pub fn parallel(d: usize) -> SlopeWeb {
    SlopeWeb::from_slopes((0..d as i64).map(RatFunc::int).collect(), base()).unwrap()
}

pub fn slopes(v: &[&str]) -> SlopeWeb {
    SlopeWeb::from_slopes(rs(v), base()).unwrap()
}

/// Pencils of lines through `(0, c)`; collinear centres, hence hexagonal.
pub fn collinear_pencils(cs: &[i64]) -> SlopeWeb {
    let v: Vec<String> = cs.iter().map(|c| format!("(y - {c})/x")).collect();
    slopes(&v.iter().map(String::as_str).collect::<Vec<_>>())
}

/// Image of a parallel web under `(u, v) -> (u, v + u^2)`: slopes `2x + m`.
pub fn bent_parallel(ms: &[i64]) -> SlopeWeb {
    let v: Vec<String> = ms.iter().map(|m| format!("2*x + {m}")).collect();
    slopes(&v.iter().map(String::as_str).collect::<Vec<_>>())
}
