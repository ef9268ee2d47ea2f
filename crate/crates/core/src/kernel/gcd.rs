//! Polynomial gcd over the integers.
//!
//! The fast path is the heuristic gcd (evaluate at a large integer, recurse,
//! reconstruct by symmetric `xi`-adic expansion, confirm by trial division).
//! When it gives up, a recursive primitive pseudo-remainder sequence is used.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::mpoly::{MPoly, Monomial, Var};
use super::Rational;

const HEU_ATTEMPTS: usize = 6;

/// Integer-coefficient polynomial, terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ZPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl ZPoly {
    fn zero() -> Self {
        ZPoly { terms: Vec::new() }
    }

    fn constant(c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ZPoly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        ZPoly { terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Primitive integer polynomial proportional to `p`, positive leading coefficient.
    pub(crate) fn primitive_of(p: &MPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let l = p.denominator_lcm();
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&l / c.denom())))
            .collect();
        let g = terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c));
        let sign = if terms[0].1.is_negative() { -1 } else { 1 };
        let g = g * sign;
        for t in &mut terms {
            t.1 = &t.1 / &g;
        }
        ZPoly { terms }
    }

    pub(crate) fn to_mpoly(&self) -> MPoly {
        MPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, Rational::from_integer(c.clone()))),
        )
    }

    fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
    }

    fn div_int(&self, c: &BigInt) -> Self {
        ZPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a / c)).collect(),
        }
    }

    fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn max_norm(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(v)).max()
    }

    fn vars(&self) -> Vec<Var> {
        [Var::P, Var::X, Var::Y]
            .into_iter()
            .filter(|v| self.terms.iter().any(|(m, _)| m.exp(*v) > 0))
            .collect()
    }

    fn eval(&self, v: Var, xi: &BigInt) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        let mut powers: Vec<BigInt> = vec![BigInt::one()];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * xi;
                powers.push(next);
            }
            *acc.entry(m.with(v, 0)).or_insert_with(BigInt::zero) += c * &powers[e];
        }
        Self::from_map(acc)
    }

    fn mul(&self, o: &ZPoly) -> ZPoly {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                *acc.entry(ma.mul(*mb)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        Self::from_map(acc)
    }

    fn sub(&self, o: &ZPoly) -> ZPoly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (a, b) = (&self.terms, &o.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, -&b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 - &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, -c)));
        ZPoly { terms: out }
    }

    /// Exact division over the integers; `None` if `d` does not divide `self`.
    fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.terms[0].clone();
        let mut rem: BTreeMap<std::cmp::Reverse<Monomial>, BigInt> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(*m), c.clone()))
            .collect();
        let mut quot = Vec::new();
        while let Some((std::cmp::Reverse(lm), lc)) = rem.pop_first() {
            if !dm.divides(lm) {
                return None;
            }
            let (qc, r) = lc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm = dm.quotient_of(lm);
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
        Some(ZPoly { terms: quot })
    }

    /// Coefficients in `v` as polynomials in the remaining variables.
    fn coeffs_in(&self, v: Var) -> Vec<ZPoly> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut buckets: Vec<HashMap<Monomial, BigInt>> = vec![HashMap::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].insert(m.with(v, 0), c.clone());
        }
        buckets.into_iter().map(Self::from_map).collect()
    }

    fn from_coeffs_in(v: Var, cs: &[ZPoly]) -> ZPoly {
        let mut acc = HashMap::new();
        for (k, c) in cs.iter().enumerate() {
            for (m, a) in &c.terms {
                acc.insert(m.with(v, m.exp(v) + k as u32), a.clone());
            }
        }
        Self::from_map(acc)
    }

    fn normalize_sign(mut self) -> Self {
        if self.terms.first().map_or(false, |t| t.1.is_negative()) {
            for t in &mut self.terms {
                t.1 = -&t.1;
            }
        }
        self
    }
}

/// Gcd of two rational polynomials, returned as a primitive integer
/// polynomial with positive leading coefficient (so `gcd(0, 0) = 0`).
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return ZPoly::primitive_of(b).to_mpoly();
    }
    if b.is_zero() {
        return ZPoly::primitive_of(a).to_mpoly();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let za = ZPoly::primitive_of(a);
    let zb = ZPoly::primitive_of(b);
    zgcd(&za, &zb).normalize_sign().to_mpoly()
}

fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.clone().normalize_sign();
    }
    if b.is_zero() {
        return a.clone().normalize_sign();
    }
    if let Some(g) = monomial_shortcut(a, b) {
        return g;
    }
    if let Some(g) = heu_gcd(a, b) {
        return g;
    }
    prs_gcd(a, b)
}

/// Quick answers when one side is a single term.
fn monomial_shortcut(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let single = |s: &ZPoly, o: &ZPoly| -> ZPoly {
        let (mut m, c) = s.terms[0].clone();
        let mut g = c.abs();
        for (om, oc) in &o.terms {
            m = Monomial {
                p: m.p.min(om.p),
                x: m.x.min(om.x),
                y: m.y.min(om.y),
            };
            g = g.gcd(oc);
        }
        ZPoly {
            terms: vec![(m, g)],
        }
    };
    if a.terms.len() == 1 {
        Some(single(a, b))
    } else if b.terms.len() == 1 {
        Some(single(b, a))
    } else {
        None
    }
}

fn heu_gcd(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let ca = a.content();
    let cb = b.content();
    let gc = ca.gcd(&cb);
    let a = a.div_int(&ca);
    let b = b.div_int(&cb);

    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.is_empty() {
        return Some(ZPoly::constant(gc));
    }
    // a variable missing from one side: the gcd lives in the coefficients
    for &v in &vars {
        let da = a.degree_in(v).unwrap_or(0);
        let db = b.degree_in(v).unwrap_or(0);
        if da == 0 || db == 0 {
            let (with, without) = if da == 0 { (&b, &a) } else { (&a, &b) };
            let mut g = without.clone();
            for c in with.coeffs_in(v) {
                if c.is_zero() {
                    continue;
                }
                g = zgcd(&g, &c);
                if g.terms.len() == 1 && g.terms[0].0 == Monomial::ONE {
                    break;
                }
            }
            let g = g.normalize_sign();
            let g = g.div_int(&g.content());
            return Some(g.scale(&gc));
        }
    }
    let v = vars[0];
    let norm = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = norm * 2u32 + 29u32;
    for _ in 0..HEU_ATTEMPTS {
        let ea = a.eval(v, &xi);
        let eb = b.eval(v, &xi);
        // evaluation must not drop the degree in the other variables too badly
        if !ea.is_zero() && !eb.is_zero() {
            let g_eval = zgcd_inner(&ea, &eb);
            if let Some(g_eval) = g_eval {
                let cand = interpolate(&g_eval, &xi, v).normalize_sign();
                let cont = cand.content();
                if !cont.is_zero() {
                    let cand = cand.div_int(&cont);
                    if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                        return Some(cand.scale(&gc));
                    }
                }
            }
        }
        xi = (&xi * 73794u32) / 27011u32;
    }
    None
}

fn zgcd_inner(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if a.vars().is_empty() && b.vars().is_empty() {
        let x = a.terms.first().map(|t| t.1.clone()).unwrap_or_default();
        let y = b.terms.first().map(|t| t.1.clone()).unwrap_or_default();
        return Some(ZPoly::constant(x.gcd(&y)));
    }
    if let Some(g) = monomial_shortcut(a, b) {
        return Some(g);
    }
    heu_gcd(a, b)
}

/// Symmetric `xi`-adic reconstruction in the variable `v`.
fn interpolate(g: &ZPoly, xi: &BigInt, v: Var) -> ZPoly {
    let half = xi / 2u32;
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for (m, c) in &g.terms {
        let mut c = c.clone();
        let mut k = 0u32;
        while !c.is_zero() {
            let mut digit = c.mod_floor(xi);
            if digit > half {
                digit -= xi;
            }
            if !digit.is_zero() {
                *acc.entry(m.with(v, m.exp(v) + k)).or_insert_with(BigInt::zero) += &digit;
            }
            c = (c - digit) / xi;
            k += 1;
        }
    }
    ZPoly::from_map(acc)
}

/// Primitive pseudo-remainder sequence, recursive on the variables.
fn prs_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut vars = a.vars();
    for v in b.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    if vars.is_empty() {
        let x = a.terms.first().map(|t| t.1.clone()).unwrap_or_default();
        let y = b.terms.first().map(|t| t.1.clone()).unwrap_or_default();
        return ZPoly::constant(x.gcd(&y));
    }
    let v = vars[0];
    let (ca, pa) = split_content(a, v);
    let (cb, pb) = split_content(b, v);
    let content = prs_gcd_or_trivial(&ca, &cb);
    let (mut r0, mut r1) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !r1.is_zero() && r1.degree_in(v).unwrap_or(0) > 0 {
        let r = pseudo_rem(&r0, &r1, v);
        r0 = r1;
        r1 = if r.is_zero() { r } else { split_content(&r, v).1 };
    }
    let g = if r1.is_zero() {
        split_content(&r0, v).1
    } else {
        // nonzero constant remainder in v: primitive gcd is 1
        ZPoly::constant(BigInt::one())
    };
    content.mul(&g).normalize_sign()
}

fn prs_gcd_or_trivial(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    prs_gcd(a, b)
}

/// Splits `p` into its content in `v` (a polynomial in the other variables)
/// and the primitive part.
fn split_content(p: &ZPoly, v: Var) -> (ZPoly, ZPoly) {
    let mut c = ZPoly::zero();
    for k in p.coeffs_in(v) {
        if k.is_zero() {
            continue;
        }
        c = if c.is_zero() { k.normalize_sign() } else { prs_gcd(&c, &k) };
    }
    let c = c.normalize_sign();
    let pp = p.div_exact(&c).expect("content divides polynomial");
    (c, pp.normalize_sign())
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly, v: Var) -> ZPoly {
    let db = b.degree_in(v).unwrap_or(0);
    let bc = b.coeffs_in(v);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v).unwrap_or(0) >= db {
        let dr = r.degree_in(v).unwrap();
        let rc = r.coeffs_in(v);
        let lr = rc[dr as usize].clone();
        let shift: Vec<ZPoly> = (0..=(dr - db) as usize)
            .map(|k| if k == (dr - db) as usize { lr.clone() } else { ZPoly::zero() })
            .collect();
        let t = ZPoly::from_coeffs_in(v, &shift).mul(b);
        r = r.mul(&lb).sub(&t);
    }
    r
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

    #[test]
    fn common_factor_recovered() {
        let f = &(&x() * &y()) + &MPoly::int(3);
        let a = &f * &(&x() - &y().pow(2));
        let b = &f * &(&(&x() * &x()) + &y());
        assert_eq!(gcd(&a, &b), ZPoly::primitive_of(&f).to_mpoly());
    }

    #[test]
    fn coprime_inputs_give_one() {
        let a = &x().pow(3) + &y();
        let b = &y().pow(2) - &x();
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f = &(&y().pow(4) * &MPoly::int(4)) + &MPoly::int(27);
        let g = &(&x() * &y()) - &MPoly::int(2);
        let a = ZPoly::primitive_of(&(&(&f * &f) * &g));
        let b = ZPoly::primitive_of(&(&f * &(&g + &x())));
        let h = heu_gcd(&a, &b).unwrap().normalize_sign();
        let p = prs_gcd(&a, &b);
        assert_eq!(h, p);
        assert_eq!(p, ZPoly::primitive_of(&f));
    }

    #[test]
    fn univariate_content_case() {
        // gcd(y*(x+1), y^2) = y
        let a = &y() * &(&x() + &MPoly::one());
        let b = y().pow(2);
        assert_eq!(gcd(&a, &b), y());
    }
}
