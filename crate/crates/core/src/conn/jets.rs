//! Jet prolongation of the system `M(d)`.
//!
//! Unknowns are `b_3..b_d` (component `c` stands for `b_{c+3}`). Row `m` of
//! the system reads `∂_x b_{d-m} + ∂_y b_{d-m+1} + Σ_j A[m][j] b_{j+3} = 0`,
//! derivative terms kept only when the index lies in `3..=d`. Prolonging by
//! `∂^β` gives equations whose top-order part is a constant 0/1 symbol, so
//! each jet order is solved by a fixed rational echelon form.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::kernel::{Matrix, RatFunc, Rational, Var};

/// `∂_x^a ∂_y^b b_{comp+3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Jet {
    pub comp: usize,
    pub a: usize,
    pub b: usize,
}

impl Jet {
    pub fn order(&self) -> usize {
        self.a + self.b
    }

    pub fn shifted(&self, v: Var) -> Jet {
        match v {
            Var::X => Jet { a: self.a + 1, ..*self },
            Var::Y => Jet { b: self.b + 1, ..*self },
            Var::P => panic!("no p-derivatives of jets"),
        }
    }
}

/// Multi-indices of order `n`, `y`-degree ascending: `(n,0), (n-1,1), ..., (0,n)`.
pub fn multi_indices(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).map(move |b| (n - b, b))
}

/// Dense numbering of jets up to a maximal order.
#[derive(Clone, Debug)]
pub struct JetLayout {
    ncomp: usize,
    max_order: usize,
}

impl JetLayout {
    pub fn new(ncomp: usize, max_order: usize) -> Self {
        JetLayout { ncomp, max_order }
    }

    fn offset(&self, n: usize) -> usize {
        self.ncomp * n * (n + 1) / 2
    }

    pub fn len(&self) -> usize {
        self.offset(self.max_order + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, j: Jet) -> usize {
        self.offset(j.order()) + j.b * self.ncomp + j.comp
    }

    pub fn jet(&self, idx: usize) -> Jet {
        let mut n = 0;
        while self.offset(n + 1) <= idx {
            n += 1;
        }
        let local = idx - self.offset(n);
        let b = local / self.ncomp;
        Jet {
            comp: local % self.ncomp,
            a: n - b,
            b,
        }
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// One jet order: the equations `∂^β(row m)` with `|β| = order - 1`.
#[derive(Clone, Debug)]
struct Level {
    order: usize,
    eqs: Vec<(usize, (usize, usize))>,
    /// `t * symbol = rref`
    t: Vec<Vec<Rational>>,
    rref: Vec<Vec<Rational>>,
    pivots: Vec<(usize, usize)>,
    free_cols: Vec<usize>,
}

fn rref_with_transform(s: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>, Vec<(usize, usize)>) {
    let nr = s.len();
    let nc = s.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rational>> = s.to_vec();
    let mut t: Vec<Vec<Rational>> = (0..nr)
        .map(|i| (0..nr).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        let Some(pr) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        t.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for x in t[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nr {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..nc {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
                for j in 0..nr {
                    let v = &t[r][j] * &f;
                    t[i][j] -= v;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == nr {
            break;
        }
    }
    (m, t, pivots)
}

/// The prolonged system up to jets of order `d - 2`.
#[derive(Clone, Debug)]
pub struct JetSystem {
    d: usize,
    layout: JetLayout,
    a: Matrix,
    /// `∂^α A[m][j]` for `|α| <= d - 3`.
    derivs: HashMap<(usize, usize, usize, usize), RatFunc>,
    levels: Vec<Level>,
    free: Vec<Jet>,
}

impl JetSystem {
    pub fn new(d: usize, a: &Matrix) -> Self {
        let ncomp = d - 2;
        let layout = JetLayout::new(ncomp, d - 2);
        let max_beta = d - 3;

        let keys: Vec<(usize, usize)> = (0..d - 1).flat_map(|m| (0..ncomp).map(move |j| (m, j))).collect();
        let derivs: HashMap<_, _> = keys
            .par_iter()
            .flat_map_iter(|&(m, j)| {
                let mut local: HashMap<(usize, usize), RatFunc> = HashMap::new();
                local.insert((0, 0), a[m][j].clone());
                for n in 1..=max_beta {
                    for (x, y) in multi_indices(n) {
                        let v = if x > 0 {
                            local[&(x - 1, y)].d(Var::X)
                        } else {
                            local[&(x, y - 1)].d(Var::Y)
                        };
                        local.insert((x, y), v);
                    }
                }
                local.into_iter().map(move |((x, y), v)| ((m, j, x, y), v))
            })
            .collect();

        let mut free: Vec<Jet> = (0..ncomp).map(|comp| Jet { comp, a: 0, b: 0 }).collect();
        let mut levels = Vec::new();
        for k in 0..=max_beta {
            let order = k + 1;
            let ncols = ncomp * (order + 1);
            let eqs: Vec<(usize, (usize, usize))> = multi_indices(k)
                .flat_map(|beta| (0..d - 1).map(move |m| (m, beta)))
                .collect();
            let base = layout.offset(order);
            let symbol: Vec<Vec<Rational>> = eqs
                .iter()
                .map(|&(m, (bx, by))| {
                    let mut row = vec![Rational::zero(); ncols];
                    if d >= m + 3 && d - m - 3 < ncomp {
                        let j = Jet { comp: d - m - 3, a: bx + 1, b: by };
                        row[layout.index(j) - base] += Rational::one();
                    }
                    if d + 1 >= m + 3 && d + 1 - m - 3 < ncomp {
                        let j = Jet { comp: d - m - 2, a: bx, b: by + 1 };
                        row[layout.index(j) - base] += Rational::one();
                    }
                    row
                })
                .collect();
            let (rref, t, pivots) = rref_with_transform(&symbol);
            let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
            let free_cols: Vec<usize> = (0..ncols).filter(|c| !pivot_cols.contains(c)).collect();
            free.extend(free_cols.iter().map(|&c| layout.jet(base + c)));
            levels.push(Level {
                order,
                eqs,
                t,
                rref,
                pivots,
                free_cols,
            });
        }
        JetSystem {
            d,
            layout,
            a: a.clone(),
            derivs,
            levels,
            free,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn layout(&self) -> &JetLayout {
        &self.layout
    }

    pub fn system(&self) -> &Matrix {
        &self.a
    }

    /// Free jet coordinates, order 0 first; their number is the rank of `E`.
    pub fn free(&self) -> &[Jet] {
        &self.free
    }

    /// Number of pivot-free symbol columns plus order-zero jets.
    pub fn kernel_dimension(&self) -> usize {
        self.free.len()
    }

    /// Rank of the top-order symbol, which must be square and invertible.
    pub fn top_symbol_is_invertible(&self) -> bool {
        self.levels
            .last()
            .map_or(true, |l| l.free_cols.is_empty() && l.pivots.len() == l.eqs.len())
    }

    /// Completes free-coordinate values to a full jet solving every
    /// prolonged equation.
    pub fn lift(&self, values: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(values.len(), self.free.len());
        let ncomp = self.d - 2;
        let mut jets = vec![RatFunc::zero(); self.layout.len()];
        for (jet, v) in self.free.iter().zip(values) {
            jets[self.layout.index(*jet)] = v.clone();
        }
        for level in &self.levels {
            let base = self.layout.offset(level.order);
            let rhs: Vec<RatFunc> = level
                .eqs
                .iter()
                .map(|&(m, (bx, by))| {
                    let mut acc = RatFunc::zero();
                    for j in 0..ncomp {
                        for gx in 0..=bx {
                            for gy in 0..=by {
                                let jet = &jets[self.layout.index(Jet { comp: j, a: gx, b: gy })];
                                if jet.is_zero() {
                                    continue;
                                }
                                let dv = &self.derivs[&(m, j, bx - gx, by - gy)];
                                if dv.is_zero() {
                                    continue;
                                }
                                let c = binomial(bx, gx) * binomial(by, gy);
                                acc = &acc + &(dv * jet).scale(&Rational::from_integer(c.into()));
                            }
                        }
                    }
                    -acc
                })
                .collect();
            for &(r, pc) in &level.pivots {
                let mut val = RatFunc::zero();
                for (e, coef) in level.t[r].iter().enumerate() {
                    if !coef.is_zero() && !rhs[e].is_zero() {
                        val = &val + &rhs[e].scale(coef);
                    }
                }
                for &fc in &level.free_cols {
                    let coef = &level.rref[r][fc];
                    let fv = &jets[base + fc];
                    if !coef.is_zero() && !fv.is_zero() {
                        val = &val - &fv.scale(coef);
                    }
                }
                jets[base + pc] = val;
            }
        }
        jets
    }

    /// Residual of the prolonged equation `∂^β(row m)` on a full jet.
    pub fn residual(&self, jets: &[RatFunc], m: usize, beta: (usize, usize)) -> RatFunc {
        let d = self.d;
        let ncomp = d - 2;
        let (bx, by) = beta;
        let mut acc = RatFunc::zero();
        if d >= m + 3 && d - m - 3 < ncomp {
            acc = &acc + &jets[self.layout.index(Jet { comp: d - m - 3, a: bx + 1, b: by })];
        }
        if d + 1 >= m + 3 && d - m - 2 < ncomp {
            acc = &acc + &jets[self.layout.index(Jet { comp: d - m - 2, a: bx, b: by + 1 })];
        }
        for j in 0..ncomp {
            for gx in 0..=bx {
                for gy in 0..=by {
                    let c = binomial(bx, gx) * binomial(by, gy);
                    let t = &self.derivs[&(m, j, bx - gx, by - gy)] * &jets[self.layout.index(Jet { comp: j, a: gx, b: gy })];
                    acc = &acc + &t.scale(&Rational::from_integer(c.into()));
                }
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_round_trip() {
        let l = JetLayout::new(3, 3);
        for i in 0..l.len() {
            assert_eq!(l.index(l.jet(i)), i);
        }
        assert_eq!(l.len(), 3 * 10);
    }

    #[test]
    fn free_counts_match_pi() {
        for d in 3..=7 {
            let a: Matrix = vec![vec![RatFunc::zero(); d - 2]; d - 1];
            let js = JetSystem::new(d, &a);
            assert_eq!(js.kernel_dimension(), (d - 1) * (d - 2) / 2, "d = {}", d);
            assert!(js.top_symbol_is_invertible());
        }
    }

    #[test]
    fn four_web_free_coordinates() {
        let a: Matrix = vec![vec![RatFunc::zero(); 2]; 3];
        let js = JetSystem::new(4, &a);
        assert_eq!(
            js.free(),
            &[
                Jet { comp: 0, a: 0, b: 0 },
                Jet { comp: 1, a: 0, b: 0 },
                Jet { comp: 1, a: 0, b: 1 }
            ]
        );
    }
}
