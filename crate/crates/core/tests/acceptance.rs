//! One line per acceptance criterion; exits non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use webconn_core::assoc::{
    associated_pairs, defining_identity_holds, fundamental_form, invariance_check, linearization_polynomial,
};
use webconn_core::conn::{curvature, trace_curvature, ConnectionData, CurvatureData};
use webconn_core::extract::{is_hexagonal, trace_formula_check};
use webconn_core::kernel::{parse_form1, parse_ppoly, rat, Form1, RatFunc, Var};
use webconn_core::rank::{rank_matrix_from, rank_report, web_rank};
use webconn_core::webdef::{pi_d, WebEquation};

/// Wall-clock limit for the complete gold-fixture pipeline.
const GOLD_TIME_LIMIT: Duration = Duration::from_secs(10);
/// Wall-clock limit for a single trace-formula check.
const TRACE_TIME_LIMIT: Duration = Duration::from_secs(60);
/// All comparisons are exact equalities of normalized rational functions:
/// the admissible residual is the zero rational function.
const EXACT_RESIDUAL_TOLERANCE: i64 = 0;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_zero(f: &RatFunc) -> bool {
    f.is_zero() && EXACT_RESIDUAL_TOLERANCE == 0
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = parse_ppoly("p^4 + y^2*p^2 - y*p").map_err(err)?;
    let w = WebEquation::from_ppoly(&f, (rat(0, 1), rat(1, 1))).map_err(err)?;
    ensure(*w.discriminant() == r("-y^4*(27 + 4*y^4)"), || "discriminant".into())?;
    let lin = linearization_polynomial(&w).map_err(err)?;
    let p_expected =
        parse_ppoly("-12*p^3/(27 + 4*y^4) + (9 + 4*y^4)*p^2/(y*(27 + 4*y^4)) - 8*y^2*p/(27 + 4*y^4)").map_err(err)?;
    ensure(lin.p == p_expected, || "linearization polynomial".into())?;
    let alpha = fundamental_form(&w).map_err(err)?.alpha;
    ensure(alpha == parse_form1("-2*(9 + 4*y^4)/(y*(27 + 4*y^4)) dy").map_err(err)?, || "alpha".into())?;
    let (conn, curv) = curvature(&w).map_err(err)?;
    let gamma = [
        "-(9 + 4*y^4)/(y*(27 + 4*y^4)) dy",
        "-16*y*(-27 + 4*y^4)/(27 + 4*y^4)^2 dy",
        "96*y^2/(27 + 4*y^4)^2 dy",
        "-dx",
        "-8*y^2/(27 + 4*y^4) dx - (9 + 4*y^4)/(y*(27 + 4*y^4)) dy",
        "-12/(27 + 4*y^4) dy",
        "-dy",
        "0",
        "-2*(9 + 4*y^4)/(y*(27 + 4*y^4)) dy",
    ];
    for (n, e) in gamma.iter().enumerate() {
        let (i, j) = (n / 3, n % 3);
        ensure(*conn.gamma().get(i, j) == parse_form1(e).map_err(err)?, || format!("gamma[{i}][{j}]"))?;
    }
    let k1 = "-16*y*(-27 + 4*y^4)/(27 + 4*y^4)^2";
    let k2 = "-128*y^3*(-27 + 4*y^4)/(27 + 4*y^4)^3";
    let kml = [
        [k1, k2, "0"],
        [k2, "-1024*y^5*(-27 + 4*y^4)/(27 + 4*y^4)^4", "0"],
        [
            "64*(243 - 306*y^4 + 8*y^8)/(27 + 4*y^4)^3",
            "512*y^2*(243 - 306*y^4 + 8*y^8)/(27 + 4*y^4)^4",
            "0",
        ],
    ];
    for i in 0..3 {
        for j in 0..3 {
            let expected = if i == 0 { r(kml[0][j]) } else { RatFunc::zero() };
            ensure(curv.k.get(i, j).c == expected, || format!("K[{i}][{j}]"))?;
        }
    }
    let m = rank_matrix_from(&conn, &curv);
    for i in 0..3 {
        for j in 0..3 {
            ensure(m[i][j] == r(kml[i][j]), || format!("kml[{i}][{j}]"))?;
        }
    }
    let report = rank_report(&w, m);
    ensure(report.web_rank == 2, || format!("web rank {}", report.web_rank))?;
    let elapsed = start.elapsed();
    ensure(elapsed < GOLD_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("all entries exact, rank 2, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = rng(2);
    let mut count = 0;
    for n in 0..50 {
        let d = 3 + n % 4;
        let w = if n % 2 == 0 {
            random_slope_web(&mut rng, d, 1).web().clone()
        } else {
            random_coefficient_web(&mut rng, d)
        };
        let pairs = associated_pairs(&w).map_err(err)?;
        ensure(pairs.len() == d - 2, || format!("web {n}: {} pairs", pairs.len()))?;
        for pair in &pairs {
            ensure(defining_identity_holds(&w, pair), || format!("web {n}, order {}", pair.order()))?;
            count += 1;
        }
    }
    Ok(format!("50 webs, {count} identities exact"))
}

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    for n in 0..20 {
        let d = 3 + n % 2;
        let w = random_slope_web(&mut rng, d, 1).web().clone();
        let g = loop {
            let g = &random_poly(&mut rng, 2, 3) + &RatFunc::int(5);
            let (bx, by) = w.base_point();
            if g.eval(bx, by).map_or(false, |v| v != rat(0, 1)) {
                break g;
            }
        };
        let res = invariance_check(&w, &g).map_err(err)?;
        ensure(res.is_zero(), || format!("pair {n}: V, U-shift or dα residual"))?;
        let scaled = w.rescale(&g).map_err(err)?;
        ensure(trace_curvature(&w).map_err(err)? == trace_curvature(&scaled).map_err(err)?, || {
            format!("pair {n}: k1")
        })?;
        let (r0, r1) = (web_rank(&w).map_err(err)?, web_rank(&scaled).map_err(err)?);
        ensure(r0.web_rank == r1.web_rank, || format!("pair {n}: rank {} vs {}", r0.web_rank, r1.web_rank))?;
    }
    Ok("20 pairs: V, U-shift, dα, k1, rank invariant".into())
}

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let mut slowest = Duration::ZERO;
    for (d, count) in [(4usize, 20usize), (5, 10)] {
        for n in 0..count {
            let sw = random_slope_web(&mut rng, d, 1);
            let start = Instant::now();
            let report = trace_formula_check(&sw).map_err(err)?;
            let t = start.elapsed();
            slowest = slowest.max(t);
            ensure(exact_zero(&report.residual.c), || format!("d = {d}, web {n}: residual {}", report.residual))?;
            ensure(t < TRACE_TIME_LIMIT, || format!("d = {d}, web {n}: {t:?}"))?;
        }
    }
    Ok(format!("30 webs, residual 0, slowest {slowest:.2?}"))
}

fn four_web_closed_forms(conn: &ConnectionData, curv: &CurvatureData) -> Result<(), String> {
    let s = conn.system();
    let v = |k: usize| s.pair0().v(k).clone();
    let a1 = s.alpha().a1().clone();
    let a2 = s.alpha().a2().clone();
    let dx = |f: &RatFunc| f.d(Var::X);
    let dy = |f: &RatFunc| f.d(Var::Y);
    let a_expected = [
        [-v(4), a1.clone()],
        [&a1 - &v(3), a2.clone()],
        [&a2 - &v(2), v(1)],
    ];
    for (i, row) in a_expected.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            ensure(s.get(i, j) == e, || format!("A[{i}][{j}]"))?;
        }
    }
    let kappa1 = &dx(&(&a2 - &v(2))) - &dy(&(&a1 - &v(3)));
    let kappa2 = &dx(&a2) - &dy(&a1);
    let xi1 = Form1::new(&dy(&v(4)) + &(&v(4) * &v(2)), &(&v(1) * &v(4)) + &kappa1);
    let xi2 = Form1::new(&(&v(4) * &v(1)) - &kappa2, &(&v(1) * &v(3)) - &dx(&v(1)));
    let zero = RatFunc::zero();
    let one = RatFunc::one();
    let gamma = [
        [Form1::new(a1.clone(), &a2 - &v(2)), xi1.clone(), xi2.clone()],
        [Form1::new(-&one, zero.clone()), Form1::new(&a1 - &v(3), &a2 - &v(2)), Form1::new(zero.clone(), -v(1))],
        [Form1::new(zero.clone(), -&one), Form1::new(v(4), zero.clone()), Form1::new(a1.clone(), a2.clone())],
    ];
    for (i, row) in gamma.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            ensure(conn.gamma().get(i, j) == e, || format!("gamma[{i}][{j}]"))?;
        }
    }
    let k = &curv.k_row;
    let (k1, k2, k3) = (&k[0], &k[1], &k[2]);
    let m = rank_matrix_from(conn, curv);
    let rows = [
        [
            &(&dx(k1) - &(&a1 * k1)) + k2,
            &(&(&dx(k2) - &(&xi1.cx * k1)) - &(&(&a1 - &v(3)) * k2)) - &(&v(4) * k3),
            &(&dx(k3) - &(&(&(&v(1) * &v(4)) - &kappa2) * k1)) - &(&a1 * k3),
        ],
        [
            &(&dy(k1) - &(&(&a2 - &v(2)) * k1)) + k3,
            &(&dy(k2) - &(&(&(&v(1) * &v(4)) + &kappa1) * k1)) - &(&(&a2 - &v(2)) * k2),
            &(&(&dy(k3) - &(&xi2.cy * k1)) + &(&v(1) * k2)) - &(&a2 * k3),
        ],
    ];
    for (i, row) in rows.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            ensure(m[i + 1][j] == *e, || format!("k_{}{}", i + 2, j + 1))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut fixtures = vec![
        slopes(&["y", "1", "-1"]),
        slopes(&["0", "1", "x + y"]),
        slopes(&["y", "1", "-1", "x"]),
        slopes(&["0", "1", "2", "x + y"]),
        slopes(&["0", "1", "x*y", "x - y"]),
        slopes(&["y", "1", "-1", "0", "x"]),
        slopes(&["0", "1", "2", "x", "y"]),
        bent_parallel(&[0, 1, 2, 3, 4]),
    ];
    let mut rng = rng(5);
    for _ in 0..6 {
        fixtures.push(random_slope_web(&mut rng, 4, 1));
    }
    let mut four = 0;
    for (n, sw) in fixtures.iter().enumerate() {
        let (conn, curv) = curvature(sw.web()).map_err(|e| format!("fixture {n}: {e}"))?;
        for i in 1..curv.k.rows() {
            ensure(curv.k.row(i).iter().all(|w| w.is_zero()), || format!("fixture {n}: row {}", i + 1))?;
        }
        if sw.d() == 4 {
            four_web_closed_forms(&conn, &curv).map_err(|e| format!("fixture {n}: {e}"))?;
            four += 1;
        }
    }
    Ok(format!(
        "{} fixtures with lower rows 0; closed d=4 forms hold on {four} webs",
        fixtures.len()
    ))
}

fn criterion_6() -> Outcome {
    for d in 3..=5 {
        let rk = web_rank(parallel(d).web()).map_err(err)?.web_rank;
        ensure(rk == pi_d(d), || format!("parallel {d}-web rank {rk}"))?;
    }
    let mut rng = rng(6);
    let generic = random_slope_web(&mut rng, 3, 2);
    let rk = web_rank(generic.web()).map_err(err)?.web_rank;
    ensure(rk == 0, || format!("random 3-web rank {rk}"))?;

    let three = [
        parallel(3),
        slopes(&["y", "1", "-1"]),
        slopes(&["0", "1", "x + y"]),
        collinear_pencils(&[0, 1, 2]),
        bent_parallel(&[0, 1, -1]),
        slopes(&["y/x", "(y - 1)/(x - 1)", "0"]),
        slopes(&["x", "y", "x*y"]),
        slopes(&["2*x", "2*x + 1", "-2*x"]),
        slopes(&["x^2", "1", "-1"]),
        random_slope_web(&mut rng, 3, 1),
    ];
    let (mut flat, mut curved) = (0, 0);
    for (n, sw) in three.iter().enumerate() {
        let da = fundamental_form(sw.web()).map_err(err)?.alpha.d();
        let rk = web_rank(sw.web()).map_err(err)?.web_rank;
        ensure((rk == 1) == da.is_zero(), || format!("3-web {n}: rank {rk}, dα = {da}"))?;
        if da.is_zero() {
            flat += 1;
        } else {
            curved += 1;
        }
    }

    let linear = [
        parallel(4),
        collinear_pencils(&[0, 1, 2, 3]),
        collinear_pencils(&[0, 1, -1, 2]),
        slopes(&["y/x", "(y - 1)/x", "0", "1"]),
        slopes(&["y/x", "(y - 1)/(x - 1)", "0", "1"]),
        slopes(&["y/x", "y/(x - 1)", "(y - 1)/x", "2"]),
    ];
    for (n, sw) in linear.iter().enumerate() {
        let pair0 = &associated_pairs(sw.web()).map_err(err)?[0];
        ensure(pair0.v_coeffs().iter().all(RatFunc::is_zero), || format!("linear fixture {n} has V != 0"))?;
        let rk = web_rank(sw.web()).map_err(err)?.web_rank;
        ensure(rk != 2, || format!("linear 4-web {n} has rank 2"))?;
    }

    let hexagonal = [
        parallel(4),
        collinear_pencils(&[0, 1, 2, 3]),
        bent_parallel(&[0, 1, 2, 3]),
        slopes(&["3*x^2", "3*x^2 + 1", "3*x^2 - 1", "3*x^2 + 2"]),
    ];
    for (n, sw) in hexagonal.iter().enumerate() {
        ensure(is_hexagonal(sw).map_err(err)?, || format!("fixture {n} is not hexagonal"))?;
        let rk = web_rank(sw.web()).map_err(err)?.web_rank;
        ensure(rk == 3, || format!("hexagonal 4-web {n} has rank {rk}"))?;
    }
    Ok(format!(
        "parallel ranks π_d, random 3-web rank 0, d=3 criterion on 10 ({flat} flat, {curved} curved), {} linear, {} hexagonal",
        linear.len(),
        hexagonal.len()
    ))
}

fn criterion_7() -> Outcome {
    let candidates = [
        parallel(4),
        collinear_pencils(&[0, 1, 2, 3]),
        bent_parallel(&[0, 1, 2, 3]),
        slopes(&["3*x^2", "3*x^2 + 1", "3*x^2 - 1", "3*x^2 + 2"]),
        slopes(&["y", "1", "-1", "x"]),
        parallel(5),
        bent_parallel(&[0, 1, 2, 3, 4]),
        slopes(&["3*x^2", "3*x^2 + 1", "3*x^2 - 1", "3*x^2 + 2", "3*x^2 - 2"]),
        slopes(&["y", "1", "-1", "0", "x"]),
    ];
    let mut checked = [0usize; 2];
    for (n, sw) in candidates.iter().enumerate() {
        let w = sw.web();
        let (conn, curv) = curvature(w).map_err(err)?;
        let v1_zero = conn.system().pair0().v(1).is_zero();
        let applies = curv.is_flat() && (w.d() == 4 || v1_zero);
        if !applies {
            continue;
        }
        let lin = linearization_polynomial(w).map_err(err)?;
        let l1 = lin.l1.as_ref().ok_or("missing L1")?;
        let l2 = lin.l2.as_ref().ok_or("missing L2")?;
        ensure(exact_zero(l1) && exact_zero(l2), || format!("fixture {n}: L1 = {l1}, L2 = {l2}"))?;
        ensure(lin.effective_degree.map_or(true, |k| k <= 3), || format!("fixture {n}: deg P"))?;
        checked[w.d() - 4] += 1;
    }
    ensure(checked[0] >= 3 && checked[1] >= 2, || format!("too few flat fixtures: {checked:?}"))?;
    Ok(format!("{} flat 4-webs, {} flat 5-webs with v1 = 0", checked[0], checked[1]))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("gold fixture", criterion_1),
        ("defining identity", criterion_2),
        ("O*-invariance", criterion_3),
        ("trace formula", criterion_4),
        ("curvature shape", criterion_5),
        ("rank sanity", criterion_6),
        ("flatness consequences", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL - {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
