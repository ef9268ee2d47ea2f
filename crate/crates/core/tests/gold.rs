use std::time::{Duration, Instant};

use webconn_core::assoc::{fundamental_form, linearization_polynomial};
use webconn_core::conn::curvature;
use webconn_core::kernel::{parse_form1, parse_ppoly, parse_ratfunc, rat, RatFunc};
use webconn_core::rank::{rank_matrix_from, rank_report, sampled_rank};
use webconn_core::webdef::WebEquation;

fn gold() -> WebEquation {
    let f = parse_ppoly("p^4 + y^2*p^2 - y*p").unwrap();
    WebEquation::from_ppoly(&f, (rat(0, 1), rat(1, 1))).unwrap()
}

fn r(s: &str) -> RatFunc {
    parse_ratfunc(s).unwrap()
}

#[test]
fn gold_invariants() {
    let w = gold();
    assert_eq!(w.d(), 4);
    assert_eq!(*w.discriminant(), r("-y^4*(27 + 4*y^4)"));
    let lin = linearization_polynomial(&w).unwrap();
    let expected = parse_ppoly("-12*p^3/(27 + 4*y^4) + (9 + 4*y^4)*p^2/(y*(27 + 4*y^4)) - 8*y^2*p/(27 + 4*y^4)").unwrap();
    assert_eq!(lin.p, expected);
    assert_eq!(lin.effective_degree, Some(3));
    let alpha = fundamental_form(&w).unwrap().alpha;
    assert_eq!(alpha, parse_form1("-2*(9 + 4*y^4)/(y*(27 + 4*y^4)) dy").unwrap());
}

#[test]
fn gold_connection_curvature_rank() {
    let start = Instant::now();
    let w = gold();
    let (conn, curv) = curvature(&w).unwrap();
    let gamma = [
        [
            "-(9 + 4*y^4)/(y*(27 + 4*y^4)) dy",
            "-16*y*(-27 + 4*y^4)/(27 + 4*y^4)^2 dy",
            "96*y^2/(27 + 4*y^4)^2 dy",
        ],
        [
            "-dx",
            "-8*y^2/(27 + 4*y^4) dx - (9 + 4*y^4)/(y*(27 + 4*y^4)) dy",
            "-12/(27 + 4*y^4) dy",
        ],
        ["-dy", "0", "-2*(9 + 4*y^4)/(y*(27 + 4*y^4)) dy"],
    ];
    for (i, row) in gamma.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(conn.gamma().get(i, j), &parse_form1(e).unwrap(), "gamma[{}][{}]", i, j);
        }
    }
    let k = [
        "-16*y*(-27 + 4*y^4)/(27 + 4*y^4)^2",
        "-128*y^3*(-27 + 4*y^4)/(27 + 4*y^4)^3",
        "0",
    ];
    for (j, e) in k.iter().enumerate() {
        assert_eq!(curv.k_row[j], r(e), "k[{}]", j);
    }
    for i in 1..3 {
        for j in 0..3 {
            assert!(curv.k.get(i, j).is_zero());
        }
    }
    let kml = [
        k,
        [
            "-128*y^3*(-27 + 4*y^4)/(27 + 4*y^4)^3",
            "-1024*y^5*(-27 + 4*y^4)/(27 + 4*y^4)^4",
            "0",
        ],
        [
            "64*(243 - 306*y^4 + 8*y^8)/(27 + 4*y^4)^3",
            "512*y^2*(243 - 306*y^4 + 8*y^8)/(27 + 4*y^4)^4",
            "0",
        ],
    ];
    let m = rank_matrix_from(&conn, &curv);
    for (i, row) in kml.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(m[i][j], r(e), "kml[{}][{}]", i, j);
        }
    }
    let report = rank_report(&w, m);
    assert_eq!(report.web_rank, 2);
    assert_eq!(report.generic_rank, 1);
    assert!(report.det_is_zero);
    assert!(!report.base_point_singular);
    assert_eq!(sampled_rank(&report.kml, 5, 7), 1);
    assert!(start.elapsed() < Duration::from_secs(10));
}
