use std::fmt::Write as _;

use serde::Serialize;
use webconn_core::assoc::{associated_polynomials, classify_from_pair, fundamental_form_from_pair, linearization_from_pair};
use webconn_core::conn::{connection_from_system, curvature_of, system_matrix};
use webconn_core::extract::trace_formula_check;
use webconn_core::kernel::{FormMatrix, Form1, Form2, RatFunc};
use webconn_core::rank::{rank_matrix_from, rank_report};

use crate::{build_web, CliError, Command, Flags, Presentation, WebSpecFile};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InputEcho {
    pub degree: usize,
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slopes: Option<Vec<String>>,
    pub base_point: [String; 2],
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassificationOut {
    pub is_linear: bool,
    pub is_algebraic: bool,
    pub linearizable_candidate: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RankOut {
    pub kml: Vec<Vec<String>>,
    pub generic_rank: usize,
    pub web_rank: usize,
    pub det_is_zero: bool,
    pub base_point_singular: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceOut {
    pub triples: Vec<[usize; 3]>,
    pub blaschke: Vec<String>,
    pub sum: String,
    pub k1: String,
    pub residual: String,
}

/// Every symbolic field is a canonical expression string; absent fields
/// were not requested by the command.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub input: InputEcho,
    pub discriminant: String,
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    pub v: Option<String>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(rename = "L1", skip_serializing_if = "Option::is_none")]
    pub l1: Option<String>,
    #[serde(rename = "L2", skip_serializing_if = "Option::is_none")]
    pub l2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub system_matrix: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<Vec<String>>>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceOut>,
    pub warnings: Vec<String>,
}

fn strings(m: &[Vec<RatFunc>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn form_strings<T: std::fmt::Display + Clone + Default>(m: &FormMatrix<T>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

fn echo(spec: &WebSpecFile) -> InputEcho {
    let (f, slopes) = match &spec.presentation {
        Presentation::Equation(f) => (Some(f.to_string()), None),
        Presentation::Slopes(s) => (None, Some(s.iter().map(ToString::to_string).collect())),
    };
    InputEcho {
        degree: spec.degree,
        f,
        slopes,
        base_point: [spec.base_point.0.to_string(), spec.base_point.1.to_string()],
    }
}

pub fn run(command: Command, spec: &WebSpecFile, flags: Flags) -> Result<Report, CliError> {
    let web = build_web(spec, flags)?;
    let w = &web.equation;
    let mut report = Report {
        command: command.name().to_string(),
        input: echo(spec),
        discriminant: w.discriminant().to_string(),
        v: None,
        p: None,
        l1: None,
        l2: None,
        alpha: None,
        classification: None,
        system_matrix: None,
        gamma: None,
        k: None,
        k1: None,
        rank: None,
        trace: None,
        warnings: w.warnings().iter().map(ToString::to_string).collect(),
    };
    let all = command == Command::Analyze;

    if command == Command::TraceCheck {
        let sw = web
            .slopes
            .as_ref()
            .ok_or_else(|| CliError::Validation("trace-check requires a slope presentation (`slopes = [...]`)".into()))?;
        report.trace = Some(trace_out(sw)?);
        return Ok(report);
    }

    let pair0 = associated_polynomials(w, 0)?;
    if matches!(command, Command::Classify | Command::Invariants) || all {
        let c = classify_from_pair(w, &pair0);
        report.classification = Some(ClassificationOut {
            is_linear: c.is_linear,
            is_algebraic: c.is_algebraic,
            linearizable_candidate: c.linearizable_candidate,
        });
    }
    if command == Command::Invariants || all {
        let lin = linearization_from_pair(&pair0);
        report.v = Some(pair0.v_poly().to_string());
        report.p = Some(lin.p.to_string());
        report.l1 = lin.l1.as_ref().map(ToString::to_string);
        report.l2 = lin.l2.as_ref().map(ToString::to_string);
        report.alpha = Some(fundamental_form_from_pair(w, &pair0)?.alpha.to_string());
    }
    if matches!(command, Command::Connection | Command::Curvature | Command::Rank) || all {
        let sys = system_matrix(w)?;
        report.system_matrix = Some(strings(sys.entries()));
        let conn = connection_from_system(sys)?;
        report.gamma = Some(form_strings::<Form1>(conn.gamma()));
        if command != Command::Connection {
            let curv = curvature_of(&conn)?;
            report.k = Some(form_strings::<Form2>(&curv.k));
            report.k1 = Some(curv.k1().to_string());
            if command == Command::Rank || all {
                let r = rank_report(w, rank_matrix_from(&conn, &curv));
                report.rank = Some(RankOut {
                    kml: strings(&r.kml),
                    generic_rank: r.generic_rank,
                    web_rank: r.web_rank,
                    det_is_zero: r.det_is_zero,
                    base_point_singular: r.base_point_singular,
                });
            }
        }
    }
    if all {
        if let Some(sw) = &web.slopes {
            report.trace = Some(trace_out(sw)?);
        }
    }
    Ok(report)
}

fn trace_out(sw: &webconn_core::webdef::SlopeWeb) -> Result<TraceOut, CliError> {
    let t = trace_formula_check(sw)?;
    if !t.holds() {
        return Err(CliError::Internal(format!("trace formula residual {}", t.residual)));
    }
    Ok(TraceOut {
        triples: t.triples.iter().map(|[a, b, c]| [a + 1, b + 1, c + 1]).collect(),
        blaschke: t.blaschke.iter().map(ToString::to_string).collect(),
        sum: t.sum.to_string(),
        k1: t.k1_form.to_string(),
        residual: t.residual.to_string(),
    })
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn matrix_text(out: &mut String, name: &str, m: &[Vec<String>]) {
    let _ = writeln!(out, "{name}:");
    for row in m {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", report.command);
    let _ = writeln!(out, "degree: {}", report.input.degree);
    if let Some(f) = &report.input.f {
        let _ = writeln!(out, "F: {f}");
    }
    if let Some(s) = &report.input.slopes {
        let _ = writeln!(out, "slopes: [{}]", s.join(", "));
    }
    let _ = writeln!(out, "base point: {} {}", report.input.base_point[0], report.input.base_point[1]);
    let _ = writeln!(out, "discriminant: {}", report.discriminant);
    for (name, v) in [
        ("V", &report.v),
        ("P", &report.p),
        ("L1", &report.l1),
        ("L2", &report.l2),
        ("alpha", &report.alpha),
    ] {
        if let Some(v) = v {
            let _ = writeln!(out, "{name}: {v}");
        }
    }
    if let Some(c) = &report.classification {
        let cand = c.linearizable_candidate.map_or("n/a".to_string(), |b| b.to_string());
        let _ = writeln!(
            out,
            "classification: linear = {}, algebraic = {}, linearizable candidate = {}",
            c.is_linear, c.is_algebraic, cand
        );
    }
    if let Some(m) = &report.system_matrix {
        matrix_text(&mut out, "system matrix A", m);
    }
    if let Some(m) = &report.gamma {
        matrix_text(&mut out, "gamma", m);
    }
    if let Some(m) = &report.k {
        matrix_text(&mut out, "K (dx^dy coefficients)", m);
    }
    if let Some(k1) = &report.k1 {
        let _ = writeln!(out, "k1: {k1}");
    }
    if let Some(r) = &report.rank {
        matrix_text(&mut out, "kml", &r.kml);
        let _ = writeln!(out, "generic rank of kml: {}", r.generic_rank);
        let _ = writeln!(out, "web rank: {}", r.web_rank);
        let _ = writeln!(out, "det(kml) = 0: {}", r.det_is_zero);
        if r.base_point_singular {
            let _ = writeln!(out, "note: generic rank; the base point is singular");
        }
    }
    if let Some(t) = &report.trace {
        let _ = writeln!(out, "extracted 3-webs:");
        for (tr, b) in t.triples.iter().zip(&t.blaschke) {
            let _ = writeln!(out, "  ({}, {}, {}): {}", tr[0], tr[1], tr[2], b);
        }
        let _ = writeln!(out, "sum of Blaschke curvatures: {}", t.sum);
        let _ = writeln!(out, "k1: {}", t.k1);
        let _ = writeln!(out, "trace residual: {}", t.residual);
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
