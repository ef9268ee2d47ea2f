//! Front end for `webconn-core`: description files, command dispatch and reports.

pub mod report;
pub mod spec;

use thiserror::Error;
use webconn_core::webdef::{SlopeWeb, WebEquation};
use webconn_core::WebError;

pub use report::{run, Report};
pub use spec::{parse_spec, Presentation, WebSpecFile};

/// Largest degree handled without `--experimental`.
pub const MAX_SUPPORTED_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 1,
            CliError::Validation(_) | CliError::Io(_) => 2,
            CliError::Unsupported(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<WebError> for CliError {
    fn from(e: WebError) -> Self {
        match e {
            WebError::UnsupportedDegree { .. } => CliError::Unsupported(e.to_string()),
            WebError::ProlongationFailure { .. }
            | WebError::AdaptedBasisViolation(_)
            | WebError::Assertion(_)
            | WebError::Kernel(_) => CliError::Internal(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Invariants,
    Connection,
    Curvature,
    Rank,
    TraceCheck,
    Analyze,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Invariants => "invariants",
            Command::Connection => "connection",
            Command::Curvature => "curvature",
            Command::Rank => "rank",
            Command::TraceCheck => "trace-check",
            Command::Analyze => "analyze",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Flags {
    pub experimental: bool,
}

/// The validated web, with its slopes when it was given by them.
#[derive(Clone, Debug)]
pub struct Web {
    pub equation: WebEquation,
    pub slopes: Option<SlopeWeb>,
}

pub fn build_web(spec: &WebSpecFile, flags: Flags) -> Result<Web, CliError> {
    if spec.degree > MAX_SUPPORTED_DEGREE && !flags.experimental {
        return Err(CliError::Unsupported(format!(
            "degree {} exceeds {}; rerun with --experimental",
            spec.degree, MAX_SUPPORTED_DEGREE
        )));
    }
    let web = match &spec.presentation {
        Presentation::Equation(f) => Web {
            equation: WebEquation::from_ppoly(f, spec.base_point.clone())?,
            slopes: None,
        },
        Presentation::Slopes(s) => {
            let sw = SlopeWeb::from_slopes(s.clone(), spec.base_point.clone())?;
            Web {
                equation: sw.web().clone(),
                slopes: Some(sw),
            }
        }
    };
    if web.equation.d() != spec.degree {
        return Err(CliError::Validation(format!(
            "degree = {} but the presentation has degree {}",
            spec.degree,
            web.equation.d()
        )));
    }
    Ok(web)
}
