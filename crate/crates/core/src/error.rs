use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WebError {
    #[error("degree must be at least 3, got {0}")]
    Degree(usize),
    #[error("expected {expected} coefficients, got {found}")]
    CoefficientCount { expected: usize, found: usize },
    #[error("leading coefficient a_0 vanishes identically")]
    LeadingCoefficient,
    #[error("non-reduced web: the p-discriminant vanishes identically")]
    NonReduced,
    #[error("slopes {0} and {1} coincide")]
    DuplicateSlope(usize, usize),
    #[error("order {order} out of range 0..={max}")]
    Order { order: usize, max: usize },
    #[error("rescaling factor is not invertible at the base point")]
    NonInvertibleRescale,
    #[error("operation requires degree {required}, web has degree {found}")]
    UnsupportedDegree { required: usize, found: usize },
    #[error("prolongation failure: kernel dimension {found}, expected {expected}")]
    ProlongationFailure { expected: usize, found: usize },
    #[error("adapted-basis violation: curvature row {0} is not zero")]
    AdaptedBasisViolation(usize),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("a slope presentation is required")]
    SlopeRequired,
    #[error("internal identity check failed: {0}")]
    Assertion(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

pub type Result<T> = std::result::Result<T, WebError>;
