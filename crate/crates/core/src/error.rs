use thiserror::Error;

use crate::expr::{EvalError, ParseError};

/// Errors raised by geometric operations.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid declaration: {0}")]
    InvalidDeclaration(String),
    #[error("degenerate metric at {point:?} (|det g| = {det:e})")]
    DegenerateMetric { point: Vec<f64>, det: f64 },
    #[error("differential has rank below {expected} at {point:?}")]
    RankDeficient { point: Vec<f64>, expected: usize },
    #[error("degenerate fibre at {point:?}")]
    DegenerateFibre { point: Vec<f64> },
    #[error("degenerate distribution at {point:?}")]
    DegenerateDistribution { point: Vec<f64> },
    #[error("image {image:?} of {point:?} lies outside the codomain sample box")]
    OutsideCodomainBox { point: Vec<f64>, image: Vec<f64> },
    #[error("map is not horizontally conformal at {point:?} (residual {residual:e})")]
    NotHorizontallyConformal { point: Vec<f64>, residual: f64 },
    #[error("map is not holomorphic at {point:?} (residual {residual:e})")]
    NotHolomorphic { point: Vec<f64>, residual: f64 },
    #[error("{op}: {detail}")]
    Dimension { op: &'static str, detail: String },
    #[error("incompatible almost complex structure at {point:?}: {detail}")]
    IncompatibleJ { point: Vec<f64>, detail: String },
    #[error("frame is not orthonormal (residual {residual:e})")]
    NonOrthonormal { residual: f64 },
    #[error("sampling failure: {accepted} of {requested} points acceptable")]
    SamplingFailure { accepted: usize, requested: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("missing data: {0}")]
    Missing(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_error(op: &'static str, detail: impl Into<String>) -> Error {
    Error::Dimension { op, detail: detail.into() }
}
