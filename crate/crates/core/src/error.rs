use thiserror::Error;

use crate::exactnum::ExactError;
use crate::surface::SurfaceError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("class is not pseudo-effective")]
    NotPseudoEffective,
    #[error("class is not big")]
    NotBig,
    #[error("Gram matrix of {0:?} is not negative definite (incomplete or inconsistent curve catalog?)")]
    GramNotNegativeDefinite(Vec<String>),
    #[error("positive part is non-negative on every catalog curve but fails the cone nef test (incomplete catalog?)")]
    NefTestFailed,
    #[error("inconsistent curve catalog: {0}")]
    InconsistentCatalog(String),
    #[error("flag curve entered the negative part along the walk")]
    FlagCurveInSupport,
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("D − tC stays big for all t > 0")]
    Unbounded,
    #[error("not a polygon: {0}")]
    NotAPolygon(String),
    #[error("volume mismatch: 2·area = {area2}, P(D)² = {volume}")]
    Mismatch { area2: String, volume: String },
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("flag rays {0} and {1} do not span a cone of the fan")]
    NonAdjacentFlag(usize, usize),
    #[error("ray set must contain (1,0) and (0,1)")]
    MissingAxisRays,
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("slice hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("need at least {needed} equally spaced samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code, as printed by the CLI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Exact(ExactError::MixedRadicand(..)) => "MixedRadicand",
            Error::Exact(ExactError::DivisionByZero) => "DivisionByZero",
            Error::Exact(ExactError::IdenticallyZero) => "IdenticallyZero",
            Error::Exact(ExactError::NegativeRadicand(_)) => "NegativeRadicand",
            Error::Exact(ExactError::Parse(_)) => "ParseError",
            Error::Surface(SurfaceError::DimensionMismatch { .. }) => "DimensionMismatch",
            Error::Surface(SurfaceError::DegenerateCone { .. }) => "DegenerateCone",
            Error::Surface(SurfaceError::Invalid(_)) => "InvalidSurface",
            Error::NotPseudoEffective => "NotPseudoEffective",
            Error::NotBig => "NotBig",
            Error::GramNotNegativeDefinite(_) => "GramNotNegativeDefinite",
            Error::NefTestFailed => "NefTestFailed",
            Error::InconsistentCatalog(_) => "InconsistentCatalog",
            Error::FlagCurveInSupport => "FlagCurveInSupport",
            Error::InvalidFlag(_) => "InvalidFlag",
            Error::Unbounded => "Unbounded",
            Error::NotAPolygon(_) => "NotAPolygon",
            Error::Mismatch { .. } => "Mismatch",
            Error::InvalidFan(_) => "InvalidFan",
            Error::NonAdjacentFlag(..) => "NonAdjacentFlag",
            Error::MissingAxisRays => "MissingAxisRays",
            Error::InvalidPolygon(_) => "InvalidPolygon",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::Io(_) => "IOError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
