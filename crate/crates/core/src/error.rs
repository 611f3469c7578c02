use thiserror::Error;

use crate::exactpoly::Rat;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("polynomial has odd degree {0}; a square root at infinity needs even degree")]
    OddDegree(usize),
    #[error(
        "leading coefficient {0} is not the square of a positive rational; \
         square roots over an extension field are not supported"
    )]
    LeadingCoeffNotSquare(Rat),
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("malformed rational {0:?}")]
    BadRational(String),

    #[error("tail is identically zero")]
    ZeroTail,
    #[error("tail does not decay at infinity")]
    NotDecaying,
    #[error("not expandable: polynomial part of -1/tail has leading coefficient {lead} (expected +1 or -1)")]
    NotExpandable { lead: Rat, step: usize },
    #[error("moment sequence is not normalized: first nonvanishing moment is {0}")]
    NotNormalized(Rat),
    #[error("series tail has too few coefficients to certify step {step}")]
    SeriesExhausted { step: usize },
    #[error("surd tail must have b != 0 and d != 0")]
    DegenerateSurd,

    #[error("coupling b_{index} = sqrt({beta}) is irrational; dense truncation unavailable")]
    IrrationalCoupling { index: usize, beta: Rat },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("period must contain at least one block")]
    EmptyPeriod,
    #[error("beta must be positive, got {0}")]
    NonPositiveBeta(Rat),
    #[error("epsilon must be +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("matrix polynomial is not admissible")]
    NotAdmissible,
    #[error("no positive coupling reproduces the given monodromy scale")]
    InconsistentScale,
    #[error("monodromy entries are not divisible as required: {0}")]
    NonsquareObstruction(&'static str),
    #[error("monodromy trace is constant; no algebraic form exists")]
    DegenerateTrace,

    #[error("root finding did not converge to tolerance {tol:e}")]
    RootFindingFailure { tol: f64 },
    #[error("point lies on the spectrum (|w| - 1 = {gap:e})")]
    OnSpectrum { gap: f64 },
    #[error("m-function residual {residual:e} exceeds tolerance {tol:e}")]
    InaccurateEvaluation { residual: f64, tol: f64 },

    #[error("R is a perfect square")]
    PerfectSquareR,
    #[error("degree constraint violated: {0}")]
    DegreeConstraintViolated(String),
    #[error("no branch of (sqrt(R) - U)/V decays at infinity")]
    NoDecayingBranch,
}

impl Error {
    /// Stable machine-readable name used in CLI error documents.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZeroPoly => "DivisionByZeroPoly",
            Error::OddDegree(_) => "OddDegree",
            Error::LeadingCoeffNotSquare(_) => "LeadingCoeffNotSquare",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::InvalidSign(_) => "InvalidSign",
            Error::NotMonic => "NotMonic",
            Error::ConstantPolynomial => "ConstantPolynomial",
            Error::BadRational(_) => "BadRational",
            Error::ZeroTail => "ZeroTail",
            Error::NotDecaying => "NotDecaying",
            Error::NotExpandable { .. } => "NotExpandable",
            Error::NotNormalized(_) => "NotNormalized",
            Error::SeriesExhausted { .. } => "SeriesExhausted",
            Error::DegenerateSurd => "DegenerateSurd",
            Error::IrrationalCoupling { .. } => "IrrationalCoupling",
            Error::SingularSystem => "SingularSystem",
            Error::EmptyPeriod => "EmptyPeriod",
            Error::NonPositiveBeta(_) => "NonPositiveBeta",
            Error::NotAdmissible => "NotAdmissible",
            Error::InconsistentScale => "InconsistentScale",
            Error::NonsquareObstruction(_) => "NonsquareObstruction",
            Error::DegenerateTrace => "DegenerateTrace",
            Error::RootFindingFailure { .. } => "RootFindingFailure",
            Error::OnSpectrum { .. } => "OnSpectrum",
            Error::InaccurateEvaluation { .. } => "InaccurateEvaluation",
            Error::PerfectSquareR => "PerfectSquareR",
            Error::DegreeConstraintViolated(_) => "DegreeConstraintViolated",
            Error::NoDecayingBranch => "NoDecayingBranch",
        }
    }
}
