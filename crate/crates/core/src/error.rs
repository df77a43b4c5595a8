use crate::atlas::NormalBundleReport;
use crate::series::{Scalar, Window};
use crate::ueda::ObstructionReport;

/// Every failure the library can report. Each message names the violated
/// precondition.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("window mismatch: {left} vs {right}")]
    WindowMismatch { left: Window, right: Window },

    #[error("composition domain: inner series has a nonzero constant term")]
    CompositionDomain,

    #[error("normalization: linear coefficient must be exactly 1 (found {0})")]
    Normalization(String),

    #[error("out of window: exponent {index} not in [{lo}, {hi}]")]
    OutOfWindow { index: i64, lo: i64, hi: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cusp constraint violated: coefficient of zeta^1 is {0}, must be 0")]
    CuspConstraint(Box<Scalar>),

    #[error("cohomological obstruction: S-functional value {0} is nonzero")]
    Obstruction(Box<Scalar>),

    #[error("atlas inconsistency: {0}")]
    AtlasInconsistency(String),

    #[error("degenerate normal bundle: {0}")]
    DegenerateNormalBundle(String),

    #[error("normal bundle is not holomorphically trivial (winding {}, class {})", .0.winding, .0.pic0_class)]
    NotNormalizable(Box<NormalBundleReport>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("constants estimation: {0}")]
    ConstantsEstimation(String),

    #[error("staging error: expected order {expected}, got {got}")]
    Staging { expected: usize, got: usize },

    #[error("finite type detected at order {}: obstruction value {}", .0.order, .0.value)]
    FiniteTypeDetected(Box<ObstructionReport>),

    #[error("cover configuration: {0}")]
    Config(String),

    #[error("contraction stuck: {0}")]
    ContractionStuck(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Errors that reflect a mathematical outcome of valid input, as opposed
    /// to malformed or inconsistent input.
    pub fn is_domain_outcome(&self) -> bool {
        matches!(
            self,
            Error::Obstruction(_)
                | Error::NotNormalizable(_)
                | Error::NotApplicable(_)
                | Error::FiniteTypeDetected(_)
                | Error::DegenerateNormalBundle(_)
                | Error::ConstantsEstimation(_)
                | Error::ContractionStuck(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
