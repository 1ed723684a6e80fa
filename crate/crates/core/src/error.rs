use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code through [`Error::code`],
/// which the CLI forwards verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed rational {0:?}: expected \"p/q\" with q > 0")]
    ParseRat(String),

    #[error("interval endpoint {0} lies outside [0, 1]")]
    EndpointOutOfRange(String),

    #[error("interval [{lo}, {hi}) has lo > hi")]
    ReversedInterval { lo: String, hi: String },

    #[error("invalid signed measure: {0}")]
    InvalidMeasure(String),

    #[error("atoms {first} and {second} overlap")]
    AtomOverlap { first: usize, second: usize },

    #[error("atoms do not cover [0,1): uncovered mass {missing}")]
    AtomGap { missing: String },

    #[error("atom {index} is empty")]
    EmptyAtom { index: usize },

    #[error("set has zero measure")]
    ZeroMeasure,

    #[error("profile weight {index} is not positive")]
    NonPositiveWeight { index: usize },

    #[error("profile weights sum to {0}, expected 1")]
    ProfileSum(String),

    #[error("Renyi order alpha = 1 is not allowed (use Shannon)")]
    RenyiOrderOne,

    #[error("algebras are not independent")]
    NotIndependent,

    #[error("theta {theta} outside [0, {max}]")]
    ThetaOutOfRange { theta: String, max: String },

    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(String),

    #[error("swap pair sets overlap")]
    PairOverlap,

    #[error("swap pair is not contained in two distinct atoms")]
    NotInFamily,

    #[error("swap pair measures differ: {v} vs {w}")]
    UnequalMeasures { v: String, w: String },

    #[error("swap set measure {measure} exceeds the bound {bound}")]
    SwapTooLarge { measure: String, bound: String },

    #[error("grid size {0} must be a power of two and at least 2")]
    InvalidGrid(usize),

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("unknown verification suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    /// Stable snake_case identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ParseRat(_) => "parse_rat",
            Error::EndpointOutOfRange(_) => "endpoint_out_of_range",
            Error::ReversedInterval { .. } => "reversed_interval",
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::AtomOverlap { .. } => "atom_overlap",
            Error::AtomGap { .. } => "atom_gap",
            Error::EmptyAtom { .. } => "empty_atom",
            Error::ZeroMeasure => "zero_measure",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::ProfileSum(_) => "profile_sum",
            Error::RenyiOrderOne => "renyi_order_one",
            Error::NotIndependent => "not_independent",
            Error::ThetaOutOfRange { .. } => "theta_out_of_range",
            Error::NonPositiveLambda(_) => "non_positive_lambda",
            Error::PairOverlap => "pair_overlap",
            Error::NotInFamily => "not_in_family",
            Error::UnequalMeasures { .. } => "unequal_measures",
            Error::SwapTooLarge { .. } => "swap_too_large",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::NoTrials => "no_trials",
            Error::UnknownSuite(_) => "unknown_suite",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
