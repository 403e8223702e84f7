use thiserror::Error;

/// Why a characteristic polynomial has no certified dominant root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceFailure {
    /// Two distinct roots of maximal modulus were certified to have equal modulus.
    EqualModuli { witness: String },
    /// The two largest moduli could not be separated below the precision ceiling.
    Unresolved { bits: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid recurrence: {0}")]
    InvalidSpec(String),

    #[error("no dominant root: {}", match .0 {
        DominanceFailure::EqualModuli { witness } => format!("equal maximal moduli ({witness})"),
        DominanceFailure::Unresolved { bits } => format!("moduli not separated at {bits} bits"),
    })]
    NoDominantRoot(DominanceFailure),

    #[error("hypothesis failure at stage `{stage}`: {reason}")]
    HypothesisFailure { stage: String, reason: String },

    #[error("precision exhausted during {stage} at {bits} bits")]
    PrecisionExhausted { stage: String, bits: u32 },

    #[error("value is not certifiably positive: {0}")]
    NonPositiveValue(String),

    #[error("unsupported place structure: {0}")]
    UnsupportedPlaceStructure(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("degree {degree} exceeds the ceiling {ceiling} in {stage}")]
    DegreeCeiling { stage: String, degree: usize, ceiling: usize },

    #[error("search box has {cells} cells, above the ceiling of {ceiling}")]
    BoxTooLarge { cells: u128, ceiling: u128 },

    #[error("dominant roots have equal modulus")]
    EqualDominantModuli,
}

impl Error {
    pub fn hypothesis(stage: &str, reason: impl Into<String>) -> Self {
        Error::HypothesisFailure { stage: stage.to_string(), reason: reason.into() }
    }

    /// True for the errors that mean "the inputs violate a hypothesis" rather
    /// than "the computation could not finish".
    pub fn is_hypothesis_failure(&self) -> bool {
        matches!(
            self,
            Error::HypothesisFailure { .. }
                | Error::NoDominantRoot(_)
                | Error::EqualDominantModuli
                | Error::InvalidSpec(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
