use thiserror::Error;

/// Errors raised by the sigma and max calculi.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sample space must contain at least one label")]
    EmptySpace,
    #[error("label names must be non-empty")]
    EmptyLabel,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("space of {size} labels exceeds the enumeration limit of {limit}")]
    SpaceTooLarge { size: usize, limit: usize },
    #[error("label `{0}` does not belong to the sample space")]
    ForeignLabel(String),
    #[error("intension universes differ: `{0}` vs `{1}`")]
    UniverseMismatch(String, String),
    #[error("reference intension has zero measure")]
    EmptyReference,
    #[error("both intensions are empty")]
    BothEmpty,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("sample space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("frequency counts have zero total")]
    ZeroTotal,
    #[error("every conditioning marginal is zero")]
    AllZeroGiven,
    #[error("observation `{0}` has zero evidence under the prior")]
    ZeroEvidence(String),
    #[error("setup is not exhaustive: no concept contains the reference intension")]
    NotExhaustive,
    #[error("independent computations disagree: {0}")]
    InternalDisagreement(String),
    #[error("fixture `{name}` does not realize its configuration: {reason}")]
    FixtureInvalid { name: String, reason: String },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("at least {needed} concepts are required, got {got}")]
    TooFewConcepts { needed: usize, got: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid ellipse: {0}")]
    InvalidEllipse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
