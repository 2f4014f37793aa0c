use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("field degree {0} is outside the supported range 1..=32")]
    DegreeOutOfRange(u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands do not belong to the same field")]
    FieldMismatch,
    #[error("operation needs characteristic 2, field has characteristic {0}")]
    OddCharacteristic(u32),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("center lies in the linear set")]
    CenterInsideLinearSet,
    #[error("center lies on the target hyperplane")]
    CenterOnHyperplane,
    #[error("rho={rho} outside 1..=min(k={k}, m={m})")]
    InvalidRho { rho: u32, k: u32, m: u32 },
    #[error("shift {shift} is not coprime to m={m}")]
    ShiftNotCoprime { shift: u32, m: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid case parameters: {0}")]
    InvalidCaseParams(String),
    #[error("rank {rank} is below the required {needed}")]
    RankTooSmall { rank: u32, needed: u32 },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("unknown registry name `{0}`")]
    UnknownName(String),
    #[error("missing binding `{0}`")]
    MissingBinding(String),
    #[error("polynomial division not exact: {0}")]
    DivisionNotExact(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("invalid beta: {0}")]
    InvalidBeta(String),
    #[error("no witness found")]
    NoWitness,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
