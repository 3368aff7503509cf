use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what} exceeded the cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("connection set does not generate: reached {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("the identity element has no fused class")]
    IdentityElement,
    #[error("no element found: {0}")]
    NotFound(String),
    #[error("character lift failed: {0}")]
    LiftFailure(String),
    #[error("solution count residual {residual} is too large (value {value})")]
    ResidualTooLarge { value: String, residual: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coordinate group is not transitive on the {k} coordinates")]
    NonTransitiveCoordinates { k: usize },
    #[error("the diagonal pair does not define an orbital graph")]
    DiagonalPair,
    #[error("orbital graph is disconnected: reached {reached} of {total} points")]
    Disconnected { reached: usize, total: usize },
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("cannot factor coordinate {coordinate}: {reason}")]
    FactorizationUnavailable { coordinate: usize, reason: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("automorphism does not normalize the group: {0}")]
    NotNormalizing(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
