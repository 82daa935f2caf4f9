use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operands live in different rings (p={0}, M={1} vs p={2}, M={3})")]
    RingMismatch(u64, u32, u64, u32),
    #[error("element is not a unit (positive valuation)")]
    NotUnit,
    #[error("element is not divisible by {0}")]
    NotDivisible(&'static str),
    #[error("valuation {found} below required {required}")]
    ValuationTooSmall { found: usize, required: usize },
    #[error("requested {requested} digits but only {available} are known")]
    PrecisionExceeded { requested: usize, available: usize },
    #[error("z = {z} has no p-th root in Q_{p}")]
    UnsupportedZ { z: String, p: u64 },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("unknown family kind: {0}")]
    UnknownKind(String),
    #[error("family windows differ")]
    WindowMismatch,
    #[error("twist tags differ: {0} vs {1}")]
    TwistMismatch(u32, u32),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
