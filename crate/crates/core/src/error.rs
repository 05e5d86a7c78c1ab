use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// The variant name doubles as the machine-readable token printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not of the form n^i (n+1)^j")]
    NotAProductOfBases(String),
    #[error("{0} lies outside the domain")]
    DomainError(String),
    #[error("one-sided slope undefined at {0}")]
    SideUndefined(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("index {index} out of range for {len} intervals")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map is not in F_{0}")]
    NotInFn(u64),
    #[error("{0} is not in the ring")]
    NotInRing(String),
    #[error("{0} is outside (0,1)")]
    OutOfRange(String),
    #[error("orbit classes differ: {0}")]
    SignatureMismatch(String),
    #[error("bad partial map: {0}")]
    BadPartial(String),
    #[error("[{0}] is not a cone")]
    NotACone(String),
    #[error("[{0}] is not an n-ary interval")]
    NotAnNaryInterval(String),
    #[error("intervals have incompatible lengths: {0}")]
    IncompatibleIntervals(String),
    #[error("breakpoint {0} not in Z[1/eta]")]
    BreakpointNotInRing(String),
    #[error("slope {0} does not factor")]
    SlopeNotFactorable(String),
    #[error("crossing count mismatch on {0}")]
    CrossingCountMismatch(String),
    #[error("map is not in F_eta: {0}")]
    NotInFEta(String),
    #[error("0 is moved to {0}")]
    NotAStabilizer(String),
    #[error("depth {0} too small")]
    DepthTooSmall(u32),
    #[error("0 is sent to {0}, outside (0,1)")]
    NotInWindow(String),
    #[error("interval of length {0} is too wide")]
    TooWide(String),
    #[error("input is the identity")]
    TrivialInput,
    #[error("base {0} not supported")]
    UnsupportedBase(u32),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("bases differ: {0} vs {1}")]
    BaseMismatch(u32, u32),
}

impl Error {
    /// The bare variant name.
    pub fn token(&self) -> &'static str {
        match self {
            Error::NotAProductOfBases(_) => "NotAProductOfBases",
            Error::DomainError(_) => "DomainError",
            Error::SideUndefined(_) => "SideUndefined",
            Error::InvalidMap(_) => "InvalidMap",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotInFn(_) => "NotInFn",
            Error::NotInRing(_) => "NotInRing",
            Error::OutOfRange(_) => "OutOfRange",
            Error::SignatureMismatch(_) => "SignatureMismatch",
            Error::BadPartial(_) => "BadPartial",
            Error::NotACone(_) => "NotACone",
            Error::NotAnNaryInterval(_) => "NotAnNaryInterval",
            Error::IncompatibleIntervals(_) => "IncompatibleIntervals",
            Error::BreakpointNotInRing(_) => "BreakpointNotInRing",
            Error::SlopeNotFactorable(_) => "SlopeNotFactorable",
            Error::CrossingCountMismatch(_) => "CrossingCountMismatch",
            Error::NotInFEta(_) => "NotInFEta",
            Error::NotAStabilizer(_) => "NotAStabilizer",
            Error::DepthTooSmall(_) => "DepthTooSmall",
            Error::NotInWindow(_) => "NotInWindow",
            Error::TooWide(_) => "TooWide",
            Error::TrivialInput => "TrivialInput",
            Error::UnsupportedBase(_) => "UnsupportedBase",
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::Parse(_) => "Parse",
            Error::ConstructionFailed(_) => "ConstructionFailed",
            Error::BaseMismatch(..) => "BaseMismatch",
        }
    }
}
