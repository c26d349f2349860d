use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime (or exceeds the supported range p < 2^16)")]
    NotPrime(u64),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u16, right: u16 },

    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("invalid base polynomial {0}: must be monic and nonconstant")]
    InvalidBase(String),

    #[error("bases {0} and {1} are not coprime")]
    NotCoprime(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precision exhausted: coefficient {needed} requested, {available} available")]
    PrecisionExhausted { needed: i64, available: i64 },

    #[error("the series is zero")]
    ZeroSeries,

    #[error("continued fraction spec has {available} quotients, {needed} required")]
    InsufficientQuotients { needed: usize, available: usize },

    #[error("convergent index {index} is beyond the {certified} certified quotients")]
    IndexBeyondCertified { index: usize, certified: usize },

    #[error("degree violation: {0}")]
    DegreeViolation(String),

    #[error("box resolution {resolution} exceeds point precision {precision} in dimension {dim}")]
    ResolutionExceedsPrecision {
        dim: usize,
        resolution: usize,
        precision: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("net check needs exactly {expected} points, got {got}")]
    CardinalityMismatch { expected: u64, got: u64 },

    #[error("{0}")]
    CapExceeded(String),

    #[error("level {0} out of range (1..=3)")]
    LevelOutOfRange(u32),

    #[error("rank condition fails for u = {u}: stacked rank {rank} < {needed}")]
    RankConditionUnverified { u: u32, rank: usize, needed: usize },

    #[error("rational series has a finite continued fraction; {0} needs an irrational series")]
    RationalSeries(&'static str),

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("{0}")]
    Invalid(String),

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    /// True for errors caused by running out of coefficients or exceeding a
    /// configured size cap, as opposed to malformed input.
    pub fn is_resource(&self) -> bool {
        if let Error::Context { source, .. } = self {
            return source.is_resource();
        }
        matches!(
            self,
            Error::PrecisionExhausted { .. }
                | Error::InsufficientQuotients { .. }
                | Error::IndexBeyondCertified { .. }
                | Error::CapExceeded(_)
                | Error::Overflow(_)
        )
    }
}

/// Attaches a context message to errors.
pub trait ResultExt<T> {
    fn context(self, f: impl FnOnce() -> String) -> Result<T>;
}

impl<T> ResultExt<T> for Result<T> {
    fn context(self, f: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|e| Error::Context {
            context: f(),
            source: Box::new(e),
        })
    }
}
