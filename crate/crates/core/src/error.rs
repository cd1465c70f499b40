use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("arity mismatch: expected {expected} exponents, got {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("colon by the zero element")]
    ZeroDivisor,

    #[error("quotient is not of finite length")]
    NotFiniteLength,

    #[error("input is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("chain not stabilized within budget (max exponent {0})")]
    ChainNotStabilized(u32),

    #[error("sampler gave up after {attempts} attempts")]
    BudgetExhausted { attempts: usize },

    #[error("no standardness certificate for the sequence")]
    NoStandardCertificate,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
