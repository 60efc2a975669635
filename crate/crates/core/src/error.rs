use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("symbol '{0}' is not in the alphabet")]
    ForeignSymbol(char),

    #[error("symbol code {code} out of range for alphabet of size {size}")]
    SymbolOutOfRange { code: u8, size: usize },

    #[error("malformed automaton: {0}")]
    MalformedAutomaton(String),

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("advice for length {n} has length {got}")]
    AdviceLength { n: usize, got: usize },

    #[error("no advice for length {0}")]
    MissingAdvice(usize),

    #[error("unknown language '{0}'")]
    UnknownLanguage(String),

    #[error("operation not supported for language '{0}'")]
    Unsupported(String),

    #[error("enumeration budget exceeded: {required} evaluations needed, budget is {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("ratio undefined at n = {n}: denominator is zero")]
    UndefinedRatio { n: usize },

    #[error("{what} failed: {detail}")]
    CheckFailed { what: String, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
