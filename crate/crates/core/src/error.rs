use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("could not parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("sequence must be strictly increasing (m{index} = {prev} is followed by {next})")]
    NonIncreasing { index: usize, prev: u64, next: u64 },
    #[error("sequence entries must be positive")]
    NonPositive,
    #[error("sequence needs at least two terms, got {0}")]
    TooShort(usize),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("sequence is not arithmetic")]
    NotArithmetic,
    #[error("sequence is not generalized arithmetic")]
    NotGeneralizedArithmetic,
    #[error("gcd condition violated: gcd({left}, {right}) = {gcd}")]
    GcdViolation { left: u64, right: u64, gcd: u64 },
    #[error("h = {h} does not divide d = {d}")]
    HNotDividingD { h: u64, d: u64 },
    #[error("generalized closed forms need h >= 2 and n >= 3 (h = {h}, n = {n})")]
    HTooSmall { h: u64, n: usize },
    #[error("bound exceeded: {what} > {cap}")]
    BoundExceeded { what: &'static str, cap: u64 },
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Buchberger degree cap {cap} exceeded")]
    DegreeCapExceeded { cap: u32 },
    #[error("monomial ideal is not of nested type")]
    NotNestedType,
    #[error("Hilbert series numerator did not stabilize within degree {0}")]
    NonTerminating(u32),
    #[error("coordinate ring is not Cohen-Macaulay")]
    NotCohenMacaulay,
    #[error("no closed-form case applies: {0}")]
    CaseNotApplicable(&'static str),
    #[error("operation needs n = {expected}, got n = {got}")]
    WrongN { expected: usize, got: usize },
    #[error("monomial {0} found in a toric Groebner basis")]
    MonomialInToricIdeal(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("{field}: closed form gives {closed}, oracle gives {oracle}")]
    Mismatch {
        field: &'static str,
        closed: String,
        oracle: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
