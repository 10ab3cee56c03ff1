use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum NumError {
    #[error("no sign change on [{a}, {b}]")]
    NoBracket { a: f64, b: f64 },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ConstError {
    #[error("parameter out of admissible range: {0}")]
    DomainError(String),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PrimeError {
    #[error("sieve limit {limit} exceeds the 1e9 cap")]
    LimitTooLarge { limit: u64 },
    #[error("prime table reaches {have} but {need} is required")]
    TableTooSmall { have: u64, need: u64 },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ZetaError {
    #[error("parameter out of admissible range: {0}")]
    DomainError(String),
    #[error("t = {t} is within {dist:e} of an ordinate; the argument is not stable there")]
    TooCloseToZero { t: f64, dist: f64 },
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ZerosError {
    #[error("sign-change count {found} disagrees with the counting function ({expected}) on [{a}, {b}]")]
    CountMismatch {
        a: f64,
        b: f64,
        expected: u64,
        found: u64,
    },
    #[error("need at least {need} zeros, found {have}")]
    TooFewZeros { need: usize, have: usize },
    #[error("requested range outside tabulated zeros: {0}")]
    OutOfRange(String),
    #[error("malformed zero table: {0}")]
    Csv(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
}

#[derive(Error, Debug, Clone, PartialEq)]
pub enum MomentError {
    #[error("requested range not covered: {0}")]
    OutOfRange(String),
    #[error("prime table reaches {have} but {need} is required")]
    TableTooSmall { have: u64, need: u64 },
    #[error("Dirichlet support {support} exceeds the exact-expansion cap {cap}")]
    SupportTooLarge { support: usize, cap: usize },
    #[error("moment order k = {k} exceeds the exact-expansion cap {cap}")]
    KTooLarge { k: u32, cap: u32 },
}
