use thiserror::Error;

/// Errors surfaced by the counting and enumeration layers.
///
/// Overflow in exact arithmetic is deliberately *not* an `Error` variant:
/// it aborts with a panic carrying a distinct message, since a wrapped
/// integer would silently poison every downstream count.
#[derive(Debug, Error)]
pub enum Error {
    /// The raw candidate space of an enumeration exceeds the configured budget.
    #[error("candidate space of {estimate} exceeds the budget of {max_candidates} candidates")]
    BudgetExceeded { estimate: u128, max_candidates: u64 },

    /// An enumeration ran past its wall-clock budget.
    #[error("enumeration exceeded the time budget of {max_seconds} s")]
    TimeBudgetExceeded { max_seconds: u64 },

    /// Componentwise vector operation on vectors of different lengths.
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Requested a coefficient row outside the shipped table.
    #[error("no tabulated coefficient row for e = {e} (tabulated range is 1..=8)")]
    OutsideTabulatedRange { e: u32 },

    /// The recurrence needed an irreducible-subring count that the supplied
    /// table does not contain.
    #[error("missing irreducible-count table entry for (n = {n}, e = {e}) at p = {p}")]
    MissingTableEntry { n: u32, e: u32, p: u64 },

    /// Two routes produced different values for the same table key.
    #[error("conflicting values for table entry (n = {n}, e = {e}, p = {p}): {existing} vs {new}")]
    TableConflict {
        n: u32,
        e: u32,
        p: u64,
        existing: String,
        new: String,
    },

    /// Closed-form subring zeta factors exist only for n in {2, 3, 4}.
    #[error("no closed-form subring factor for n = {n} (known only for n in {{2, 3, 4}})")]
    UnsupportedDimension { n: u32 },

    /// Interpolation sample primes must be pairwise distinct.
    #[error("duplicate sample prime {p}")]
    DuplicatePrime { p: u64 },

    /// A fit over n requires values for every n in 0..=k_max.
    #[error("need {needed} values (n = 0..={k_max}), got {got}")]
    InsufficientRange {
        k_max: u32,
        needed: usize,
        got: usize,
    },

    /// No composition with parts in {1, 2} realizes the requested (n, e).
    #[error("no composition of {e} into {parts} parts of size one and two")]
    NoBoundComposition { e: u32, parts: u32 },

    /// A value would be recomputed differently from what the cache recorded.
    #[error("cache integrity violation for key {key}: cached {existing}, recomputed {new}")]
    CacheConflict {
        key: String,
        existing: String,
        new: String,
    },

    /// A cache line could not be parsed.
    #[error("malformed cache record at {path}:{line}: {message}")]
    MalformedCacheRecord {
        path: String,
        line: usize,
        message: String,
    },

    /// Command-line validation: the given modulus is not prime.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Command-line validation: malformed parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the command-line surface.
    ///
    /// 0 = success, 1 = usage, 2 = mismatch, 3 = budget, 4 = cache integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } | Error::TimeBudgetExceeded { .. } => 3,
            Error::CacheConflict { .. } | Error::MalformedCacheRecord { .. } => 4,
            Error::NotPrime(_) | Error::InvalidParameter(_) => 1,
            Error::TableConflict { .. } => 4,
            _ => 1,
        }
    }
}
