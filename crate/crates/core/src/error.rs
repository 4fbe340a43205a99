use core::fmt;

/// Inclusive upper bound on every value the arithmetic layer accepts.
///
/// Keeping inputs at or below `2^62` guarantees that `sigma(n)` fits in a
/// `u128` intermediate and that squaring a sieved prime never wraps.
pub const ARITHMETIC_BOUND: u64 = 1 << 62;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input lies outside `[1, bound]`.
    OutOfRange { value: u64, bound: u64 },
    /// A structural precondition was violated (wrong parity, duplicate
    /// primes, zero exponent, and so on).
    Domain(&'static str),
    /// An intermediate result exceeded the representable range.
    Overflow(&'static str),
    /// Trial division ran out of sieved primes and the remaining cofactor is
    /// composite with no factor at or below the sieve limit.
    HardCofactor { cofactor: u64, spf_limit: u64 },
    /// A checkpoint was offered to a run whose configuration it does not
    /// describe.
    CheckpointMismatch(&'static str),
    /// The progress sink asked the search to stop.
    Aborted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { value, bound } => {
                write!(f, "value {value} outside supported range [1, {bound}]")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Overflow(what) => write!(f, "arithmetic overflow in {what}"),
            Error::HardCofactor { cofactor, spf_limit } => write!(
                f,
                "cofactor {cofactor} has no prime factor at or below sieve limit {spf_limit}"
            ),
            Error::CheckpointMismatch(msg) => write!(f, "checkpoint mismatch: {msg}"),
            Error::Aborted => write!(f, "search aborted by progress sink"),
        }
    }
}

impl core::error::Error for Error {}
