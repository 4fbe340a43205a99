//! Arithmetic core for the mixed-parity amicable pair search.
//!
//! The crate is split into four layers:
//!
//! - [`factor`]: exact `u64` factorization behind a smallest-prime-factor
//!   sieve, divisor sums, and even/odd decomposition.
//! - [`parity`]: the parity results that drive the search, as checkable
//!   functions: the proper-divisor count recurrence, explicit two- and
//!   three-prime aliquot expansions, the `2^k - 1` square test, the even
//!   closed form, and the structural conditions on a mixed-parity pair.
//! - [`search`]: candidate enumeration restricted by those conditions,
//!   sharding, resumable checkpoints, and an exhaustive scan used for
//!   cross-validation.
//! - [`oracle`]: bounded brute-force references that share no code with the
//!   fast paths.
//!
//! `no_std` with `alloc`; all I/O, clocks, and persistence live with the
//! caller, injected through [`search::ProgressSink`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod factor;
pub mod oracle;
pub mod parity;
pub mod search;

pub use error::{Error, Result, ARITHMETIC_BOUND};
pub use factor::{
    is_perfect_square, is_prime, proper_divisor_count, sigma, EvenDecomposition, Factorization,
    Factorizer, DEFAULT_SPF_LIMIT, MAX_SPF_LIMIT,
};
pub use parity::{
    case2_sum, case3_sum, divisor_count_recurrence, even_aliquot_closed_form,
    mixed_parity_conditions, odd_aliquot_parity_even, pow2_square_check, DivisorCountTrace,
    MixedParityVerdict, PowerOfTwoSquareResult,
};
pub use search::{
    check_candidate, enumerate_even_candidates, enumerate_odd_square_candidates,
    recommended_spf_limit, run_constrained_search, run_exhaustive_scan, CandidateOutcome,
    Checkpoint, NullSink, PairVerdict, ParityClass, ProgressSink, SearchMode, SearchShard,
    UnresolvedCandidate, DEFAULT_SCAN_CAPACITY,
};
