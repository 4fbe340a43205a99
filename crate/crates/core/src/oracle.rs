//! Brute-force reference implementations used to cross-check the fast paths.
//!
//! Nothing here touches the sieve, the factorizer, or the closed-form
//! expansions; both functions walk candidate divisors directly. They are
//! deliberately slow and bounded.

use crate::error::{Error, Result};

/// Inclusive ceiling on oracle inputs; large enough to cover every
/// cross-check in the test suite while keeping single calls cheap.
pub const ORACLE_BOUND: u64 = 2_000_000_000;

fn check_range(n: u64) -> Result<()> {
    if n == 0 || n > ORACLE_BOUND {
        return Err(Error::OutOfRange { value: n, bound: ORACLE_BOUND });
    }
    Ok(())
}

/// Sum of the divisors of `n` strictly below `n`, by trial division up to
/// the square root.
pub fn brute_aliquot(n: u64) -> Result<u64> {
    check_range(n)?;
    let mut sum: u64 = 0;
    let mut d: u64 = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if d < n {
                sum += d;
            }
            let paired = n / d;
            if paired != d && paired < n {
                sum += paired;
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// Number of divisors of `n` strictly below `n`, by the same walk.
pub fn brute_divisor_count(n: u64) -> Result<u64> {
    check_range(n)?;
    let mut count: u64 = 0;
    let mut d: u64 = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            if d < n {
                count += 1;
            }
            let paired = n / d;
            if paired != d && paired < n {
                count += 1;
            }
        }
        d += 1;
    }
    Ok(count)
}
