//! Executable forms of the aliquot parity results: the proper-divisor count
//! recurrence, explicit aliquot expansions for products of two and three odd
//! prime powers, the square test for `2^k - 1`, the closed-form aliquot sum
//! of an even number, and the combined admissibility verdict for a candidate
//! mixed-parity pair.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::factor::{is_perfect_square, is_prime, sigma, EvenDecomposition, Factorization, Factorizer};

/// Running proper-divisor counts produced by [`divisor_count_recurrence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorCountTrace {
    exponents: Vec<u32>,
    counts: Vec<u64>,
}

impl DivisorCountTrace {
    /// Exponents the trace was built from.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `counts[i]` is the number of proper divisors of any squarefree-based
    /// product of the first `i + 1` prime powers.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Proper-divisor count of the full product; always equals
    /// `(k_1 + 1) * ... * (k_r + 1) - 1`.
    pub fn final_count(&self) -> u64 {
        *self.counts.last().expect("trace is never empty")
    }
}

/// Extends a proper-divisor count one prime at a time: starting from
/// `n_1 = k_1`, appending a new prime with exponent `k` turns a count `n`
/// into `k * (n + 1) + n`.
///
/// The count depends only on the exponent sequence, never on the primes.
pub fn divisor_count_recurrence(exponents: &[u32]) -> Result<DivisorCountTrace> {
    if exponents.is_empty() {
        return Err(Error::Domain("exponent list must be nonempty"));
    }
    let mut counts = Vec::with_capacity(exponents.len());
    let mut prev: u64 = 0;
    for (i, &k) in exponents.iter().enumerate() {
        if k == 0 {
            return Err(Error::Domain("exponents must be at least 1"));
        }
        let next = if i == 0 {
            k as u64
        } else {
            prev.checked_add(1)
                .and_then(|d| (k as u64).checked_mul(d))
                .and_then(|t| t.checked_add(prev))
                .ok_or(Error::Overflow("divisor count recurrence"))?
        };
        counts.push(next);
        prev = next;
    }
    Ok(DivisorCountTrace { exponents: exponents.to_vec(), counts })
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain("expected an odd prime"));
    }
    Ok(())
}

fn require_exponent(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("exponents must be at least 1"));
    }
    Ok(())
}

/// `p^lo + p^(lo+1) + ... + p^hi`, or 0 when the range is empty.
fn power_sum(p: u64, lo: u32, hi: u32) -> Result<u128> {
    if lo > hi {
        return Ok(0);
    }
    let mut term: u128 = 1;
    for _ in 0..lo {
        term = term
            .checked_mul(p as u128)
            .ok_or(Error::Overflow("power sum"))?;
    }
    let mut total: u128 = 0;
    for _ in lo..=hi {
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("power sum"))?;
        term = term
            .checked_mul(p as u128)
            .ok_or(Error::Overflow("power sum"))?;
    }
    Ok(total)
}

fn pow_u128(p: u64, k: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc
            .checked_mul(p as u128)
            .ok_or(Error::Overflow("prime power"))?;
    }
    Ok(acc)
}

fn finish_u64(total: u128, what: &'static str) -> Result<u64> {
    u64::try_from(total).map_err(|_| Error::Overflow(what))
}

/// Aliquot sum of `p1^k1 * p2^k2` for distinct odd primes, expanded as the
/// four divisor groups
/// `S(p1) + S(p2) + 1 + p2^k2 * S'(p1) + S(p1) * S'(p2)`
/// where `S` sums powers 1 through `k` and `S'` sums powers 1 through
/// `k - 1`. A primed group vanishes when its exponent is 1.
pub fn case2_sum(p1: u64, k1: u32, p2: u64, k2: u32) -> Result<u64> {
    require_odd_prime(p1)?;
    require_odd_prime(p2)?;
    require_exponent(k1)?;
    require_exponent(k2)?;
    if p1 == p2 {
        return Err(Error::Domain("primes must be distinct"));
    }
    let s1 = power_sum(p1, 1, k1)?;
    let s2 = power_sum(p2, 1, k2)?;
    let mut total = s1
        .checked_add(s2)
        .and_then(|t| t.checked_add(1))
        .ok_or(Error::Overflow("case2_sum"))?;
    if k1 > 1 {
        let cross = pow_u128(p2, k2)?
            .checked_mul(power_sum(p1, 1, k1 - 1)?)
            .ok_or(Error::Overflow("case2_sum"))?;
        total = total.checked_add(cross).ok_or(Error::Overflow("case2_sum"))?;
    }
    if k2 > 1 {
        let cross = s1
            .checked_mul(power_sum(p2, 1, k2 - 1)?)
            .ok_or(Error::Overflow("case2_sum"))?;
        total = total.checked_add(cross).ok_or(Error::Overflow("case2_sum"))?;
    }
    finish_u64(total, "case2_sum")
}

/// Aliquot sum of `p1^k1 * p2^k2 * p3^k3` for distinct odd primes, built on
/// [`case2_sum`]:
/// `S2 * (1 + p3 + ... + p3^k3) + p1^k1 * p2^k2 * (1 + p3 + ... + p3^(k3-1))`.
/// When `k3 = 1` the trailing factor collapses to 1 and the second term is
/// the bare product of the first two prime powers.
pub fn case3_sum(p1: u64, k1: u32, p2: u64, k2: u32, p3: u64, k3: u32) -> Result<u64> {
    require_odd_prime(p3)?;
    require_exponent(k3)?;
    if p3 == p1 || p3 == p2 {
        return Err(Error::Domain("primes must be distinct"));
    }
    let s2 = case2_sum(p1, k1, p2, k2)? as u128;
    let first = s2
        .checked_mul(power_sum(p3, 0, k3)?)
        .ok_or(Error::Overflow("case3_sum"))?;
    let stem = pow_u128(p1, k1)?
        .checked_mul(pow_u128(p2, k2)?)
        .ok_or(Error::Overflow("case3_sum"))?;
    let second = stem
        .checked_mul(power_sum(p3, 0, k3 - 1)?)
        .ok_or(Error::Overflow("case3_sum"))?;
    let total = first.checked_add(second).ok_or(Error::Overflow("case3_sum"))?;
    finish_u64(total, "case3_sum")
}

/// Whether the aliquot sum of an odd number is even.
///
/// Every proper divisor of an odd number is odd, so the sum's parity is the
/// parity of the proper-divisor count, which the recurrence yields from the
/// exponents alone. For odd `n` the sum is even exactly when `n` is a
/// perfect square.
pub fn odd_aliquot_parity_even(f: &Factorization) -> Result<bool> {
    if f.entries().first().is_some_and(|&(p, _)| p == 2) {
        return Err(Error::Domain("parity rule applies to odd numbers only"));
    }
    if f.is_one() {
        return Ok(true);
    }
    let trace = divisor_count_recurrence(&f.exponents())?;
    Ok(trace.final_count() % 2 == 0)
}

/// Outcome of testing whether `2^exponent - 1` is a perfect square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerOfTwoSquareResult {
    pub exponent: u32,
    pub is_square: bool,
    /// `w` with `(2w + 1)^2 = 2^exponent - 1` when the value is a square;
    /// only `exponent = 1` admits one.
    pub witness: Option<u64>,
}

/// Tests whether the aliquot sum of `2^exponent`, which is `2^exponent - 1`,
/// is a perfect square. Accepts exponents 1 through 62.
pub fn pow2_square_check(exponent: u32) -> Result<PowerOfTwoSquareResult> {
    if exponent == 0 || exponent > 62 {
        return Err(Error::OutOfRange { value: exponent as u64, bound: 62 });
    }
    let value = (1u64 << exponent) - 1;
    let root = value.isqrt();
    let is_square = root * root == value;
    Ok(PowerOfTwoSquareResult {
        exponent,
        is_square,
        witness: if is_square { Some((root - 1) / 2) } else { None },
    })
}

/// Aliquot sum of `2^k0 * d` for odd `d`, without refactoring the product:
/// `(2^(k0+1) - 1) * s(d) + d * (2^k0 - 1)` where `s(d)` is the aliquot sum
/// of the odd part.
pub fn even_aliquot_closed_form(d: &EvenDecomposition) -> Result<u64> {
    let k0 = d.two_exponent();
    let odd_value = d.odd_part().value() as u128;
    let odd_aliquot = (sigma(d.odd_part())? - d.odd_part().value()) as u128;
    let first = ((1u128 << (k0 + 1)) - 1)
        .checked_mul(odd_aliquot)
        .ok_or(Error::Overflow("even aliquot closed form"))?;
    let second = odd_value
        .checked_mul((1u128 << k0) - 1)
        .ok_or(Error::Overflow("even aliquot closed form"))?;
    let total = first
        .checked_add(second)
        .ok_or(Error::Overflow("even aliquot closed form"))?;
    finish_u64(total, "even aliquot closed form")
}

/// The three structural conditions a mixed-parity amicable pair must satisfy:
/// the odd member is a perfect square, and the even member is a power of two
/// times an odd perfect square with at least one odd prime factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MixedParityVerdict {
    pub n_is_perfect_square: bool,
    pub m_has_odd_prime_factor: bool,
    pub m_odd_part_is_square: bool,
}

impl MixedParityVerdict {
    /// True exactly when all three necessary conditions hold.
    pub fn admissible(&self) -> bool {
        self.n_is_perfect_square && self.m_has_odd_prime_factor && self.m_odd_part_is_square
    }
}

/// Evaluates the structural conditions for even `m` and odd `n`.
pub fn mixed_parity_conditions(fz: &Factorizer, m: u64, n: u64) -> Result<MixedParityVerdict> {
    if !m.is_multiple_of(2) {
        return Err(Error::Domain("m must be even"));
    }
    if n.is_multiple_of(2) {
        return Err(Error::Domain("n must be odd"));
    }
    let n_fact = fz.factorize(n)?;
    let dec = fz.split_even(m)?;
    Ok(MixedParityVerdict {
        n_is_perfect_square: is_perfect_square(&n_fact),
        m_has_odd_prime_factor: !dec.odd_part().is_one(),
        m_odd_part_is_square: is_perfect_square(dec.odd_part()),
    })
}
