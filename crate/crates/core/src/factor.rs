//! Exact factorization and multiplicative divisor arithmetic on `u64`.
//!
//! A [`Factorizer`] owns a smallest-prime-factor sieve built once at
//! construction; afterwards every method is a pure function of its inputs, so
//! one instance can be shared read-only across threads. Values above the
//! sieve limit fall back to trial division by the sieved primes, plus a
//! deterministic Miller-Rabin test and a perfect-square split for whatever
//! cofactor remains. A composite cofactor with no sieved prime factor is
//! reported as [`Error::HardCofactor`] rather than factored probabilistically.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result, ARITHMETIC_BOUND};

/// Default smallest-prime-factor sieve limit.
pub const DEFAULT_SPF_LIMIT: u64 = 100_000_000;

/// Largest accepted sieve limit; the odd-only table stays addressable and
/// `p * p` stays below `2^62` for every sieved prime `p`.
pub const MAX_SPF_LIMIT: u64 = 1 << 31;

/// Ordered prime-power decomposition of a positive integer.
///
/// Entries are `(prime, exponent)` pairs with strictly increasing primes and
/// exponents of at least 1. The empty factorization represents 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization { entries: Vec::new() }
    }

    /// Builds a factorization from explicit entries, validating that primes
    /// are prime and strictly increasing, exponents are positive, and the
    /// represented value stays within [`ARITHMETIC_BOUND`].
    pub fn from_entries(entries: Vec<(u64, u32)>) -> Result<Self> {
        let mut value: u128 = 1;
        for (i, &(p, k)) in entries.iter().enumerate() {
            if k == 0 {
                return Err(Error::Domain("exponents must be at least 1"));
            }
            if !is_prime(p) {
                return Err(Error::Domain("factorization entry is not prime"));
            }
            if i > 0 && entries[i - 1].0 >= p {
                return Err(Error::Domain("primes must be strictly increasing"));
            }
            for _ in 0..k {
                value = value
                    .checked_mul(p as u128)
                    .ok_or(Error::Overflow("factorization value"))?;
            }
            if value > ARITHMETIC_BOUND as u128 {
                return Err(Error::Overflow("factorization value"));
            }
        }
        Ok(Factorization { entries })
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    /// Exponent sequence in prime order.
    pub fn exponents(&self) -> Vec<u32> {
        self.entries.iter().map(|&(_, k)| k).collect()
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> u64 {
        self.entries
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * p.pow(k))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, k)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        Ok(())
    }
}

/// An even number written as `2^two_exponent * odd_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenDecomposition {
    two_exponent: u32,
    odd_part: Factorization,
}

impl EvenDecomposition {
    pub fn new(two_exponent: u32, odd_part: Factorization) -> Result<Self> {
        if two_exponent == 0 {
            return Err(Error::Domain("an even number needs a positive power of two"));
        }
        if odd_part.entries().first().is_some_and(|&(p, _)| p == 2) {
            return Err(Error::Domain("odd part contains the prime 2"));
        }
        if two_exponent > 62
            || (odd_part.value() as u128) << two_exponent > ARITHMETIC_BOUND as u128
        {
            return Err(Error::Overflow("even decomposition value"));
        }
        Ok(EvenDecomposition { two_exponent, odd_part })
    }

    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    pub fn odd_part(&self) -> &Factorization {
        &self.odd_part
    }

    pub fn value(&self) -> u64 {
        self.odd_part.value() << self.two_exponent
    }
}

/// Sum of all divisors of the factored value, including the value itself.
pub fn sigma(f: &Factorization) -> Result<u64> {
    let mut total: u128 = 1;
    for &(p, k) in f.entries() {
        let mut term: u128 = 1;
        let mut power: u128 = 1;
        for _ in 0..k {
            power = power
                .checked_mul(p as u128)
                .ok_or(Error::Overflow("sigma"))?;
            term = term.checked_add(power).ok_or(Error::Overflow("sigma"))?;
        }
        total = total.checked_mul(term).ok_or(Error::Overflow("sigma"))?;
    }
    u64::try_from(total).map_err(|_| Error::Overflow("sigma"))
}

/// Number of proper divisors of the factored value (all divisors except the
/// value itself); 1 has none.
pub fn proper_divisor_count(f: &Factorization) -> u64 {
    let total = f
        .entries()
        .iter()
        .fold(1u64, |acc, &(_, k)| acc * (k as u64 + 1));
    total - 1
}

/// True when every exponent is even.
pub fn is_perfect_square(f: &Factorization) -> bool {
    f.entries().iter().all(|&(_, k)| k % 2 == 0)
}

/// Deterministic Miller-Rabin primality test, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Factorization engine backed by a smallest-prime-factor sieve over the odd
/// numbers up to a fixed limit.
pub struct Factorizer {
    spf_limit: u64,
    /// `spf_odd[i]` is the smallest prime factor of `2 * i + 3`, or 0 when
    /// `2 * i + 3` is itself prime.
    spf_odd: Vec<u32>,
    /// All primes at or below `spf_limit`, ascending, starting with 2.
    primes: Vec<u32>,
}

impl Factorizer {
    /// Builds the sieve; costs `O(spf_limit log log spf_limit)` time and one
    /// `u32` per odd number up to the limit.
    pub fn new(spf_limit: u64) -> Result<Self> {
        if spf_limit < 2 {
            return Err(Error::Domain("sieve limit must be at least 2"));
        }
        if spf_limit > MAX_SPF_LIMIT {
            return Err(Error::OutOfRange { value: spf_limit, bound: MAX_SPF_LIMIT });
        }
        let len = if spf_limit >= 3 {
            ((spf_limit - 3) / 2 + 1) as usize
        } else {
            0
        };
        let mut spf_odd = vec![0u32; len];
        let mut primes: Vec<u32> = Vec::new();
        primes.push(2);
        for i in 0..len {
            if spf_odd[i] != 0 {
                continue;
            }
            let p = 2 * i as u64 + 3;
            primes.push(p as u32);
            let mut multiple = p * p;
            while multiple <= spf_limit {
                let slot = &mut spf_odd[((multiple - 3) / 2) as usize];
                if *slot == 0 {
                    *slot = p as u32;
                }
                multiple += 2 * p;
            }
        }
        Ok(Factorizer { spf_limit, spf_odd, primes })
    }

    pub fn spf_limit(&self) -> u64 {
        self.spf_limit
    }

    /// Complete prime-power decomposition of `n`.
    pub fn factorize(&self, n: u64) -> Result<Factorization> {
        if n == 0 || n > ARITHMETIC_BOUND {
            return Err(Error::OutOfRange { value: n, bound: ARITHMETIC_BOUND });
        }
        let mut entries: Vec<(u64, u32)> = Vec::new();
        let mut rest = n;
        if rest > 1 {
            let twos = rest.trailing_zeros();
            if twos > 0 {
                entries.push((2, twos));
                rest >>= twos;
            }
        }
        if rest > 1 {
            if rest <= self.spf_limit {
                self.factor_sieved(rest, &mut entries);
            } else {
                self.factor_by_trial(rest, &mut entries)?;
            }
        }
        Ok(Factorization { entries })
    }

    /// `n` odd, `3 <= n <= spf_limit`.
    fn factor_sieved(&self, mut n: u64, out: &mut Vec<(u64, u32)>) {
        while n > 1 {
            let sieved = self.spf_odd[((n - 3) / 2) as usize];
            let p = if sieved == 0 { n } else { sieved as u64 };
            let mut k = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
    }

    /// `n` odd, `n > spf_limit`.
    fn factor_by_trial(&self, mut n: u64, out: &mut Vec<(u64, u32)>) -> Result<()> {
        let mut searched_past_root = false;
        for &p in &self.primes[1..] {
            let p = p as u64;
            if p * p > n {
                searched_past_root = true;
                break;
            }
            if n.is_multiple_of(p) {
                let mut k = 0u32;
                while n.is_multiple_of(p) {
                    n /= p;
                    k += 1;
                }
                out.push((p, k));
            }
        }
        if n == 1 {
            return Ok(());
        }
        if searched_past_root {
            out.push((n, 1));
            return Ok(());
        }
        self.factor_hard(n, 1, out)
    }

    /// `c` odd, above the sieve limit, with no prime factor at or below it.
    /// Primes and perfect powers of primes still resolve; anything else is a
    /// hard cofactor.
    fn factor_hard(&self, c: u64, multiplicity: u32, out: &mut Vec<(u64, u32)>) -> Result<()> {
        if is_prime(c) {
            out.push((c, multiplicity));
            return Ok(());
        }
        let root = c.isqrt();
        if root * root == c {
            return self.factor_hard(root, multiplicity * 2, out);
        }
        Err(Error::HardCofactor { cofactor: c, spf_limit: self.spf_limit })
    }

    /// Sum of the divisors of `n` strictly below `n`; 0 for `n = 1`.
    pub fn aliquot_sum(&self, n: u64) -> Result<u64> {
        let f = self.factorize(n)?;
        Ok(sigma(&f)? - n)
    }

    /// Splits an even `n` into its power of two and factored odd part.
    pub fn split_even(&self, n: u64) -> Result<EvenDecomposition> {
        if n == 0 || n > ARITHMETIC_BOUND {
            return Err(Error::OutOfRange { value: n, bound: ARITHMETIC_BOUND });
        }
        if !n.is_multiple_of(2) {
            return Err(Error::Domain("split_even requires an even input"));
        }
        let two_exponent = n.trailing_zeros();
        let odd_part = self.factorize(n >> two_exponent)?;
        Ok(EvenDecomposition { two_exponent, odd_part })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fz() -> Factorizer {
        Factorizer::new(10_000).unwrap()
    }

    #[test]
    fn factorize_small_values() {
        let f = fz();
        assert!(f.factorize(1).unwrap().is_one());
        assert_eq!(f.factorize(1024).unwrap().entries(), &[(2, 10)]);
        assert_eq!(
            f.factorize(360).unwrap().entries(),
            &[(2, 3), (3, 2), (5, 1)]
        );
        assert_eq!(f.factorize(9_999).unwrap().entries(), &[(3, 2), (11, 1), (101, 1)]);
    }

    #[test]
    fn factorize_rejects_out_of_range() {
        let f = fz();
        assert_eq!(
            f.factorize(0),
            Err(Error::OutOfRange { value: 0, bound: ARITHMETIC_BOUND })
        );
        assert_eq!(
            f.factorize(ARITHMETIC_BOUND + 1),
            Err(Error::OutOfRange { value: ARITHMETIC_BOUND + 1, bound: ARITHMETIC_BOUND })
        );
        assert_eq!(
            f.factorize(ARITHMETIC_BOUND).unwrap().entries(),
            &[(2, 62)]
        );
    }

    #[test]
    fn factorize_above_sieve_limit() {
        let f = Factorizer::new(1_000).unwrap();
        assert_eq!(f.factorize(1_000_003).unwrap().entries(), &[(1_000_003, 1)]);
        assert_eq!(
            f.factorize(2 * 999_983).unwrap().entries(),
            &[(2, 1), (999_983, 1)]
        );
        assert_eq!(
            f.factorize(1009 * 1009).unwrap().entries(),
            &[(1009, 2)]
        );
        assert_eq!(
            f.factorize(1009u64.pow(4)).unwrap().entries(),
            &[(1009, 4)]
        );
        assert_eq!(
            f.factorize(1009 * 1013),
            Err(Error::HardCofactor { cofactor: 1009 * 1013, spf_limit: 1_000 })
        );
    }

    #[test]
    fn sigma_matches_known_values() {
        let f = fz();
        assert_eq!(sigma(&f.factorize(1).unwrap()), Ok(1));
        assert_eq!(sigma(&f.factorize(16).unwrap()), Ok(31));
        assert_eq!(sigma(&f.factorize(220).unwrap()), Ok(504));
        assert_eq!(sigma(&f.factorize(284).unwrap()), Ok(504));
    }

    #[test]
    fn sigma_overflow_is_reported() {
        // 2^5 * 3^4 * 5^2 * 7^2 * 11 * 13 * ... * 41 = 4600263984531415200 sits
        // just under 2^62 but its divisor sum exceeds u64::MAX.
        let entries = vec![
            (2, 5),
            (3, 4),
            (5, 2),
            (7, 2),
            (11, 1),
            (13, 1),
            (17, 1),
            (19, 1),
            (23, 1),
            (29, 1),
            (31, 1),
            (37, 1),
            (41, 1),
        ];
        let f = Factorization::from_entries(entries).unwrap();
        assert_eq!(f.value(), 4_600_263_984_531_415_200);
        assert_eq!(sigma(&f), Err(Error::Overflow("sigma")));
    }

    #[test]
    fn aliquot_sums() {
        let f = fz();
        assert_eq!(f.aliquot_sum(1), Ok(0));
        assert_eq!(f.aliquot_sum(16), Ok(15));
        assert_eq!(f.aliquot_sum(45), Ok(33));
        assert_eq!(f.aliquot_sum(220), Ok(284));
        assert_eq!(f.aliquot_sum(284), Ok(220));
    }

    #[test]
    fn proper_divisor_counts() {
        let f = fz();
        assert_eq!(proper_divisor_count(&Factorization::one()), 0);
        assert_eq!(proper_divisor_count(&f.factorize(81).unwrap()), 4);
        assert_eq!(proper_divisor_count(&f.factorize(360).unwrap()), 23);
    }

    #[test]
    fn perfect_square_detection() {
        let f = fz();
        assert!(is_perfect_square(&f.factorize(1).unwrap()));
        assert!(is_perfect_square(&f.factorize(9).unwrap()));
        assert!(is_perfect_square(&f.factorize(1225).unwrap()));
        assert!(!is_perfect_square(&f.factorize(15).unwrap()));
        assert!(!is_perfect_square(&f.factorize(12).unwrap()));
    }

    #[test]
    fn split_even_examples() {
        let f = fz();
        let d = f.split_even(2).unwrap();
        assert_eq!((d.two_exponent(), d.odd_part().value()), (1, 1));
        let d = f.split_even(12).unwrap();
        assert_eq!((d.two_exponent(), d.odd_part().value()), (2, 3));
        let d = f.split_even(1176).unwrap();
        assert_eq!(d.two_exponent(), 3);
        assert_eq!(d.odd_part().entries(), &[(3, 1), (7, 2)]);
        assert_eq!(d.value(), 1176);
        assert_eq!(
            f.split_even(7),
            Err(Error::Domain("split_even requires an even input"))
        );
    }

    #[test]
    fn from_entries_validation() {
        assert!(Factorization::from_entries(vec![(5, 1), (3, 1)]).is_err());
        assert!(Factorization::from_entries(vec![(4, 1)]).is_err());
        assert!(Factorization::from_entries(vec![(3, 0)]).is_err());
        assert!(Factorization::from_entries(vec![(3, 3), (3, 1)]).is_err());
        assert!(Factorization::from_entries(vec![(2, 63)]).is_err());
        let f = Factorization::from_entries(vec![(2, 2), (5, 1), (11, 1)]).unwrap();
        assert_eq!(f.value(), 220);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(!is_prime(1009 * 1013));
        assert!(is_prime((1 << 61) - 1));
        assert!(!is_prime((1 << 62) - 1));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn display_formats() {
        let f = fz();
        assert_eq!(f.factorize(1).unwrap().to_string(), "1");
        assert_eq!(f.factorize(360).unwrap().to_string(), "2^3 * 3^2 * 5");
    }
}
