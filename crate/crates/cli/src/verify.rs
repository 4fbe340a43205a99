//! `verify`: exhaustive and randomized self-checks of the arithmetic layer
//! against brute-force references, reported one property per record.

use std::time::Instant;

use amicable_core::oracle::{brute_aliquot, brute_divisor_count};
use amicable_core::{
    case2_sum, case3_sum, divisor_count_recurrence, even_aliquot_closed_form,
    odd_aliquot_parity_even, pow2_square_check, recommended_spf_limit, Factorization,
    Factorizer,
};

use crate::cli::VerifyArgs;
use crate::errors::CmdError;
use crate::records::{Emitter, PropertyRecord, Record, TimingRecord};

pub const MAX_VERIFY_LIMIT: u64 = 10_000_000;
/// Exhaustive bound for the oracle and recurrence cross-checks, which cost
/// a square root of work per value.
const BRUTE_SWEEP_BOUND: u64 = 100_000;
const RANDOM_SAMPLES: u64 = 2_000;
const RANDOM_SEED: u64 = 0x5EED_AB1E_0DD5_EED5;

pub fn run(args: VerifyArgs) -> Result<(), CmdError> {
    if args.limit == 0 {
        return Err(CmdError::Config("--limit must be at least 1".into()));
    }
    if args.limit > MAX_VERIFY_LIMIT {
        return Err(CmdError::Config(format!(
            "--limit {} exceeds the verify ceiling {MAX_VERIFY_LIMIT}",
            args.limit
        )));
    }
    let started = Instant::now();
    let fz = Factorizer::new(recommended_spf_limit(args.limit))
        .map_err(|e| CmdError::Config(format!("cannot build sieve: {e}")))?;

    let mut emitter = Emitter::new(args.output.output.as_deref(), args.output.format)?;
    let properties = [
        odd_parity_theorem(&fz, args.limit),
        even_parity_theorem(&fz, args.limit),
        closed_form_equivalence(&fz, args.limit),
        recurrence_vs_brute(&fz, args.limit),
        case_sum_formulas(),
        power_of_two_square(&fz),
        oracle_agreement(&fz, args.limit),
    ];
    let mut failed = 0u64;
    for property in &properties {
        if !property.passed {
            failed += 1;
        }
        emitter.emit(&Record::Property(property.clone()))?;
    }
    emitter.emit(&Record::Timing(TimingRecord {
        wall_seconds: started.elapsed().as_secs_f64(),
    }))?;
    emitter.finish()?;
    if failed > 0 {
        return Err(CmdError::Check(format!("{failed} of {} properties failed", properties.len())));
    }
    Ok(())
}

fn record(
    name: &'static str,
    limit: u64,
    checked: u64,
    counterexample: Option<String>,
) -> PropertyRecord {
    PropertyRecord { name, limit, checked, passed: counterexample.is_none(), counterexample }
}

/// For odd `n`, the aliquot sum is even exactly when `n` is a perfect
/// square, and the recurrence-based parity prediction matches the real sum.
fn odd_parity_theorem(fz: &Factorizer, limit: u64) -> PropertyRecord {
    odd_parity_sweep(fz, limit, |f| odd_aliquot_parity_even(f).expect("odd input"))
}

fn odd_parity_sweep(
    fz: &Factorizer,
    limit: u64,
    predict: impl Fn(&Factorization) -> bool,
) -> PropertyRecord {
    let mut checked = 0u64;
    let mut counterexample = None;
    for n in (1..=limit).step_by(2) {
        let f = fz.factorize(n).expect("in range");
        let predicted_even = predict(&f);
        let actual_even = fz.aliquot_sum(n).expect("in range").is_multiple_of(2);
        let root = n.isqrt();
        if predicted_even != actual_even || predicted_even != (root * root == n) {
            counterexample = Some(format!("n={n}"));
            break;
        }
        checked += 1;
    }
    record("odd_parity_theorem", limit, checked, counterexample)
}

/// For even `m`, the aliquot sum is odd exactly when the odd part of `m` is
/// a perfect square.
fn even_parity_theorem(fz: &Factorizer, limit: u64) -> PropertyRecord {
    let mut checked = 0u64;
    let mut counterexample = None;
    for m in (2..=limit).step_by(2) {
        let actual_odd = fz.aliquot_sum(m).expect("in range") % 2 == 1;
        let odd_part = m >> m.trailing_zeros();
        let root = odd_part.isqrt();
        if actual_odd != (root * root == odd_part) {
            counterexample = Some(format!("m={m}"));
            break;
        }
        checked += 1;
    }
    record("even_parity_theorem", limit, checked, counterexample)
}

/// The closed-form aliquot expression for `2^k * d` agrees with the direct
/// computation on every even number up to the limit.
fn closed_form_equivalence(fz: &Factorizer, limit: u64) -> PropertyRecord {
    let mut checked = 0u64;
    let mut counterexample = None;
    for m in (2..=limit).step_by(2) {
        let dec = fz.split_even(m).expect("even in range");
        let closed = even_aliquot_closed_form(&dec).expect("in range");
        let direct = fz.aliquot_sum(m).expect("in range");
        if closed != direct {
            counterexample = Some(format!("m={m} closed={closed} direct={direct}"));
            break;
        }
        checked += 1;
    }
    record("closed_form_equivalence", limit, checked, counterexample)
}

/// The divisor-count recurrence over the exponents of `n` reproduces the
/// brute-force proper-divisor count.
fn recurrence_vs_brute(fz: &Factorizer, limit: u64) -> PropertyRecord {
    let bound = limit.min(BRUTE_SWEEP_BOUND);
    let mut checked = 0u64;
    let mut counterexample = None;
    for n in 2..=bound {
        let f = fz.factorize(n).expect("in range");
        let trace = divisor_count_recurrence(&f.exponents()).expect("nonempty");
        let brute = brute_divisor_count(n).expect("in range");
        if trace.final_count() != brute {
            counterexample = Some(format!("n={n}"));
            break;
        }
        checked += 1;
    }
    record("divisor_count_recurrence", bound, checked, counterexample)
}

/// The explicit two- and three-prime aliquot expansions agree with the
/// brute-force sum for all distinct odd primes up to 13 and exponents up
/// to 3.
fn case_sum_formulas() -> PropertyRecord {
    const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];
    let mut checked = 0u64;
    let mut counterexample = None;
    'outer: for &p1 in &PRIMES {
        for &p2 in &PRIMES {
            if p2 == p1 {
                continue;
            }
            for k1 in 1..=3u32 {
                for k2 in 1..=3u32 {
                    let value = p1.pow(k1) * p2.pow(k2);
                    let expect = brute_aliquot(value).expect("in range");
                    if case2_sum(p1, k1, p2, k2) != Ok(expect) {
                        counterexample =
                            Some(format!("case2 {p1}^{k1} * {p2}^{k2}"));
                        break 'outer;
                    }
                    checked += 1;
                    for &p3 in &PRIMES {
                        if p3 == p1 || p3 == p2 {
                            continue;
                        }
                        for k3 in 1..=3u32 {
                            let value = value * p3.pow(k3);
                            let expect = brute_aliquot(value).expect("in range");
                            if case3_sum(p1, k1, p2, k2, p3, k3) != Ok(expect) {
                                counterexample = Some(format!(
                                    "case3 {p1}^{k1} * {p2}^{k2} * {p3}^{k3}"
                                ));
                                break 'outer;
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    record("case_sum_formulas", 13, checked, counterexample)
}

/// `s(2^k) = 2^k - 1` is a perfect square only for `k = 1`, and the square
/// witness satisfies its defining identity.
fn power_of_two_square(fz: &Factorizer) -> PropertyRecord {
    let mut checked = 0u64;
    let mut counterexample = None;
    for k in 1..=62u32 {
        let value = 1u64 << k;
        let aliquot = fz.aliquot_sum(value).expect("in range");
        let result = pow2_square_check(k).expect("in range");
        let root = aliquot.isqrt();
        let direct_square = root * root == aliquot;
        let witness_holds = match result.witness {
            Some(w) => (2 * w + 1) * (2 * w + 1) == aliquot,
            None => true,
        };
        if aliquot != value - 1
            || result.is_square != direct_square
            || result.is_square != (k == 1)
            || !witness_holds
        {
            counterexample = Some(format!("k={k}"));
            break;
        }
        checked += 1;
    }
    record("power_of_two_square", 62, checked, counterexample)
}

/// The sieve-backed aliquot sum matches the brute-force oracle exhaustively
/// on an initial range and on pseudo-random samples up to 10^9.
fn oracle_agreement(fz: &Factorizer, limit: u64) -> PropertyRecord {
    let bound = limit.min(BRUTE_SWEEP_BOUND);
    let mut checked = 0u64;
    let mut counterexample = None;
    for n in 1..=bound {
        if fz.aliquot_sum(n).ok() != brute_aliquot(n).ok() {
            counterexample = Some(format!("n={n}"));
            break;
        }
        checked += 1;
    }
    if counterexample.is_none() {
        let mut state = RANDOM_SEED;
        for _ in 0..RANDOM_SAMPLES {
            let n = 100_000 + splitmix64(&mut state) % (1_000_000_000 - 100_000 + 1);
            if fz.aliquot_sum(n).ok() != brute_aliquot(n).ok() {
                counterexample = Some(format!("n={n}"));
                break;
            }
            checked += 1;
        }
    }
    record("oracle_agreement", bound, checked, counterexample)
}

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D4_A853_97A4_DC2D);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sabotaged_parity_predicate_reports_a_counterexample() {
        let fz = Factorizer::new(1 << 16).unwrap();
        let honest = odd_parity_sweep(&fz, 999, |f| {
            odd_aliquot_parity_even(f).expect("odd input")
        });
        assert!(honest.passed);
        assert_eq!(honest.checked, 500);
        assert_eq!(honest.counterexample, None);

        let sabotaged = odd_parity_sweep(&fz, 999, |f| {
            !odd_aliquot_parity_even(f).expect("odd input")
        });
        assert!(!sabotaged.passed);
        assert_eq!(sabotaged.counterexample.as_deref(), Some("n=1"));
        assert_eq!(CmdError::Check("1 of 7 properties failed".into()).exit_code(), 1);
    }
}
