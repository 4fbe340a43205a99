use amicable_core::{
    is_perfect_square, is_prime, proper_divisor_count, sigma, Factorization, Factorizer,
    ARITHMETIC_BOUND,
};
use amicable_core::oracle::{brute_aliquot, brute_divisor_count};
use amicable_core::Error;
use proptest::prelude::*;

fn small_factorizer() -> &'static Factorizer {
    use std::sync::OnceLock;
    static FZ: OnceLock<Factorizer> = OnceLock::new();
    FZ.get_or_init(|| Factorizer::new(1_000_000).unwrap())
}

#[test]
fn factorize_agrees_with_oracles_exhaustively() {
    let fz = small_factorizer();
    for n in 1..=20_000u64 {
        let f = fz.factorize(n).unwrap();
        assert_eq!(f.value(), n, "value round trip failed at {n}");
        assert_eq!(
            fz.aliquot_sum(n).unwrap(),
            brute_aliquot(n).unwrap(),
            "aliquot mismatch at {n}"
        );
        assert_eq!(
            proper_divisor_count(&f),
            brute_divisor_count(n).unwrap(),
            "divisor count mismatch at {n}"
        );
        let root = n.isqrt();
        assert_eq!(
            is_perfect_square(&f),
            root * root == n,
            "square detection mismatch at {n}"
        );
    }
}

#[test]
fn roundtrip_and_square_detection_to_a_million() {
    let fz = small_factorizer();
    for n in 1..=1_000_000u64 {
        let f = fz.factorize(n).unwrap();
        assert_eq!(f.value(), n, "value round trip failed at {n}");
        let root = n.isqrt();
        assert_eq!(
            is_perfect_square(&f),
            root * root == n,
            "square detection mismatch at {n}"
        );
    }
}

#[test]
fn primality_agrees_with_trial_division() {
    for n in 0..=30_000u64 {
        let by_trial = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        assert_eq!(is_prime(n), by_trial, "primality mismatch at {n}");
    }
}

#[test]
fn split_even_round_trips() {
    let fz = small_factorizer();
    for n in (2..=10_000u64).step_by(2) {
        let dec = fz.split_even(n).unwrap();
        assert_eq!(dec.value(), n);
        assert_eq!(dec.odd_part().value() % 2, 1);
        assert_eq!(n >> n.trailing_zeros(), dec.odd_part().value());
    }
}

proptest! {
    #[test]
    fn factorization_entries_are_canonical(n in 1u64..=1_000_000_000_000) {
        let fz = small_factorizer();
        match fz.factorize(n) {
            Ok(f) => {
                prop_assert_eq!(f.value(), n);
                let entries = f.entries();
                for window in entries.windows(2) {
                    prop_assert!(window[0].0 < window[1].0);
                }
                for &(p, k) in entries {
                    prop_assert!(k >= 1);
                    prop_assert!(is_prime(p));
                }
            }
            Err(Error::HardCofactor { cofactor, spf_limit }) => {
                prop_assert!(cofactor > spf_limit);
                prop_assert!(!is_prime(cofactor));
                prop_assert_eq!(n % cofactor, 0);
            }
            Err(other) => prop_assert!(false, "unexpected error {:?}", other),
        }
    }

    #[test]
    fn sigma_is_multiplicative_on_coprime_pairs(a in 1u64..=50_000, b in 1u64..=50_000) {
        prop_assume!(gcd(a, b) == 1);
        let fz = small_factorizer();
        let sa = sigma(&fz.factorize(a).unwrap()).unwrap();
        let sb = sigma(&fz.factorize(b).unwrap()).unwrap();
        let sab = sigma(&fz.factorize(a * b).unwrap()).unwrap();
        prop_assert_eq!(sab, sa * sb);
    }

    #[test]
    fn aliquot_matches_oracle_on_random_inputs(n in 1u64..=200_000) {
        let fz = small_factorizer();
        prop_assert_eq!(fz.aliquot_sum(n).unwrap(), brute_aliquot(n).unwrap());
    }

    #[test]
    fn from_entries_round_trips_factorize(n in 2u64..=5_000_000) {
        let fz = small_factorizer();
        let f = fz.factorize(n).unwrap();
        let rebuilt = Factorization::from_entries(f.entries().to_vec()).unwrap();
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn out_of_range_is_rejected(n in (ARITHMETIC_BOUND + 1)..=u64::MAX) {
        let fz = small_factorizer();
        prop_assert_eq!(
            fz.factorize(n),
            Err(Error::OutOfRange { value: n, bound: ARITHMETIC_BOUND })
        );
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
