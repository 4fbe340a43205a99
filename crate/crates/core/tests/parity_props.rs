use amicable_core::oracle::{brute_aliquot, brute_divisor_count};
use amicable_core::{
    case2_sum, case3_sum, divisor_count_recurrence, even_aliquot_closed_form,
    mixed_parity_conditions, odd_aliquot_parity_even, pow2_square_check, Factorizer,
};
use proptest::prelude::*;

fn factorizer() -> &'static Factorizer {
    use std::sync::OnceLock;
    static FZ: OnceLock<Factorizer> = OnceLock::new();
    FZ.get_or_init(|| Factorizer::new(1_000_000).unwrap())
}

#[test]
fn odd_aliquot_parity_is_square_membership() {
    let fz = factorizer();
    for n in (1..=99_999u64).step_by(2) {
        let f = fz.factorize(n).unwrap();
        let predicted_even = odd_aliquot_parity_even(&f).unwrap();
        let actual_even = fz.aliquot_sum(n).unwrap().is_multiple_of(2);
        assert_eq!(predicted_even, actual_even, "parity prediction failed at {n}");
        let root = n.isqrt();
        assert_eq!(predicted_even, root * root == n, "square link failed at {n}");
    }
}

#[test]
fn even_aliquot_parity_is_odd_part_square_membership() {
    let fz = factorizer();
    for m in (2..=100_000u64).step_by(2) {
        let parity_odd = fz.aliquot_sum(m).unwrap() % 2 == 1;
        let odd_part = m >> m.trailing_zeros();
        let root = odd_part.isqrt();
        assert_eq!(
            parity_odd,
            root * root == odd_part,
            "even parity rule failed at {m}"
        );
    }
}

#[test]
fn closed_form_matches_direct_aliquot_exhaustively() {
    let fz = factorizer();
    for m in (2..=100_000u64).step_by(2) {
        let dec = fz.split_even(m).unwrap();
        assert_eq!(
            even_aliquot_closed_form(&dec).unwrap(),
            fz.aliquot_sum(m).unwrap(),
            "closed form failed at {m}"
        );
    }
}

#[test]
fn case_sums_match_oracle_on_small_grid() {
    let primes = [3u64, 5, 7, 11, 13];
    for (i, &p1) in primes.iter().enumerate() {
        for (j, &p2) in primes.iter().enumerate() {
            if i == j {
                continue;
            }
            for k1 in 1..=3u32 {
                for k2 in 1..=3u32 {
                    let value = p1.pow(k1) * p2.pow(k2);
                    assert_eq!(
                        case2_sum(p1, k1, p2, k2).unwrap(),
                        brute_aliquot(value).unwrap(),
                        "case2 failed at {p1}^{k1} * {p2}^{k2}"
                    );
                }
            }
        }
    }
}

#[test]
fn recurrence_final_count_is_divisor_product() {
    let trace = divisor_count_recurrence(&[3, 1, 4, 1]).unwrap();
    assert_eq!(trace.final_count(), 4 * 2 * 5 * 2 - 1);
    assert_eq!(trace.counts().len(), 4);
}

#[test]
fn pow2_square_check_matches_direct_test() {
    for k in 1..=62u32 {
        let result = pow2_square_check(k).unwrap();
        let value = (1u64 << k) - 1;
        let root = value.isqrt();
        assert_eq!(result.is_square, root * root == value);
        if let Some(w) = result.witness {
            assert_eq!((2 * w + 1) * (2 * w + 1), value);
        }
        assert_eq!(result.is_square, k == 1);
    }
}

proptest! {
    #[test]
    fn recurrence_matches_product_formula(exps in prop::collection::vec(1u32..=6, 1..=6)) {
        let trace = divisor_count_recurrence(&exps).unwrap();
        let product: u64 = exps.iter().map(|&k| k as u64 + 1).product();
        prop_assert_eq!(trace.final_count(), product - 1);
    }

    #[test]
    fn recurrence_matches_brute_count_on_built_values(
        k1 in 1u32..=3, k2 in 0u32..=3, k3 in 0u32..=3,
    ) {
        let mut exps = vec![k1];
        let mut n: u64 = 3u64.pow(k1);
        if k2 > 0 {
            exps.push(k2);
            n *= 5u64.pow(k2);
        }
        if k3 > 0 && k2 > 0 {
            exps.push(k3);
            n *= 7u64.pow(k3);
        }
        let trace = divisor_count_recurrence(&exps).unwrap();
        prop_assert_eq!(trace.final_count(), brute_divisor_count(n).unwrap());
    }

    #[test]
    fn case3_matches_oracle(
        sel in prop::sample::subsequence(vec![3u64, 5, 7, 11, 13], 3),
        k1 in 1u32..=3, k2 in 1u32..=3, k3 in 1u32..=3,
    ) {
        let (p1, p2, p3) = (sel[0], sel[1], sel[2]);
        let value = p1.pow(k1) * p2.pow(k2) * p3.pow(k3);
        prop_assert_eq!(
            case3_sum(p1, k1, p2, k2, p3, k3).unwrap(),
            brute_aliquot(value).unwrap()
        );
    }

    #[test]
    fn closed_form_matches_on_random_even_values(m in 1u64..=500_000_000) {
        let m = m * 2;
        let fz = factorizer();
        let dec = fz.split_even(m).unwrap();
        prop_assert_eq!(even_aliquot_closed_form(&dec).unwrap(), fz.aliquot_sum(m).unwrap());
    }

    #[test]
    fn admissibility_agrees_with_direct_structure(m in 1u64..=100_000, n in 0u64..=100_000) {
        let m = m * 2;
        let n = n * 2 + 1;
        let fz = factorizer();
        let verdict = mixed_parity_conditions(fz, m, n).unwrap();
        let nr = n.isqrt();
        prop_assert_eq!(verdict.n_is_perfect_square, nr * nr == n);
        let odd = m >> m.trailing_zeros();
        let or = odd.isqrt();
        prop_assert_eq!(verdict.m_odd_part_is_square, or * or == odd);
        prop_assert_eq!(verdict.m_has_odd_prime_factor, odd > 1);
    }
}
