use amicable_core::oracle::brute_aliquot;
use amicable_core::{
    enumerate_even_candidates, enumerate_odd_square_candidates, recommended_spf_limit,
    run_constrained_search, run_exhaustive_scan, Checkpoint, Error, Factorizer, NullSink,
    ParityClass, ProgressSink, SearchShard,
};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn factorizer() -> &'static Factorizer {
    use std::sync::OnceLock;
    static FZ: OnceLock<Factorizer> = OnceLock::new();
    FZ.get_or_init(|| Factorizer::new(recommended_spf_limit(1_000_000)).unwrap())
}

/// Aborts the run by returning `false` from the nth progress call, keeping
/// the checkpoint that call observed.
struct AbortAfter {
    remaining: u64,
    snapshot: Option<Checkpoint>,
}

impl AbortAfter {
    fn new(n: u64) -> Self {
        AbortAfter { remaining: n, snapshot: None }
    }
}

impl ProgressSink for AbortAfter {
    fn on_progress(&mut self, checkpoint: &Checkpoint) -> bool {
        self.remaining -= 1;
        if self.remaining == 0 {
            self.snapshot = Some(checkpoint.clone());
            return false;
        }
        true
    }
}

fn full_shard(limit: u64) -> SearchShard {
    SearchShard::new(0, 1, limit).unwrap()
}

#[test]
fn candidate_streams_cover_exactly_the_admissible_values() {
    let limit = 50_000u64;
    let odd: BTreeSet<u64> = enumerate_odd_square_candidates(&full_shard(limit)).collect();
    let even: BTreeSet<u64> = enumerate_even_candidates(&full_shard(limit)).collect();
    for n in 1..=limit {
        let odd_part = n >> n.trailing_zeros();
        let root = odd_part.isqrt();
        let admissible = root * root == odd_part;
        if n % 2 == 1 {
            assert_eq!(odd.contains(&n), admissible, "odd stream wrong at {n}");
            assert!(!even.contains(&n));
        } else {
            assert_eq!(even.contains(&n), admissible, "even stream wrong at {n}");
            assert!(!odd.contains(&n));
        }
    }
}

#[test]
fn known_pairs_below_ten_thousand_are_all_even_even() {
    let cp = run_exhaustive_scan(10_000, 1_000_000).unwrap();
    let pairs: Vec<(u64, u64)> = cp.pairs_found.iter().map(|p| (p.m, p.n)).collect();
    assert_eq!(
        pairs,
        vec![(220, 284), (1184, 1210), (2620, 2924), (5020, 5564), (6232, 6368)]
    );
    assert!(cp.pairs_found.iter().all(|p| p.class == ParityClass::EvenEven));
    assert!(cp.pairs_found.iter().all(|p| p.is_amicable));
}

#[test]
fn scan_aliquot_agrees_with_oracle_spot_checks() {
    let cp = run_exhaustive_scan(2_000, 1_000_000).unwrap();
    assert!(cp.complete);
    for p in &cp.pairs_found {
        assert_eq!(brute_aliquot(p.m).unwrap(), p.s_m);
        assert_eq!(brute_aliquot(p.n).unwrap(), p.s_n);
    }
}

#[test]
fn constrained_search_finds_no_mixed_pairs_below_a_million() {
    let fz = factorizer();
    let cp = run_constrained_search(fz, full_shard(1_000_000), None, &mut NullSink).unwrap();
    assert!(cp.complete);
    assert!(cp.pairs_found.is_empty());
    assert!(cp.unresolved.is_empty());
    assert_eq!(cp.last_completed_candidate, 1_000_000);

    let scan = run_exhaustive_scan(1_000_000, 1_000_000).unwrap();
    let mixed: Vec<_> = scan
        .pairs_found
        .iter()
        .filter(|p| p.class == ParityClass::Mixed)
        .collect();
    assert!(mixed.is_empty());
}

#[test]
fn interrupted_run_resumes_without_loss_or_repeat() {
    let fz = factorizer();
    let limit = 40_000u64;
    let shard = full_shard(limit);
    let uninterrupted = run_constrained_search(fz, shard, None, &mut NullSink).unwrap();

    for abort_at in [1u64, 7, 50, 120] {
        let mut sink = AbortAfter::new(abort_at);
        let err = run_constrained_search(fz, shard, None, &mut sink);
        assert_eq!(err, Err(Error::Aborted));
        let partial = sink.snapshot.expect("abort captured a checkpoint");
        assert!(!partial.complete);
        assert_eq!(partial.candidates_examined, abort_at);

        let resumed =
            run_constrained_search(fz, shard, Some(partial), &mut NullSink).unwrap();
        assert_eq!(resumed, uninterrupted, "resume diverged when aborted at {abort_at}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shards_partition_candidates(count in 1u32..=6, limit in 2u64..=30_000) {
        let mut union: Vec<u64> = Vec::new();
        for index in 0..count {
            let shard = SearchShard::new(index, count, limit).unwrap();
            union.extend(enumerate_odd_square_candidates(&shard));
            union.extend(enumerate_even_candidates(&shard));
        }
        let before = union.len();
        union.sort_unstable();
        union.dedup();
        prop_assert_eq!(before, union.len(), "shards overlap");

        let full = full_shard(limit);
        let mut whole: Vec<u64> = enumerate_odd_square_candidates(&full)
            .chain(enumerate_even_candidates(&full))
            .collect();
        whole.sort_unstable();
        prop_assert_eq!(union, whole);
    }

    #[test]
    fn sharded_runs_agree_with_the_full_run(count in 1u32..=4, limit in 2u64..=20_000) {
        let fz = factorizer();
        let full = run_constrained_search(fz, full_shard(limit), None, &mut NullSink).unwrap();
        let mut examined = 0u64;
        let mut pairs: Vec<(u64, u64)> = Vec::new();
        for index in 0..count {
            let shard = SearchShard::new(index, count, limit).unwrap();
            let cp = run_constrained_search(fz, shard, None, &mut NullSink).unwrap();
            prop_assert!(cp.complete);
            examined += cp.candidates_examined;
            pairs.extend(cp.pairs_found.iter().map(|p| (p.m, p.n)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        let full_pairs: Vec<(u64, u64)> =
            full.pairs_found.iter().map(|p| (p.m, p.n)).collect();
        prop_assert_eq!(examined, full.candidates_examined);
        prop_assert_eq!(pairs, full_pairs);
    }

    #[test]
    fn resume_from_any_abort_point_matches(limit in 100u64..=20_000, seed in 1u64..=1_000) {
        let fz = factorizer();
        let shard = full_shard(limit);
        let clean = run_constrained_search(fz, shard, None, &mut NullSink).unwrap();
        let abort_at = seed % clean.candidates_examined + 1;
        let mut sink = AbortAfter::new(abort_at);
        let outcome = run_constrained_search(fz, shard, None, &mut sink);
        prop_assert_eq!(outcome, Err(Error::Aborted));
        let partial = sink.snapshot.unwrap();
        let resumed = run_constrained_search(fz, shard, Some(partial), &mut NullSink).unwrap();
        prop_assert_eq!(resumed, clean);
    }
}
