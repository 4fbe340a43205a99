//! Candidate enumeration, per-candidate checking, and the two search drivers.
//!
//! The constrained search enumerates only values that the parity results
//! leave open for membership in a mixed-parity amicable pair: odd perfect
//! squares, and powers of two times odd perfect squares. The exhaustive scan
//! is the safety net; it computes every aliquot sum up to a limit by divisor
//! accumulation, sharing no code with the factorizer, and records every
//! amicable pair regardless of parity class.
//!
//! Both drivers report through a [`Checkpoint`], which is also the unit of
//! persistence: a constrained run can be stopped after any candidate and
//! resumed from the checkpoint without repeating or skipping work.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result, ARITHMETIC_BOUND};
use crate::factor::{Factorizer, DEFAULT_SPF_LIMIT};
use crate::parity::{mixed_parity_conditions, MixedParityVerdict};

/// Which driver produced a checkpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Constrained,
    Exhaustive,
}

/// One shard of a candidate range: candidates up to `limit`, split
/// round-robin `shard_count` ways, of which this run owns `shard_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchShard {
    shard_index: u32,
    shard_count: u32,
    limit: u64,
}

impl SearchShard {
    pub fn new(shard_index: u32, shard_count: u32, limit: u64) -> Result<Self> {
        if shard_count == 0 {
            return Err(Error::Domain("shard count must be at least 1"));
        }
        if shard_index >= shard_count {
            return Err(Error::Domain("shard index must be below the shard count"));
        }
        if limit < 2 {
            return Err(Error::Domain("search limit must be at least 2"));
        }
        if limit > ARITHMETIC_BOUND {
            return Err(Error::OutOfRange { value: limit, bound: ARITHMETIC_BOUND });
        }
        Ok(SearchShard { shard_index, shard_count, limit })
    }

    pub fn shard_index(&self) -> u32 {
        self.shard_index
    }

    pub fn shard_count(&self) -> u32 {
        self.shard_count
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}

/// Parity class of an amicable pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityClass {
    EvenEven,
    OddOdd,
    Mixed,
}

impl ParityClass {
    pub fn of(a: u64, b: u64) -> ParityClass {
        match (a.is_multiple_of(2), b.is_multiple_of(2)) {
            (true, true) => ParityClass::EvenEven,
            (false, false) => ParityClass::OddOdd,
            _ => ParityClass::Mixed,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ParityClass::EvenEven => "even_even",
            ParityClass::OddOdd => "odd_odd",
            ParityClass::Mixed => "mixed",
        }
    }
}

/// A verified amicable pair together with the evidence.
///
/// For mixed pairs `m` is the even member and `n` the odd member, and
/// `conditions` carries the structural verdict; for same-parity pairs the
/// members are ordered ascending and `conditions` is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub m: u64,
    pub n: u64,
    pub s_m: u64,
    pub s_n: u64,
    pub is_amicable: bool,
    pub class: ParityClass,
    pub conditions: Option<MixedParityVerdict>,
}

/// A candidate whose verdict could not be settled, with the reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnresolvedCandidate {
    pub candidate: u64,
    pub reason: Error,
}

/// Complete, resumable state of one search run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub mode: SearchMode,
    pub shard: SearchShard,
    /// Largest candidate whose verdict is fully recorded; resuming starts
    /// strictly after this value.
    pub last_completed_candidate: u64,
    pub candidates_examined: u64,
    pub pairs_found: Vec<PairVerdict>,
    pub unresolved: Vec<UnresolvedCandidate>,
    /// Accumulated wall-clock milliseconds across all run segments, as
    /// reported by the progress sink.
    pub wall_millis: u64,
    pub complete: bool,
}

impl Checkpoint {
    pub fn fresh(mode: SearchMode, shard: SearchShard) -> Self {
        Checkpoint {
            mode,
            shard,
            last_completed_candidate: 0,
            candidates_examined: 0,
            pairs_found: Vec::new(),
            unresolved: Vec::new(),
            wall_millis: 0,
            complete: false,
        }
    }
}

/// Receives the updated checkpoint after every examined candidate.
///
/// The sink owns all policy the core cannot: clocks, persistence cadence,
/// and cancellation. Returning `false` stops the run; the driver then
/// returns [`Error::Aborted`] and the last checkpoint the sink saw remains
/// valid for resumption.
pub trait ProgressSink {
    fn on_progress(&mut self, checkpoint: &Checkpoint) -> bool;

    /// Milliseconds elapsed in the current run segment; folded into
    /// [`Checkpoint::wall_millis`].
    fn elapsed_millis(&self) -> u64 {
        0
    }
}

/// Sink that never persists, never aborts, and reports no elapsed time.
pub struct NullSink;

impl ProgressSink for NullSink {
    fn on_progress(&mut self, _checkpoint: &Checkpoint) -> bool {
        true
    }
}

/// Odd square candidates `q^2 <= limit` owned by the shard; `q` runs over
/// odd numbers with `q mod shard_count == shard_index`. Ascending.
pub fn enumerate_odd_square_candidates(shard: &SearchShard) -> impl Iterator<Item = u64> {
    let index = shard.shard_index as u64;
    let count = shard.shard_count as u64;
    let q_max = shard.limit.isqrt();
    (1..=q_max)
        .step_by(2)
        .filter(move |q| q % count == index)
        .map(|q| q * q)
}

/// Even candidates `2^a * q^2 <= limit` (odd `q`) owned by the shard.
///
/// Enumeration order is canonical: `a` ascending, `q` ascending within each
/// `a`; the flattened position in that order is dealt round-robin across
/// shards. The returned values are sorted ascending. Every candidate value
/// determines its `(a, q)` uniquely, so shards never overlap.
pub fn enumerate_even_candidates(shard: &SearchShard) -> impl Iterator<Item = u64> {
    let index = shard.shard_index as u64;
    let count = shard.shard_count as u64;
    let mut values: Vec<u64> = Vec::new();
    let mut position: u64 = 0;
    let mut a: u32 = 1;
    while a <= 62 && (1u64 << a) <= shard.limit {
        let q_max = (shard.limit >> a).isqrt();
        let mut q: u64 = 1;
        while q <= q_max {
            if position % count == index {
                values.push((q * q) << a);
            }
            position += 1;
            q += 2;
        }
        a += 1;
    }
    values.sort_unstable();
    values.into_iter()
}

/// Verdict for a single candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateOutcome {
    /// The candidate is not the smaller-or-larger member of a mixed-parity
    /// amicable pair.
    NotAmicable,
    /// The candidate and its aliquot partner form a mixed-parity amicable
    /// pair.
    Amicable(PairVerdict),
    /// The partner's aliquot sum could not be evaluated exactly.
    Unresolved(Error),
}

/// Tests one candidate: computes its aliquot partner, rejects same-parity or
/// degenerate partners, and confirms the cycle by computing the partner's
/// aliquot sum back. Arithmetic failures on the partner side (overflow, hard
/// cofactor, out of range) become [`CandidateOutcome::Unresolved`] rather
/// than errors, since they describe the candidate, not the call.
pub fn check_candidate(fz: &Factorizer, candidate: u64) -> Result<CandidateOutcome> {
    if candidate < 2 {
        return Err(Error::Domain("candidates start at 2"));
    }
    let partner = match fz.aliquot_sum(candidate) {
        Ok(p) => p,
        Err(e @ (Error::Overflow(_) | Error::HardCofactor { .. })) => {
            return Ok(CandidateOutcome::Unresolved(e));
        }
        Err(e) => return Err(e),
    };
    if partner == 0 || partner == candidate || partner % 2 == candidate % 2 {
        return Ok(CandidateOutcome::NotAmicable);
    }
    let back = match fz.aliquot_sum(partner) {
        Ok(b) => b,
        Err(e @ (Error::Overflow(_) | Error::HardCofactor { .. } | Error::OutOfRange { .. })) => {
            return Ok(CandidateOutcome::Unresolved(e));
        }
        Err(e) => return Err(e),
    };
    if back != candidate {
        return Ok(CandidateOutcome::NotAmicable);
    }
    let (m, n) = if candidate.is_multiple_of(2) {
        (candidate, partner)
    } else {
        (partner, candidate)
    };
    let s_m = if m == candidate { partner } else { back };
    let s_n = if n == candidate { partner } else { back };
    let conditions = mixed_parity_conditions(fz, m, n)?;
    let is_amicable = s_m == n && s_n == m && m != n;
    Ok(CandidateOutcome::Amicable(PairVerdict {
        m,
        n,
        s_m,
        s_n,
        is_amicable,
        class: ParityClass::Mixed,
        conditions: Some(conditions),
    }))
}

fn validate_resume(shard: SearchShard, resume: &Checkpoint) -> Result<()> {
    if resume.mode != SearchMode::Constrained {
        return Err(Error::CheckpointMismatch("checkpoint is not from a constrained search"));
    }
    if resume.shard != shard {
        return Err(Error::CheckpointMismatch("shard parameters differ"));
    }
    if resume.last_completed_candidate > shard.limit {
        return Err(Error::CheckpointMismatch("checkpoint is ahead of the search limit"));
    }
    Ok(())
}

/// Runs (or resumes) the theorem-constrained search over one shard.
///
/// The two candidate streams have disjoint values, one odd and one even, and
/// each is ascending, so they are merged into a single ascending pass; a
/// resumed run skips every candidate at or below
/// `last_completed_candidate`. The sink is called once per examined
/// candidate with the fully updated checkpoint, so any checkpoint it
/// persists resumes exactly after the candidate it describes.
pub fn run_constrained_search<S: ProgressSink + ?Sized>(
    fz: &Factorizer,
    shard: SearchShard,
    resume: Option<Checkpoint>,
    sink: &mut S,
) -> Result<Checkpoint> {
    let mut state = match resume {
        Some(cp) => {
            validate_resume(shard, &cp)?;
            cp
        }
        None => Checkpoint::fresh(SearchMode::Constrained, shard),
    };
    if state.complete {
        return Ok(state);
    }
    let base_wall = state.wall_millis;
    let mut odd = enumerate_odd_square_candidates(&shard).peekable();
    let mut even = enumerate_even_candidates(&shard).peekable();
    loop {
        let candidate = match (odd.peek().copied(), even.peek().copied()) {
            (Some(o), Some(e)) if o < e => odd.next().unwrap(),
            (Some(_), Some(_)) => even.next().unwrap(),
            (Some(_), None) => odd.next().unwrap(),
            (None, Some(_)) => even.next().unwrap(),
            (None, None) => break,
        };
        if candidate <= state.last_completed_candidate {
            continue;
        }
        if candidate >= 2 {
            match check_candidate(fz, candidate)? {
                CandidateOutcome::NotAmicable => {}
                CandidateOutcome::Amicable(pair) => {
                    let duplicate = state
                        .pairs_found
                        .iter()
                        .any(|p| p.m == pair.m && p.n == pair.n);
                    if !duplicate {
                        state.pairs_found.push(pair);
                    }
                }
                CandidateOutcome::Unresolved(reason) => {
                    state.unresolved.push(UnresolvedCandidate { candidate, reason });
                }
            }
        }
        state.last_completed_candidate = candidate;
        state.candidates_examined += 1;
        state.wall_millis = base_wall + sink.elapsed_millis();
        if !sink.on_progress(&state) {
            return Err(Error::Aborted);
        }
    }
    state.complete = true;
    state.wall_millis = base_wall + sink.elapsed_millis();
    Ok(state)
}

/// Default aliquot-table capacity for [`run_exhaustive_scan`].
pub const DEFAULT_SCAN_CAPACITY: u64 = 100_000_000;

/// Computes `s(n)` for every `n` up to `limit` by accumulating each divisor
/// `d` into all of its proper multiples, then collects every amicable pair
/// with both members at or below `limit`. Pairs are keyed by their smaller
/// member, ordered ascending. `capacity` bounds the table allocation of
/// eight bytes per value.
pub fn run_exhaustive_scan(limit: u64, capacity: u64) -> Result<Checkpoint> {
    if limit < 2 {
        return Err(Error::Domain("scan limit must be at least 2"));
    }
    if limit > capacity {
        return Err(Error::OutOfRange { value: limit, bound: capacity });
    }
    let mut aliquot = vec![0u64; limit as usize + 1];
    let mut d: u64 = 1;
    while d <= limit / 2 {
        let mut multiple = 2 * d;
        while multiple <= limit {
            aliquot[multiple as usize] += d;
            multiple += d;
        }
        d += 1;
    }
    let shard = SearchShard::new(0, 1, limit)?;
    let mut state = Checkpoint::fresh(SearchMode::Exhaustive, shard);
    for a in 2..=limit {
        let partner = aliquot[a as usize];
        if partner > a && partner <= limit && aliquot[partner as usize] == a {
            let class = ParityClass::of(a, partner);
            let (m, n) = match class {
                ParityClass::Mixed if a % 2 == 1 => (partner, a),
                _ => (a, partner),
            };
            let (s_m, s_n) = (aliquot[m as usize], aliquot[n as usize]);
            state.pairs_found.push(PairVerdict {
                m,
                n,
                s_m,
                s_n,
                is_amicable: s_m == n && s_n == m && m != n,
                class,
                conditions: None,
            });
        }
    }
    state.last_completed_candidate = limit;
    state.candidates_examined = limit - 1;
    state.complete = true;
    Ok(state)
}

/// Sieve limit large enough that `factorize` resolves every candidate up to
/// `limit` and every aliquot partner such a candidate can produce, with a
/// floor to keep trial division effective for small limits.
pub fn recommended_spf_limit(limit: u64) -> u64 {
    let partner_bound = limit.saturating_mul(16).min(ARITHMETIC_BOUND);
    (partner_bound.isqrt() + 1).clamp(1 << 16, DEFAULT_SPF_LIMIT)
}
