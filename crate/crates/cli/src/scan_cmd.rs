//! `scan`: exhaustive aliquot tabulation up to the limit, every amicable
//! pair in range, and a consistency check of the constrained search against
//! the scan's mixed-parity findings.

use std::time::Instant;

use amicable_core::{
    recommended_spf_limit, run_constrained_search, run_exhaustive_scan, Factorizer, NullSink,
    ParityClass, SearchShard, DEFAULT_SCAN_CAPACITY,
};

use crate::checkpoint_io;
use crate::cli::ScanArgs;
use crate::errors::CmdError;
use crate::records::{self, ConsistencyRecord, Emitter, PairRecord, Record, TimingRecord};

pub fn run(args: ScanArgs) -> Result<(), CmdError> {
    if args.limit < 2 {
        return Err(CmdError::Config(format!("--limit {} is below 2", args.limit)));
    }
    if args.limit > DEFAULT_SCAN_CAPACITY {
        return Err(CmdError::Config(format!(
            "--limit {} exceeds the scan capacity {DEFAULT_SCAN_CAPACITY}",
            args.limit
        )));
    }
    let started = Instant::now();
    let mut scan = run_exhaustive_scan(args.limit, DEFAULT_SCAN_CAPACITY)
        .map_err(|e| CmdError::Config(e.to_string()))?;

    let fz = Factorizer::new(recommended_spf_limit(args.limit))
        .map_err(|e| CmdError::Config(format!("cannot build sieve: {e}")))?;
    let shard = SearchShard::new(0, 1, args.limit)
        .map_err(|e| CmdError::Config(e.to_string()))?;
    let search = run_constrained_search(&fz, shard, None, &mut NullSink)
        .map_err(|e| CmdError::Check(format!("cross-check search failed: {e}")))?;

    let mut scan_mixed: Vec<(u64, u64)> = scan
        .pairs_found
        .iter()
        .filter(|p| p.class == ParityClass::Mixed)
        .map(|p| (p.m, p.n))
        .collect();
    scan_mixed.sort_unstable();
    let mut search_mixed: Vec<(u64, u64)> = search
        .pairs_found
        .iter()
        .filter(|p| p.m <= args.limit && p.n <= args.limit)
        .map(|p| (p.m, p.n))
        .collect();
    search_mixed.sort_unstable();
    let consistency = ConsistencyRecord {
        scan_mixed: scan_mixed.len() as u64,
        search_mixed: search_mixed.len() as u64,
        consistent: scan_mixed == search_mixed,
    };

    let mut emitter = Emitter::new(args.output.output.as_deref(), args.output.format)?;
    for pair in &scan.pairs_found {
        emitter.emit(&Record::Pair(PairRecord::from(pair)))?;
    }
    emitter.emit(&Record::Summary(records::summary_from_checkpoint("scan", &scan)))?;
    emitter.emit(&Record::Consistency(consistency.clone()))?;
    emitter.emit(&Record::Timing(TimingRecord {
        wall_seconds: started.elapsed().as_secs_f64(),
    }))?;
    emitter.finish()?;

    if let Some(path) = &args.checkpoint {
        scan.wall_millis = started.elapsed().as_millis() as u64;
        checkpoint_io::save(path, &scan)
            .map_err(|source| CmdError::Io { path: path.clone(), source })?;
    }

    if !consistency.consistent {
        return Err(CmdError::Check(format!(
            "CONSISTENCY: scan found {} mixed-parity pairs but the constrained search found {}",
            consistency.scan_mixed, consistency.search_mixed
        )));
    }
    Ok(())
}
