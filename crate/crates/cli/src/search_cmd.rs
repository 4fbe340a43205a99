//! `search`: the theorem-constrained candidate search, with optional
//! sharding, checkpointing, and resumption.

use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use amicable_core::{
    recommended_spf_limit, run_constrained_search, Checkpoint, Error, Factorizer, PairVerdict,
    SearchShard, ARITHMETIC_BOUND,
};

use crate::checkpoint_io::{self, CheckpointIoError};
use crate::cli::SearchArgs;
use crate::errors::CmdError;
use crate::records::{Emitter, PairRecord, Record, SummaryRecord, TimingRecord};
use crate::sink::FileSink;

pub fn run(args: SearchArgs) -> Result<(), CmdError> {
    if args.limit < 2 {
        return Err(CmdError::Config(format!("--limit {} is below 2", args.limit)));
    }
    if args.limit > ARITHMETIC_BOUND {
        return Err(CmdError::Config(format!(
            "--limit {} exceeds the arithmetic bound {ARITHMETIC_BOUND}",
            args.limit
        )));
    }
    if args.shard_count == 0 {
        return Err(CmdError::Config("--shard-count must be at least 1".to_string()));
    }
    if let Some(index) = args.shard_index {
        if index >= args.shard_count {
            return Err(CmdError::Config(format!(
                "--shard-index {index} is not below --shard-count {}",
                args.shard_count
            )));
        }
    }
    let started = Instant::now();
    let fz = Factorizer::new(recommended_spf_limit(args.limit))
        .map_err(|e| CmdError::Config(format!("cannot build sieve: {e}")))?;

    let single_index = match (args.shard_index, args.shard_count) {
        (Some(index), _) => Some(index),
        (None, 1) => Some(0),
        (None, _) => None,
    };

    let (pairs, summary) = match single_index {
        Some(index) => {
            let shard = shard_config(index, args.shard_count, args.limit)?;
            let cp = run_one_shard(&fz, shard, args.checkpoint.as_deref())?;
            let pairs = sorted_pairs(cp.pairs_found.clone());
            let summary = crate::records::summary_from_checkpoint("search", &cp);
            (pairs, summary)
        }
        None => run_all_shards(&fz, &args)?,
    };

    let mut emitter = Emitter::new(args.output.output.as_deref(), args.output.format)?;
    for pair in &pairs {
        emitter.emit(&Record::Pair(PairRecord::from(pair)))?;
    }
    emitter.emit(&Record::Summary(summary))?;
    emitter.emit(&Record::Timing(TimingRecord {
        wall_seconds: started.elapsed().as_secs_f64(),
    }))?;
    emitter.finish()
}

fn shard_config(index: u32, count: u32, limit: u64) -> Result<SearchShard, CmdError> {
    SearchShard::new(index, count, limit).map_err(|e| CmdError::Config(e.to_string()))
}

fn sorted_pairs(mut pairs: Vec<PairVerdict>) -> Vec<PairVerdict> {
    pairs.sort_unstable_by_key(|p| (p.m.min(p.n), p.m, p.n));
    pairs.dedup_by_key(|p| (p.m, p.n));
    pairs
}

fn load_resume(path: &Path) -> Result<Option<Checkpoint>, CmdError> {
    if !path.exists() {
        return Ok(None);
    }
    match checkpoint_io::load(path) {
        Ok(cp) => Ok(Some(cp)),
        Err(CheckpointIoError::Io(source)) => {
            Err(CmdError::Io { path: path.to_path_buf(), source })
        }
        Err(parse @ CheckpointIoError::Parse { .. }) => Err(CmdError::Io {
            path: path.to_path_buf(),
            source: io::Error::new(io::ErrorKind::InvalidData, parse.to_string()),
        }),
    }
}

fn run_one_shard(
    fz: &Factorizer,
    shard: SearchShard,
    checkpoint: Option<&Path>,
) -> Result<Checkpoint, CmdError> {
    let resume = match checkpoint {
        Some(path) => load_resume(path)?,
        None => None,
    };
    let mut sink = FileSink::new(checkpoint.map(Path::to_path_buf));
    match run_constrained_search(fz, shard, resume, &mut sink) {
        Ok(cp) => {
            if let Some(path) = checkpoint {
                checkpoint_io::save(path, &cp).map_err(|source| CmdError::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
            }
            Ok(cp)
        }
        Err(Error::Aborted) => {
            let (path, source) = sink
                .error
                .take()
                .expect("only a sink write failure aborts CLI runs");
            Err(CmdError::Io { path, source })
        }
        Err(Error::CheckpointMismatch(what)) => Err(CmdError::Config(format!(
            "checkpoint does not fit this run: {what}"
        ))),
        Err(other) => Err(CmdError::Check(format!("search failed: {other}"))),
    }
}

fn shard_checkpoint_path(base: Option<&Path>, index: u32) -> Option<PathBuf> {
    base.map(|p| PathBuf::from(format!("{}.shard{index}", p.display())))
}

fn run_all_shards(
    fz: &Factorizer,
    args: &SearchArgs,
) -> Result<(Vec<PairVerdict>, SummaryRecord), CmdError> {
    let count = args.shard_count;
    let results: Vec<Result<Checkpoint, CmdError>> = std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(count as usize);
        for index in 0..count {
            let path = shard_checkpoint_path(args.checkpoint.as_deref(), index);
            let limit = args.limit;
            handles.push(scope.spawn(move || {
                let shard = shard_config(index, count, limit)?;
                run_one_shard(fz, shard, path.as_deref())
            }));
        }
        handles
            .into_iter()
            .map(|h| h.join().expect("shard worker never panics"))
            .collect()
    });

    let mut checkpoints = Vec::with_capacity(count as usize);
    for result in results {
        checkpoints.push(result?);
    }
    let mut pairs: Vec<PairVerdict> = Vec::new();
    let mut examined = 0u64;
    let mut unresolved = 0u64;
    let mut complete = true;
    for cp in &checkpoints {
        pairs.extend(cp.pairs_found.iter().cloned());
        examined += cp.candidates_examined;
        unresolved += cp.unresolved.len() as u64;
        complete &= cp.complete;
    }
    let pairs = sorted_pairs(pairs);
    let summary = SummaryRecord {
        command: "search",
        mode: "constrained",
        limit: args.limit,
        shard_index: None,
        shard_count: count,
        candidates_examined: examined,
        pairs_found: pairs.len() as u64,
        unresolved,
        even_even: None,
        odd_odd: None,
        mixed: None,
        complete,
    };
    Ok((pairs, summary))
}
