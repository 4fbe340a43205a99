//! Output records shared by every subcommand, with one JSON object per line
//! in `jsonl` format and one readable line per record in `human` format.
//! Timing always travels in its own record so that everything else is
//! byte-for-byte reproducible across runs and resumes.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use amicable_core::{Checkpoint, MixedParityVerdict, PairVerdict, SearchMode};
use serde::Serialize;

use crate::cli::Format;
use crate::errors::CmdError;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "record_type", rename_all = "snake_case")]
pub enum Record {
    Pair(PairRecord),
    Summary(SummaryRecord),
    Property(PropertyRecord),
    Consistency(ConsistencyRecord),
    Timing(TimingRecord),
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub m: u64,
    pub n: u64,
    pub s_m: u64,
    pub s_n: u64,
    pub class: &'static str,
    pub is_amicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsRecord>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ConditionsRecord {
    pub n_is_perfect_square: bool,
    pub m_has_odd_prime_factor: bool,
    pub m_odd_part_is_square: bool,
    pub admissible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryRecord {
    pub command: &'static str,
    pub mode: &'static str,
    pub limit: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shard_index: Option<u32>,
    pub shard_count: u32,
    pub candidates_examined: u64,
    pub pairs_found: u64,
    pub unresolved: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub even_even: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_odd: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mixed: Option<u64>,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyRecord {
    pub name: &'static str,
    pub limit: u64,
    pub checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyRecord {
    pub scan_mixed: u64,
    pub search_mixed: u64,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TimingRecord {
    pub wall_seconds: f64,
}

impl From<&MixedParityVerdict> for ConditionsRecord {
    fn from(v: &MixedParityVerdict) -> Self {
        ConditionsRecord {
            n_is_perfect_square: v.n_is_perfect_square,
            m_has_odd_prime_factor: v.m_has_odd_prime_factor,
            m_odd_part_is_square: v.m_odd_part_is_square,
            admissible: v.admissible(),
        }
    }
}

impl From<&PairVerdict> for PairRecord {
    fn from(p: &PairVerdict) -> Self {
        PairRecord {
            m: p.m,
            n: p.n,
            s_m: p.s_m,
            s_n: p.s_n,
            class: p.class.as_str(),
            is_amicable: p.is_amicable,
            conditions: p.conditions.as_ref().map(ConditionsRecord::from),
        }
    }
}

pub fn mode_str(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Constrained => "constrained",
        SearchMode::Exhaustive => "exhaustive",
    }
}

/// Summary of a finished or reloaded run, with per-class pair counts for
/// exhaustive modes.
pub fn summary_from_checkpoint(command: &'static str, cp: &Checkpoint) -> SummaryRecord {
    let class_count = |class: amicable_core::ParityClass| {
        cp.pairs_found.iter().filter(|p| p.class == class).count() as u64
    };
    let exhaustive = cp.mode == SearchMode::Exhaustive;
    SummaryRecord {
        command,
        mode: mode_str(cp.mode),
        limit: cp.shard.limit(),
        shard_index: Some(cp.shard.shard_index()),
        shard_count: cp.shard.shard_count(),
        candidates_examined: cp.candidates_examined,
        pairs_found: cp.pairs_found.len() as u64,
        unresolved: cp.unresolved.len() as u64,
        even_even: exhaustive.then(|| class_count(amicable_core::ParityClass::EvenEven)),
        odd_odd: exhaustive.then(|| class_count(amicable_core::ParityClass::OddOdd)),
        mixed: exhaustive.then(|| class_count(amicable_core::ParityClass::Mixed)),
        complete: cp.complete,
    }
}

fn human_line(record: &Record) -> String {
    match record {
        Record::Pair(p) => {
            let mut line = format!(
                "pair m={} n={} s_m={} s_n={} class={} amicable={}",
                p.m, p.n, p.s_m, p.s_n, p.class, p.is_amicable
            );
            if let Some(c) = &p.conditions {
                line.push_str(&format!(
                    " n_square={} m_odd_prime={} m_odd_square={} admissible={}",
                    c.n_is_perfect_square,
                    c.m_has_odd_prime_factor,
                    c.m_odd_part_is_square,
                    c.admissible
                ));
            }
            line
        }
        Record::Summary(s) => {
            let mut line = format!("summary command={} mode={} limit={}", s.command, s.mode, s.limit);
            if let Some(i) = s.shard_index {
                line.push_str(&format!(" shard={}/{}", i, s.shard_count));
            } else {
                line.push_str(&format!(" shards={}", s.shard_count));
            }
            line.push_str(&format!(
                " examined={} pairs={} unresolved={}",
                s.candidates_examined, s.pairs_found, s.unresolved
            ));
            if let (Some(ee), Some(oo), Some(mx)) = (s.even_even, s.odd_odd, s.mixed) {
                line.push_str(&format!(" even_even={ee} odd_odd={oo} mixed={mx}"));
            }
            line.push_str(&format!(" complete={}", s.complete));
            line
        }
        Record::Property(p) => {
            let mut line = format!(
                "property name={} limit={} checked={} passed={}",
                p.name, p.limit, p.checked, p.passed
            );
            if let Some(ce) = &p.counterexample {
                line.push_str(&format!(" counterexample={ce}"));
            }
            line
        }
        Record::Consistency(c) => format!(
            "consistency scan_mixed={} search_mixed={} consistent={}",
            c.scan_mixed, c.search_mixed, c.consistent
        ),
        Record::Timing(t) => format!("timing wall_seconds={:.3}", t.wall_seconds),
    }
}

/// Writes records to stdout or a file in the selected format.
pub struct Emitter {
    format: Format,
    target: Target,
}

enum Target {
    Stdout(io::Stdout),
    File { path: std::path::PathBuf, writer: BufWriter<File> },
}

impl Emitter {
    pub fn new(output: Option<&Path>, format: Format) -> Result<Self, CmdError> {
        let target = match output {
            None => Target::Stdout(io::stdout()),
            Some(path) => {
                let file = File::create(path).map_err(|source| CmdError::Io {
                    path: path.to_path_buf(),
                    source,
                })?;
                Target::File { path: path.to_path_buf(), writer: BufWriter::new(file) }
            }
        };
        Ok(Emitter { format, target })
    }

    pub fn emit(&mut self, record: &Record) -> Result<(), CmdError> {
        let line = match self.format {
            Format::Jsonl => serde_json::to_string(record)
                .expect("records always serialize"),
            Format::Human => human_line(record),
        };
        self.write_line(&line)
    }

    fn write_line(&mut self, line: &str) -> Result<(), CmdError> {
        match &mut self.target {
            Target::Stdout(out) => writeln!(out, "{line}").map_err(|source| CmdError::Io {
                path: "<stdout>".into(),
                source,
            }),
            Target::File { path, writer } => {
                writeln!(writer, "{line}").map_err(|source| CmdError::Io {
                    path: path.clone(),
                    source,
                })
            }
        }
    }

    pub fn finish(mut self) -> Result<(), CmdError> {
        match &mut self.target {
            Target::Stdout(out) => out.flush().map_err(|source| CmdError::Io {
                path: "<stdout>".into(),
                source,
            }),
            Target::File { path, writer } => writer.flush().map_err(|source| CmdError::Io {
                path: path.clone(),
                source,
            }),
        }
    }
}
