//! Plain-text checkpoint files.
//!
//! The format is line oriented and fully canonical: a schema header, ten
//! fixed `key value` lines in a fixed order, then one line per unresolved
//! candidate and one per recorded pair. Canonical form makes the round trip
//! exact in both directions: parsing a saved checkpoint yields an equal
//! checkpoint, and re-saving a parsed file reproduces it byte for byte.
//!
//! Saves go through a temporary file in the target directory followed by a
//! rename, so an interrupted save never clobbers the previous checkpoint.

use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use amicable_core::{
    Checkpoint, Error, MixedParityVerdict, PairVerdict, ParityClass, SearchMode, SearchShard,
    UnresolvedCandidate,
};

pub const SCHEMA_HEADER: &str = "amicable-checkpoint/1";

#[derive(Debug)]
pub enum CheckpointIoError {
    Io(io::Error),
    Parse { line: usize, message: String },
}

impl fmt::Display for CheckpointIoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointIoError::Io(e) => write!(f, "{e}"),
            CheckpointIoError::Parse { line, message } => {
                write!(f, "checkpoint line {line}: {message}")
            }
        }
    }
}

impl std::error::Error for CheckpointIoError {}

impl From<io::Error> for CheckpointIoError {
    fn from(e: io::Error) -> Self {
        CheckpointIoError::Io(e)
    }
}

fn mode_token(mode: SearchMode) -> &'static str {
    match mode {
        SearchMode::Constrained => "constrained",
        SearchMode::Exhaustive => "exhaustive",
    }
}

/// Compact token for an unresolved-candidate reason. Only failures that the
/// search maps to `Unresolved` appear here, so the token set is closed.
fn reason_token(reason: &Error) -> String {
    match reason {
        Error::Overflow(what) => format!("overflow:{}", what.replace(' ', "_")),
        Error::HardCofactor { cofactor, spf_limit } => {
            format!("hard_cofactor:{cofactor}:{spf_limit}")
        }
        Error::OutOfRange { value, bound } => format!("out_of_range:{value}:{bound}"),
        other => format!("other:{other}"),
    }
}

fn overflow_label(token: &str) -> Option<&'static str> {
    const LABELS: [&str; 8] = [
        "sigma",
        "factorization value",
        "power sum",
        "prime power",
        "case2_sum",
        "case3_sum",
        "even aliquot closed form",
        "divisor count recurrence",
    ];
    LABELS
        .iter()
        .find(|l| l.replace(' ', "_") == token)
        .copied()
}

fn parse_reason(token: &str, line: usize) -> Result<Error, CheckpointIoError> {
    let parse_err = |message: String| CheckpointIoError::Parse { line, message };
    let mut parts = token.split(':');
    let kind = parts.next().unwrap_or_default();
    match kind {
        "overflow" => {
            let label = parts
                .next()
                .and_then(overflow_label)
                .ok_or_else(|| parse_err(format!("unknown overflow label in {token:?}")))?;
            Ok(Error::Overflow(label))
        }
        "hard_cofactor" => {
            let cofactor = parse_number(parts.next(), line, "cofactor")?;
            let spf_limit = parse_number(parts.next(), line, "spf_limit")?;
            Ok(Error::HardCofactor { cofactor, spf_limit })
        }
        "out_of_range" => {
            let value = parse_number(parts.next(), line, "value")?;
            let bound = parse_number(parts.next(), line, "bound")?;
            Ok(Error::OutOfRange { value, bound })
        }
        _ => Err(parse_err(format!("unknown reason {token:?}"))),
    }
}

fn parse_number<T: core::str::FromStr>(
    text: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, CheckpointIoError> {
    text.and_then(|t| t.parse().ok())
        .ok_or_else(|| CheckpointIoError::Parse {
            line,
            message: format!("expected numeric {what}"),
        })
}

fn pair_line(p: &PairVerdict) -> String {
    let conditions = match &p.conditions {
        None => "-".to_string(),
        Some(c) => format!(
            "{},{},{}",
            c.n_is_perfect_square, c.m_has_odd_prime_factor, c.m_odd_part_is_square
        ),
    };
    format!(
        "pair m={} n={} s_m={} s_n={} class={} amicable={} conditions={}",
        p.m,
        p.n,
        p.s_m,
        p.s_n,
        p.class.as_str(),
        p.is_amicable,
        conditions
    )
}

/// Renders a checkpoint in canonical text form.
pub fn to_text(cp: &Checkpoint) -> String {
    let mut out = String::new();
    out.push_str(SCHEMA_HEADER);
    out.push('\n');
    let mut line = |key: &str, value: String| {
        out.push_str(key);
        out.push(' ');
        out.push_str(&value);
        out.push('\n');
    };
    line("mode", mode_token(cp.mode).to_string());
    line("shard_index", cp.shard.shard_index().to_string());
    line("shard_count", cp.shard.shard_count().to_string());
    line("limit", cp.shard.limit().to_string());
    line(
        "last_completed_candidate",
        cp.last_completed_candidate.to_string(),
    );
    line("candidates_examined", cp.candidates_examined.to_string());
    line("wall_millis", cp.wall_millis.to_string());
    line("complete", cp.complete.to_string());
    line("unresolved_count", cp.unresolved.len().to_string());
    line("pairs_count", cp.pairs_found.len().to_string());
    for u in &cp.unresolved {
        line(
            "unresolved",
            format!("candidate={} reason={}", u.candidate, reason_token(&u.reason)),
        );
    }
    for p in &cp.pairs_found {
        out.push_str(&pair_line(p));
        out.push('\n');
    }
    out
}

struct LineReader<'a> {
    lines: std::str::Lines<'a>,
    lineno: usize,
}

impl<'a> LineReader<'a> {
    fn next_line(&mut self) -> Result<&'a str, CheckpointIoError> {
        self.lineno += 1;
        self.lines.next().ok_or(CheckpointIoError::Parse {
            line: self.lineno,
            message: "unexpected end of file".to_string(),
        })
    }

    fn expect_value(&mut self, key: &str) -> Result<&'a str, CheckpointIoError> {
        let line = self.next_line()?;
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v),
            _ => Err(CheckpointIoError::Parse {
                line: self.lineno,
                message: format!("expected `{key} <value>`, found {line:?}"),
            }),
        }
    }

    fn expect_number<T: core::str::FromStr>(&mut self, key: &str) -> Result<T, CheckpointIoError> {
        let v = self.expect_value(key)?;
        v.parse().map_err(|_| CheckpointIoError::Parse {
            line: self.lineno,
            message: format!("`{key}` is not a valid number: {v:?}"),
        })
    }

    fn expect_bool(&mut self, key: &str) -> Result<bool, CheckpointIoError> {
        let v = self.expect_value(key)?;
        match v {
            "true" => Ok(true),
            "false" => Ok(false),
            _ => Err(CheckpointIoError::Parse {
                line: self.lineno,
                message: format!("`{key}` must be true or false, found {v:?}"),
            }),
        }
    }

    fn fail<T>(&self, message: String) -> Result<T, CheckpointIoError> {
        Err(CheckpointIoError::Parse { line: self.lineno, message })
    }
}

fn field<'a>(
    tokens: &mut impl Iterator<Item = &'a str>,
    key: &str,
    r: &LineReader<'_>,
) -> Result<&'a str, CheckpointIoError> {
    match tokens.next().and_then(|t| t.split_once('=')) {
        Some((k, v)) if k == key => Ok(v),
        other => r.fail(format!("expected `{key}=...`, found {other:?}")),
    }
}

fn parse_bool(v: &str, r: &LineReader<'_>) -> Result<bool, CheckpointIoError> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => r.fail(format!("expected boolean, found {v:?}")),
    }
}

/// Parses canonical checkpoint text.
pub fn from_text(text: &str) -> Result<Checkpoint, CheckpointIoError> {
    let mut r = LineReader { lines: text.lines(), lineno: 0 };
    let header = r.next_line()?;
    if header != SCHEMA_HEADER {
        return r.fail(format!("unsupported schema {header:?}, expected {SCHEMA_HEADER:?}"));
    }
    let mode = match r.expect_value("mode")? {
        "constrained" => SearchMode::Constrained,
        "exhaustive" => SearchMode::Exhaustive,
        other => return r.fail(format!("unknown mode {other:?}")),
    };
    let shard_index: u32 = r.expect_number("shard_index")?;
    let shard_count: u32 = r.expect_number("shard_count")?;
    let limit: u64 = r.expect_number("limit")?;
    let shard = match SearchShard::new(shard_index, shard_count, limit) {
        Ok(s) => s,
        Err(e) => return r.fail(format!("invalid shard: {e}")),
    };
    let last_completed_candidate = r.expect_number("last_completed_candidate")?;
    let candidates_examined = r.expect_number("candidates_examined")?;
    let wall_millis = r.expect_number("wall_millis")?;
    let complete = r.expect_bool("complete")?;
    let unresolved_count: u64 = r.expect_number("unresolved_count")?;
    let pairs_count: u64 = r.expect_number("pairs_count")?;

    let mut unresolved = Vec::with_capacity(unresolved_count as usize);
    for _ in 0..unresolved_count {
        let value = r.expect_value("unresolved")?;
        let mut tokens = value.split(' ');
        let candidate = field(&mut tokens, "candidate", &r)?;
        let candidate: u64 = candidate
            .parse()
            .map_err(|_| CheckpointIoError::Parse {
                line: r.lineno,
                message: format!("candidate is not a number: {candidate:?}"),
            })?;
        let reason = parse_reason(field(&mut tokens, "reason", &r)?, r.lineno)?;
        unresolved.push(UnresolvedCandidate { candidate, reason });
    }

    let mut pairs_found = Vec::with_capacity(pairs_count as usize);
    for _ in 0..pairs_count {
        let value = r.expect_value("pair")?;
        let mut tokens = value.split(' ');
        let m: u64 = parse_number(Some(field(&mut tokens, "m", &r)?), r.lineno, "m")?;
        let n: u64 = parse_number(Some(field(&mut tokens, "n", &r)?), r.lineno, "n")?;
        let s_m: u64 = parse_number(Some(field(&mut tokens, "s_m", &r)?), r.lineno, "s_m")?;
        let s_n: u64 = parse_number(Some(field(&mut tokens, "s_n", &r)?), r.lineno, "s_n")?;
        let class = match field(&mut tokens, "class", &r)? {
            "even_even" => ParityClass::EvenEven,
            "odd_odd" => ParityClass::OddOdd,
            "mixed" => ParityClass::Mixed,
            other => return r.fail(format!("unknown parity class {other:?}")),
        };
        let is_amicable = parse_bool(field(&mut tokens, "amicable", &r)?, &r)?;
        let conditions = match field(&mut tokens, "conditions", &r)? {
            "-" => None,
            triple => {
                let mut flags = triple.split(',');
                let mut next_flag = |what: &str| -> Result<bool, CheckpointIoError> {
                    match flags.next() {
                        Some(v) => parse_bool(v, &r),
                        None => r.fail(format!("missing condition flag {what}")),
                    }
                };
                Some(MixedParityVerdict {
                    n_is_perfect_square: next_flag("n_is_perfect_square")?,
                    m_has_odd_prime_factor: next_flag("m_has_odd_prime_factor")?,
                    m_odd_part_is_square: next_flag("m_odd_part_is_square")?,
                })
            }
        };
        pairs_found.push(PairVerdict { m, n, s_m, s_n, is_amicable, class, conditions });
    }

    if let Ok(extra) = r.next_line() {
        return r.fail(format!("trailing content {extra:?}"));
    }

    Ok(Checkpoint {
        mode,
        shard,
        last_completed_candidate,
        candidates_examined,
        pairs_found,
        unresolved,
        wall_millis,
        complete,
    })
}

/// Writes the checkpoint atomically: temporary file, then rename.
pub fn save(path: &Path, cp: &Checkpoint) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::write(&tmp, to_text(cp))?;
    fs::rename(&tmp, path)
}

pub fn load(path: &Path) -> Result<Checkpoint, CheckpointIoError> {
    let text = fs::read_to_string(path)?;
    from_text(&text)
}
