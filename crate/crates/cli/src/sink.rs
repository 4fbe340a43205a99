use std::path::PathBuf;
use std::time::{Duration, Instant};

use amicable_core::{Checkpoint, ProgressSink};

use crate::checkpoint_io;

/// Candidates between checkpoint writes.
pub const PERSIST_EVERY_CANDIDATES: u64 = 1 << 16;
/// Longest stretch without a checkpoint write.
pub const PERSIST_MAX_INTERVAL: Duration = Duration::from_secs(10);

/// Progress sink for CLI runs: tracks wall time for the current segment and
/// persists the checkpoint periodically when a path is configured. A failed
/// write aborts the run and is reported through `error`.
pub struct FileSink {
    path: Option<PathBuf>,
    started: Instant,
    last_persist: Instant,
    candidates_since_persist: u64,
    pub error: Option<(PathBuf, std::io::Error)>,
}

impl FileSink {
    pub fn new(path: Option<PathBuf>) -> Self {
        let now = Instant::now();
        FileSink {
            path,
            started: now,
            last_persist: now,
            candidates_since_persist: 0,
            error: None,
        }
    }
}

impl ProgressSink for FileSink {
    fn on_progress(&mut self, checkpoint: &Checkpoint) -> bool {
        self.candidates_since_persist += 1;
        let Some(path) = &self.path else { return true };
        if self.candidates_since_persist < PERSIST_EVERY_CANDIDATES
            && self.last_persist.elapsed() < PERSIST_MAX_INTERVAL
        {
            return true;
        }
        match checkpoint_io::save(path, checkpoint) {
            Ok(()) => {
                self.candidates_since_persist = 0;
                self.last_persist = Instant::now();
                true
            }
            Err(e) => {
                self.error = Some((path.clone(), e));
                false
            }
        }
    }

    fn elapsed_millis(&self) -> u64 {
        self.started.elapsed().as_millis() as u64
    }
}
