//! `report`: renders a saved checkpoint as the same records its originating
//! run would emit, with timing taken from the checkpoint itself.

use std::io;

use crate::checkpoint_io::{self, CheckpointIoError};
use crate::cli::ReportArgs;
use crate::errors::CmdError;
use crate::records::{self, Emitter, PairRecord, Record, TimingRecord};

pub fn run(args: ReportArgs) -> Result<(), CmdError> {
    let cp = match checkpoint_io::load(&args.checkpoint) {
        Ok(cp) => cp,
        Err(CheckpointIoError::Io(source)) => {
            return Err(CmdError::Io { path: args.checkpoint, source });
        }
        Err(parse @ CheckpointIoError::Parse { .. }) => {
            return Err(CmdError::Io {
                path: args.checkpoint,
                source: io::Error::new(io::ErrorKind::InvalidData, parse.to_string()),
            });
        }
    };
    let mut emitter = Emitter::new(args.output.output.as_deref(), args.output.format)?;
    for pair in &cp.pairs_found {
        emitter.emit(&Record::Pair(PairRecord::from(pair)))?;
    }
    emitter.emit(&Record::Summary(records::summary_from_checkpoint("report", &cp)))?;
    emitter.emit(&Record::Timing(TimingRecord {
        wall_seconds: cp.wall_millis as f64 / 1_000.0,
    }))?;
    emitter.finish()
}
