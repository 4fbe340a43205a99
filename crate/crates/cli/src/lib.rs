//! Command-line frontend for the amicable pair search: argument parsing,
//! record formatting, checkpoint files, and the four subcommands.

pub mod checkpoint_io;
pub mod cli;
pub mod errors;
pub mod records;
pub mod report_cmd;
pub mod scan_cmd;
pub mod search_cmd;
pub mod sink;
pub mod verify;

use cli::{Cli, Command};
use errors::CmdError;

pub fn dispatch(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Search(args) => search_cmd::run(args),
        Command::Scan(args) => scan_cmd::run(args),
        Command::Report(args) => report_cmd::run(args),
    }
}
