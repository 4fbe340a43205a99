use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = amicable_cli::cli::Cli::parse();
    match amicable_cli::dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if err.is_broken_pipe() {
                return ExitCode::SUCCESS;
            }
            eprintln!("amicable: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
