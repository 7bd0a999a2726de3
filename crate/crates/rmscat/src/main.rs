use std::process::ExitCode;

use clap::Parser;
use rmscat::{execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // clap reports --help and --version as errors too
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(cli, &mut std::io::stderr()) {
        Ok(status) => ExitCode::from(status.code() as u8),
        Err(e) => {
            eprintln!("rmscat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
