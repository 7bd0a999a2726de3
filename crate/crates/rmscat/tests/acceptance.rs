//! The full acceptance suite: one line per criterion, all must pass.

use std::process::ExitCode;

use rmscat::validate::run_suite;
use rmscat::Preset;

fn main() -> ExitCode {
    let outcomes = run_suite(Preset::Full);
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed == 0 && outcomes.len() == 11 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
