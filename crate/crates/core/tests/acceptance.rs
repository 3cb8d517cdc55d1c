//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;

use dmv_core::config::Config;
use dmv_core::verify::{run_criterion, CriterionResult};

fn main() -> ExitCode {
    let config = Config::default();
    let results: Vec<CriterionResult> = (1..=10)
        .map(|id| {
            let r = run_criterion(id, &config);
            println!("{} ({:.2}s)", r.line(), r.seconds);
            r
        })
        .collect();
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    if failed.is_empty() {
        println!("acceptance: 10 of 10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
