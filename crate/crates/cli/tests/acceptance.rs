//! The ten primary acceptance criteria. Prints one `PASS`/`FAIL` line per
//! criterion and exits non-zero if any fails.

use std::process::ExitCode;

use robsub_cli::suites::{self, CriterionResult};
use robsub_core::rng::DEFAULT_SEED;

/// Runs the built `robsub` binary so exit codes come from the real process.
fn binary_runner(args: &[String]) -> Result<u8, String> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_robsub"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    out.status.code().map(|c| c as u8).ok_or_else(|| "terminated by signal".to_string())
}

fn main() -> ExitCode {
    // `cargo test -- <filter>` passes the filter through; run only matching ids.
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: Vec<(&str, Box<dyn Fn() -> CriterionResult>)> = vec![
        ("C1", Box::new(suites::maximal_graphs)),
        ("C2", Box::new(|| suites::maximal_rgraphs(DEFAULT_SEED))),
        ("C3", Box::new(|| suites::rainbow_free_hypercubes(DEFAULT_SEED))),
        ("C4", Box::new(|| suites::cycle_topology(DEFAULT_SEED))),
        ("C5", Box::new(|| suites::face_degrees(DEFAULT_SEED))),
        ("C6", Box::new(|| suites::face_set_paths(DEFAULT_SEED))),
        ("C7", Box::new(|| suites::monte_carlo(DEFAULT_SEED))),
        ("C8", Box::new(|| suites::constructions(DEFAULT_SEED))),
        ("C9", Box::new(|| suites::oracles(DEFAULT_SEED))),
        ("C10", Box::new(|| suites::determinism(DEFAULT_SEED, &binary_runner))),
    ];
    let mut failed = 0;
    let mut ran = 0;
    for (id, run) in &criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let r = run();
        println!("{}", r.line());
        ran += 1;
        if !r.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {ran} criteria passed", ran - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
