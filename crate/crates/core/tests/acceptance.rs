//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

use choosability::suites::{criterion_title, run_criterion};

fn main() -> ExitCode {
    // `cargo test -- <filter>` forwards its arguments; a numeric one selects criteria.
    let picked: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u32> = if picked.is_empty() { (1..=11).collect() } else { picked };
    let mut failed = 0;
    for id in ids {
        eprintln!("criterion {id}: running ({})", criterion_title(id));
        let r = run_criterion(id);
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {id}: {verdict} {} ({} instances, {} ms)", r.title, r.instances, r.millis);
        for f in &r.failures {
            println!("    {f}");
        }
        if r.failure_count > r.failures.len() as u64 {
            println!("    ... {} failures in total", r.failure_count);
        }
        if !r.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
