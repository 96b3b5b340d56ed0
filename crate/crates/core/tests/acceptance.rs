//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Set `POLYINEQ_QUICK=1` for reduced sizes.

use std::process::ExitCode;
use std::time::Instant;

use polyineq::lab::selftest::{run, Scale, CRITERIA};

fn main() -> ExitCode {
    let scale = if std::env::var_os("POLYINEQ_QUICK").is_some() { Scale::Quick } else { Scale::Full };
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (number, _) in CRITERIA {
        if !only.is_empty() && !only.contains(&number) {
            continue;
        }
        let start = Instant::now();
        let outcome = run(number, scale).expect("listed criterion");
        println!("{outcome} [{:.1}s]", start.elapsed().as_secs_f64());
        if !outcome.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
