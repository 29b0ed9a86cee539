//! Runs every acceptance criterion with the default seed and prints one
//! line per criterion. Exits nonzero if any criterion fails.

use pcml_core::suite::{run_criterion, CRITERIA, DEFAULT_SEED};

fn main() {
    println!("SEED={DEFAULT_SEED}");
    let mut failed = 0;
    for i in 1..=CRITERIA.len() {
        let r = run_criterion(i, DEFAULT_SEED);
        println!("{}", r.line());
        failed += usize::from(!r.passed);
    }
    println!(
        "ACCEPTANCE={} FAILED={failed}",
        if failed == 0 { "PASS" } else { "FAIL" }
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
