//! Randomized verification suites run from library code.
//!
//!     cargo run --release --example suites [suite-id ...]

use kframes::algebra::Tolerance;
use kframes::harness::suites::{run_suite, suites, RunOptions};

fn main() -> kframes::Result<()> {
    let ids: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<&str> = if ids.is_empty() {
        vec!["douglas", "kframe-bounds", "sum-range-sqrt", "restricted-kframe"]
    } else {
        ids.iter().map(String::as_str).collect()
    };
    let opts = RunOptions {
        seed: 1,
        trials: None,
        psd_audit: false,
    };
    println!("{} suites available", suites().len());
    for id in ids {
        let r = run_suite(id, &opts, &Tolerance::default())?;
        println!(
            "{:<22} satisfying {:>3}/{}  violations {:>2}  {}",
            r.suite,
            r.satisfying,
            r.trials,
            r.violations,
            if r.passed { "pass" } else { "FAIL" }
        );
        if let Some(v) = r.first_violation {
            println!("    trial {}: {}", v.trial, v.message);
        }
    }
    Ok(())
}
