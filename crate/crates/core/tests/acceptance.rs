//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Lines go straight to stderr so they show up even when the test passes and libtest
//! captures output. All criteria use seed 0 and the default tolerances.

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use kframes::algebra::Tolerance;
use kframes::harness::suites::{run_all, RunOptions, SuiteReport, SuiteSummary};

const SEED: u64 = 0;

struct Timed {
    summary: SuiteSummary,
    elapsed: Duration,
}

fn timed_run(psd_audit: bool) -> Timed {
    let opts = RunOptions {
        seed: SEED,
        trials: None,
        psd_audit,
    };
    let start = Instant::now();
    let summary = run_all(&opts, &Tolerance::default());
    Timed {
        summary,
        elapsed: start.elapsed(),
    }
}

fn plain() -> &'static Timed {
    static RUN: OnceLock<Timed> = OnceLock::new();
    RUN.get_or_init(|| timed_run(false))
}

fn audited() -> &'static Timed {
    static RUN: OnceLock<Timed> = OnceLock::new();
    RUN.get_or_init(|| timed_run(true))
}

fn suite(id: &str) -> &'static SuiteReport {
    plain()
        .summary
        .suites
        .iter()
        .find(|r| r.suite == id)
        .unwrap_or_else(|| panic!("suite {id} missing"))
}

fn describe(r: &SuiteReport) -> String {
    let mut s = format!(
        "{} {}/{} satisfying, {} violations, max residual {:.2e}",
        r.suite, r.satisfying, r.trials, r.violations, r.max_residual
    );
    if let Some(v) = &r.first_violation {
        s.push_str(&format!(" [first: trial {} {}]", v.trial, v.message));
    }
    s
}

fn report(n: usize, name: &str, pass: bool, detail: &str) {
    let line = format!(
        "\nacceptance criterion {n:>2} {name:<28} {}  {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

fn suites_pass(ids: &[&str]) -> (bool, String) {
    let reports: Vec<&SuiteReport> = ids.iter().map(|id| suite(id)).collect();
    let pass = reports.iter().all(|r| r.passed);
    let detail = reports.iter().map(|r| describe(r)).collect::<Vec<_>>().join("; ");
    (pass, detail)
}

#[test]
fn criterion_01_douglas_equivalence() {
    let r = suite("douglas");
    let pass = r.passed && r.trials == 500 && r.max_residual <= 1e-8 && r.wall_time <= Duration::from_secs(10);
    report(
        1,
        "douglas-equivalence",
        pass,
        &format!("{} in {:.2}s", describe(r), r.wall_time.as_secs_f64()),
    );
}

#[test]
fn criterion_02_kframe_characterization() {
    let (mut pass, detail) = suites_pass(&["kframe-bounds", "kframe-synthesis", "atomic-system"]);
    // Positives and negatives both present.
    for id in ["kframe-bounds", "atomic-system"] {
        let r = suite(id);
        pass &= r.satisfying > 0 && r.satisfying < r.trials;
    }
    report(2, "kframe-characterization", pass, &detail);
}

#[test]
fn criterion_03_reconstruction() {
    let r = suite("reconstruction");
    let pass = r.passed && r.trials == 100 && r.max_residual <= 1e-9;
    report(3, "reconstruction", pass, &describe(r));
}

#[test]
fn criterion_04_sqrt_range_identity() {
    let r = suite("sum-range-sqrt");
    let pass = r.passed && r.trials == 500 && r.max_residual <= 1e-8;
    report(4, "sum-range-sqrt", pass, &describe(r));
}

#[test]
fn criterion_05_two_term_douglas() {
    let r = suite("two-term-douglas");
    let pass = r.passed && r.trials == 300 && r.max_residual <= 1e-8;
    report(5, "two-term-douglas", pass, &describe(r));
}

#[test]
fn criterion_06_kframe_sums() {
    let r = suite("kframe-sum");
    let pass = r.passed && r.satisfying == 200;
    report(6, "kframe-sum", pass, &describe(r));
}

#[test]
fn criterion_07_operator_images() {
    let ids = [
        "bessel-image",
        "mframe",
        "surjectivity",
        "restricted-kframe",
        "coisometry-image",
        "surjectivity-equivalence",
        "invertibility",
    ];
    let (mut pass, detail) = suites_pass(&ids);
    for id in ids {
        let r = suite(id);
        pass &= r.trials >= 200 && r.violations == 0 && r.satisfying >= 50;
    }
    report(7, "operator-image-suites", pass, &detail);
}

#[test]
fn criterion_08_unitary_systems() {
    let r = suite("unitary-generator");
    let pass = r.passed && r.trials == 200;
    report(8, "unitary-generator", pass, &describe(r));
}

#[test]
fn criterion_09_psd_oracle_agreement() {
    let run = audited();
    let mut decisions = 0;
    let mut disagreements = 0;
    let mut first = None;
    for r in &run.summary.suites {
        let a = r.psd_audit.as_ref().expect("audit requested");
        decisions += a.decisions;
        disagreements += a.disagreements;
        if first.is_none() {
            first = a.first_disagreement.as_ref().map(|d| format!("{}: {d:?}", r.suite));
        }
    }
    let pass = decisions > 0 && disagreements == 0;
    let mut detail = format!("{decisions} verdicts replayed, {disagreements} disagreements");
    if let Some(f) = first {
        detail.push_str(&format!(" [first: {f}]"));
    }
    report(9, "psd-oracle-agreement", pass, &detail);
}

#[test]
fn criterion_10_full_suite() {
    let first = plain();
    let again = timed_run(false);
    let a = serde_json::to_string(&first.summary).expect("serializable");
    let b = serde_json::to_string(&again.summary).expect("serializable");
    let reproducible = a == b;
    let fast = first.elapsed < Duration::from_secs(60);
    let clean = first.summary.violations == 0;
    let failing: Vec<&str> = first.summary.suites.iter().filter(|r| !r.passed).map(|r| r.suite.as_str()).collect();
    let detail = format!(
        "{:.2}s, {} violations, byte-reproducible {reproducible}, failing suites {failing:?}",
        first.elapsed.as_secs_f64(),
        first.summary.violations
    );
    report(10, "suite-all", fast && clean && reproducible && first.summary.passed, &detail);
}
