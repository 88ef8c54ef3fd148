//! Sums of K-frames whose synthesis operators have positive cross terms.
//!
//!     cargo run --example kframe_sum

use kframes::algebra::{ModuleSpace, Tolerance};
use kframes::douglas::kframe_sum;
use kframes::harness::generate::sum_pair;
use kframes::harness::rng::trial_rng;

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let space = ModuleSpace::of(1, 4)?;
    for trial in 0..4 {
        let mut rng = trial_rng(11, trial);
        let (f, g, k) = sum_pair(&mut rng, space, 5);
        let r = kframe_sum(&f, &g, &k, &tol)?;
        let hyps: Vec<String> = r.hypotheses.iter().map(|h| format!("{}={}", h.name, h.holds)).collect();
        println!("trial {trial}: {}", hyps.join(", "));
        match (r.bounds.and_then(|b| b.lower), r.theorem_lower_bound) {
            (Some(c), Some(bound)) => println!("  sum has C_opt = {c:.6} ≥ 1/λ = {bound:.6}: {}", r.conclusion),
            _ => println!("  K = 0, nothing to bound; conclusion {}", r.conclusion),
        }
    }
    Ok(())
}
