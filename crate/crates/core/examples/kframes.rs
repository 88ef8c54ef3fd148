//! K-frames: optimal lower bound from the pencil against bisection, the synthesis
//! operator test and atomic coefficients.
//!
//!     cargo run --example kframes

use kframes::algebra::{ModuleSpace, Tolerance};
use kframes::frames::{
    atomic_coefficients, atomic_system_check, frame_check, kframe_bound_bisection_oracle, kframe_check,
    kframe_via_synthesis,
};
use kframes::harness::generate::{random_generic_kframe_pair, random_kframe};
use kframes::harness::rng::{random_element, trial_rng};

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let space = ModuleSpace::of(2, 4)?;

    // A family spanning a proper submodule, with R(K) inside that submodule.
    let mut rng = trial_rng(7, 0);
    let (f, k) = random_kframe(&mut rng, space, 3);
    println!("family of {} elements; is a frame: {}", f.len(), frame_check(&f, &tol)?.is_some());
    match kframe_check(&f, &k, &tol)? {
        Some(b) => {
            println!("K-frame with D = {:.6}", b.upper);
            if let Some(c) = b.lower {
                let bisect = kframe_bound_bisection_oracle(&f, &k, &tol)?;
                println!("C_opt = {c:.9} (pencil), {bisect:.9} (bisection)");
            }
        }
        None => println!("not a K-frame"),
    }
    let via_l = kframe_via_synthesis(&f, &k, &tol)?;
    println!("R(K) ⊆ R(L) for the synthesis operator L: {}", via_l.verdict);

    let atomic = atomic_system_check(&f, &k, &tol)?;
    println!(
        "atomic system: {}, norm inequality: {}, factorization: {}",
        atomic.atomic, atomic.norm_inequality, atomic.factorization
    );
    let x = random_element(&mut rng, space);
    let dec = atomic_coefficients(&f, &k, &x, &tol)?;
    println!(
        "Kx = Σ a_j x_j with residual {:.2e}; Σ a_j a_j* ≼ {:.4}<x,x> certified: {}",
        dec.synthesis_residual, dec.bound, dec.bound_certified
    );

    // An unrelated K usually leaves the span of a deficient family.
    let mut rng = trial_rng(7, 1);
    let (g, k2) = random_generic_kframe_pair(&mut rng, space, 2);
    println!(
        "unrelated pair: K-frame {}, atomic {}",
        kframe_check(&g, &k2, &tol)?.is_some(),
        atomic_system_check(&g, &k2, &tol)?.atomic
    );
    Ok(())
}
