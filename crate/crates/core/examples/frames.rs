//! Frame bounds, the canonical dual and reconstruction for a random frame of A^n.
//!
//!     cargo run --example frames

use kframes::algebra::{ModuleSpace, Tolerance};
use kframes::frames::{bessel_check, canonical_dual, frame_check, reconstruct};
use kframes::harness::generate::random_frame;
use kframes::harness::rng::{random_element, trial_rng};

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let mut rng = trial_rng(2024, 0);
    let space = ModuleSpace::of(2, 3)?;
    let f = random_frame(&mut rng, space, 5);

    let bessel = bessel_check(&f, &tol)?;
    let bounds = frame_check(&f, &tol)?.expect("generated family is a frame");
    println!("{} elements in A^{} over M_{}(C)", f.len(), space.n(), space.k());
    println!("optimal Bessel bound D = {:.6}", bessel.upper);
    println!("optimal frame bounds C = {:.6}, D = {:.6}", bounds.lower.unwrap(), bounds.upper);

    let dual = canonical_dual(&f, &tol)?;
    let dual_bounds = frame_check(&dual, &tol)?.expect("dual of a frame is a frame");
    println!(
        "canonical dual bounds {:.6}, {:.6} (expected 1/D = {:.6}, 1/C = {:.6})",
        dual_bounds.lower.unwrap(),
        dual_bounds.upper,
        1.0 / bounds.upper,
        1.0 / bounds.lower.unwrap()
    );

    for i in 0..3 {
        let x = random_element(&mut rng, space);
        let r = reconstruct(&f, &x, &tol)?;
        println!(
            "x_{i}: relative reconstruction error {:.2e}, dual side {:.2e}",
            r.relative_error, r.dual_side_relative_error
        );
    }
    Ok(())
}
