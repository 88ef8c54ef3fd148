//! Images of K-frames under operators, including two statements that fail as written.
//!
//!     cargo run --example operator_images

use kframes::algebra::{real_matrix, ModuleElement, ModuleSpace, Operator, Tolerance};
use kframes::frames::FrameFamily;
use kframes::transforms::{coisometry_image, mframe_from_kframe, restricted_kframe, TransformReport};

fn show(label: &str, r: &TransformReport) {
    println!("{label}");
    for h in &r.hypothesis_log {
        println!("  hypothesis {:<32} {}", h.name, h.holds);
    }
    for h in &r.proof_conditions {
        println!("  proof step {:<32} {}", h.name, h.holds);
    }
    println!("  conclusion holds: {}", r.conclusion_holds);
    if let Some(alt) = &r.alternative {
        println!("  under `{}`: {}", alt.reading, alt.holds);
    }
}

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();

    // M-frames from K-frames: M = LK for any L keeps the K-frame property.
    let c2 = ModuleSpace::of(1, 2)?;
    let f = FrameFamily::new(c2, vec![ModuleElement::scalar_row(&[1.0, 0.0]), ModuleElement::scalar_row(&[1.0, 1.0])])?;
    let k = Operator::on(c2, real_matrix(2, 2, &[1.0, 2.0, 0.0, 1.0]))?;
    let l = Operator::on(c2, real_matrix(2, 2, &[0.0, 1.0, 3.0, 0.0]))?;
    show("M = LK", &mframe_from_kframe(&f, &k, &l.compose(&k)?, &tol)?);

    // Nilpotent T = K with T e₂ = e₁ and F = {e₁}: the image is not a K-frame for R(T)
    // when K acts on all of E, but it is one for K compressed to R(T).
    let e1 = FrameFamily::new(c2, vec![ModuleElement::scalar_row(&[1.0, 0.0])])?;
    let n = Operator::on(c2, real_matrix(2, 2, &[0.0, 0.0, 1.0, 0.0]))?;
    show("restricted K-frame, nilpotent T = K", &restricted_kframe(&e1, &n, &n, &tol)?);

    // Co-isometry counterexample on C³: K e₂ = e₁ and a quarter turn in the (e₁, e₃) plane.
    let c3 = ModuleSpace::of(1, 3)?;
    let f3 = FrameFamily::new(c3, vec![ModuleElement::scalar_row(&[1.0, 0.0, 0.0])])?;
    let k3 = Operator::on(c3, real_matrix(3, 3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]))?;
    let rot = Operator::on(c3, real_matrix(3, 3, &[0.0, 0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0]))?;
    show("co-isometry image", &coisometry_image(&f3, &k3, &rot, &tol)?);
    Ok(())
}
