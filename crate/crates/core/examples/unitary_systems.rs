//! Cyclic shift systems: wandering vectors, the generator A with Aψ = η, and the way back.
//!
//!     cargo run --example unitary_systems

use kframes::algebra::{ModuleSpace, Tolerance};
use kframes::harness::generate::unitary_vectors;
use kframes::harness::rng::trial_rng;
use kframes::unitary::{circulant_deviation, cyclic_shift_system, generator_from_vector, is_wandering, vector_from_generator};

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let system = cyclic_shift_system(6, 2)?;
    println!("{} block shifts on A^6 over M_2(C)", system.len());
    let space: ModuleSpace = system.space();
    let psi = space.basis_element(0);
    let w = is_wandering(&system, &psi, &tol)?;
    println!("e₁ wandering: {} (Gram residual {:.1e})", w.holds, w.gram_residual);

    for trial in 0..3 {
        let mut rng = trial_rng(5, trial);
        let (psi, eta, k) = unitary_vectors(&mut rng, &system);
        let g = generator_from_vector(&system, &psi, &eta, &k, &tol)?;
        println!(
            "trial {trial}: ‖Aψ - η‖ = {:.1e}, circulant deviation {:.1e}, R(K) ⊆ R(A) {}, η a K-frame vector {}",
            g.vector_residual,
            circulant_deviation(&g.a),
            g.range_inclusion_holds,
            g.eta_bounds.is_some()
        );
        match vector_from_generator(&system, &psi, &g.a, &k, &tol) {
            Ok((back, bounds)) => println!(
                "  back from A: ‖η′ - η‖ = {:.1e}, bounds {:?}",
                back.sub(&eta)?.norm(),
                bounds.map(|b| (b.lower, b.upper))
            ),
            Err(e) => println!("  back from A refused: {e}"),
        }
    }
    Ok(())
}
