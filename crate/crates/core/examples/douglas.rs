//! Range inclusion, majorization and factorization for operator pairs, the range of a
//! sum of operators, and the two-term factorization problem.
//!
//!     cargo run --example douglas

use kframes::algebra::{ModuleSpace, Operator, Tolerance};
use kframes::douglas::{douglas_factorize, sum_range_sqrt_check, two_term_douglas};
use kframes::harness::rng::{operator_of_rank, trial_rng};

fn main() -> kframes::Result<()> {
    let tol = Tolerance::default();
    let mut rng = trial_rng(42, 0);
    let e = ModuleSpace::of(2, 3)?;
    let f = ModuleSpace::of(2, 2)?;

    // T′ = T G factors through T by construction.
    let t = operator_of_rank(&mut rng, e, f, 3);
    let g = operator_of_rank(&mut rng, e, e, 6);
    let tp = t.compose(&g)?;
    let r = douglas_factorize(&tp, &t, &tol)?;
    println!("T′ = TG: verdicts {:?}", r.condition_verdicts);
    println!(
        "  ‖TD - T′‖ = {:.2e}, λ_min = ‖D‖² = {:.6}, pencil λ = {:.6}",
        r.residual,
        r.lambda_min.unwrap(),
        r.lambda_pencil
    );

    // An unrelated operator of full rank cannot factor through a rank-3 T.
    let other = operator_of_rank(&mut rng, e, f, 4);
    let r = douglas_factorize(&other, &t, &tol)?;
    println!("unrelated T′: verdicts {:?}, inclusion residual {:.3}", r.condition_verdicts, r.inclusion_residual);

    let a = operator_of_rank(&mut rng, e, f, 1);
    let b = operator_of_rank(&mut rng, e, f, 2);
    let s = sum_range_sqrt_check(&a, &b, &tol)?;
    println!(
        "R(A) + R(B) = R((AA* + BB*)^1/2): {} (ranks {} and {}, projector distance {:.2e})",
        s.holds, s.sum_rank, s.root_rank, s.projector_distance
    );

    let b1 = operator_of_rank(&mut rng, e, f, 2);
    let b2 = operator_of_rank(&mut rng, e, f, 2);
    let target = b1.compose(&g)?.add(&b2.compose(&Operator::identity(e))?)?;
    let r = two_term_douglas(&target, &b1, &b2, &tol)?;
    println!(
        "A = B₁X + B₂Y: verdicts {:?}, residual {:.2e}, λ = {:.6}",
        r.verdicts,
        r.residual,
        r.lambda.unwrap()
    );
    Ok(())
}
