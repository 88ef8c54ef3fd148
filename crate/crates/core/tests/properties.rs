//! Algebraic invariants as property tests. Each case draws dimensions from proptest and
//! builds matrices from a seeded generator so shrinking acts on sizes and seeds.

use kframes::algebra::{
    kernel_projector, operator_sqrt, pseudo_inverse, psd_order, psd_sampling_oracle, range_inclusion, range_projector,
    rank, spectral_norm, AlgebraElement, CMatrix, ModuleSpace, Operator, Tolerance,
};
use kframes::douglas::{douglas_factorize, sum_range_sqrt_check};
use kframes::frames::{canonical_dual, frame_check, kframe_check, reconstruct, FrameFamily};
use kframes::harness::generate::random_frame;
use kframes::harness::rng::{gaussian, operator_of_rank, random_element, trial_rng};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::default()
}

fn dist(a: &CMatrix, b: &CMatrix) -> f64 {
    spectral_norm(&(a - b))
}

fn space() -> impl Strategy<Value = ModuleSpace> {
    (1usize..=3, 1usize..=4).prop_map(|(k, n)| ModuleSpace::of(k, n).unwrap())
}

fn pair_of_spaces() -> impl Strategy<Value = (ModuleSpace, ModuleSpace)> {
    (1usize..=3, 1usize..=4, 1usize..=4).prop_map(|(k, n, m)| (ModuleSpace::of(k, n).unwrap(), ModuleSpace::of(k, m).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inner_product_axioms(e in space(), seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 0);
        let x = random_element(&mut rng, e);
        let y = random_element(&mut rng, e);
        let z = random_element(&mut rng, e);
        let a = AlgebraElement::from_matrix(gaussian(&mut rng, e.k(), e.k())).unwrap();

        let xx = x.inner(&x).unwrap();
        prop_assert!(xx.is_positive(1e-12));
        prop_assert!((xx.norm().sqrt() - x.norm()).abs() <= 1e-12 * (1.0 + x.norm()));

        let xy = x.inner(&y).unwrap();
        let yx = y.inner(&x).unwrap();
        prop_assert!(dist(xy.matrix(), yx.adjoint().matrix()) <= 1e-12 * (1.0 + xy.norm()));

        let ax_y = x.left_mul(&a).unwrap().inner(&y).unwrap();
        prop_assert!(dist(ax_y.matrix(), &(a.matrix() * xy.matrix())) <= 1e-12 * (1.0 + ax_y.norm()));

        let sum = x.add(&z).unwrap().inner(&y).unwrap();
        let parts = xy.matrix() + z.inner(&y).unwrap().matrix();
        prop_assert!(dist(sum.matrix(), &parts) <= 1e-12 * (1.0 + sum.norm()));

        // Cauchy-Schwarz in the module: ‖<x,y>‖ ≤ ‖x‖‖y‖.
        prop_assert!(xy.norm() <= x.norm() * y.norm() * (1.0 + 1e-12));
    }

    #[test]
    fn adjoint_is_an_anti_homomorphism((e, f) in pair_of_spaces(), m in 1usize..=4, seed in any::<u64>()) {
        let g = ModuleSpace::of(e.k(), m).unwrap();
        let mut rng = trial_rng(seed, 1);
        let s = operator_of_rank(&mut rng, e, f, e.width().min(f.width()));
        let t = operator_of_rank(&mut rng, f, g, f.width().min(g.width()));
        let x = random_element(&mut rng, e);
        let y = random_element(&mut rng, f);

        let lhs = s.apply(&x).unwrap().inner(&y).unwrap();
        let rhs = x.inner(&s.adjoint().apply(&y).unwrap()).unwrap();
        prop_assert!(dist(lhs.matrix(), rhs.matrix()) <= 1e-11 * (1.0 + s.norm() * x.norm() * y.norm()));

        let ts = t.compose(&s).unwrap();
        let product_adjoint = s.adjoint().compose(&t.adjoint()).unwrap();
        prop_assert!(dist(ts.adjoint().matrix(), product_adjoint.matrix()) <= 1e-11 * (1.0 + ts.norm()));
        prop_assert_eq!(s.adjoint().adjoint(), s.clone());
        prop_assert!((s.gram_range().norm() - s.norm().powi(2)).abs() <= 1e-10 * (1.0 + s.norm().powi(2)));
    }

    #[test]
    fn moore_penrose_identities((e, f) in pair_of_spaces(), r in 0usize..=12, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 2);
        let r = r.min(e.width()).min(f.width());
        let t = operator_of_rank(&mut rng, e, f, r);
        prop_assert_eq!(rank(&t, &tol()), r);
        let p = pseudo_inverse(&t, &tol());
        let scale = 1.0 + t.norm() * p.norm();
        let tpt = t.compose(&p).unwrap().compose(&t).unwrap();
        prop_assert!(dist(tpt.matrix(), t.matrix()) <= 1e-9 * scale * (1.0 + t.norm()));
        let ptp = p.compose(&t).unwrap().compose(&p).unwrap();
        prop_assert!(dist(ptp.matrix(), p.matrix()) <= 1e-9 * scale * (1.0 + p.norm()));
        prop_assert!(t.compose(&p).unwrap().self_adjoint_residual().unwrap() <= 1e-9 * scale);
        prop_assert!(p.compose(&t).unwrap().self_adjoint_residual().unwrap() <= 1e-9 * scale);
    }

    #[test]
    fn range_and_kernel_projectors_are_complementary((e, f) in pair_of_spaces(), r in 0usize..=12, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 3);
        let r = r.min(e.width()).min(f.width());
        let t = operator_of_rank(&mut rng, e, f, r);
        let range = range_projector(&t, &tol());
        let kernel_adj = kernel_projector(&t.adjoint(), &tol());
        let sum = range.add(&kernel_adj).unwrap();
        prop_assert!(dist(sum.matrix(), Operator::identity(f).matrix()) <= 1e-10);
        let idem = range.compose(&range).unwrap();
        prop_assert!(dist(idem.matrix(), range.matrix()) <= 1e-10);
        prop_assert!(range_inclusion(&t, &t.gram_range(), &tol()).unwrap().holds);
        prop_assert!(range_inclusion(&t.gram_range(), &t, &tol()).unwrap().holds);
    }

    #[test]
    fn square_root_squares_back_and_keeps_range(e in space(), r in 0usize..=12, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 4);
        let r = r.min(e.width());
        let t = operator_of_rank(&mut rng, e, e, r);
        let p = t.gram_range();
        let s = operator_sqrt(&p, &tol()).unwrap();
        prop_assert!(psd_order(&Operator::zero(e, e), &s, &tol()).unwrap().holds);
        let sq = s.compose(&s).unwrap();
        prop_assert!(dist(sq.matrix(), p.matrix()) <= 1e-9 * (1.0 + p.norm()));
        let d = dist(range_projector(&s, &tol()).matrix(), range_projector(&p, &tol()).matrix());
        prop_assert!(d <= 1e-8);
    }

    #[test]
    fn sum_of_ranges_is_range_of_root((e, f) in pair_of_spaces(), ra in 0usize..=12, rb in 0usize..=12, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 5);
        let a = operator_of_rank(&mut rng, e, f, ra.min(e.width()).min(f.width()));
        let b = operator_of_rank(&mut rng, e, f, rb.min(e.width()).min(f.width()));
        let r = sum_range_sqrt_check(&a, &b, &tol()).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.projector_distance <= 1e-8);
    }

    #[test]
    fn constructed_douglas_pairs_factor((e, f) in pair_of_spaces(), r in 0usize..=12, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 6);
        let t = operator_of_rank(&mut rng, e, f, r.min(e.width()).min(f.width()));
        let g = operator_of_rank(&mut rng, e, e, e.width());
        let tp = t.compose(&g).unwrap();
        let d = douglas_factorize(&tp, &t, &tol()).unwrap();
        prop_assert!(d.inclusion_holds);
        prop_assert!(d.verdicts_agree());
        prop_assert!(d.residual <= 1e-8 * (1.0 + tp.norm()));
    }

    #[test]
    fn frames_reconstruct_and_dualize(e in space(), extra in 0usize..=4, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 7);
        let j = (e.n() + extra).min(16);
        let f = random_frame(&mut rng, e, j);
        let bounds = frame_check(&f, &tol()).unwrap().expect("generated frame");
        let x = random_element(&mut rng, e);
        let rec = reconstruct(&f, &x, &tol()).unwrap();
        prop_assert!(rec.relative_error <= 1e-9);
        let dual = canonical_dual(&f, &tol()).unwrap();
        let db = frame_check(&dual, &tol()).unwrap().expect("dual is a frame");
        let c = bounds.lower.unwrap();
        prop_assert!((db.upper - 1.0 / c).abs() <= 1e-8 * (1.0 / c));
        // A frame is a K-frame for every K, with identity K recovering the frame bounds.
        let id = Operator::identity(e);
        let kb = kframe_check(&f, &id, &tol()).unwrap().expect("frame is an I-frame");
        prop_assert!((kb.lower.unwrap() - c).abs() <= 1e-9 * c);
    }

    #[test]
    fn psd_verdicts_match_sampling_oracle(e in space(), r in 0usize..=12, shift in -1.0f64..1.0, seed in any::<u64>()) {
        let mut rng = trial_rng(seed, 8);
        let t = operator_of_rank(&mut rng, e, e, r.min(e.width()));
        let p = t.gram_range().sub(&Operator::identity(e).scale(shift.max(0.0) * 0.05)).unwrap();
        let verdict = psd_order(&Operator::zero(e, e), &p, &tol()).unwrap();
        let oracle = psd_sampling_oracle(&p, 1000, seed, &tol()).unwrap();
        // The oracle can miss thin negative cones; it can never refute a true verdict.
        if verdict.holds {
            prop_assert!(oracle.positive);
        }
        if oracle.positive && verdict.lambda_min < -1e-6 * (1.0 + p.norm()) {
            prop_assert!(false, "oracle missed λ_min = {}", verdict.lambda_min);
        }
    }
}

#[test]
fn families_round_trip_through_synthesis() {
    let mut rng = trial_rng(11, 0);
    let e = ModuleSpace::of(2, 3).unwrap();
    let f = random_frame(&mut rng, e, 5);
    let again = FrameFamily::from_synthesis(&f.synthesis_operator()).unwrap();
    assert_eq!(again.elements(), f.elements());
}
