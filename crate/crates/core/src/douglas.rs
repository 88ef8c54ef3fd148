//! Douglas factorization and its consequences for sums of ranges and of K-frames.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    hermitian_eigen, kernel_projector, operator_sqrt, pseudo_inverse, pseudo_inverse_sqrt, psd_order, range_inclusion, range_projector,
    spectral_norm, Operator, Tolerance,
};
use crate::error::{Error, Result};
use crate::frames::{kframe_check, FrameBounds, FrameFamily};
use crate::hypothesis::{all_hold, Hypothesis};

/// Margin above the least majorization constant at which the order is certified.
pub const LAMBDA_MARGIN: f64 = 1e-6;

/// The four equivalent conditions for `T X = T′`:
/// 1. `T′T′* ≼ λ TT*` for some `λ`;
/// 2. `‖T′* z‖ ≤ μ ‖T* z‖` for all `z` (decided as `N(T*) ⊆ N(T′*)`);
/// 3. `T′ = T D` for some `D`;
/// 4. `R(T′) ⊆ R(T)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DouglasReport {
    pub inclusion_holds: bool,
    /// Minimum-norm solution `D = T† T′`, present when the inclusion holds.
    pub solution: Option<Operator>,
    /// `‖T D - T′‖` for `D = T† T′`.
    pub residual: f64,
    /// `‖(I - P_{R(T)}) T′‖`.
    pub inclusion_residual: f64,
    /// Least `λ` with `T′T′* ≼ λ TT*`, equal to `‖D‖²`.
    pub lambda_min: Option<f64>,
    /// Same constant from the pencil `λ_max((TT*)^{†1/2} T′T′* (TT*)^{†1/2})`.
    pub lambda_pencil: f64,
    /// `μ = ‖D‖` for the norm inequality.
    pub mu: Option<f64>,
    /// `‖T′* restricted to N(T*)‖`.
    pub kernel_residual: f64,
    pub condition_verdicts: [bool; 4],
}

impl DouglasReport {
    pub fn verdicts_agree(&self) -> bool {
        self.condition_verdicts.iter().all(|&v| v == self.condition_verdicts[0])
    }
}

/// Solves `T X = T′` for `T′: G -> F`, `T: E -> F`.
pub fn douglas_factorize(t_prime: &Operator, t: &Operator, tol: &Tolerance) -> Result<DouglasReport> {
    if t_prime.codomain() != t.codomain() {
        return Err(Error::dims(
            "Douglas factorization codomain",
            format!("{:?}", t.codomain()),
            format!("{:?}", t_prime.codomain()),
        ));
    }
    let scale = t_prime.norm();

    let inclusion = range_inclusion(t_prime, t, tol)?;

    let d = pseudo_inverse(t, tol).compose(t_prime)?;
    let residual = spectral_norm(&(t.compose(&d)?.matrix() - t_prime.matrix()));
    let solvable = residual <= tol.rel_tol * scale;

    let kernel = kernel_projector(&t.adjoint(), tol);
    let kernel_residual = t_prime.adjoint().compose(&kernel)?.norm();
    let kernel_ok = kernel_residual <= tol.rel_tol * scale;

    let tt = t.gram_range();
    let tt_prime = t_prime.gram_range();
    let root = pseudo_inverse_sqrt(&tt, tol)?;
    let lambda_pencil = hermitian_eigen(root.compose(&tt_prime)?.compose(&root)?.matrix()).max().max(0.0);
    let majorized = psd_order(&tt_prime, &tt.scale(lambda_pencil * (1.0 + LAMBDA_MARGIN)), tol)?.holds;

    let d_norm = d.norm();
    let holds = inclusion.holds;
    Ok(DouglasReport {
        inclusion_holds: holds,
        solution: holds.then_some(d),
        residual,
        inclusion_residual: inclusion.residual,
        lambda_min: holds.then_some(d_norm * d_norm),
        lambda_pencil,
        mu: holds.then_some(d_norm),
        kernel_residual,
        condition_verdicts: [majorized, kernel_ok, solvable, holds],
    })
}

/// Compares the projector onto `R(A) + R(B)` with the projector onto
/// `R((AA* + BB*)^{1/2})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumRangeReport {
    pub holds: bool,
    pub projector_distance: f64,
    pub sum_rank: usize,
    pub root_rank: usize,
}

pub fn sum_range_sqrt_check(a: &Operator, b: &Operator, tol: &Tolerance) -> Result<SumRangeReport> {
    let stacked = Operator::row_stack(a, b)?;
    let p_sum = range_projector(&stacked, tol);
    let root = operator_sqrt(&a.gram_range().add(&b.gram_range())?, tol)?;
    let p_root = range_projector(&root, tol);
    let projector_distance = spectral_norm(&(p_sum.matrix() - p_root.matrix()));
    Ok(SumRangeReport {
        holds: projector_distance <= tol.rel_tol,
        projector_distance,
        sum_rank: crate::algebra::rank(&p_sum, tol),
        root_rank: crate::algebra::rank(&p_root, tol),
    })
}

/// Solution of `A = B₁X + B₂Y` through the stacked operator `[B₁ | B₂]`, with `X`
/// taken from the first block of the stacked solution and `Y` from the second.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumSolveReport {
    pub x: Option<Operator>,
    pub y: Option<Operator>,
    /// `‖[X; Y]‖²`, the least `λ` with `AA* ≼ λ(B₁B₁* + B₂B₂*)`.
    pub lambda: Option<f64>,
    /// `‖B₁X + B₂Y - A‖` for the minimum-norm stacked solution.
    pub residual: f64,
    /// (1) `R(A) ⊆ R(B₁) + R(B₂)`; (2) the majorization; (3) solvability.
    pub verdicts: [bool; 3],
}

impl SumSolveReport {
    pub fn verdicts_agree(&self) -> bool {
        self.verdicts.iter().all(|&v| v == self.verdicts[0])
    }
}

pub fn two_term_douglas(a: &Operator, b1: &Operator, b2: &Operator, tol: &Tolerance) -> Result<SumSolveReport> {
    if b1.codomain() != a.codomain() || b2.codomain() != a.codomain() {
        return Err(Error::dims(
            "two-term Douglas codomain",
            format!("{:?}", a.codomain()),
            format!("{:?} and {:?}", b1.codomain(), b2.codomain()),
        ));
    }
    let stacked = Operator::row_stack(b1, b2)?;
    let inclusion = range_inclusion(a, &stacked, tol)?;
    let z = pseudo_inverse(&stacked, tol).compose(a)?;
    let residual = spectral_norm(&(stacked.compose(&z)?.matrix() - a.matrix()));
    let solvable = residual <= tol.rel_tol * a.norm();
    let lambda = z.norm().powi(2);
    let sum_gram = b1.gram_range().add(&b2.gram_range())?;
    let majorized = psd_order(&a.gram_range(), &sum_gram.scale(lambda * (1.0 + LAMBDA_MARGIN)), tol)?.holds;

    let (x, y) = z.split_codomain(b1.domain())?;
    let holds = inclusion.holds;
    Ok(SumSolveReport {
        x: holds.then_some(x),
        y: holds.then_some(y),
        lambda: holds.then_some(lambda),
        residual,
        verdicts: [holds, majorized, solvable],
    })
}

/// Outcome of summing two K-frames `{x_j}` and `{y_j}` with synthesis operators `L₁`, `L₂`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KFrameSumReport {
    /// Both K-frames, `L₁L₂* ≽ 0`, `L₂L₁* ≽ 0`, closed range sum.
    pub hypotheses: Vec<Hypothesis>,
    /// `L₁L₂* + L₂L₁* ≽ 0`, the condition the argument actually uses.
    pub weaker_condition: Hypothesis,
    pub sum: Option<FrameFamily>,
    pub bounds: Option<FrameBounds>,
    /// Least `λ` with `KK* ≼ λ(L₁L₁* + L₂L₂*)`.
    pub lambda: Option<f64>,
    /// `1/λ`, absent when `K = 0`.
    pub theorem_lower_bound: Option<f64>,
    /// The sum is a K-frame with `C_opt ≥ (1 - 1e-6)/λ`.
    pub conclusion: bool,
}

fn cross_term_positive(name: &str, m: &Operator, tol: &Tolerance) -> Result<Hypothesis> {
    let asym = m.self_adjoint_residual()?;
    if asym > tol.rel_tol * m.norm().max(1.0) {
        return Ok(Hypothesis::new(name, false, asym));
    }
    let herm = m.add(&m.adjoint())?.scale(0.5);
    let v = crate::algebra::is_positive(&herm, tol)?;
    Ok(Hypothesis::new(name, v.holds, (-v.lambda_min).max(0.0)))
}

pub fn kframe_sum(f: &FrameFamily, g: &FrameFamily, k: &Operator, tol: &Tolerance) -> Result<KFrameSumReport> {
    if f.space() != g.space() {
        return Err(Error::dims(
            "K-frame sum space",
            format!("{:?}", f.space()),
            format!("{:?}", g.space()),
        ));
    }
    if f.len() != g.len() {
        return Err(Error::dims("K-frame sum length", f.len(), g.len()));
    }
    let l1 = f.synthesis_operator();
    let l2 = g.synthesis_operator();
    let f_bounds = kframe_check(f, k, tol)?;
    let g_bounds = kframe_check(g, k, tol)?;
    let l1l2 = l1.compose(&l2.adjoint())?;
    let l2l1 = l2.compose(&l1.adjoint())?;

    let hypotheses = vec![
        Hypothesis::new("first family is a K-frame", f_bounds.is_some(), 0.0),
        Hypothesis::new("second family is a K-frame", g_bounds.is_some(), 0.0),
        cross_term_positive("L1 L2* positive", &l1l2, tol)?,
        cross_term_positive("L2 L1* positive", &l2l1, tol)?,
        Hypothesis::by_construction("R(L1) + R(L2) closed"),
    ];
    let weaker_condition = cross_term_positive("L1 L2* + L2 L1* positive", &l1l2.add(&l2l1)?, tol)?;

    if !all_hold(&hypotheses) {
        return Ok(KFrameSumReport {
            hypotheses,
            weaker_condition,
            sum: None,
            bounds: None,
            lambda: None,
            theorem_lower_bound: None,
            conclusion: false,
        });
    }

    let gram_sum = l1.gram_range().add(&l2.gram_range())?;
    let root = operator_sqrt(&gram_sum, tol)?;
    let lambda = douglas_factorize(k, &root, tol)?.lambda_min;
    let theorem_lower_bound = lambda.filter(|&l| l > 0.0).map(|l| 1.0 / l);
    let sum = f.sum(g)?;
    let bounds = kframe_check(&sum, k, tol)?;
    let conclusion = match (bounds, theorem_lower_bound) {
        (Some(b), Some(c)) => b.lower.is_some_and(|lower| lower >= c * (1.0 - 1e-6)),
        (Some(_), None) => true,
        (None, _) => false,
    };
    Ok(KFrameSumReport {
        hypotheses,
        weaker_condition,
        sum: Some(sum),
        bounds,
        lambda,
        theorem_lower_bound,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{real_matrix, ModuleElement, ModuleSpace};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn c2() -> ModuleSpace {
        ModuleSpace::of(1, 2).unwrap()
    }

    #[test]
    fn identity_factor_returns_target() {
        let t_prime = Operator::on(c2(), real_matrix(2, 2, &[1.0, 2.0, -1.0, 0.5])).unwrap();
        let r = douglas_factorize(&t_prime, &Operator::identity(c2()), &tol()).unwrap();
        assert!(r.verdicts_agree() && r.inclusion_holds);
        let d = r.solution.unwrap();
        assert!(spectral_norm(&(d.matrix() - t_prime.matrix())) < 1e-12);
        assert!((r.lambda_min.unwrap() - t_prime.norm().powi(2)).abs() < 1e-10);
    }

    #[test]
    fn diagonal_factor_by_hand() {
        let r = douglas_factorize(&Operator::diagonal(&[1.0, 0.0]), &Operator::diagonal(&[2.0, 0.0]), &tol()).unwrap();
        assert!(r.verdicts_agree() && r.inclusion_holds);
        assert_eq!(r.solution.unwrap(), Operator::diagonal(&[0.5, 0.0]));
        assert!((r.lambda_min.unwrap() - 0.25).abs() < 1e-12);
        assert!((r.lambda_pencil - 0.25).abs() < 1e-12);
    }

    #[test]
    fn orthogonal_ranges_fail_everywhere() {
        let r = douglas_factorize(&Operator::diagonal(&[0.0, 1.0]), &Operator::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        assert_eq!(r.condition_verdicts, [false; 4]);
        assert!(r.solution.is_none() && r.lambda_min.is_none());
    }

    #[test]
    fn zero_target_has_zero_constant() {
        let zero = Operator::zero(c2(), c2());
        let r = douglas_factorize(&zero, &Operator::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        assert_eq!(r.condition_verdicts, [true; 4]);
        assert_eq!(r.lambda_min, Some(0.0));
    }

    #[test]
    fn sum_range_examples() {
        let r = sum_range_sqrt_check(&Operator::diagonal(&[1.0, 0.0]), &Operator::diagonal(&[0.0, 1.0]), &tol()).unwrap();
        assert!(r.holds && r.sum_rank == 2);
        let p = Operator::on(c2(), real_matrix(2, 2, &[0.5, 0.5, 0.5, 0.5])).unwrap();
        let r = sum_range_sqrt_check(&p, &p, &tol()).unwrap();
        assert!(r.holds && r.sum_rank == 1);
    }

    #[test]
    fn two_term_examples() {
        let a = Operator::on(c2(), real_matrix(2, 2, &[1.0, 3.0, -2.0, 1.0])).unwrap();
        let r = two_term_douglas(&a, &Operator::identity(c2()), &Operator::zero(c2(), c2()), &tol()).unwrap();
        assert!(r.verdicts_agree() && r.verdicts[0]);
        assert!(spectral_norm(&(r.x.unwrap().matrix() - a.matrix())) < 1e-12);
        assert!(r.y.unwrap().norm() < 1e-12);

        let r = two_term_douglas(
            &Operator::identity(c2()),
            &Operator::diagonal(&[1.0, 0.0]),
            &Operator::diagonal(&[0.0, 1.0]),
            &tol(),
        )
        .unwrap();
        assert!(r.verdicts_agree() && r.verdicts[0]);
        assert!(spectral_norm(&(r.x.unwrap().matrix() - Operator::diagonal(&[1.0, 0.0]).matrix())) < 1e-12);
        assert!(spectral_norm(&(r.y.unwrap().matrix() - Operator::diagonal(&[0.0, 1.0]).matrix())) < 1e-12);

        let p = Operator::diagonal(&[1.0, 0.0]);
        let r = two_term_douglas(&Operator::identity(c2()), &p, &p, &tol()).unwrap();
        assert_eq!(r.verdicts, [false; 3]);
    }

    fn onb() -> FrameFamily {
        FrameFamily::new(c2(), c2().standard_basis()).unwrap()
    }

    #[test]
    fn doubled_basis_sum() {
        let r = kframe_sum(&onb(), &onb(), &Operator::identity(c2()), &tol()).unwrap();
        assert!(r.conclusion);
        let b = r.bounds.unwrap();
        assert!((b.lower.unwrap() - 4.0).abs() < 1e-10 && (b.upper - 4.0).abs() < 1e-10);
        assert!((r.theorem_lower_bound.unwrap() - 2.0).abs() < 1e-10);
        assert_eq!(r.sum.unwrap().elements()[0], ModuleElement::scalar_row(&[2.0, 0.0]));
    }

    #[test]
    fn scaled_copy_sum() {
        let alpha = 0.7;
        let g = onb().image(&Operator::identity(c2()).scale(alpha)).unwrap();
        let r = kframe_sum(&onb(), &g, &Operator::identity(c2()), &tol()).unwrap();
        assert!(r.conclusion);
        let b = r.bounds.unwrap();
        assert!((b.lower.unwrap() - (1.0 + alpha).powi(2)).abs() < 1e-10);
    }

    #[test]
    fn cancelling_sum_fails_hypothesis() {
        let g = onb().image(&Operator::identity(c2()).scale(-1.0)).unwrap();
        let r = kframe_sum(&onb(), &g, &Operator::identity(c2()), &tol()).unwrap();
        assert!(!r.conclusion && r.sum.is_none());
        assert!(!r.hypotheses[2].holds && !r.hypotheses[3].holds);
        assert!(!r.weaker_condition.holds);
    }
}
