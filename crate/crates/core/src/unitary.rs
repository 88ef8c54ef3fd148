//! Finite unitary systems, wandering vectors and the generator of a K-frame vector.
//!
//! For a system `U_1, …, U_N` the coefficient module `ℓ²_U(A)` is `A^N`, and the
//! analysis operator of a vector `ψ` is `T_ψ x = (<x, U_i ψ>)_i`.

use serde::{Deserialize, Serialize};

use crate::algebra::{range_inclusion, rank, singular_values, CMatrix, ModuleElement, ModuleSpace, Operator, Tolerance, C64};
use crate::error::{Error, Result};
use crate::frames::{kframe_check, FrameBounds, FrameFamily};

#[derive(Clone, Debug, PartialEq)]
pub struct UnitarySystem {
    space: ModuleSpace,
    operators: Vec<Operator>,
}

impl UnitarySystem {
    /// Validates that every operator is a unitary on `space` and that the identity is present.
    pub fn new(space: ModuleSpace, operators: Vec<Operator>, tol: &Tolerance) -> Result<Self> {
        let id = Operator::identity(space);
        for (i, u) in operators.iter().enumerate() {
            if u.domain() != space || u.codomain() != space {
                return Err(Error::InvalidUnitarySystem(format!("operator {i} does not act on the system's module")));
            }
            let r1 = u.gram_range().sub(&id)?.norm();
            let r2 = u.gram_domain().sub(&id)?.norm();
            if r1.max(r2) > tol.rel_tol {
                return Err(Error::InvalidUnitarySystem(format!(
                    "operator {i} is not unitary (residual {:.3e})",
                    r1.max(r2)
                )));
            }
        }
        let has_identity = operators
            .iter()
            .any(|u| u.sub(&id).map(|d| d.norm() <= tol.rel_tol).unwrap_or(false));
        if !has_identity {
            return Err(Error::InvalidUnitarySystem("the identity is missing".into()));
        }
        Ok(UnitarySystem { space, operators })
    }

    pub fn space(&self) -> ModuleSpace {
        self.space
    }

    pub fn operators(&self) -> &[Operator] {
        &self.operators
    }

    pub fn len(&self) -> usize {
        self.operators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operators.is_empty()
    }

    fn check_vector(&self, x: &ModuleElement) -> Result<()> {
        if x.space() != self.space {
            return Err(Error::dims(
                "unitary system vector",
                format!("{:?}", self.space),
                format!("{:?}", x.space()),
            ));
        }
        Ok(())
    }

    /// The family `{U_i ψ}` in system order.
    pub fn orbit(&self, psi: &ModuleElement) -> Result<FrameFamily> {
        self.check_vector(psi)?;
        let elements = self.operators.iter().map(|u| u.apply(psi)).collect::<Result<Vec<_>>>()?;
        FrameFamily::new(self.space, elements)
    }

    /// `T_ψ: E -> A^N`.
    pub fn analysis_operator(&self, psi: &ModuleElement) -> Result<Operator> {
        Ok(self.orbit(psi)?.analysis_operator().clone())
    }
}

/// Powers `I, C, …, C^{d-1}` of the cyclic shift on `A^d`, `C e_i = e_{i+1 mod d}`.
pub fn cyclic_shift_system(d: usize, k: usize) -> Result<UnitarySystem> {
    let space = ModuleSpace::of(k, d)?;
    let shift = CMatrix::from_fn(d, d, |i, j| if j == (i + 1) % d { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
    let c = Operator::amplify(space.algebra(), &shift)?;
    let mut operators = Vec::with_capacity(d);
    let mut power = Operator::identity(space);
    for _ in 0..d {
        operators.push(power.clone());
        power = c.compose(&power)?;
    }
    UnitarySystem::new(space, operators, &Tolerance::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WanderingReport {
    pub holds: bool,
    /// `max_{i,j} ‖<U_i ψ, U_j ψ> - δ_ij 1_A‖`.
    pub gram_residual: f64,
    pub orbit_spans: bool,
}

pub fn is_wandering(u: &UnitarySystem, psi: &ModuleElement, tol: &Tolerance) -> Result<WanderingReport> {
    let orbit = u.orbit(psi)?;
    let k = u.space().k();
    let mut gram_residual = 0.0f64;
    for (i, a) in orbit.elements().iter().enumerate() {
        for (j, b) in orbit.elements().iter().enumerate() {
            let mut g = a.inner(b)?.into_matrix();
            if i == j {
                g -= CMatrix::identity(k, k);
            }
            gram_residual = gram_residual.max(crate::algebra::spectral_norm(&g));
        }
    }
    let orbit_spans = rank(&orbit.synthesis_operator(), tol) == u.space().width();
    Ok(WanderingReport {
        holds: gram_residual <= tol.rel_tol && orbit_spans,
        gram_residual,
        orbit_spans,
    })
}

/// `max_U ‖A U ψ - U A ψ‖`.
pub fn local_commutant_residual(a: &Operator, u: &UnitarySystem, psi: &ModuleElement) -> Result<f64> {
    u.check_vector(psi)?;
    let a_psi = a.apply(psi)?;
    let mut worst = 0.0f64;
    for op in u.operators() {
        let lhs = a.apply(&op.apply(psi)?)?;
        let rhs = op.apply(&a_psi)?;
        worst = worst.max(lhs.sub(&rhs)?.norm());
    }
    Ok(worst)
}

/// Membership test for the local commutant at `ψ`, with residual threshold `rel_tol·‖A‖‖ψ‖`.
pub fn in_local_commutant(a: &Operator, u: &UnitarySystem, psi: &ModuleElement, tol: &Tolerance) -> Result<(bool, f64)> {
    let r = local_commutant_residual(a, u, psi)?;
    Ok((r <= tol.rel_tol * (a.norm() * psi.norm()).max(f64::MIN_POSITIVE), r))
}

/// K-frame bounds of the orbit `{U η}`.
pub fn kframe_vector_check(u: &UnitarySystem, eta: &ModuleElement, k: &Operator, tol: &Tolerance) -> Result<Option<FrameBounds>> {
    kframe_check(&u.orbit(eta)?, k, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorReport {
    /// `A = T_η* T_ψ`, i.e. `A x = Σ <x, U ψ> U η`.
    pub a: Operator,
    pub commutant_residual: f64,
    /// `‖A ψ - η‖`.
    pub vector_residual: f64,
    pub range_inclusion_holds: bool,
    /// K-frame bounds of `η`, when it is a K-frame vector.
    pub eta_bounds: Option<FrameBounds>,
}

fn require_wandering(u: &UnitarySystem, psi: &ModuleElement, tol: &Tolerance) -> Result<()> {
    let w = is_wandering(u, psi, tol)?;
    if !w.holds {
        return Err(Error::NotWandering {
            residual: w.gram_residual,
        });
    }
    Ok(())
}

pub fn generator_from_vector(
    u: &UnitarySystem,
    psi: &ModuleElement,
    eta: &ModuleElement,
    k: &Operator,
    tol: &Tolerance,
) -> Result<GeneratorReport> {
    require_wandering(u, psi, tol)?;
    let t_psi = u.analysis_operator(psi)?;
    let t_eta = u.analysis_operator(eta)?;
    let a = t_eta.adjoint().compose(&t_psi)?;
    let vector_residual = a.apply(psi)?.sub(eta)?.norm();
    let commutant_residual = local_commutant_residual(&a, u, psi)?;
    let range_inclusion_holds = range_inclusion(k, &a, tol)?.holds;
    Ok(GeneratorReport {
        eta_bounds: kframe_vector_check(u, eta, k, tol)?,
        a,
        commutant_residual,
        vector_residual,
        range_inclusion_holds,
    })
}

/// `η = A ψ` for `A` in the local commutant with `R(K) ⊆ R(A)`, with its K-frame bounds.
pub fn vector_from_generator(
    u: &UnitarySystem,
    psi: &ModuleElement,
    a: &Operator,
    k: &Operator,
    tol: &Tolerance,
) -> Result<(ModuleElement, Option<FrameBounds>)> {
    require_wandering(u, psi, tol)?;
    let (member, residual) = in_local_commutant(a, u, psi, tol)?;
    if !member {
        return Err(Error::Precondition {
            name: "A in the local commutant",
            residual,
        });
    }
    let inclusion = range_inclusion(k, a, tol)?;
    if !inclusion.holds {
        return Err(Error::Precondition {
            name: "R(K) ⊆ R(A)",
            residual: inclusion.residual,
        });
    }
    let eta = a.apply(psi)?;
    let bounds = kframe_vector_check(u, &eta, k, tol)?;
    Ok((eta, bounds))
}

/// Largest entry distance of `A` from the block circulant matrix sharing its first block row.
pub fn circulant_deviation(a: &Operator) -> f64 {
    let k = a.domain().k();
    let d = a.domain().n();
    let m = a.matrix();
    let mut worst = 0.0f64;
    for bi in 0..d {
        for bj in 0..d {
            let src = (bj + d - bi) % d;
            for r in 0..k {
                for c in 0..k {
                    let diff = m[(bi * k + r, bj * k + c)] - m[(r, src * k + c)];
                    worst = worst.max(diff.norm());
                }
            }
        }
    }
    worst
}

/// Smallest singular value of `T_ψ`; equal to 1 for a wandering vector.
pub fn analysis_min_singular_value(u: &UnitarySystem, psi: &ModuleElement) -> Result<f64> {
    let t = u.analysis_operator(psi)?;
    Ok(singular_values(t.matrix()).last().copied().unwrap_or(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::real_matrix;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn cyclic_systems() {
        assert_eq!(cyclic_shift_system(1, 1).unwrap().len(), 1);
        let u = cyclic_shift_system(3, 1).unwrap();
        let c = &u.operators()[1];
        let c3 = c.compose(c).unwrap().compose(c).unwrap();
        assert!(c3.sub(&Operator::identity(u.space())).unwrap().norm() < 1e-14);
        for d in 1..=16 {
            for k in 1..=2 {
                let u = cyclic_shift_system(d, k).unwrap();
                let psi = u.space().basis_element(0);
                assert!(is_wandering(&u, &psi, &tol()).unwrap().holds, "d={d} k={k}");
            }
        }
    }

    #[test]
    fn non_wandering_vectors() {
        let u = cyclic_shift_system(2, 1).unwrap();
        assert!(!is_wandering(&u, &u.space().zero(), &tol()).unwrap().holds);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(!is_wandering(&u, &ModuleElement::scalar_row(&[h, h]), &tol()).unwrap().holds);
    }

    #[test]
    fn local_commutant_examples() {
        let u = cyclic_shift_system(2, 1).unwrap();
        let psi = u.space().basis_element(0);
        let id = Operator::identity(u.space());
        assert_eq!(local_commutant_residual(&id, &u, &psi).unwrap(), 0.0);
        let circ = Operator::on(u.space(), real_matrix(2, 2, &[3.0, -1.0, -1.0, 3.0])).unwrap();
        assert_eq!(local_commutant_residual(&circ, &u, &psi).unwrap(), 0.0);
        assert!(local_commutant_residual(&Operator::diagonal(&[1.0, 2.0]), &u, &psi).unwrap() > 0.5);
    }

    #[test]
    fn kframe_vector_examples() {
        let u = cyclic_shift_system(3, 1).unwrap();
        let psi = u.space().basis_element(0);
        let id = Operator::identity(u.space());
        let b = kframe_vector_check(&u, &psi, &id, &tol()).unwrap().unwrap();
        assert!((b.lower.unwrap() - 1.0).abs() < 1e-12 && (b.upper - 1.0).abs() < 1e-12);
        let b = kframe_vector_check(&u, &psi.scale(C64::new(1.5, 0.0)), &id, &tol()).unwrap().unwrap();
        assert!((b.lower.unwrap() - 2.25).abs() < 1e-12 && (b.upper - 2.25).abs() < 1e-12);
        assert!(kframe_vector_check(&u, &u.space().zero(), &id, &tol()).unwrap().is_none());
    }

    #[test]
    fn generator_examples() {
        let u = cyclic_shift_system(2, 1).unwrap();
        let psi = u.space().basis_element(0);
        let id = Operator::identity(u.space());
        let r = generator_from_vector(&u, &psi, &psi, &id, &tol()).unwrap();
        assert!(r.a.sub(&id).unwrap().norm() < 1e-14);

        let (a, b) = (0.4, -1.3);
        let eta = ModuleElement::scalar_row(&[a, b]);
        let r = generator_from_vector(&u, &psi, &eta, &id, &tol()).unwrap();
        let expected = real_matrix(2, 2, &[a, b, b, a]);
        assert!(crate::algebra::spectral_norm(&(r.a.matrix() - expected)) < 1e-14);
        assert!(r.vector_residual < 1e-14 && r.commutant_residual < 1e-14);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bad = ModuleElement::scalar_row(&[h, h]);
        assert!(matches!(
            generator_from_vector(&u, &bad, &eta, &id, &tol()),
            Err(Error::NotWandering { .. })
        ));
    }

    #[test]
    fn vector_from_generator_examples() {
        let u = cyclic_shift_system(3, 1).unwrap();
        let psi = u.space().basis_element(0);
        let id = Operator::identity(u.space());
        let (eta, b) = vector_from_generator(&u, &psi, &id, &id, &tol()).unwrap();
        assert_eq!(eta, psi);
        assert!((b.unwrap().lower.unwrap() - 1.0).abs() < 1e-12);
        let (_, b) = vector_from_generator(&u, &psi, &id.scale(2.0), &id, &tol()).unwrap();
        assert!((b.unwrap().lower.unwrap() - 4.0).abs() < 1e-12);

        // Rank-one circulant: the projector onto the constant vector.
        let third = 1.0 / 3.0;
        let a = Operator::on(u.space(), real_matrix(3, 3, &[third; 9])).unwrap();
        assert!(vector_from_generator(&u, &psi, &a, &a, &tol()).unwrap().1.is_some());
        let e1_proj = Operator::diagonal(&[1.0, 0.0, 0.0]);
        assert!(matches!(
            vector_from_generator(&u, &psi, &a, &e1_proj, &tol()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn circulant_deviation_examples() {
        let circ = Operator::on(ModuleSpace::of(1, 3).unwrap(), real_matrix(3, 3, &[1.0, 2.0, 3.0, 3.0, 1.0, 2.0, 2.0, 3.0, 1.0])).unwrap();
        assert_eq!(circulant_deviation(&circ), 0.0);
        assert!(circulant_deviation(&Operator::diagonal(&[1.0, 2.0])) > 0.5);
    }

    #[test]
    fn wandering_analysis_is_unitary() {
        let u = cyclic_shift_system(4, 2).unwrap();
        let psi = u.space().basis_element(0);
        assert!((analysis_min_singular_value(&u, &psi).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn missing_identity_is_rejected() {
        let space = ModuleSpace::of(1, 2).unwrap();
        let swap = Operator::on(space, real_matrix(2, 2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert!(matches!(
            UnitarySystem::new(space, vec![swap], &tol()),
            Err(Error::InvalidUnitarySystem(_))
        ));
    }
}
