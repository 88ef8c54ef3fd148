//! Spectral calculus on representing matrices: SVD-based pseudo-inverse and range
//! projectors, Hermitian eigendecomposition for the positive order and square roots.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::{audit, hermitian_part, CMatrix, Operator, Tolerance, C64};
use crate::error::{Error, Result};

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `V f(Λ) V^H`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = DVector::from_iterator(self.values.len(), self.values.iter().map(|&v| C64::new(f(v), 0.0)));
        let scaled = CMatrix::from_fn(self.vectors.nrows(), self.vectors.ncols(), |i, j| self.vectors[(i, j)] * d[j]);
        scaled * self.vectors.adjoint()
    }
}

fn to_faer(m: &CMatrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigendecomposition of the Hermitian part of `m`, eigenvalues sorted ascending.
pub fn hermitian_eigen(m: &CMatrix) -> HermitianEigen {
    if m.is_empty() {
        return HermitianEigen {
            values: Vec::new(),
            vectors: CMatrix::zeros(m.nrows(), 0),
        };
    }
    let herm = to_faer(&hermitian_part(m));
    let eig = herm
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("Hermitian eigensolver converges");
    let values = eig.S().column_vector().iter().map(|v| v.re).collect();
    HermitianEigen {
        values,
        vectors: from_faer(eig.U()),
    }
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.is_empty() {
        return Vec::new();
    }
    to_faer(m).singular_values().expect("SVD converges")
}

pub fn spectral_norm(m: &CMatrix) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

fn numerical_rank(sv: &[f64], rank_tol: f64) -> usize {
    let Some(&top) = sv.first() else { return 0 };
    if top == 0.0 {
        return 0;
    }
    // Values exactly at the cutoff count as zero.
    sv.iter().take_while(|&&s| s > rank_tol * top).count()
}

/// Rank of `T` under the relative singular-value cutoff.
pub fn rank(t: &Operator, tol: &Tolerance) -> usize {
    numerical_rank(&singular_values(t.matrix()), tol.rank_tol)
}

struct ThinSvd {
    u: CMatrix,
    s: Vec<f64>,
    v: CMatrix,
}

fn thin_svd(m: &CMatrix, rank_tol: f64) -> ThinSvd {
    if m.is_empty() {
        return ThinSvd {
            u: CMatrix::zeros(m.nrows(), 0),
            s: Vec::new(),
            v: CMatrix::zeros(m.ncols(), 0),
        };
    }
    let svd = to_faer(m).thin_svd().expect("SVD converges");
    let s_all: Vec<f64> = svd.S().column_vector().iter().map(|v| v.re).collect();
    let r = numerical_rank(&s_all, rank_tol);
    ThinSvd {
        u: from_faer(svd.U().subcols(0, r)),
        s: s_all[..r].to_vec(),
        v: from_faer(svd.V().subcols(0, r)),
    }
}

/// Orthonormal rows spanning the row space of `m`, under the `rank_tol` cutoff.
pub fn row_space_basis(m: &CMatrix, rank_tol: f64) -> CMatrix {
    thin_svd(m, rank_tol).v.adjoint()
}

/// Moore–Penrose inverse `T†: F -> E`, via the SVD with the `rank_tol` cutoff.
pub fn pseudo_inverse(t: &Operator, tol: &Tolerance) -> Operator {
    let svd = thin_svd(t.matrix(), tol.rank_tol);
    // Θ = U Σ V^H  =>  Θ⁺ = V Σ⁻¹ U^H
    let v_scaled = CMatrix::from_fn(svd.v.nrows(), svd.v.ncols(), |i, j| svd.v[(i, j)] / svd.s[j]);
    let pinv = v_scaled * svd.u.adjoint();
    Operator::new(t.codomain(), t.domain(), pinv).expect("pseudo-inverse shape")
}

/// Orthogonal projector onto `R(T)` (an operator on the codomain); equals `T T†`.
pub fn range_projector(t: &Operator, tol: &Tolerance) -> Operator {
    let svd = thin_svd(t.matrix(), tol.rank_tol);
    Operator::on(t.codomain(), &svd.v * svd.v.adjoint()).expect("projector shape")
}

/// Orthogonal projector onto `N(T)` (an operator on the domain); equals `I - T† T`.
pub fn kernel_projector(t: &Operator, tol: &Tolerance) -> Operator {
    let svd = thin_svd(t.matrix(), tol.rank_tol);
    let w = t.domain().width();
    Operator::on(t.domain(), CMatrix::identity(w, w) - &svd.u * svd.u.adjoint()).expect("projector shape")
}

/// Outcome of a range-inclusion test `R(T′) ⊆ R(T)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RangeInclusion {
    pub holds: bool,
    /// `‖(I - P_{R(T)}) T′‖`.
    pub residual: f64,
}

pub fn range_inclusion(t_prime: &Operator, t: &Operator, tol: &Tolerance) -> Result<RangeInclusion> {
    if t_prime.codomain() != t.codomain() {
        return Err(Error::dims(
            "range inclusion",
            format!("{:?}", t.codomain()),
            format!("{:?}", t_prime.codomain()),
        ));
    }
    let p = range_projector(t, tol);
    let projected = p.compose(t_prime)?;
    let residual = spectral_norm(&(t_prime.matrix() - projected.matrix()));
    Ok(RangeInclusion {
        holds: residual <= tol.rel_tol * t_prime.norm(),
        residual,
    })
}

/// Verdict of `P ≼ Q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdVerdict {
    pub holds: bool,
    /// Smallest eigenvalue of `Q - P`.
    pub lambda_min: f64,
}

fn check_self_adjoint(op: &Operator, tol: &Tolerance) -> Result<()> {
    let residual = op.self_adjoint_residual()?;
    if residual > tol.rel_tol * op.norm().max(1.0) {
        return Err(Error::NotSelfAdjoint { residual });
    }
    Ok(())
}

/// Decides `P ≼ Q` in `L(E)`, i.e. `<Px, x> ≤ <Qx, x>` in `A` for every `x`.
///
/// For `E = A^n` this is exactly positive semidefiniteness of `Θ_Q - Θ_P`; the
/// verdict accepts `λ_min(Θ_Q - Θ_P) ≥ -rel_tol · max(1, ‖Θ_Q - Θ_P‖)`.
pub fn psd_order(p: &Operator, q: &Operator, tol: &Tolerance) -> Result<PsdVerdict> {
    if p.domain() != q.domain() || !p.is_endomorphism() || !q.is_endomorphism() {
        return Err(Error::dims(
            "positive order",
            format!("{:?}", p.domain()),
            format!("{:?}", q.domain()),
        ));
    }
    check_self_adjoint(p, tol)?;
    check_self_adjoint(q, tol)?;
    let delta = hermitian_part(&(q.matrix() - p.matrix()));
    let eig = hermitian_eigen(&delta);
    let lambda_min = eig.min();
    let holds = lambda_min >= -tol.rel_tol * eig.max_abs().max(1.0);
    audit::record(&delta, p.domain().k(), tol.rel_tol, holds);
    Ok(PsdVerdict { holds, lambda_min })
}

/// `0 ≼ P`.
pub fn is_positive(p: &Operator, tol: &Tolerance) -> Result<PsdVerdict> {
    psd_order(&Operator::zero(p.domain(), p.codomain()), p, tol)
}

/// Positive square root of a positive operator.
///
/// Eigenvalues within `rank_tol` of zero (relative to the largest) are set to zero so
/// that `R(P^{1/2})` and `R(P)` are decided with the same rank.
pub fn operator_sqrt(p: &Operator, tol: &Tolerance) -> Result<Operator> {
    if !p.is_endomorphism() {
        return Err(Error::dims(
            "square root",
            format!("{:?}", p.domain()),
            format!("{:?}", p.codomain()),
        ));
    }
    check_self_adjoint(p, tol)?;
    let eig = hermitian_eigen(p.matrix());
    let scale = eig.max_abs();
    if eig.min() < -tol.rel_tol * scale.max(1.0) {
        return Err(Error::NotPositive {
            lambda_min: eig.min(),
        });
    }
    let cutoff = tol.rank_tol * scale;
    let root = eig.map(|v| if v > cutoff { v.sqrt() } else { 0.0 });
    Operator::on(p.domain(), hermitian_part(&root))
}

/// `(P†)^{1/2}` for a positive operator `P`, from one eigendecomposition so the result
/// is Hermitian even when `P` is badly conditioned.
pub fn pseudo_inverse_sqrt(p: &Operator, tol: &Tolerance) -> Result<Operator> {
    if !p.is_endomorphism() {
        return Err(Error::dims(
            "pseudo-inverse square root",
            format!("{:?}", p.domain()),
            format!("{:?}", p.codomain()),
        ));
    }
    check_self_adjoint(p, tol)?;
    let eig = hermitian_eigen(p.matrix());
    let scale = eig.max_abs();
    if eig.min() < -tol.rel_tol * scale.max(1.0) {
        return Err(Error::NotPositive {
            lambda_min: eig.min(),
        });
    }
    let cutoff = tol.rank_tol * scale;
    let root = eig.map(|v| if v > cutoff { v.sqrt().recip() } else { 0.0 });
    Operator::on(p.domain(), hermitian_part(&root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ModuleSpace, ONE, ZERO};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn close(a: &CMatrix, b: &CMatrix, eps: f64) -> bool {
        spectral_norm(&(a - b)) <= eps
    }

    #[test]
    fn pinv_of_singular_diagonal() {
        let t = Operator::diagonal(&[2.0, 0.0]);
        let p = pseudo_inverse(&t, &tol());
        assert!(close(p.matrix(), Operator::diagonal(&[0.5, 0.0]).matrix(), 1e-15));
    }

    #[test]
    fn pinv_of_unitary_is_adjoint() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = Operator::on(
            ModuleSpace::of(1, 2).unwrap(),
            CMatrix::from_row_slice(2, 2, &[C64::new(s, 0.0), C64::new(0.0, s), C64::new(0.0, s), C64::new(s, 0.0)]),
        )
        .unwrap();
        let p = pseudo_inverse(&u, &tol());
        assert!(close(p.matrix(), u.adjoint().matrix(), 1e-14));
    }

    #[test]
    fn pinv_of_zero_is_zero() {
        let e = ModuleSpace::of(2, 2).unwrap();
        let f = ModuleSpace::of(2, 3).unwrap();
        let z = Operator::zero(e, f);
        let p = pseudo_inverse(&z, &tol());
        assert_eq!(p, Operator::zero(f, e));
        assert_eq!(rank(&z, &tol()), 0);
    }

    #[test]
    fn projectors_of_diagonal_and_invertible() {
        let t = Operator::diagonal(&[1.0, 0.0]);
        assert!(close(range_projector(&t, &tol()).matrix(), t.matrix(), 1e-15));
        let inv = Operator::diagonal(&[3.0, -1.0]);
        assert!(close(
            range_projector(&inv, &tol()).matrix(),
            &CMatrix::identity(2, 2),
            1e-14
        ));
        assert!(close(
            kernel_projector(&t, &tol()).matrix(),
            Operator::diagonal(&[0.0, 1.0]).matrix(),
            1e-15
        ));
    }

    #[test]
    fn range_inclusion_examples() {
        let id = Operator::diagonal(&[1.0, 1.0]);
        let e1 = Operator::diagonal(&[1.0, 0.0]);
        let e2 = Operator::diagonal(&[0.0, 1.0]);
        let r = range_inclusion(&e1, &id, &tol()).unwrap();
        assert!(r.holds);
        assert_eq!(r.residual, 0.0);
        let r = range_inclusion(&e2, &e1, &tol()).unwrap();
        assert!(!r.holds);
        assert!((r.residual - 1.0).abs() < 1e-15);
    }

    #[test]
    fn psd_order_examples() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let zero = Operator::zero(e, e);
        let id = Operator::identity(e);
        assert!(psd_order(&zero, &id, &tol()).unwrap().holds);
        let indefinite = Operator::diagonal(&[1.0, -1.0]);
        let v = psd_order(&indefinite, &zero, &tol()).unwrap();
        assert!(!v.holds);
        assert!((v.lambda_min + 1.0).abs() < 1e-15);
    }

    #[test]
    fn psd_order_rejects_non_self_adjoint() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let n = Operator::on(e, CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO])).unwrap();
        let id = Operator::identity(e);
        assert!(matches!(psd_order(&n, &id, &tol()), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn sqrt_examples() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let id = Operator::identity(e);
        assert!(close(operator_sqrt(&id, &tol()).unwrap().matrix(), id.matrix(), 1e-14));
        let d = Operator::diagonal(&[4.0, 0.0]);
        assert!(close(
            operator_sqrt(&d, &tol()).unwrap().matrix(),
            Operator::diagonal(&[2.0, 0.0]).matrix(),
            1e-14
        ));
        assert!(matches!(
            operator_sqrt(&Operator::diagonal(&[1.0, -1.0]), &tol()),
            Err(Error::NotPositive { .. })
        ));
    }
}
