//! Bessel sequences, frames and K-frames over a free module `A^n`.
//!
//! A family `x_1, …, x_J` has analysis operator `T x = (<x, x_j>)_j` into `A^J`,
//! synthesis operator `T*` and frame operator `S = T* T`. All frame inequalities are
//! operator inequalities on `S`, decided with [`psd_order`].
//!
//! Optimal bounds are defined spectrally: `D_opt = λ_max(S)`, and for a K-frame
//! `C_opt = 1 / λ_max(S^{†1/2} K K* S^{†1/2})`, the largest `C` with `C·KK* ≼ S`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    hermitian_eigen, kernel_projector, operator_sqrt, pseudo_inverse, pseudo_inverse_sqrt, psd_order, range_inclusion, spectral_norm,
    without_recording, AlgebraElement, CMatrix, ModuleElement, ModuleSpace, Operator, RangeInclusion, Tolerance, C64,
};
use crate::douglas::douglas_factorize;
use crate::error::{Error, Result};

/// A finite ordered family `x_1, …, x_J` in one module, with its analysis operator cached.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameFamily {
    space: ModuleSpace,
    elements: Vec<ModuleElement>,
    analysis: Operator,
}

impl FrameFamily {
    pub fn new(space: ModuleSpace, elements: Vec<ModuleElement>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::dims("frame family", "at least one element", 0));
        }
        if let Some(bad) = elements.iter().find(|x| x.space() != space) {
            return Err(Error::dims(
                "frame family element",
                format!("{space:?}"),
                format!("{:?}", bad.space()),
            ));
        }
        let k = space.k();
        let coeffs = ModuleSpace::new(space.algebra(), elements.len())?;
        let mut mat = CMatrix::zeros(space.width(), coeffs.width());
        for (j, x) in elements.iter().enumerate() {
            mat.view_mut((0, j * k), (space.width(), k)).copy_from(&x.matrix().adjoint());
        }
        let analysis = Operator::new(space, coeffs, mat)?;
        Ok(FrameFamily {
            space,
            elements,
            analysis,
        })
    }

    /// The family `L e_1, …, L e_J` for an operator `L: A^J -> E`.
    pub fn from_synthesis(l: &Operator) -> Result<Self> {
        let elements = l
            .domain()
            .standard_basis()
            .iter()
            .map(|e| l.apply(e))
            .collect::<Result<Vec<_>>>()?;
        FrameFamily::new(l.codomain(), elements)
    }

    pub fn space(&self) -> ModuleSpace {
        self.space
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    /// `T: E -> A^J`; block column `j` of the representing matrix is `X_j^H`.
    pub fn analysis_operator(&self) -> &Operator {
        &self.analysis
    }

    /// `T*: A^J -> E`, `(c_j) ↦ Σ c_j x_j`.
    pub fn synthesis_operator(&self) -> Operator {
        self.analysis.adjoint()
    }

    /// `S = T* T`, with matrix `Σ X_j^H X_j`.
    pub fn frame_operator(&self) -> Operator {
        self.analysis.gram_domain()
    }

    /// The family `{M x_j}`.
    pub fn image(&self, m: &Operator) -> Result<FrameFamily> {
        let elements = self.elements.iter().map(|x| m.apply(x)).collect::<Result<Vec<_>>>()?;
        FrameFamily::new(m.codomain(), elements)
    }

    /// The family `{x_j + y_j}`.
    pub fn sum(&self, other: &FrameFamily) -> Result<FrameFamily> {
        if self.len() != other.len() {
            return Err(Error::dims("family sum length", self.len(), other.len()));
        }
        let elements = self
            .elements
            .iter()
            .zip(&other.elements)
            .map(|(x, y)| x.add(y))
            .collect::<Result<Vec<_>>>()?;
        FrameFamily::new(self.space, elements)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundsKind {
    Bessel,
    Frame,
    Kframe,
}

/// Optimal frame bounds. `lower` is absent for Bessel bounds and for `K = 0`, where
/// every `C > 0` works.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub kind: BoundsKind,
    pub lower: Option<f64>,
    pub upper: f64,
}

/// Every finite family is Bessel; returns `D_opt = λ_max(S)` after certifying `S ≼ D·I`.
pub fn bessel_check(f: &FrameFamily, tol: &Tolerance) -> Result<FrameBounds> {
    let s = f.frame_operator();
    let upper = hermitian_eigen(s.matrix()).max().max(0.0);
    let certificate = psd_order(&s, &Operator::identity(f.space()).scale(upper), tol)?;
    debug_assert!(certificate.holds);
    Ok(FrameBounds {
        kind: BoundsKind::Bessel,
        lower: None,
        upper,
    })
}

/// `Some((λ_min(S), λ_max(S)))` when `λ_min > rel_tol · λ_max`.
pub fn frame_check(f: &FrameFamily, tol: &Tolerance) -> Result<Option<FrameBounds>> {
    let s = f.frame_operator();
    let eig = hermitian_eigen(s.matrix());
    let (lo, hi) = (eig.min(), eig.max());
    if lo.partial_cmp(&(tol.rel_tol * hi)) != Some(std::cmp::Ordering::Greater) {
        return Ok(None);
    }
    let id = Operator::identity(f.space());
    let lower_ok = psd_order(&id.scale(lo), &s, tol)?.holds;
    let upper_ok = psd_order(&s, &id.scale(hi), tol)?.holds;
    Ok((lower_ok && upper_ok).then_some(FrameBounds {
        kind: BoundsKind::Frame,
        lower: Some(lo),
        upper: hi,
    }))
}

fn check_kframe_operator(f: &FrameFamily, k: &Operator) -> Result<()> {
    if k.domain() != f.space() || k.codomain() != f.space() {
        return Err(Error::dims(
            "K-frame operator",
            format!("{:?} -> {:?}", f.space(), f.space()),
            format!("{:?} -> {:?}", k.domain(), k.codomain()),
        ));
    }
    Ok(())
}

/// Optimal K-frame bounds, or `None` when `R(K) ⊄ R(S)` and no lower bound exists.
pub fn kframe_check(f: &FrameFamily, k: &Operator, tol: &Tolerance) -> Result<Option<FrameBounds>> {
    check_kframe_operator(f, k)?;
    let s = f.frame_operator();
    let kk = k.gram_range();
    let upper = hermitian_eigen(s.matrix()).max().max(0.0);

    if !range_inclusion(&operator_sqrt(&kk, tol)?, &operator_sqrt(&s, tol)?, tol)?.holds {
        return Ok(None);
    }
    let root_pinv = pseudo_inverse_sqrt(&s, tol)?;
    let pencil = root_pinv.compose(&kk)?.compose(&root_pinv)?;
    let top = hermitian_eigen(pencil.matrix()).max();
    let lower = if top > 0.0 {
        let c = 1.0 / top;
        if !psd_order(&kk.scale(c), &s, tol)?.holds {
            return Ok(None);
        }
        Some(c)
    } else {
        None
    };
    Ok(Some(FrameBounds {
        kind: BoundsKind::Kframe,
        lower,
        upper,
    }))
}

/// Independent estimate of `C_opt` by bisection on `C·KK* ≼ S`.
///
/// Probes run at `rel_tol = 1e-13` so the located threshold is sharp enough for a
/// `1e-6` relative comparison; they are not recorded as verdicts.
pub fn kframe_bound_bisection_oracle(f: &FrameFamily, k: &Operator, tol: &Tolerance) -> Result<f64> {
    check_kframe_operator(f, k)?;
    let s = f.frame_operator();
    let kk = k.gram_range();
    let upper = hermitian_eigen(s.matrix()).max().max(0.0);
    let k_norm_sq = kk.norm();
    if k_norm_sq == 0.0 {
        return Ok(f64::INFINITY);
    }
    let probe = Tolerance {
        rel_tol: 1e-13,
        rank_tol: tol.rank_tol,
    };
    without_recording(|| {
        let (mut lo, mut hi) = (0.0f64, upper / k_norm_sq + 1.0);
        for _ in 0..200 {
            if hi - lo <= 1e-12 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if psd_order(&kk.scale(mid), &s, &probe)?.holds {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    })
}

/// `{S^{-1} x_j}`; requires a frame.
pub fn canonical_dual(f: &FrameFamily, tol: &Tolerance) -> Result<FrameFamily> {
    if frame_check(f, tol)?.is_none() {
        return Err(Error::NotAFrame);
    }
    f.image(&pseudo_inverse(&f.frame_operator(), tol))
}

/// Reconstruction of `x` through both sides of the canonical dual pairing.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reconstruction {
    /// `Σ <x, S^{-1}x_j> x_j`.
    pub reconstruction: ModuleElement,
    pub relative_error: f64,
    /// `Σ <x, x_j> S^{-1}x_j`.
    pub dual_side: ModuleElement,
    pub dual_side_relative_error: f64,
}

fn relative_error(approx: &ModuleElement, x: &ModuleElement) -> Result<f64> {
    let err = approx.sub(x)?.norm();
    let scale = x.norm();
    Ok(if scale > 0.0 { err / scale } else { err })
}

pub fn reconstruct(f: &FrameFamily, x: &ModuleElement, tol: &Tolerance) -> Result<Reconstruction> {
    let dual = canonical_dual(f, tol)?;
    if x.space() != f.space() {
        return Err(Error::dims(
            "reconstruction",
            format!("{:?}", f.space()),
            format!("{:?}", x.space()),
        ));
    }
    let coeffs = dual.analysis_operator().apply(x)?;
    let reconstruction = f.synthesis_operator().apply(&coeffs)?;
    let dual_side = dual.synthesis_operator().apply(&f.analysis_operator().apply(x)?)?;
    Ok(Reconstruction {
        relative_error: relative_error(&reconstruction, x)?,
        dual_side_relative_error: relative_error(&dual_side, x)?,
        reconstruction,
        dual_side,
    })
}

/// Coefficients `a_j` with `Kx = Σ a_j x_j` and `Σ a_j a_j* ≼ C<x, x>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomicDecomposition {
    pub coefficients: Vec<AlgebraElement>,
    /// `C = ‖D‖²` for the minimum-norm solution of `K = T* D`.
    pub bound: f64,
    /// `‖Σ a_j x_j - Kx‖`.
    pub synthesis_residual: f64,
    pub bound_certified: bool,
}

pub fn atomic_coefficients(
    f: &FrameFamily,
    k: &Operator,
    x: &ModuleElement,
    tol: &Tolerance,
) -> Result<AtomicDecomposition> {
    check_kframe_operator(f, k)?;
    let synthesis = f.synthesis_operator();
    let report = douglas_factorize(k, &synthesis, tol)?;
    let Some(d) = report.solution.filter(|_| report.inclusion_holds) else {
        return Err(Error::NotAtomicSystem {
            residual: report.inclusion_residual,
        });
    };
    let coeffs = d.apply(x)?;
    let kx = k.apply(x)?;
    let synthesis_residual = synthesis.apply(&coeffs)?.sub(&kx)?.norm();
    let bound = d.norm().powi(2);
    let gram = coeffs.inner(&coeffs)?;
    let xx = x.inner(x)?;
    let slack = AlgebraElement::from_matrix(xx.matrix() * C64::new(bound, 0.0) - gram.matrix())?;
    Ok(AtomicDecomposition {
        coefficients: coeffs.blocks(),
        bound,
        synthesis_residual,
        bound_certified: slack.is_positive(tol.rel_tol.max(1e-12) * 10.0),
    })
}

/// The three equivalent conditions for `{x_j}` to be an atomic system for `K`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomicSystemReport {
    /// Every `Kx` expands over the family with controlled coefficients.
    pub atomic: bool,
    /// `B‖K*x‖² ≤ ‖Σ <x,x_j><x_j,x>‖ ≤ C‖x‖²` for some `B, C > 0`.
    pub norm_inequality: bool,
    /// `K = T* D` is solvable.
    pub factorization: bool,
    /// `B = C_opt` from [`kframe_check`] when the family is a K-frame.
    pub lower_b: Option<f64>,
    pub upper_c: f64,
    pub inclusion_residual: f64,
    /// `‖K* restricted to N(S)‖`; a nonzero value gives `x` with ratio zero.
    pub kernel_witness_residual: f64,
    /// Smallest sampled `‖<Sx, x>‖ / ‖K*x‖²`.
    pub sampled_min_ratio: Option<f64>,
}

const NORM_SAMPLES: usize = 64;

pub fn atomic_system_check(f: &FrameFamily, k: &Operator, tol: &Tolerance) -> Result<AtomicSystemReport> {
    check_kframe_operator(f, k)?;
    let synthesis = f.synthesis_operator();
    let s = f.frame_operator();
    let inclusion = range_inclusion(k, &synthesis, tol)?;
    let factor = douglas_factorize(k, &synthesis, tol)?;
    let factorization = factor.residual <= tol.rel_tol * k.norm();
    let bounds = kframe_check(f, k, tol)?;
    let upper_c = bessel_check(f, tol)?.upper;

    // N(S) directions with K*x ≠ 0 break the lower norm inequality outright.
    let kernel = kernel_projector(&s, tol);
    let k_adj_on_kernel = k.adjoint().compose(&kernel)?;
    let kernel_witness_residual = k_adj_on_kernel.norm();
    let kernel_ok = kernel_witness_residual <= tol.rel_tol * k.norm();

    let mut rng = ChaCha8Rng::seed_from_u64(0x6b66);
    let space = f.space();
    let mut min_ratio: Option<f64> = None;
    for _ in 0..NORM_SAMPLES {
        let mat = CMatrix::from_fn(space.k(), space.width(), |_, _| {
            C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
        });
        let x = ModuleElement::new(space, mat)?;
        let kx = k.adjoint().apply(&x)?;
        let denom = kx.norm().powi(2);
        if denom <= f64::MIN_POSITIVE {
            continue;
        }
        let num = s.apply(&x)?.inner(&x)?.norm();
        let r = num / denom;
        min_ratio = Some(min_ratio.map_or(r, |m: f64| m.min(r)));
    }
    let sampled_ok = match (bounds.and_then(|b| b.lower), min_ratio) {
        (Some(b), Some(r)) => b <= r * (1.0 + 1e-9) + tol.rel_tol,
        _ => true,
    };

    Ok(AtomicSystemReport {
        atomic: inclusion.holds,
        norm_inequality: kernel_ok && sampled_ok,
        factorization,
        lower_b: bounds.and_then(|b| b.lower),
        upper_c,
        inclusion_residual: inclusion.residual,
        kernel_witness_residual,
        sampled_min_ratio: min_ratio,
    })
}

/// The standard basis of `E`: a frame, hence an atomic system for every `K`.
pub fn construct_atomic_system(space: ModuleSpace) -> FrameFamily {
    FrameFamily::new(space, space.standard_basis()).expect("standard basis is a valid family")
}

/// K-frame test through a synthesis-type operator: `L e_j = x_j` and `R(K) ⊆ R(L)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SynthesisCharacterization {
    pub verdict: bool,
    /// `max_j ‖L e_j - x_j‖`.
    pub basis_residual: f64,
    pub inclusion: RangeInclusion,
}

pub fn kframe_via_synthesis(f: &FrameFamily, k: &Operator, tol: &Tolerance) -> Result<SynthesisCharacterization> {
    check_kframe_operator(f, k)?;
    let l = f.synthesis_operator();
    let mut basis_residual = 0.0f64;
    for (e, x) in l.domain().standard_basis().iter().zip(f.elements()) {
        basis_residual = basis_residual.max(l.apply(e)?.sub(x)?.norm());
    }
    let inclusion = range_inclusion(k, &l, tol)?;
    let scale = f.elements().iter().fold(0.0f64, |m, x| m.max(x.norm()));
    Ok(SynthesisCharacterization {
        verdict: inclusion.holds && basis_residual <= tol.rel_tol * scale,
        basis_residual,
        inclusion,
    })
}

/// `‖synthesis‖²`, an upper bound for `D_opt` when synthesis is bounded.
pub fn synthesis_norm_sq(f: &FrameFamily) -> f64 {
    spectral_norm(f.synthesis_operator().matrix()).powi(2)
}
