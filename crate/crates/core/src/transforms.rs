//! Images of K-frames under adjointable operators.
//!
//! Each check returns a [`TransformReport`] that separates the stated hypotheses from
//! the conclusion, so a caller can tell "hypothesis failed, no claim" apart from
//! "hypotheses held and the conclusion failed". Conditions that an argument relies on
//! without stating them are logged in `proof_conditions` and never enter the verdict.
//!
//! At finite rank "K has dense range" means K is surjective; every report that uses
//! it says so in `notes`.

use serde::{Deserialize, Serialize};

use crate::algebra::{
    hermitian_eigen, hermitian_part, operator_sqrt, pseudo_inverse, pseudo_inverse_sqrt, psd_order, range_inclusion, range_projector, rank, Operator,
    Tolerance,
};
use crate::douglas::douglas_factorize;
use crate::error::{Error, Result};
use crate::frames::{bessel_check, kframe_check, BoundsKind, FrameBounds, FrameFamily};
use crate::hypothesis::{all_hold, Hypothesis};

/// Relative slack for comparing a measured optimal bound with a derived one.
pub const BOUND_SLACK: f64 = 1e-6;

const DENSE_RANGE_NOTE: &str = "dense range of K read as surjectivity at finite rank";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformReport {
    pub hypotheses_hold: bool,
    pub conclusion_holds: bool,
    /// Hypotheses and conclusion both hold.
    pub verdict: bool,
    /// Measured optimal bounds of the family the conclusion is about.
    pub derived_bounds: Option<FrameBounds>,
    /// The constant the argument produces, where it applies.
    pub theorem_bound: Option<f64>,
    pub hypothesis_log: Vec<Hypothesis>,
    pub proof_conditions: Vec<Hypothesis>,
    /// Outcome under a second reading of the conclusion, where one exists.
    pub alternative: Option<AlternativeReading>,
    pub notes: Vec<String>,
}

/// The conclusion evaluated under a different reading of the statement. Never part of
/// the verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlternativeReading {
    pub reading: String,
    pub holds: bool,
    /// Measured optimal lower bound under this reading.
    pub measured_lower: Option<f64>,
    /// Lower bound an argument yields under this reading.
    pub lower_bound: Option<f64>,
}

impl TransformReport {
    fn new(
        hypothesis_log: Vec<Hypothesis>,
        conclusion_holds: bool,
        derived_bounds: Option<FrameBounds>,
        theorem_bound: Option<f64>,
    ) -> Self {
        let hypotheses_hold = all_hold(&hypothesis_log);
        TransformReport {
            hypotheses_hold,
            conclusion_holds,
            verdict: hypotheses_hold && conclusion_holds,
            derived_bounds,
            theorem_bound,
            hypothesis_log,
            proof_conditions: Vec::new(),
            alternative: None,
            notes: Vec::new(),
        }
    }

    /// Hypotheses held but the conclusion did not.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_hold && !self.conclusion_holds
    }

    fn with_proof_conditions(mut self, conditions: Vec<Hypothesis>) -> Self {
        self.proof_conditions = conditions;
        self
    }

    fn with_alternative(mut self, alternative: AlternativeReading) -> Self {
        self.alternative = Some(alternative);
        self
    }

    fn with_note(mut self, note: &str) -> Self {
        self.notes.push(note.to_string());
        self
    }
}

fn check_endomorphism(op: &Operator, f: &FrameFamily, what: &'static str) -> Result<()> {
    if op.domain() != f.space() || op.codomain() != f.space() {
        return Err(Error::dims(
            what,
            format!("{:?} -> {:?}", f.space(), f.space()),
            format!("{:?} -> {:?}", op.domain(), op.codomain()),
        ));
    }
    Ok(())
}

fn surjective(name: &str, t: &Operator, tol: &Tolerance) -> Hypothesis {
    let r = rank(t, tol);
    let full = t.codomain().width();
    Hypothesis::new(name, r == full, (full - r) as f64)
}

fn is_kframe(name: &str, bounds: &Option<FrameBounds>) -> Hypothesis {
    Hypothesis::new(name, bounds.is_some(), 0.0)
}

/// `‖KT - TK‖ / (‖K‖‖T‖)`, zero when either factor vanishes.
pub fn commutator_residual(k: &Operator, t: &Operator) -> Result<f64> {
    let kt = k.compose(t)?;
    let tk = t.compose(k)?;
    let denom = k.norm() * t.norm();
    let diff = kt.sub(&tk)?.norm();
    Ok(if denom > 0.0 { diff / denom } else { diff })
}

fn range_condition(name: &str, small: &Operator, big: &Operator, tol: &Tolerance) -> Result<Hypothesis> {
    let inc = range_inclusion(small, big, tol)?;
    Ok(Hypothesis::new(name, inc.holds, inc.residual))
}

/// `{M x_j}` with its optimal Bessel bound and the bound `D‖M‖²` from `D = D_opt(F)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BesselImage {
    pub family: FrameFamily,
    pub bounds: FrameBounds,
    pub certified_bound: f64,
    pub holds: bool,
}

pub fn bessel_image(f: &FrameFamily, m: &Operator, tol: &Tolerance) -> Result<BesselImage> {
    check_endomorphism(m, f, "Bessel image operator")?;
    let d = bessel_check(f, tol)?.upper;
    let family = f.image(m)?;
    let bounds = bessel_check(&family, tol)?;
    let certified_bound = d * m.norm().powi(2);
    Ok(BesselImage {
        holds: bounds.upper <= certified_bound * (1.0 + 1e-9) + 1e-12,
        family,
        bounds,
        certified_bound,
    })
}

/// `R(M) ⊆ R(K)` and `F` a K-frame give an M-frame with lower bound `λ/λ′`,
/// where `MM* ≼ λ′KK*`.
pub fn mframe_from_kframe(f: &FrameFamily, k: &Operator, m: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(m, f, "M")?;
    let k_bounds = kframe_check(f, k, tol)?;
    let hyps = vec![
        is_kframe("family is a K-frame", &k_bounds),
        range_condition("R(M) ⊆ R(K)", m, k, tol)?,
        Hypothesis::by_construction("closure of R(K*) complemented"),
    ];
    let m_bounds = kframe_check(f, m, tol)?;
    let lambda_prime = douglas_factorize(m, k, tol)?.lambda_min;
    let lambda = k_bounds.and_then(|b| b.lower);
    let theorem_bound = match (lambda, lambda_prime) {
        (Some(l), Some(lp)) if lp > 0.0 => Some(l / lp),
        _ => None,
    };
    let conclusion = match (m_bounds, theorem_bound) {
        (Some(b), Some(c)) => b.lower.is_some_and(|lower| lower >= c * (1.0 - BOUND_SLACK)),
        (Some(_), None) => true,
        (None, _) => false,
    };
    Ok(TransformReport::new(hyps, conclusion, m_bounds, theorem_bound))
}

/// `K` surjective, `F` and `{T x_j}` K-frames imply `T` surjective.
pub fn surjectivity_consequence(f: &FrameFamily, k: &Operator, t: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(t, f, "T")?;
    let image_bounds = kframe_check(&f.image(t)?, k, tol)?;
    let hyps = vec![
        surjective("K surjective", k, tol),
        is_kframe("family is a K-frame", &kframe_check(f, k, tol)?),
        is_kframe("image family is a K-frame", &image_bounds),
        Hypothesis::by_construction("T has closed range"),
    ];
    let conclusion = surjective("T surjective", t, tol).holds;
    Ok(TransformReport::new(hyps, conclusion, image_bounds, None).with_note(DENSE_RANGE_NOTE))
}

/// Largest `C` with `P(S - C·KK*)P ≽ 0` for the orthogonal projector `P`; `None` if no
/// `C > 0` works. `Some(None)` signals that the compressed `KK*` vanishes.
fn compressed_lower_bound(
    s: &Operator,
    kk: &Operator,
    p: &Operator,
    tol: &Tolerance,
) -> Result<Option<Option<f64>>> {
    let a = p.compose(s)?.compose(p)?;
    let b = p.compose(kk)?.compose(p)?;
    let a = Operator::on(a.domain(), hermitian_part(a.matrix()))?;
    let b = Operator::on(b.domain(), hermitian_part(b.matrix()))?;
    if !range_inclusion(&operator_sqrt(&b, tol)?, &operator_sqrt(&a, tol)?, tol)?.holds {
        return Ok(None);
    }
    let root = pseudo_inverse_sqrt(&a, tol)?;
    let top = hermitian_eigen(root.compose(&b)?.compose(&root)?.matrix()).max();
    if top <= 0.0 {
        return Ok(Some(None));
    }
    let c = 1.0 / top;
    if !psd_order(&b.scale(c), &a, tol)?.holds {
        return Ok(None);
    }
    Ok(Some(Some(c)))
}

/// `KT = TK` and `F` a K-frame give `{T x_j}` a K-frame for the submodule `R(T)`.
///
/// The conclusion is `P(S′ - C·KK*)P ≽ 0` for some `C > 0`, with `S′` the frame
/// operator of `{T x_j}` and `P` the projector onto `R(T)`. Logged proof conditions:
/// `R(T*K*) ⊆ R(K*T*)`, which the argument cites, and `K*(R(T)) ⊆ R(T)`, which its
/// first step `K*x = (TT†)* K*x` for `x ∈ R(T)` needs.
pub fn restricted_kframe(f: &FrameFamily, k: &Operator, t: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(t, f, "T")?;
    let k_bounds = kframe_check(f, k, tol)?;
    let comm = commutator_residual(k, t)?;
    let hyps = vec![
        is_kframe("family is a K-frame", &k_bounds),
        Hypothesis::new("KT = TK", comm <= tol.rel_tol, comm),
        Hypothesis::by_construction("T has closed range"),
        Hypothesis::by_construction("closure of R(TK) complemented"),
    ];

    let k_adj = k.adjoint();
    let t_adj = t.adjoint();
    let p = range_projector(t, tol);
    let kstar_on_range = k_adj.compose(&p)?;
    let conditions = vec![
        range_condition("R(T*K*) ⊆ R(K*T*)", &t_adj.compose(&k_adj)?, &k_adj.compose(&t_adj)?, tol)?,
        range_condition("K* maps R(T) into R(T)", &kstar_on_range, &p, tol)?,
    ];

    let image = f.image(t)?;
    let s_image = image.frame_operator();
    let restricted = compressed_lower_bound(&s_image, &k.gram_range(), &p, tol)?;
    let upper = bessel_check(&image, tol)?.upper;
    let derived = restricted.map(|lower| FrameBounds {
        kind: BoundsKind::Kframe,
        lower,
        upper,
    });

    let pinv_norm = pseudo_inverse(t, tol).norm();
    // λ·λ′·‖T†‖⁻², with ‖T*K*x‖² ≤ (1/λ′)‖K*T*x‖² from R(KT) ⊆ R(TK).
    let theorem_bound = match (k_bounds.and_then(|b| b.lower), douglas_factorize(&k.compose(t)?, &t.compose(k)?, tol)?.lambda_min) {
        (Some(lambda), Some(ld)) if ld > 0.0 && pinv_norm > 0.0 => Some(lambda / (ld * pinv_norm * pinv_norm)),
        _ => None,
    };

    // Intrinsic reading: K acts on R(T) by compression, so its adjoint there is PK*P and
    // the lower inequality reads P(S′ - C·PKPK*P)P ≽ 0. The bound λ/‖T†‖² follows from
    // ‖T*y‖ ≥ ‖Py‖/‖T†‖ applied to y = K*x.
    let k_on_range = p.compose(k)?.compose(&p)?;
    let intrinsic = compressed_lower_bound(&s_image, &k_on_range.gram_range(), &p, tol)?;
    let intrinsic_bound = match k_bounds.and_then(|b| b.lower) {
        Some(lambda) if pinv_norm > 0.0 => Some(lambda / (pinv_norm * pinv_norm)),
        _ => None,
    };
    let intrinsic_holds = match (intrinsic, intrinsic_bound) {
        (Some(Some(c)), Some(b)) => c >= b * (1.0 - BOUND_SLACK),
        (Some(_), _) => true,
        (None, _) => false,
    };
    let alternative = AlternativeReading {
        reading: "K restricted to R(T) with adjoint PK*P".to_string(),
        holds: intrinsic_holds,
        measured_lower: intrinsic.flatten(),
        lower_bound: intrinsic_bound,
    };
    Ok(TransformReport::new(hyps, restricted.is_some(), derived, theorem_bound)
        .with_proof_conditions(conditions)
        .with_alternative(alternative))
}

/// A co-isometry `T` with `R(T*K*) ⊆ R(K*T*)` maps a K-frame to a K-frame for `E`,
/// with lower bound `λ/λ′` where `‖T*K*x‖² ≤ λ′‖K*T*x‖²`.
///
/// That norm inequality is equivalent to `R(KT) ⊆ R(TK)`, logged as a proof condition.
pub fn coisometry_image(f: &FrameFamily, k: &Operator, t: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(t, f, "T")?;
    let k_bounds = kframe_check(f, k, tol)?;
    let id = Operator::identity(f.space());
    let coiso = t.gram_range().sub(&id)?.norm();
    let k_adj = k.adjoint();
    let t_adj = t.adjoint();
    let hyps = vec![
        is_kframe("family is a K-frame", &k_bounds),
        Hypothesis::new("TT* = I", coiso <= tol.rel_tol, coiso),
        range_condition("R(T*K*) ⊆ R(K*T*)", &t_adj.compose(&k_adj)?, &k_adj.compose(&t_adj)?, tol)?,
        Hypothesis::by_construction("closure of R(TK) complemented"),
    ];
    let kt = k.compose(t)?;
    let tk = t.compose(k)?;
    let conditions = vec![range_condition("R(KT) ⊆ R(TK)", &kt, &tk, tol)?];

    let image_bounds = kframe_check(&f.image(t)?, k, tol)?;
    let lambda_prime = douglas_factorize(&kt, &tk, tol)?.lambda_min;
    let theorem_bound = match (k_bounds.and_then(|b| b.lower), lambda_prime) {
        (Some(l), Some(lp)) if lp > 0.0 => Some(l / lp),
        _ => None,
    };
    let conclusion = match (image_bounds, theorem_bound) {
        (Some(b), Some(c)) => b.lower.is_some_and(|lower| lower >= c * (1.0 - BOUND_SLACK)),
        (Some(_), None) => true,
        (None, _) => false,
    };
    Ok(TransformReport::new(hyps, conclusion, image_bounds, theorem_bound).with_proof_conditions(conditions))
}

/// For surjective `K`, `TK = KT` and `F` a K-frame: `{T x_j}` is a K-frame iff `T` is
/// surjective. The conclusion is agreement of the two sides.
pub fn surjectivity_equivalence(f: &FrameFamily, k: &Operator, t: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(t, f, "T")?;
    let comm = commutator_residual(k, t)?;
    let hyps = vec![
        surjective("K surjective", k, tol),
        Hypothesis::new("TK = KT", comm <= tol.rel_tol, comm),
        is_kframe("family is a K-frame", &kframe_check(f, k, tol)?),
        Hypothesis::by_construction("T has closed range"),
    ];
    let image_bounds = kframe_check(&f.image(t)?, k, tol)?;
    let t_onto = surjective("T surjective", t, tol).holds;
    let conclusion = image_bounds.is_some() == t_onto;
    Ok(TransformReport::new(hyps, conclusion, image_bounds, None)
        .with_proof_conditions(vec![Hypothesis::new("T surjective", t_onto, 0.0)])
        .with_note(DENSE_RANGE_NOTE))
}

/// `K` surjective and both `{T x_j}` and `{T* x_j}` K-frames imply `T` invertible.
pub fn invertibility_consequence(f: &FrameFamily, k: &Operator, t: &Operator, tol: &Tolerance) -> Result<TransformReport> {
    check_endomorphism(k, f, "K")?;
    check_endomorphism(t, f, "T")?;
    let image_bounds = kframe_check(&f.image(t)?, k, tol)?;
    let hyps = vec![
        surjective("K surjective", k, tol),
        is_kframe("family is a K-frame", &kframe_check(f, k, tol)?),
        is_kframe("{T x_j} is a K-frame", &image_bounds),
        is_kframe("{T* x_j} is a K-frame", &kframe_check(&f.image(&t.adjoint())?, k, tol)?),
        Hypothesis::by_construction("T has closed range"),
    ];
    let conclusion = rank(t, tol) == f.space().width();
    Ok(TransformReport::new(hyps, conclusion, image_bounds, None).with_note(DENSE_RANGE_NOTE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{real_matrix, ModuleElement, ModuleSpace};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn space(n: usize) -> ModuleSpace {
        ModuleSpace::of(1, n).unwrap()
    }

    fn onb(n: usize) -> FrameFamily {
        FrameFamily::new(space(n), space(n).standard_basis()).unwrap()
    }

    fn op(n: usize, data: &[f64]) -> Operator {
        Operator::on(space(n), real_matrix(n, n, data)).unwrap()
    }

    #[test]
    fn bessel_image_examples() {
        let f = onb(2);
        let id = Operator::identity(space(2));
        let r = bessel_image(&f, &id, &tol()).unwrap();
        assert!(r.holds && (r.bounds.upper - 1.0).abs() < 1e-12);
        let r = bessel_image(&f, &Operator::zero(space(2), space(2)), &tol()).unwrap();
        assert!(r.holds && r.bounds.upper == 0.0);
        let r = bessel_image(&f, &id.scale(2.0), &tol()).unwrap();
        assert!(r.holds && (r.bounds.upper - 4.0).abs() < 1e-12);
    }

    #[test]
    fn mframe_examples() {
        let f = onb(2);
        let k = op(2, &[1.0, 2.0, 0.0, 1.0]);
        let r = mframe_from_kframe(&f, &k, &k, &tol()).unwrap();
        assert!(r.verdict);
        let r = mframe_from_kframe(&f, &k, &k.scale(0.5), &tol()).unwrap();
        assert!(r.verdict);
        let lambda = kframe_check(&f, &k, &tol()).unwrap().unwrap().lower.unwrap();
        assert!((r.theorem_bound.unwrap() - 4.0 * lambda).abs() < 1e-9 * lambda);

        let e1 = FrameFamily::new(space(2), vec![ModuleElement::scalar_row(&[1.0, 0.0])]).unwrap();
        let r = mframe_from_kframe(&e1, &Operator::diagonal(&[1.0, 0.0]), &Operator::diagonal(&[0.0, 1.0]), &tol())
            .unwrap();
        assert!(!r.hypotheses_hold && !r.hypothesis_log[1].holds);
    }

    #[test]
    fn surjectivity_examples() {
        let f = onb(2);
        let k = op(2, &[2.0, 1.0, 0.0, 1.0]);
        let id = Operator::identity(space(2));
        assert!(surjectivity_consequence(&f, &k, &id, &tol()).unwrap().verdict);
        let rot = op(2, &[0.6, 0.8, -0.8, 0.6]);
        assert!(surjectivity_consequence(&f, &k, &rot, &tol()).unwrap().verdict);
        let r = surjectivity_consequence(&f, &k, &Operator::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        assert!(!r.hypotheses_hold && !r.is_violation());
    }

    #[test]
    fn restricted_identity_reduces_to_kframe() {
        let f = onb(2);
        let k = op(2, &[1.0, 2.0, 0.0, 1.0]);
        let r = restricted_kframe(&f, &k, &Operator::identity(space(2)), &tol()).unwrap();
        assert!(r.verdict);
        let direct = kframe_check(&f, &k, &tol()).unwrap().unwrap();
        assert!((r.derived_bounds.unwrap().lower.unwrap() - direct.lower.unwrap()).abs() < 1e-9);
    }

    #[test]
    fn restricted_projection_example() {
        let p = Operator::diagonal(&[1.0, 0.0]);
        let r = restricted_kframe(&onb(2), &p, &p, &tol()).unwrap();
        assert!(r.verdict);
        assert!((r.derived_bounds.unwrap().lower.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn restricted_non_commuting_makes_no_claim() {
        let k = op(2, &[0.0, 1.0, 0.0, 0.0]);
        let r = restricted_kframe(&onb(2), &k, &Operator::diagonal(&[1.0, 0.0]), &tol()).unwrap();
        assert!(!r.hypotheses_hold && !r.is_violation());
    }

    /// `T e2 = e1`, `K = T`, family `{e1}`: `KT = TK = 0`, `{T e1} = {0}`, but
    /// `K* e1 = e2 ≠ 0` for `e1 ∈ R(T)`.
    #[test]
    fn restricted_statement_fails_for_nilpotent_pair() {
        // Rows are images of basis vectors: e2 ↦ e1.
        let t = op(2, &[0.0, 0.0, 1.0, 0.0]);
        let e1 = FrameFamily::new(space(2), vec![ModuleElement::scalar_row(&[1.0, 0.0])]).unwrap();
        let r = restricted_kframe(&e1, &t, &t, &tol()).unwrap();
        assert!(r.hypotheses_hold);
        assert!(r.is_violation());
        assert!(!r.proof_conditions[1].holds);
        assert!(r.alternative.unwrap().holds);
    }

    #[test]
    fn coisometry_examples() {
        let f = onb(2);
        let rot = op(2, &[0.6, 0.8, -0.8, 0.6]);
        let k = rot.scale(2.0);
        let r = coisometry_image(&f, &k, &rot, &tol()).unwrap();
        assert!(r.verdict);
        let id = Operator::identity(space(2));
        assert!(coisometry_image(&f, &k, &id, &tol()).unwrap().verdict);

        // A partial isometry that is not co-isometric.
        let t = Operator::diagonal(&[1.0, 0.0]);
        let r = coisometry_image(&f, &id, &t, &tol()).unwrap();
        assert!(!r.hypothesis_log[1].holds && !r.is_violation());
    }

    /// In `C³`: `K = e1 e2*` (maps e2 to e1), `T` rotates the `(e1, e3)` plane and fixes
    /// `e2`, family `{e1}`. `T` is unitary and `R(T*K*) = R(K*T*) = span(e2)`, yet
    /// `{T e1}` misses `R(K) = span(e1)`.
    #[test]
    fn coisometry_statement_fails_without_kt_in_tk() {
        let (c, s) = (0.6, 0.8);
        // Row i is the image of e_i.
        let t = op(3, &[c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c]);
        let k = op(3, &[0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let e1 = FrameFamily::new(space(3), vec![ModuleElement::scalar_row(&[1.0, 0.0, 0.0])]).unwrap();
        let r = coisometry_image(&e1, &k, &t, &tol()).unwrap();
        assert!(r.hypotheses_hold);
        assert!(r.is_violation());
        assert!(!r.proof_conditions[0].holds);
    }

    #[test]
    fn equivalence_and_invertibility_examples() {
        let f = onb(2);
        let k = op(2, &[2.0, 0.0, 0.0, 1.0]);
        let t = Operator::diagonal(&[1.0, 0.0]);
        let r = surjectivity_equivalence(&f, &k, &t, &tol()).unwrap();
        assert!(r.verdict && r.derived_bounds.is_none());
        let r = surjectivity_equivalence(&f, &k, &Operator::diagonal(&[3.0, -1.0]), &tol()).unwrap();
        assert!(r.verdict && r.derived_bounds.is_some());

        let id = Operator::identity(space(2));
        assert!(invertibility_consequence(&f, &k, &id, &tol()).unwrap().verdict);
        let rot = op(2, &[0.6, 0.8, -0.8, 0.6]);
        assert!(invertibility_consequence(&f, &k, &rot, &tol()).unwrap().verdict);
    }
}
