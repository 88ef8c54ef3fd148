//! Randomized verification suites, one per statement.
//!
//! Trial `i` of a suite draws from the ChaCha8 stream `(suite seed, i)`, where the suite
//! seed mixes the user seed with the suite id. Trials run in index order on one thread
//! and their outcomes are folded in that order, so a report depends only on
//! `(id, trials, seed, tolerance)`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::generate::{
    commuting_pair, douglas_pair, family_on_subspace, kframe_for, orthonormal_rows, random_block_circulant, random_frame,
    random_generic_kframe_pair, random_kframe, sum_pair, unitary_vectors, MAX_J, MAX_K, MAX_N,
};
use super::rng::{any_rank, complete_basis, invertible, operator_of_rank, random_element, random_unitary, row_space_basis, trial_rng};
use crate::algebra::{
    kernel_projector, operator_sqrt, pseudo_inverse, psd_order, psd_sampling_oracle, range_inclusion, range_projector, rank,
    record_psd_decisions, sample_positive, spectral_norm, CMatrix, ModuleSpace, Operator, PsdDecision, Tolerance, C64,
};
use crate::douglas::{douglas_factorize, kframe_sum, sum_range_sqrt_check, two_term_douglas};
use crate::error::{Error, Result};
use crate::frames::{
    atomic_coefficients, atomic_system_check, bessel_check, canonical_dual, construct_atomic_system, frame_check,
    kframe_bound_bisection_oracle, kframe_check, kframe_via_synthesis, reconstruct, synthesis_norm_sq, FrameFamily,
};
use crate::hypothesis::all_hold;
use crate::transforms::{
    bessel_image, coisometry_image, invertibility_consequence, mframe_from_kframe, restricted_kframe,
    surjectivity_consequence, surjectivity_equivalence, TransformReport,
};
use crate::unitary::{
    analysis_min_singular_value, circulant_deviation, cyclic_shift_system, generator_from_vector, is_wandering,
    kframe_vector_check, vector_from_generator,
};

/// Trials per operator in the sampling oracle replay.
pub const AUDIT_ORACLE_TRIALS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteKind {
    /// An identity checked on every instance.
    Identity,
    /// Several verdicts that must agree on every instance.
    Equivalence,
    /// Hypotheses imply a conclusion; only hypothesis-satisfying instances count.
    Implication,
    /// Exploratory measurement with nothing asserted.
    Experiment,
}

type TrialFn = fn(&mut ChaCha8Rng, &Tolerance, &mut Trial) -> Result<()>;

pub struct Suite {
    pub id: &'static str,
    pub statement: &'static str,
    pub kind: SuiteKind,
    pub default_trials: usize,
    /// Required number of satisfying instances for a pass.
    pub min_satisfying: usize,
    run: TrialFn,
}

/// Per-trial accumulator filled by a suite's trial function.
#[derive(Debug, Default)]
pub struct Trial {
    satisfying: bool,
    residual: f64,
    failures: Vec<String>,
    counters: Vec<&'static str>,
}

impl Trial {
    fn satisfying(&mut self) {
        self.satisfying = true;
    }

    fn residual(&mut self, r: f64) {
        if r.is_nan() {
            self.failures.push("residual is NaN".into());
        } else {
            self.residual = self.residual.max(r);
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn count(&mut self, name: &'static str) {
        self.counters.push(name);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub trial: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PsdAudit {
    pub decisions: usize,
    pub disagreements: usize,
    pub oracle_trials: usize,
    pub first_disagreement: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub statement: String,
    pub kind: SuiteKind,
    pub seed: u64,
    pub trials: usize,
    pub satisfying: usize,
    pub min_satisfying: usize,
    pub violations: usize,
    pub max_residual: f64,
    pub counters: BTreeMap<String, usize>,
    pub first_violation: Option<Violation>,
    pub psd_audit: Option<PsdAudit>,
    /// No violations, enough satisfying instances, and no audit disagreement.
    pub passed: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub violations: usize,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Overrides every suite's default trial count.
    pub trials: Option<usize>,
    /// Replays every positive-order verdict against the sampling oracle.
    pub psd_audit: bool,
}

pub fn suites() -> &'static [Suite] {
    SUITES
}

/// Looks up a suite id; underscores are accepted in place of hyphens.
pub fn find_suite(id: &str) -> Result<&'static Suite> {
    let normalized = id.replace('_', "-");
    SUITES
        .iter()
        .find(|s| s.id == normalized)
        .ok_or_else(|| Error::UnknownSuite(id.to_string()))
}

/// FNV-1a, so suite seeds do not depend on the standard library's hasher.
fn fnv1a(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

fn mix(a: u64, b: u64) -> u64 {
    let mut z = a ^ b.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_suite(id: &str, opts: &RunOptions, tol: &Tolerance) -> Result<SuiteReport> {
    let suite = find_suite(id)?;
    Ok(suite.run(opts, tol))
}

pub fn run_all(opts: &RunOptions, tol: &Tolerance) -> SuiteSummary {
    let suites: Vec<SuiteReport> = SUITES.iter().map(|s| s.run(opts, tol)).collect();
    SuiteSummary {
        seed: opts.seed,
        violations: suites.iter().map(|r| r.violations).sum(),
        passed: suites.iter().all(|r| r.passed),
        suites,
    }
}

impl Suite {
    pub fn run(&self, opts: &RunOptions, tol: &Tolerance) -> SuiteReport {
        let start = Instant::now();
        let trials = opts.trials.unwrap_or(self.default_trials);
        let suite_seed = mix(opts.seed, fnv1a(self.id));
        let mut satisfying = 0;
        let mut violations = 0;
        let mut max_residual = 0.0f64;
        let mut counters = BTreeMap::new();
        let mut first_violation = None;
        let mut audit = opts.psd_audit.then_some(PsdAudit {
            decisions: 0,
            disagreements: 0,
            oracle_trials: AUDIT_ORACLE_TRIALS,
            first_disagreement: None,
        });

        for i in 0..trials {
            let mut rng = trial_rng(suite_seed, i as u64);
            let mut trial = Trial::default();
            let (outcome, decisions) = if opts.psd_audit {
                record_psd_decisions(|| (self.run)(&mut rng, tol, &mut trial))
            } else {
                ((self.run)(&mut rng, tol, &mut trial), Vec::new())
            };
            if let Err(e) = outcome {
                trial.failures.push(format!("error: {e}"));
            }
            if trial.satisfying {
                satisfying += 1;
            }
            max_residual = max_residual.max(trial.residual);
            for c in trial.counters {
                *counters.entry(c.to_string()).or_insert(0) += 1;
            }
            if !trial.failures.is_empty() && self.kind != SuiteKind::Experiment {
                violations += 1;
                if first_violation.is_none() {
                    first_violation = Some(Violation {
                        trial: i,
                        message: trial.failures.join("; "),
                    });
                }
            }
            if let Some(audit) = audit.as_mut() {
                replay(audit, &decisions, mix(suite_seed, i as u64), i);
            }
        }

        let audit_clean = audit.as_ref().is_none_or(|a| a.disagreements == 0);
        SuiteReport {
            suite: self.id.to_string(),
            statement: self.statement.to_string(),
            kind: self.kind,
            seed: opts.seed,
            trials,
            satisfying,
            min_satisfying: self.min_satisfying,
            violations,
            max_residual,
            counters,
            first_violation,
            psd_audit: audit,
            passed: violations == 0 && satisfying >= self.min_satisfying.min(trials) && audit_clean,
            wall_time: start.elapsed(),
        }
    }
}

fn replay(audit: &mut PsdAudit, decisions: &[PsdDecision], seed: u64, trial: usize) {
    for (j, d) in decisions.iter().enumerate() {
        audit.decisions += 1;
        let oracle = sample_positive(&d.difference, d.k, AUDIT_ORACLE_TRIALS, mix(seed, j as u64), d.rel_tol);
        if oracle.positive != d.holds {
            audit.disagreements += 1;
            if audit.first_disagreement.is_none() {
                audit.first_disagreement = Some(Violation {
                    trial,
                    message: format!(
                        "decision {j}: matrix verdict {} but oracle {} ({}x{} operator)",
                        d.holds,
                        oracle.positive,
                        d.difference.nrows(),
                        d.difference.ncols()
                    ),
                });
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Shared draws

fn draw_k(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(1..=MAX_K)
}

fn draw_space(rng: &mut ChaCha8Rng) -> ModuleSpace {
    let k = draw_k(rng);
    ModuleSpace::of(k, rng.random_range(1..=MAX_N)).expect("in range")
}

fn draw_j(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(1..=MAX_J)
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

fn rel_diff(a: f64, b: f64) -> f64 {
    rel((a - b).abs(), a.abs().max(b.abs()))
}

/// Relative spectral distance between two operators of the same shape.
fn op_distance(a: &Operator, b: &Operator) -> f64 {
    rel(spectral_norm(&(a.matrix() - b.matrix())), a.norm().max(b.norm()))
}

/// A K-frame pair half the time, an unrelated pair otherwise.
fn kframe_case(rng: &mut ChaCha8Rng) -> (FrameFamily, Operator, bool) {
    let space = draw_space(rng);
    let j = draw_j(rng);
    if rng.random_bool(0.5) {
        let (f, k) = random_kframe(rng, space, j);
        (f, k, true)
    } else {
        let (f, k) = random_generic_kframe_pair(rng, space, j);
        (f, k, false)
    }
}

/// Space and length that admit a frame (`J ≥ n`).
fn frame_dims(rng: &mut ChaCha8Rng) -> (ModuleSpace, usize) {
    let space = draw_space(rng);
    let j = rng.random_range(space.n()..=MAX_J);
    (space, j)
}

fn record_transform(trial: &mut Trial, report: &TransformReport) {
    if report.hypotheses_hold {
        trial.satisfying();
        trial.check(!report.is_violation(), || {
            let bounds = report.derived_bounds.map(|b| format!("{:?}", b.lower)).unwrap_or("absent".into());
            let failed: Vec<&str> = report
                .proof_conditions
                .iter()
                .filter(|h| !h.holds)
                .map(|h| h.name.as_str())
                .collect();
            format!(
                "hypotheses hold but conclusion fails (measured lower {bounds}, argument bound {:?}, failed proof conditions {failed:?})",
                report.theorem_bound
            )
        });
    } else {
        trial.count("hypotheses_fail");
    }
    for c in &report.proof_conditions {
        if report.hypotheses_hold && !c.holds {
            trial.count("proof_condition_fails");
        }
    }
}

// ---------------------------------------------------------------------------
// Module kernel

fn trial_range_kernel_duality(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let k = draw_k(rng);
    let dom = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let cod = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let t_rank = any_rank(rng, dom.width().min(cod.width()));
    let t = operator_of_rank(rng, dom, cod, t_rank);
    trial.satisfying();

    let p = range_projector(&t, tol);
    let q = kernel_projector(&t.adjoint(), tol);
    let dual = p.add(&q)?.sub(&Operator::identity(cod))?.norm();
    let idem = p.compose(&p)?.sub(&p)?.norm();
    let herm = p.self_adjoint_residual()?;
    trial.residual(dual.max(idem).max(herm));
    trial.check(dual <= 1e-9, || format!("P_R(T) + P_N(T*) - I = {dual:.3e}"));
    trial.check(idem.max(herm) <= 1e-9, || format!("range projector not an orthogonal projector ({idem:.3e}, {herm:.3e})"));
    let (r, r_adj) = (rank(&t, tol), rank(&t.adjoint(), tol));
    trial.check(r == r_adj, || format!("rank T = {r} but rank T* = {r_adj}"));

    let pinv = pseudo_inverse(&t, tol);
    let tpt = t.compose(&pinv.compose(&t)?)?;
    let ptp = pinv.compose(&t.compose(&pinv)?)?;
    let mp = [
        op_distance(&tpt, &t),
        op_distance(&ptp, &pinv),
        rel(t.compose(&pinv)?.self_adjoint_residual()?, 1.0),
        rel(pinv.compose(&t)?.self_adjoint_residual()?, 1.0),
    ];
    let worst = mp.iter().copied().fold(0.0, f64::max);
    trial.residual(worst);
    trial.check(worst <= 1e-9, || format!("Moore-Penrose residuals {mp:?}"));
    Ok(())
}

fn trial_gram_range(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let k = draw_k(rng);
    let dom = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let cod = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let rank = any_rank(rng, dom.width().min(cod.width()));
    let t = operator_of_rank(rng, dom, cod, rank);
    trial.satisfying();
    // R(T) and R(TT*) as subspaces of the codomain.
    let d = spectral_norm(&(range_projector(&t, tol).matrix() - range_projector(&t.gram_range(), tol).matrix()));
    trial.residual(d);
    trial.check(d <= 1e-8, || format!("projectors onto R(T) and R(TT*) differ by {d:.3e}"));
    let d_adj = spectral_norm(
        &(range_projector(&t.adjoint(), tol).matrix() - range_projector(&t.gram_domain(), tol).matrix()),
    );
    trial.residual(d_adj);
    trial.check(d_adj <= 1e-8, || format!("projectors onto R(T*) and R(T*T) differ by {d_adj:.3e}"));
    Ok(())
}

fn trial_sqrt_range(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let g_rank = any_rank(rng, space.width());
    let g = operator_of_rank(rng, space, space, g_rank);
    let p = g.gram_range();
    let s = operator_sqrt(&p, tol)?;
    trial.satisfying();
    let sq = spectral_norm(&(s.compose(&s)?.matrix() - p.matrix())) / (1.0 + p.norm());
    trial.residual(sq);
    trial.check(sq <= 1e-9, || format!("‖S² - P‖/(1+‖P‖) = {sq:.3e}"));
    let d = spectral_norm(&(range_projector(&s, tol).matrix() - range_projector(&p, tol).matrix()));
    trial.residual(d);
    trial.check(d <= 1e-8, || format!("projectors onto R(P) and R(P^1/2) differ by {d:.3e}"));
    let (rs, rp) = (rank(&s, tol), rank(&p, tol));
    trial.check(rs == rp, || format!("rank P^1/2 = {rs} but rank P = {rp}"));
    trial.check(crate::algebra::is_positive(&s, tol)?.holds, || "square root is not positive".into());
    Ok(())
}

/// Eigenvalues on either side of the decision threshold, well clear of it.
fn trial_psd_oracle(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let w = space.width();
    let u = random_unitary(rng, w);
    let scale = 10f64.powf(rng.random_range(-2.0..2.0));
    let diag: Vec<f64> = (0..w)
        .map(|_| {
            scale
                * match rng.random_range(0..5) {
                    0 => 0.0,
                    1 => -1e-6,
                    2 => -rng.random_range(0.1..1.0),
                    3 => 1e-12,
                    _ => rng.random_range(0.1..1.0),
                }
        })
        .collect();
    let d = CMatrix::from_fn(w, w, |i, j| if i == j { C64::new(diag[i], 0.0) } else { C64::new(0.0, 0.0) });
    let m = &u * d * u.adjoint();
    let p = Operator::on(space, crate::algebra::hermitian_part(&m))?;
    let verdict = psd_order(&Operator::zero(space, space), &p, tol)?;
    let oracle = psd_sampling_oracle(&p, AUDIT_ORACLE_TRIALS, rng.random(), tol)?;
    let expected = diag.iter().all(|&x| x >= -1e-9 * scale.max(1.0) * 0.5);
    trial.satisfying();
    trial.count(if verdict.holds { "positive" } else { "not_positive" });
    trial.check(verdict.holds == oracle.positive, || {
        format!("matrix verdict {} but sampling oracle {}", verdict.holds, oracle.positive)
    });
    trial.check(verdict.holds == expected, || {
        format!("matrix verdict {} but constructed spectrum says {expected}", verdict.holds)
    });
    Ok(())
}

// ---------------------------------------------------------------------------
// Douglas factorization and range sums

fn trial_douglas(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let cod = draw_space(rng);
    let (tp, t, constructed) = douglas_pair(rng, cod);
    let r = douglas_factorize(&tp, &t, tol)?;
    trial.check(r.verdicts_agree(), || format!("condition verdicts disagree: {:?}", r.condition_verdicts));
    if constructed {
        trial.check(r.inclusion_holds, || "constructed inclusion T′ = TG not detected".into());
    }
    if !r.inclusion_holds {
        trial.count("inclusion_false");
        return Ok(());
    }
    trial.satisfying();
    trial.count("inclusion_true");
    let scale = tp.norm();
    let res = rel(r.residual, scale);
    trial.residual(res);
    trial.check(r.residual <= 1e-8 * scale, || format!("‖TD - T′‖/‖T′‖ = {res:.3e}"));

    let lambda = r.lambda_min.expect("inclusion holds");
    let pencil_gap = rel_diff(lambda, r.lambda_pencil);
    trial.check(pencil_gap <= 1e-6 || lambda.max(r.lambda_pencil) <= 1e-12, || {
        format!("‖D‖² = {lambda:e} but pencil gives {:e}", r.lambda_pencil)
    });
    let tt = t.gram_range();
    let tpp = tp.gram_range();
    let above = psd_order(&tpp, &tt.scale(lambda * (1.0 + 1e-6)), tol)?.holds;
    trial.check(above, || format!("T′T′* ≼ λ(1+1e-6)TT* fails at λ = {lambda:e}"));
    if lambda > 0.0 {
        let below = psd_order(&tpp, &tt.scale(lambda * (1.0 - 1e-3)), tol)?.holds;
        trial.check(!below, || format!("T′T′* ≼ λ(1-1e-3)TT* holds, λ = {lambda:e} is not least"));
    }

    let mu = r.mu.expect("inclusion holds");
    for _ in 0..4 {
        let z = random_element(rng, cod);
        let lhs = tp.adjoint().apply(&z)?.norm();
        let rhs = mu * t.adjoint().apply(&z)?.norm();
        trial.check(lhs <= rhs * (1.0 + 1e-9) + 1e-12 * scale * z.norm(), || {
            format!("‖T′*z‖ = {lhs:e} exceeds μ‖T*z‖ = {rhs:e}")
        });
    }
    Ok(())
}

fn extreme_rank(rng: &mut ChaCha8Rng, max: usize) -> usize {
    match rng.random_range(0..5) {
        0 => 0,
        1 => max,
        _ => any_rank(rng, max),
    }
}

fn trial_sum_range_sqrt(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let k = draw_k(rng);
    let cod = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let da = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let db = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let a_rank = extreme_rank(rng, da.width().min(cod.width()));
    let a = operator_of_rank(rng, da, cod, a_rank);
    let b_rank = extreme_rank(rng, db.width().min(cod.width()));
    let b = operator_of_rank(rng, db, cod, b_rank);
    let r = sum_range_sqrt_check(&a, &b, tol)?;
    trial.satisfying();
    trial.residual(r.projector_distance);
    if r.sum_rank == 0 {
        trial.count("rank_zero_sum");
    }
    if r.sum_rank == cod.width() {
        trial.count("full_rank_sum");
    }
    trial.check(r.projector_distance <= 1e-8, || format!("projector distance {:.3e}", r.projector_distance));
    trial.check(r.sum_rank == r.root_rank, || format!("ranks {} vs {}", r.sum_rank, r.root_rank));
    Ok(())
}

fn trial_two_term_douglas(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let k = draw_k(rng);
    let cod = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let d1 = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let d2 = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let da = ModuleSpace::of(k, rng.random_range(1..=MAX_N))?;
    let w = cod.width();
    let rank = any_rank(rng, d1.width().min(w));
    let b1 = operator_of_rank(rng, d1, cod, rank);
    let rank = any_rank(rng, d2.width().min(w));
    let b2 = operator_of_rank(rng, d2, cod, rank);
    let constructed = rng.random_bool(0.5);
    let a = if constructed {
        let rank = any_rank(rng, da.width().min(d1.width()));
        let x = operator_of_rank(rng, da, d1, rank);
        let rank = any_rank(rng, da.width().min(d2.width()));
        let y = operator_of_rank(rng, da, d2, rank);
        b1.compose(&x)?.add(&b2.compose(&y)?)?
    } else {
        let rank = rng.random_range(1..=da.width().min(w));
        operator_of_rank(rng, da, cod, rank)
    };
    let r = two_term_douglas(&a, &b1, &b2, tol)?;
    trial.check(r.verdicts_agree(), || format!("verdicts disagree: {:?}", r.verdicts));
    if constructed {
        trial.check(r.verdicts[0], || "constructed A = B₁X + B₂Y not detected".into());
    }
    if r.verdicts[0] {
        trial.satisfying();
        let (x, y) = (r.x.as_ref().expect("holds"), r.y.as_ref().expect("holds"));
        let sum = b1.compose(x)?.add(&b2.compose(y)?)?;
        let res = rel(spectral_norm(&(sum.matrix() - a.matrix())), a.norm());
        trial.residual(res);
        trial.check(res <= 1e-8, || format!("‖B₁X + B₂Y - A‖/‖A‖ = {res:.3e}"));
    } else {
        trial.count("not_solvable");
    }
    Ok(())
}

fn trial_kframe_sum(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let (f, g, k) = sum_pair(rng, space, j);
    let r = kframe_sum(&f, &g, &k, tol)?;
    if !r.weaker_condition.holds {
        trial.count("weaker_condition_fails");
    }
    trial.check(all_hold(&r.hypotheses), || {
        let failed: Vec<&str> = r.hypotheses.iter().filter(|h| !h.holds).map(|h| h.name.as_str()).collect();
        format!("generated pair fails hypotheses {failed:?}")
    });
    if !all_hold(&r.hypotheses) {
        return Ok(());
    }
    trial.satisfying();
    trial.count(if r.theorem_lower_bound.is_some() { "nonzero_k" } else { "zero_k" });
    trial.check(r.conclusion, || {
        format!(
            "sum bounds {:?} against argument bound {:?}",
            r.bounds.map(|b| b.lower),
            r.theorem_lower_bound
        )
    });
    if let (Some(b), Some(c)) = (r.bounds.and_then(|b| b.lower), r.theorem_lower_bound) {
        trial.residual((c - b).max(0.0) / c);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Frames and K-frames

fn trial_frame_bounds(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let w = space.width();
    let slots = j * space.k();
    let r = if slots >= w && rng.random_bool(0.5) {
        w
    } else {
        any_rank(rng, w.min(slots))
    };
    let basis = orthonormal_rows(rng, w, r);
    let f = family_on_subspace(rng, space, j, &basis);
    let s = f.frame_operator();
    let d = bessel_check(&f, tol)?.upper;
    if d > 0.0 {
        let id = Operator::identity(space);
        let tight = psd_order(&s, &id.scale(d * (1.0 - 1e-6)), tol)?.holds;
        trial.check(!tight, || format!("S ≼ (D - 1e-6 D)I holds for D = {d:e}"));
    }
    let syn = synthesis_norm_sq(&f);
    trial.check(d <= syn * (1.0 + 1e-9), || format!("D = {d:e} exceeds ‖synthesis‖² = {syn:e}"));

    let fc = frame_check(&f, tol)?;
    let kc = kframe_check(&f, &Operator::identity(space), tol)?;
    trial.check(fc.is_some() == kc.is_some(), || {
        format!("frame check {} but K-frame check with K = I {}", fc.is_some(), kc.is_some())
    });
    let Some(fb) = fc else {
        trial.count("not_a_frame");
        return Ok(());
    };
    trial.satisfying();
    let c = fb.lower.expect("frames have a lower bound");
    if let Some(kb) = kc {
        let gap = rel_diff(c, kb.lower.unwrap_or(0.0)).max(rel_diff(fb.upper, kb.upper));
        trial.residual(gap);
        trial.check(gap <= 1e-9, || format!("frame and K-frame (K = I) bounds differ by {gap:.3e}"));
    }
    let dual = canonical_dual(&f, tol)?;
    let s_inv = pseudo_inverse(&s, tol);
    let dist = op_distance(&dual.frame_operator(), &s_inv);
    trial.residual(dist);
    trial.check(dist <= 1e-9, || format!("dual frame operator differs from S⁻¹ by {dist:.3e}"));
    let db = frame_check(&dual, tol)?;
    match db {
        Some(db) => {
            let gap = rel_diff(db.lower.unwrap_or(0.0), 1.0 / d).max(rel_diff(db.upper, 1.0 / c));
            trial.residual(gap);
            trial.check(gap <= 1e-9, || format!("dual bounds differ from (1/D, 1/C) by {gap:.3e}"));
        }
        None => trial.check(false, || "canonical dual is not a frame".into()),
    }
    Ok(())
}

fn trial_kframe_bounds(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, constructed) = kframe_case(rng);
    let b = kframe_check(&f, &k, tol)?;
    if constructed {
        trial.check(b.is_some(), || "constructed K-frame rejected".into());
    }
    let Some(b) = b else {
        trial.count("not_a_kframe");
        return Ok(());
    };
    let d = bessel_check(&f, tol)?.upper;
    trial.check(rel_diff(b.upper, d) <= 1e-12, || format!("upper bound {} differs from D_opt {d}", b.upper));
    match b.lower {
        Some(c) => {
            trial.satisfying();
            let oracle = kframe_bound_bisection_oracle(&f, &k, tol)?;
            let gap = rel_diff(c, oracle);
            trial.residual(gap);
            trial.check(gap <= 1e-6, || format!("C_opt = {c:e} but bisection gives {oracle:e}"));
        }
        None => {
            trial.count("zero_k");
            trial.check(k.norm() == 0.0 || k.gram_range().norm() <= tol.rel_tol, || {
                "lower bound absent for nonzero K".into()
            });
        }
    }
    Ok(())
}

fn trial_kframe_synthesis(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, _) = kframe_case(rng);
    let b = kframe_check(&f, &k, tol)?;
    let s = kframe_via_synthesis(&f, &k, tol)?;
    trial.residual(s.basis_residual);
    trial.check(s.verdict == b.is_some(), || {
        format!("synthesis characterization {} but K-frame check {}", s.verdict, b.is_some())
    });
    if s.verdict {
        trial.satisfying();
    } else {
        trial.count("negative");
    }
    Ok(())
}

fn trial_atomic_system(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, _) = kframe_case(rng);
    let space = f.space();
    let b = kframe_check(&f, &k, tol)?;
    let a = atomic_system_check(&f, &k, tol)?;
    let verdicts = [a.atomic, a.norm_inequality, a.factorization, b.is_some()];
    trial.check(verdicts.iter().all(|&v| v == verdicts[0]), || {
        format!("atomic / norm inequality / factorization / K-frame verdicts {verdicts:?}")
    });
    trial.check(a.lower_b == b.and_then(|b| b.lower), || {
        format!("reported B = {:?} but C_opt = {:?}", a.lower_b, b.and_then(|b| b.lower))
    });
    if a.atomic {
        trial.satisfying();
        let x = random_element(rng, space);
        let dec = atomic_coefficients(&f, &k, &x, tol)?;
        let res = rel(dec.synthesis_residual, k.norm() * x.norm());
        trial.residual(res);
        trial.check(res <= 1e-9, || format!("‖Σ a_j x_j - Kx‖ relative {res:.3e}"));
        trial.check(dec.bound_certified, || format!("Σ a_j a_j* ≼ C<x,x> not certified for C = {:e}", dec.bound));
    } else {
        trial.count("negative");
        let x = random_element(rng, space);
        trial.check(atomic_coefficients(&f, &k, &x, tol).is_err(), || "coefficients produced without inclusion".into());
    }
    let standard = construct_atomic_system(space);
    trial.check(atomic_system_check(&standard, &k, tol)?.atomic, || "standard basis is not atomic".into());
    Ok(())
}

fn trial_reconstruction(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (space, j) = frame_dims(rng);
    let f = random_frame(rng, space, j);
    trial.satisfying();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = random_element(rng, space);
        let r = reconstruct(&f, &x, tol)?;
        worst = worst.max(r.relative_error).max(r.dual_side_relative_error);
    }
    trial.residual(worst);
    trial.check(worst <= 1e-9, || format!("relative reconstruction error {worst:.3e}"));
    Ok(())
}

// ---------------------------------------------------------------------------
// Operators on K-frames

fn trial_bessel_image(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let w = space.width();
    let rank = any_rank(rng, w.min(j * space.k()));
    let basis = orthonormal_rows(rng, w, rank);
    let f = family_on_subspace(rng, space, j, &basis);
    let rank = any_rank(rng, w);
    let m = operator_of_rank(rng, space, space, rank);
    let r = bessel_image(&f, &m, tol)?;
    trial.satisfying();
    trial.residual(rel((r.bounds.upper - r.certified_bound).max(0.0), r.certified_bound));
    trial.check(r.holds, || format!("optimal bound {:e} exceeds D‖M‖² = {:e}", r.bounds.upper, r.certified_bound));
    Ok(())
}

fn kframe_and_m(rng: &mut ChaCha8Rng) -> (FrameFamily, Operator, Operator) {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let (f, k) = random_kframe(rng, space, j);
    let w = space.width();
    let m = if rng.random_bool(0.7) {
        let rank = any_rank(rng, w);
        let g = operator_of_rank(rng, space, space, rank);
        k.compose(&g).expect("endomorphisms")
    } else {
        let rank = rng.random_range(1..=w);
        operator_of_rank(rng, space, space, rank)
    };
    (f, k, m)
}

fn trial_mframe(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, m) = kframe_and_m(rng);
    let r = mframe_from_kframe(&f, &k, &m, tol)?;
    record_transform(trial, &r);
    if let (Some(b), Some(c)) = (r.derived_bounds.and_then(|b| b.lower), r.theorem_bound) {
        trial.residual((c - b).max(0.0) / c);
    }
    Ok(())
}

/// The M-frame conclusion reached through the synthesis characterization instead of
/// the Douglas constant.
fn trial_mframe_synthesis(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, m) = kframe_and_m(rng);
    let hyp = kframe_check(&f, &k, tol)?.is_some() && range_inclusion(&m, &k, tol)?.holds;
    if !hyp {
        trial.count("hypotheses_fail");
        return Ok(());
    }
    trial.satisfying();
    let via_l = kframe_via_synthesis(&f, &m, tol)?;
    let direct = kframe_check(&f, &m, tol)?;
    trial.residual(via_l.inclusion.residual);
    trial.check(via_l.verdict && direct.is_some(), || {
        format!("R(M) ⊆ R(L) {} and M-frame check {}", via_l.verdict, direct.is_some())
    });
    Ok(())
}

/// Frame `F`, invertible `K` (so `F` is a K-frame), and `T` invertible or singular.
fn surjective_k_case(rng: &mut ChaCha8Rng) -> (FrameFamily, Operator, Operator) {
    let (space, j) = frame_dims(rng);
    let f = random_frame(rng, space, j);
    let w = space.width();
    let k = Operator::on(space, invertible(rng, w)).expect("shape");
    let t_rank = if rng.random_bool(0.5) {
        w
    } else {
        any_rank(rng, w - 1)
    };
    let t = operator_of_rank(rng, space, space, t_rank);
    (f, k, t)
}

fn trial_surjectivity(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, t) = surjective_k_case(rng);
    let r = surjectivity_consequence(&f, &k, &t, tol)?;
    record_transform(trial, &r);
    Ok(())
}

fn trial_invertibility(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let (f, k, t) = surjective_k_case(rng);
    let r = invertibility_consequence(&f, &k, &t, tol)?;
    record_transform(trial, &r);
    Ok(())
}

/// Commuting `(K, T)` and a K-frame; `K` is made invertible when `invertible_k`.
fn commuting_case(rng: &mut ChaCha8Rng, invertible_k: bool) -> Option<(FrameFamily, Operator, Operator)> {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let (k, t) = commuting_pair(rng, space);
    let k = if invertible_k {
        // Shift by a multiple of the identity keeps commutation and clears the kernel.
        let shift = rng.random_range(1.5..3.0) * (1.0 + k.norm());
        k.add(&Operator::identity(space).scale(shift)).expect("same space")
    } else {
        k
    };
    let f = kframe_for(rng, &k, j)?;
    Some((f, k, t))
}

fn trial_restricted_kframe(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let Some((f, k, t)) = commuting_case(rng, false) else {
        trial.count("no_kframe_fits");
        return Ok(());
    };
    let r = restricted_kframe(&f, &k, &t, tol)?;
    record_transform(trial, &r);
    if r.hypotheses_hold {
        if let Some(alt) = &r.alternative {
            trial.count(if alt.holds { "intrinsic_reading_holds" } else { "intrinsic_reading_fails" });
        }
        if let (Some(b), Some(c)) = (r.derived_bounds.and_then(|b| b.lower), r.theorem_bound) {
            trial.count(if b >= c * (1.0 - 1e-6) { "argument_bound_holds" } else { "argument_bound_fails" });
        }
    }
    Ok(())
}

/// Unitary `T` preserving `R(K*)`, which makes `R(T*K*) ⊆ R(K*T*)` hold. Half the time
/// `K` is normal and `T` also preserves its range.
fn trial_coisometry_image(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let space = draw_space(rng);
    let j = draw_j(rng);
    let w = space.width();
    let normal = rng.random_bool(0.5);
    let k = if normal {
        let u = random_unitary(rng, w);
        let d = super::generate::random_diagonal(rng, w, 0.4);
        Operator::on(space, &u * d * u.adjoint())?
    } else {
        let rank = any_rank(rng, w);
        operator_of_rank(rng, space, space, rank)
    };
    // Rows of `basis` span R(K*) = row space of Θ_K^H.
    let range_adj = row_space_basis(&k.matrix().adjoint());
    let r = range_adj.nrows();
    let basis = complete_basis(rng, &range_adj);
    let mut blocks = CMatrix::zeros(w, w);
    blocks.view_mut((0, 0), (r, r)).copy_from(&random_unitary(rng, r));
    blocks.view_mut((r, r), (w - r, w - r)).copy_from(&random_unitary(rng, w - r));
    let t = Operator::on(space, basis.adjoint() * blocks * &basis)?;
    let Some(f) = kframe_for(rng, &k, j) else {
        trial.count("no_kframe_fits");
        return Ok(());
    };
    let rep = coisometry_image(&f, &k, &t, tol)?;
    trial.count(if normal { "normal_k" } else { "generic_k" });
    record_transform(trial, &rep);
    Ok(())
}

fn trial_surjectivity_equivalence(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let Some((f, k, t)) = commuting_case(rng, true) else {
        trial.count("no_kframe_fits");
        return Ok(());
    };
    let r = surjectivity_equivalence(&f, &k, &t, tol)?;
    if r.hypotheses_hold {
        trial.count(if r.proof_conditions[0].holds { "t_surjective" } else { "t_not_surjective" });
    }
    record_transform(trial, &r);
    Ok(())
}

// ---------------------------------------------------------------------------
// Unitary systems

fn trial_unitary_generator(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let d = rng.random_range(1..=16);
    let kk = rng.random_range(1..=2);
    let system = cyclic_shift_system(d, kk)?;
    let (psi, eta, k) = unitary_vectors(rng, &system);
    let wander = is_wandering(&system, &psi, tol)?;
    trial.check(wander.holds, || format!("e₁ not wandering (residual {:.3e})", wander.gram_residual));
    let smin = analysis_min_singular_value(&system, &psi)?;
    trial.check((smin - 1.0).abs() <= 1e-9, || format!("smallest singular value of T_ψ is {smin}"));

    let g = generator_from_vector(&system, &psi, &eta, &k, tol)?;
    let scale = g.a.norm().max(1.0);
    trial.residual(g.vector_residual);
    trial.check(g.vector_residual <= 1e-9 * scale, || format!("‖Aψ - η‖ = {:.3e}", g.vector_residual));
    trial.check(g.commutant_residual <= 1e-9 * scale, || format!("commutant residual {:.3e}", g.commutant_residual));
    let circ = circulant_deviation(&g.a);
    trial.check(circ <= 1e-9 * scale, || format!("A deviates from block circulant by {circ:.3e}"));
    let member = g.commutant_residual <= tol.rel_tol * scale;
    let rhs = member && g.range_inclusion_holds;
    trial.check(g.eta_bounds.is_some() == rhs, || {
        format!("K-frame vector {} but (commutant ∧ R(K) ⊆ R(A)) {rhs}", g.eta_bounds.is_some())
    });

    match vector_from_generator(&system, &psi, &g.a, &k, tol) {
        Ok((eta2, bounds)) => {
            trial.satisfying();
            let back = eta2.sub(&eta)?.norm();
            trial.residual(back);
            trial.check(back <= 1e-9 * eta.norm().max(1.0), || format!("round trip η → A → η off by {back:.3e}"));
            match (bounds, g.eta_bounds) {
                (Some(b2), Some(b1)) => {
                    let gap = rel_diff(b1.upper, b2.upper).max(match (b1.lower, b2.lower) {
                        (Some(x), Some(y)) => rel_diff(x, y),
                        (None, None) => 0.0,
                        _ => f64::INFINITY,
                    });
                    trial.check(gap <= 1e-6, || format!("bounds differ after round trip by {gap:.3e}"));
                }
                _ => trial.check(false, || "round trip lost the K-frame property".into()),
            }
        }
        Err(Error::Precondition { name, .. }) => {
            trial.count("precondition_fails");
            trial.check(!g.range_inclusion_holds || !member, || format!("precondition `{name}` failed unexpectedly"));
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Sums of two generators: `A₁ + A₂` against the orbit of `η₁ + η₂`. Measured only.
fn trial_generator_sum(rng: &mut ChaCha8Rng, tol: &Tolerance, trial: &mut Trial) -> Result<()> {
    let d = rng.random_range(1..=16);
    let kk = rng.random_range(1..=2);
    let system = cyclic_shift_system(d, kk)?;
    let space = system.space();
    let psi = space.basis_element(0);
    let a1 = Operator::on(space, random_block_circulant(rng, d, kk))?;
    let a2 = Operator::on(space, random_block_circulant(rng, d, kk))?;
    let rank = any_rank(rng, space.width());
    let k = a1.compose(&operator_of_rank(rng, space, space, rank))?;
    let eta1 = a1.apply(&psi)?;
    let eta2 = a2.apply(&psi)?;
    let sum = eta1.add(&eta2)?;
    let both = kframe_vector_check(&system, &eta1, &k, tol)?.is_some() && kframe_vector_check(&system, &eta2, &k, tol)?.is_some();
    if both {
        trial.satisfying();
    }
    let sum_ok = kframe_vector_check(&system, &sum, &k, tol)?.is_some();
    let g = generator_from_vector(&system, &psi, &sum, &k, tol)?;
    let additive = op_distance(&g.a, &a1.add(&a2)?);
    trial.residual(additive);
    trial.count(match (both, sum_ok) {
        (true, true) => "both_and_sum_kframe_vectors",
        (true, false) => "both_but_sum_not",
        (false, true) => "sum_only",
        (false, false) => "neither",
    });
    Ok(())
}

// ---------------------------------------------------------------------------

static SUITES: &[Suite] = &[
    Suite {
        id: "range-kernel-duality",
        statement: "R(T) and N(T*) are complementary: P_R(T) + P_N(T*) = I; Moore-Penrose identities hold",
        kind: SuiteKind::Identity,
        default_trials: 200,
        min_satisfying: 0,
        run: trial_range_kernel_duality,
    },
    Suite {
        id: "psd-oracle",
        statement: "matrix positive-order verdicts agree with the sampling oracle",
        kind: SuiteKind::Identity,
        default_trials: 1000,
        min_satisfying: 0,
        run: trial_psd_oracle,
    },
    Suite {
        id: "douglas",
        statement: "majorization, norm domination, solvability of TX = T′ and R(T′) ⊆ R(T) are equivalent; λ_min = ‖T†T′‖² is least",
        kind: SuiteKind::Equivalence,
        default_trials: 500,
        min_satisfying: 50,
        run: trial_douglas,
    },
    Suite {
        id: "frame-bounds",
        statement: "optimal frame bounds are spectral, minimal, and match the K-frame bounds for K = I; the canonical dual has bounds (1/D, 1/C)",
        kind: SuiteKind::Identity,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_frame_bounds,
    },
    Suite {
        id: "kframe-bounds",
        statement: "the pencil formula for the optimal lower K-frame bound matches bisection",
        kind: SuiteKind::Equivalence,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_kframe_bounds,
    },
    Suite {
        id: "kframe-synthesis",
        statement: "a family is a K-frame iff its synthesis operator L satisfies L e_j = x_j and R(K) ⊆ R(L)",
        kind: SuiteKind::Equivalence,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_kframe_synthesis,
    },
    Suite {
        id: "atomic-system",
        statement: "atomic system for K, the two-sided norm inequality, and K = T*D are equivalent and match the K-frame property",
        kind: SuiteKind::Equivalence,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_atomic_system,
    },
    Suite {
        id: "reconstruction",
        statement: "x = Σ <x, S⁻¹x_j> x_j = Σ <x, x_j> S⁻¹x_j for every frame",
        kind: SuiteKind::Identity,
        default_trials: 100,
        min_satisfying: 0,
        run: trial_reconstruction,
    },
    Suite {
        id: "bessel-image",
        statement: "{M x_j} is Bessel with bound D‖M‖²",
        kind: SuiteKind::Identity,
        default_trials: 200,
        min_satisfying: 0,
        run: trial_bessel_image,
    },
    Suite {
        id: "mframe",
        statement: "a K-frame is an M-frame with lower bound λ/λ′ whenever R(M) ⊆ R(K)",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_mframe,
    },
    Suite {
        id: "mframe-synthesis",
        statement: "a K-frame is an M-frame whenever R(M) ⊆ R(K), via the synthesis characterization",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_mframe_synthesis,
    },
    Suite {
        id: "surjectivity",
        statement: "K surjective, {x_j} and {T x_j} K-frames imply T surjective",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_surjectivity,
    },
    Suite {
        id: "restricted-kframe",
        statement: "KT = TK and {x_j} a K-frame imply {T x_j} is a K-frame for R(T)",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_restricted_kframe,
    },
    Suite {
        id: "coisometry-image",
        statement: "TT* = I and R(T*K*) ⊆ R(K*T*) imply {T x_j} is a K-frame with lower bound λ/λ′",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_coisometry_image,
    },
    Suite {
        id: "surjectivity-equivalence",
        statement: "for surjective K commuting with T: {T x_j} is a K-frame iff T is surjective",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_surjectivity_equivalence,
    },
    Suite {
        id: "invertibility",
        statement: "K surjective, {T x_j} and {T* x_j} K-frames imply T invertible",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_invertibility,
    },
    Suite {
        id: "gram-range",
        statement: "R(T) = R(TT*) at closed range",
        kind: SuiteKind::Identity,
        default_trials: 200,
        min_satisfying: 0,
        run: trial_gram_range,
    },
    Suite {
        id: "sqrt-range",
        statement: "R(P) = R(P^1/2) for positive P",
        kind: SuiteKind::Identity,
        default_trials: 200,
        min_satisfying: 0,
        run: trial_sqrt_range,
    },
    Suite {
        id: "sum-range-sqrt",
        statement: "R(A) + R(B) = R((AA* + BB*)^1/2)",
        kind: SuiteKind::Identity,
        default_trials: 500,
        min_satisfying: 0,
        run: trial_sum_range_sqrt,
    },
    Suite {
        id: "two-term-douglas",
        statement: "R(A) ⊆ R(B₁) + R(B₂), AA* ≼ λ(B₁B₁* + B₂B₂*) and solvability of A = B₁X + B₂Y are equivalent",
        kind: SuiteKind::Equivalence,
        default_trials: 300,
        min_satisfying: 50,
        run: trial_two_term_douglas,
    },
    Suite {
        id: "kframe-sum",
        statement: "two K-frames with positive L₁L₂* and L₂L₁* sum to a K-frame with lower bound 1/λ",
        kind: SuiteKind::Implication,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_kframe_sum,
    },
    Suite {
        id: "unitary-generator",
        statement: "η is a complete K-frame vector iff η = Aψ for A in the local commutant with R(K) ⊆ R(A)",
        kind: SuiteKind::Equivalence,
        default_trials: 200,
        min_satisfying: 50,
        run: trial_unitary_generator,
    },
    Suite {
        id: "generator-sum",
        statement: "experiment: K-frame property of η₁ + η₂ for two generators",
        kind: SuiteKind::Experiment,
        default_trials: 200,
        min_satisfying: 0,
        run: trial_generator_sum,
    },
];
