//! Seeded instance recipes. Each recipe builds objects that satisfy a scenario's
//! hypotheses by construction; [`generate_instance`] re-verifies them and resamples
//! on the rare numerical miss.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::json::Document;
use super::rng::{
    any_rank, complete_basis, invertible, matrix_of_rank, operator_of_rank, orthonormal_columns,
    random_unitary, row_space_basis, singular_value, trial_rng,
};
use crate::algebra::{range_inclusion, CMatrix, ModuleElement, ModuleSpace, Operator, Tolerance, C64};
use crate::douglas::kframe_sum;
use crate::error::{Error, Result};
use crate::frames::{frame_check, kframe_check, FrameFamily};
use crate::hypothesis::all_hold;
use crate::transforms::commutator_residual;
use crate::unitary::{cyclic_shift_system, is_wandering, UnitarySystem};

pub const MAX_K: usize = 3;
pub const MAX_N: usize = 8;
pub const MAX_J: usize = 16;
pub const MAX_ATTEMPTS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    Bessel,
    Frame,
    Kframe,
    DouglasPair,
    SumPair,
    Transform,
    Unitary,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::Bessel,
        Scenario::Frame,
        Scenario::Kframe,
        Scenario::DouglasPair,
        Scenario::SumPair,
        Scenario::Transform,
        Scenario::Unitary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Bessel => "bessel",
            Scenario::Frame => "frame",
            Scenario::Kframe => "kframe",
            Scenario::DouglasPair => "douglas_pair",
            Scenario::SumPair => "sum_pair",
            Scenario::Transform => "transform",
            Scenario::Unitary => "unitary",
        }
    }

    pub fn parse(s: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|sc| sc.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub seed: u64,
    pub k: usize,
    pub n: usize,
    #[serde(rename = "J")]
    pub j: usize,
    pub scenario: Scenario,
}

impl InstanceSpec {
    pub fn validate(&self) -> Result<()> {
        let check = |name: &str, v: usize, max: usize| {
            if (1..=max).contains(&v) {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name} = {v} outside 1..={max}")))
            }
        };
        check("k", self.k, MAX_K)?;
        check("n", self.n, MAX_N)?;
        check("J", self.j, MAX_J)
    }

    fn space(&self) -> ModuleSpace {
        ModuleSpace::of(self.k, self.n).expect("validated")
    }
}

/// A generated bundle; every field is an input of the checks for its scenario.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Bessel {
        family: FrameFamily,
    },
    Frame {
        family: FrameFamily,
    },
    Kframe {
        family: FrameFamily,
        k: Operator,
    },
    DouglasPair {
        t_prime: Operator,
        t: Operator,
        /// `T′` was built as `T∘G`.
        constructed_inclusion: bool,
    },
    SumPair {
        family: FrameFamily,
        second_family: FrameFamily,
        k: Operator,
    },
    Transform {
        family: FrameFamily,
        k: Operator,
        /// Commutes with `K`.
        t: Operator,
        /// `R(M) ⊆ R(K)`.
        m: Operator,
    },
    Unitary {
        system: UnitarySystem,
        psi: ModuleElement,
        eta: ModuleElement,
        k: Operator,
    },
}

impl Instance {
    pub fn scenario(&self) -> Scenario {
        match self {
            Instance::Bessel { .. } => Scenario::Bessel,
            Instance::Frame { .. } => Scenario::Frame,
            Instance::Kframe { .. } => Scenario::Kframe,
            Instance::DouglasPair { .. } => Scenario::DouglasPair,
            Instance::SumPair { .. } => Scenario::SumPair,
            Instance::Transform { .. } => Scenario::Transform,
            Instance::Unitary { .. } => Scenario::Unitary,
        }
    }

    /// The instance as a document whose field names match the command-line inputs.
    pub fn to_document(&self, spec: &InstanceSpec) -> Document {
        let space = match self {
            Instance::Bessel { family } | Instance::Frame { family } => family.space(),
            Instance::Kframe { family, .. } | Instance::SumPair { family, .. } | Instance::Transform { family, .. } => {
                family.space()
            }
            Instance::DouglasPair { t, .. } => t.codomain(),
            Instance::Unitary { system, .. } => system.space(),
        };
        let mut doc = Document::new(space);
        doc.insert("scenario", self.scenario());
        doc.insert("seed", spec.seed);
        match self {
            Instance::Bessel { family } | Instance::Frame { family } => doc.insert("family", family),
            Instance::Kframe { family, k } => {
                doc.insert("family", family);
                doc.insert("K", k);
            }
            Instance::DouglasPair {
                t_prime,
                t,
                constructed_inclusion,
            } => {
                doc.insert("t_prime", t_prime);
                doc.insert("T", t);
                doc.insert("constructed_inclusion", constructed_inclusion);
            }
            Instance::SumPair {
                family,
                second_family,
                k,
            } => {
                doc.insert("family", family);
                doc.insert("second_family", second_family);
                doc.insert("K", k);
            }
            Instance::Transform { family, k, t, m } => {
                doc.insert("family", family);
                doc.insert("K", k);
                doc.insert("T", t);
                doc.insert("M", m);
            }
            Instance::Unitary { system, psi, eta, k } => {
                doc.insert("unitary_system", system);
                doc.insert("psi", psi);
                doc.insert("eta", eta);
                doc.insert("K", k);
            }
        }
        doc
    }

    /// Re-runs the scenario's hypothesis checks.
    pub fn hypotheses_hold(&self, tol: &Tolerance) -> Result<bool> {
        Ok(match self {
            Instance::Bessel { .. } => true,
            Instance::Frame { family } => frame_check(family, tol)?.is_some(),
            Instance::Kframe { family, k } => kframe_check(family, k, tol)?.is_some(),
            Instance::DouglasPair {
                t_prime,
                t,
                constructed_inclusion,
            } => !constructed_inclusion || range_inclusion(t_prime, t, tol)?.holds,
            Instance::SumPair {
                family,
                second_family,
                k,
            } => all_hold(&kframe_sum(family, second_family, k, tol)?.hypotheses),
            Instance::Transform { family, k, t, m } => {
                kframe_check(family, k, tol)?.is_some()
                    && commutator_residual(k, t)? <= tol.rel_tol
                    && range_inclusion(m, k, tol)?.holds
            }
            Instance::Unitary { system, psi, .. } => is_wandering(system, psi, tol)?.holds,
        })
    }
}

/// Builds an instance for `spec`, resampling on stream `attempt` until its hypotheses
/// verify. Attempt 0 uses stream 0, so most instances come from the first draw.
pub fn generate_instance(spec: &InstanceSpec, tol: &Tolerance) -> Result<Instance> {
    spec.validate()?;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = trial_rng(spec.seed, attempt as u64);
        if let Some(instance) = draw(&mut rng, spec)? {
            if instance.hypotheses_hold(tol)? {
                return Ok(instance);
            }
        }
    }
    Err(Error::ResampleCapExceeded {
        seed: spec.seed,
        attempts: MAX_ATTEMPTS,
    })
}

fn draw(rng: &mut impl Rng, spec: &InstanceSpec) -> Result<Option<Instance>> {
    let space = spec.space();
    let w = space.width();
    let slots = spec.j * spec.k;
    Ok(Some(match spec.scenario {
        Scenario::Bessel => {
            let rank = any_rank(rng, w.min(slots));
            let basis = orthonormal_rows(rng, w, rank);
            Instance::Bessel {
                family: family_on_subspace(rng, space, spec.j, &basis),
            }
        }
        Scenario::Frame => {
            if slots < w {
                return Ok(None);
            }
            Instance::Frame {
                family: random_frame(rng, space, spec.j),
            }
        }
        Scenario::Kframe => {
            let (family, k) = random_kframe(rng, space, spec.j);
            Instance::Kframe { family, k }
        }
        Scenario::DouglasPair => {
            let (t_prime, t, constructed_inclusion) = douglas_pair(rng, space);
            Instance::DouglasPair {
                t_prime,
                t,
                constructed_inclusion,
            }
        }
        Scenario::SumPair => {
            let (family, second_family, k) = sum_pair(rng, space, spec.j);
            Instance::SumPair {
                family,
                second_family,
                k,
            }
        }
        Scenario::Transform => {
            let (k, t) = commuting_pair(rng, space);
            let Some(family) = kframe_for(rng, &k, spec.j) else {
                return Ok(None);
            };
            let rank = any_rank(rng, w);
            let g = operator_of_rank(rng, space, space, rank);
            Instance::Transform {
                family,
                m: k.compose(&g)?,
                k,
                t,
            }
        }
        Scenario::Unitary => {
            let system = cyclic_shift_system(spec.n, spec.k)?;
            let (psi, eta, k) = unitary_vectors(rng, &system);
            Instance::Unitary { system, psi, eta, k }
        }
    }))
}

/// `r x w` matrix with orthonormal rows.
pub fn orthonormal_rows(rng: &mut impl Rng, w: usize, r: usize) -> CMatrix {
    orthonormal_columns(rng, w, r).adjoint()
}

/// Family whose synthesis operator is `H·B` for a well-conditioned `H` of full column
/// rank, so the frame operator has row space exactly that of `basis` (`r x w`).
/// Needs `r ≤ J·k`.
pub fn family_on_subspace(rng: &mut impl Rng, space: ModuleSpace, j: usize, basis: &CMatrix) -> FrameFamily {
    let r = basis.nrows();
    let slots = j * space.k();
    assert!(r <= slots, "subspace dimension exceeds J·k");
    let h = matrix_of_rank(rng, slots, r, r);
    let synthesis = Operator::new(ModuleSpace::of(space.k(), j).expect("J ≥ 1"), space, h * basis).expect("shape");
    FrameFamily::from_synthesis(&synthesis).expect("shape")
}

/// A frame of `J` elements; requires `J ≥ n`.
pub fn random_frame(rng: &mut impl Rng, space: ModuleSpace, j: usize) -> FrameFamily {
    let w = space.width();
    let basis = orthonormal_rows(rng, w, w);
    family_on_subspace(rng, space, j, &basis)
}

/// A family spanning a random nonzero subspace `V` and `K` with `R(K) ⊆ V`.
pub fn random_kframe(rng: &mut impl Rng, space: ModuleSpace, j: usize) -> (FrameFamily, Operator) {
    let w = space.width();
    let r = rng.random_range(1..=w.min(j * space.k()));
    let basis = orthonormal_rows(rng, w, r);
    let family = family_on_subspace(rng, space, j, &basis);
    // K = 0 is a legitimate but degenerate K-frame; keep it rare.
    let rank = if rng.random_bool(0.1) { 0 } else { rng.random_range(1..=r) };
    let h = matrix_of_rank(rng, w, r, rank);
    let k = Operator::on(space, h * basis).expect("shape");
    (family, k)
}

/// Family on a random subspace and an unrelated `K`; `R(K)` almost surely leaves the
/// span unless the family is a frame.
pub fn random_generic_kframe_pair(rng: &mut impl Rng, space: ModuleSpace, j: usize) -> (FrameFamily, Operator) {
    let w = space.width();
    let r = rng.random_range(0..=w.min(j * space.k()));
    let basis = orthonormal_rows(rng, w, r);
    let family = family_on_subspace(rng, space, j, &basis);
    let rank = rng.random_range(1..=w);
    let k = operator_of_rank(rng, space, space, rank);
    (family, k)
}

/// A family that is a K-frame for the given `K`: it spans `R(K)` plus a random number of
/// extra directions. `None` if `rank K > J·k`.
pub fn kframe_for(rng: &mut impl Rng, k: &Operator, j: usize) -> Option<FrameFamily> {
    let space = k.domain();
    let w = space.width();
    let slots = j * space.k();
    let range = row_space_basis(k.matrix());
    let rk = range.nrows();
    if rk > slots {
        return None;
    }
    let extra = rng.random_range(0..=(w.min(slots) - rk));
    let full = complete_basis(rng, &range);
    let basis = full.rows(0, rk + extra).into_owned();
    Some(family_on_subspace(rng, space, j, &basis))
}

/// `(T′, T, constructed)`: with probability one half `T′ = T∘G`, otherwise both generic.
/// `T` is rank deficient half the time so generic pairs usually fail inclusion.
pub fn douglas_pair(rng: &mut impl Rng, codomain: ModuleSpace) -> (Operator, Operator, bool) {
    let k = codomain.k();
    let w = codomain.width();
    let dom_t = ModuleSpace::of(k, rng.random_range(1..=MAX_N)).expect("n ≥ 1");
    let dom_tp = ModuleSpace::of(k, rng.random_range(1..=MAX_N)).expect("n ≥ 1");
    let max_t = dom_t.width().min(w);
    let t_rank = if rng.random_bool(0.5) {
        max_t
    } else {
        any_rank(rng, max_t)
    };
    let t = operator_of_rank(rng, dom_t, codomain, t_rank);
    if rng.random_bool(0.5) {
        let rank = any_rank(rng, dom_tp.width().min(dom_t.width()));
        let g = operator_of_rank(rng, dom_tp, dom_t, rank);
        let t_prime = t.compose(&g).expect("composable");
        (t_prime, t, true)
    } else {
        let rank = any_rank(rng, dom_tp.width().min(w));
        let t_prime = operator_of_rank(rng, dom_tp, codomain, rank);
        (t_prime, t, false)
    }
}

/// `f(S) = c0 + c1 S + c2 S²` with `c0 > 0`, `c1, c2 ≥ 0`.
pub fn positive_polynomial(rng: &mut impl Rng, s: &Operator) -> Operator {
    let c0 = rng.random_range(0.1..2.0);
    let c1 = rng.random_range(0.0..2.0);
    let c2 = rng.random_range(0.0..1.0);
    let id = Operator::identity(s.domain());
    let s2 = s.compose(s).expect("endomorphism");
    let scale = s.norm().max(1.0);
    // Normalise so the quadratic term does not swamp the others.
    id.scale(c0)
        .add(&s.scale(c1 / scale))
        .and_then(|a| a.add(&s2.scale(c2 / (scale * scale))))
        .expect("same space")
}

/// A K-frame `{x_j}`, the family `{f(S) x_j}` for a positive polynomial `f` of its frame
/// operator `S = L₁L₁*`, and `K`. Then `L₁L₂* = S f(S) ≽ 0` by commuting positive factors.
pub fn sum_pair(rng: &mut impl Rng, space: ModuleSpace, j: usize) -> (FrameFamily, FrameFamily, Operator) {
    let (family, k) = random_kframe(rng, space, j);
    let f_s = positive_polynomial(rng, &family.frame_operator());
    let second = family.image(&f_s).expect("endomorphism");
    (family, second, k)
}

/// Commuting `(K, T)`. A third of the time both are diagonal in a unitary basis, a
/// third in a merely well-conditioned basis, and otherwise `K` carries Jordan blocks
/// and `T = p(K)` for a quadratic `p`, singular when `p(0) = 0`.
pub fn commuting_pair(rng: &mut impl Rng, space: ModuleSpace) -> (Operator, Operator) {
    loop {
        let (k, t) = commuting_pair_draw(rng, space);
        if nonzero_spread(&k) <= MAX_SPREAD && nonzero_spread(&t) <= MAX_SPREAD {
            return (k, t);
        }
    }
}

/// Largest ratio between nonzero singular values accepted from the commuting-pair
/// generator. Rank decisions on products such as `T S T*` square this spread.
const MAX_SPREAD: f64 = 1e3;

fn nonzero_spread(op: &Operator) -> f64 {
    let sv = crate::algebra::singular_values(op.matrix());
    let top = sv.first().copied().unwrap_or(0.0);
    match sv.iter().rev().find(|&&s| s > 1e-10 * top) {
        Some(&low) => top / low,
        None => 1.0,
    }
}

fn commuting_pair_draw(rng: &mut impl Rng, space: ModuleSpace) -> (Operator, Operator) {
    let w = space.width();
    let flavor = rng.random_range(0..3);
    let (v, v_inv) = if flavor == 0 {
        let u = random_unitary(rng, w);
        let ua = u.adjoint();
        (u, ua)
    } else {
        let v = invertible(rng, w);
        let v_inv = v.clone().try_inverse().expect("well-conditioned");
        (v, v_inv)
    };
    let similar = |d: CMatrix| Operator::on(space, &v * d * &v_inv).expect("shape");
    if flavor < 2 {
        let k_zero = rng.random_range(0.0..0.5);
        let t_zero = rng.random_range(0.0..0.5);
        let dk = random_diagonal(rng, w, k_zero);
        let dt = random_diagonal(rng, w, t_zero);
        return (similar(dk), similar(dt));
    }
    let jordan = random_jordan(rng, w);
    // Redraw the coefficients while p(λ) nearly vanishes at a nonzero eigenvalue: such a
    // T is invertible in exact arithmetic but numerically singular.
    let (c0, c1, c2) = loop {
        let c0 = if rng.random_bool(0.5) { 0.0 } else { singular_value(rng) };
        let c1 = singular_value(rng);
        let c2 = rng.random_range(0.0..1.0);
        let separated = (0..w).all(|i| {
            let l = jordan[(i, i)];
            let value = (l * l * c2 + l * c1 + c0).norm();
            value == 0.0 || value >= 0.05
        });
        if separated {
            break (c0, c1, c2);
        }
    };
    let p = CMatrix::identity(w, w).map(|z| z * c0) + jordan.map(|z| z * c1) + (&jordan * &jordan).map(|z| z * c2);
    (similar(jordan), similar(p))
}

/// Upper triangular Jordan form with random block sizes; each block's eigenvalue is
/// zero with probability 0.4.
pub fn random_jordan(rng: &mut impl Rng, w: usize) -> CMatrix {
    let mut j = CMatrix::zeros(w, w);
    let mut start = 0;
    while start < w {
        let size = rng.random_range(1..=(w - start).min(3));
        let eig = if rng.random_bool(0.4) {
            C64::new(0.0, 0.0)
        } else {
            C64::from_polar(singular_value(rng), rng.random_range(0.0..std::f64::consts::TAU))
        };
        for i in start..start + size {
            j[(i, i)] = eig;
            if i + 1 < start + size {
                j[(i, i + 1)] = C64::new(1.0, 0.0);
            }
        }
        start += size;
    }
    j
}

/// Diagonal with entries of modulus in `[0.1, 10]` and random phase, each zero with
/// probability `p_zero`.
pub fn random_diagonal(rng: &mut impl Rng, w: usize, p_zero: f64) -> CMatrix {
    let mut d = CMatrix::zeros(w, w);
    for i in 0..w {
        if !rng.random_bool(p_zero) {
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            d[(i, i)] = C64::from_polar(singular_value(rng), phase);
        }
    }
    d
}

/// Block circulant matrix `(F⊗I)* diag(Â_m) (F⊗I)` for blocks `Â_m` of random rank.
pub fn random_block_circulant(rng: &mut impl Rng, d: usize, k: usize) -> CMatrix {
    let w = d * k;
    let mut fourier = CMatrix::zeros(w, w);
    let norm = (d as f64).sqrt();
    for a in 0..d {
        for b in 0..d {
            let z = C64::from_polar(1.0 / norm, -std::f64::consts::TAU * (a * b) as f64 / d as f64);
            for i in 0..k {
                fourier[(a * k + i, b * k + i)] = z;
            }
        }
    }
    let mut diag = CMatrix::zeros(w, w);
    for m in 0..d {
        let rank = any_rank(rng, k);
        let block = matrix_of_rank(rng, k, k, rank);
        diag.view_mut((m * k, m * k), (k, k)).copy_from(&block);
    }
    fourier.adjoint() * diag * fourier
}

/// `ψ = e₁`, `η = ψ·A` for a random block circulant `A`, and `K` with `R(K) ⊆ R(A)`
/// half the time, generic otherwise.
pub fn unitary_vectors(rng: &mut impl Rng, system: &UnitarySystem) -> (ModuleElement, ModuleElement, Operator) {
    let space = system.space();
    let (k, d) = (space.k(), space.n());
    let psi = space.basis_element(0);
    let a = Operator::on(space, random_block_circulant(rng, d, k)).expect("shape");
    let eta = a.apply(&psi).expect("same space");
    let w = space.width();
    let k_op = if rng.random_bool(0.5) {
        let rank = any_rank(rng, w);
        let g = operator_of_rank(rng, space, space, rank);
        a.compose(&g).expect("same space")
    } else {
        let rank = rng.random_range(1..=w);
        operator_of_rank(rng, space, space, rank)
    };
    (psi, eta, k_op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn frame_example_from_seed_zero() {
        let spec = InstanceSpec {
            seed: 0,
            k: 1,
            n: 2,
            j: 3,
            scenario: Scenario::Frame,
        };
        let Instance::Frame { family } = generate_instance(&spec, &tol()).unwrap() else {
            panic!("wrong scenario");
        };
        assert!(frame_check(&family, &tol()).unwrap().is_some());
    }

    #[test]
    fn every_scenario_generates_and_is_deterministic() {
        for scenario in Scenario::ALL {
            for seed in 0..5 {
                let spec = InstanceSpec {
                    seed,
                    k: 1 + (seed as usize % 3),
                    n: 1 + (seed as usize * 3 % 8),
                    j: 8,
                    scenario,
                };
                let a = generate_instance(&spec, &tol()).unwrap();
                let b = generate_instance(&spec, &tol()).unwrap();
                assert_eq!(a, b);
                assert_eq!(a.scenario(), scenario);
            }
        }
    }

    #[test]
    fn sum_pair_hypotheses_hold() {
        for seed in 0..10 {
            let spec = InstanceSpec {
                seed,
                k: 2,
                n: 3,
                j: 4,
                scenario: Scenario::SumPair,
            };
            let Instance::SumPair {
                family,
                second_family,
                k,
            } = generate_instance(&spec, &tol()).unwrap()
            else {
                panic!("wrong scenario");
            };
            assert!(all_hold(&kframe_sum(&family, &second_family, &k, &tol()).unwrap().hypotheses));
        }
    }

    #[test]
    fn impossible_frame_hits_the_cap() {
        let spec = InstanceSpec {
            seed: 3,
            k: 1,
            n: 4,
            j: 2,
            scenario: Scenario::Frame,
        };
        assert!(matches!(
            generate_instance(&spec, &tol()),
            Err(Error::ResampleCapExceeded { seed: 3, attempts: 100 })
        ));
    }

    #[test]
    fn out_of_range_spec_is_rejected() {
        let spec = InstanceSpec {
            seed: 0,
            k: 0,
            n: 1,
            j: 1,
            scenario: Scenario::Bessel,
        };
        assert!(matches!(generate_instance(&spec, &tol()), Err(Error::InvalidSpec(_))));
    }
}
