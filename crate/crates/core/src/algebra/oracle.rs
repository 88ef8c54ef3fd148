//! Independent check of the positive order that never diagonalises anything.
//!
//! The oracle draws random module elements `x` and tests whether each
//! `<Px, x> + δ<x, x>` is a positive algebra element, with `δ` the same slack that
//! [`psd_order`](super::psd_order) grants. Random draws alone rarely expose a
//! slightly negative direction hidden among large positive ones, so one more
//! candidate is appended: the witness left behind by a pivoted `LDLᴴ` elimination of
//! `Θ_P + δI`. Every candidate is judged by directly evaluating its quadratic form.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{hermitian_part, spectral_norm, CMatrix, Operator, Tolerance, C64, ZERO};
use crate::error::{Error, Result};

/// Where a negative direction was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessSource {
    RandomDraw { trial: usize },
    Elimination,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdOracleOutcome {
    pub positive: bool,
    pub trials: usize,
    pub witness: Option<WitnessSource>,
}

/// Decides `0 ≼ P` by sampling; `P` must be self-adjoint.
pub fn psd_sampling_oracle(p: &Operator, trials: usize, seed: u64, tol: &Tolerance) -> Result<PsdOracleOutcome> {
    let residual = p.self_adjoint_residual()?;
    if residual > tol.rel_tol * p.norm().max(1.0) {
        return Err(Error::NotSelfAdjoint { residual });
    }
    Ok(sample_positive(
        &hermitian_part(p.matrix()),
        p.domain().k(),
        trials,
        seed,
        tol.rel_tol,
    ))
}

pub(crate) fn sample_positive(delta: &CMatrix, k: usize, trials: usize, seed: u64, rel_tol: f64) -> PsdOracleOutcome {
    let w = delta.nrows();
    let scale = spectral_norm(delta).max(1.0);
    let slack = rel_tol * scale;
    let roundoff = 1e-12 * (scale + slack) * w as f64;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = CMatrix::from_fn(trials * k, w, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let images = &draws * delta;
    for t in 0..trials {
        let x = draws.rows(t * k, k);
        let form = images.rows(t * k, k) * x.adjoint();
        let gram = x * x.adjoint();
        let size = gram.trace().re;
        let shifted = form + gram.map(|z| z * slack);
        if elimination_witness(&hermitian_part(&shifted), roundoff * size).is_some() {
            return PsdOracleOutcome {
                positive: false,
                trials: t + 1,
                witness: Some(WitnessSource::RandomDraw { trial: t }),
            };
        }
    }

    let shifted = delta + CMatrix::identity(w, w).map(|z| z * slack);
    if let Some(v) = elimination_witness(&shifted, roundoff) {
        // The witness becomes the first row of a module element.
        let mut x = CMatrix::zeros(k, w);
        for j in 0..w {
            x[(0, j)] = v[j].conj();
        }
        let form = &x * delta * x.adjoint();
        let gram = &x * x.adjoint();
        let value = form[(0, 0)].re + slack * gram[(0, 0)].re;
        if value < -roundoff * gram[(0, 0)].re {
            return PsdOracleOutcome {
                positive: false,
                trials,
                witness: Some(WitnessSource::Elimination),
            };
        }
    }

    PsdOracleOutcome {
        positive: true,
        trials,
        witness: None,
    }
}

/// Pivoted symmetric elimination of a Hermitian `h`. Returns a column vector `w` with
/// `wᴴ h w < 0` when the elimination proves `h` is not positive, otherwise `None`.
fn elimination_witness(h: &CMatrix, eta: f64) -> Option<DVector<C64>> {
    let n = h.nrows();
    let mut z = h.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut eliminated: Vec<usize> = Vec::new();

    loop {
        if remaining.is_empty() {
            return None;
        }
        let p = *remaining
            .iter()
            .max_by(|&&a, &&b| z[(a, a)].re.total_cmp(&z[(b, b)].re))
            .expect("nonempty");
        let pivot = z[(p, p)].re;
        if pivot <= eta {
            let direction = negative_direction(&z, &remaining, eta)?;
            return Some(lift_witness(h, &eliminated, &direction));
        }
        for &i in &remaining {
            if i == p {
                continue;
            }
            let factor = z[(i, p)] / pivot;
            for &j in &remaining {
                if j == p {
                    continue;
                }
                let update = factor * z[(p, j)];
                z[(i, j)] -= update;
            }
        }
        remaining.retain(|&i| i != p);
        eliminated.push(p);
    }
}

/// In a Schur complement whose diagonal is at most `eta`, find `z` with `zᴴ Z z < 0`.
fn negative_direction(z: &CMatrix, remaining: &[usize], eta: f64) -> Option<Vec<(usize, C64)>> {
    if let Some(&q) = remaining.iter().find(|&&q| z[(q, q)].re < -eta) {
        return Some(vec![(q, C64::new(1.0, 0.0))]);
    }
    for (ia, &a) in remaining.iter().enumerate() {
        for &b in &remaining[ia + 1..] {
            let off = z[(a, b)].norm();
            if off > 0.5 * (z[(a, a)].re + z[(b, b)].re) + eta {
                let alpha = -z[(b, a)] / off;
                return Some(vec![(a, C64::new(1.0, 0.0)), (b, alpha)]);
            }
        }
    }
    None
}

/// Extends a direction on the remaining indices to a full vector: with
/// `h = [[A, B], [Bᴴ, C]]` split by eliminated/remaining indices, `w = (-A⁻¹Bz, z)`
/// satisfies `wᴴ h w = zᴴ (C - Bᴴ A⁻¹ B) z`.
fn lift_witness(h: &CMatrix, eliminated: &[usize], direction: &[(usize, C64)]) -> DVector<C64> {
    let n = h.nrows();
    let mut w = DVector::from_element(n, ZERO);
    for &(i, c) in direction {
        w[i] = c;
    }
    if eliminated.is_empty() {
        return w;
    }
    let m = eliminated.len();
    let a = CMatrix::from_fn(m, m, |i, j| h[(eliminated[i], eliminated[j])]);
    let mut rhs = DVector::from_element(m, ZERO);
    for (i, &e) in eliminated.iter().enumerate() {
        rhs[i] = direction.iter().map(|&(r, c)| h[(e, r)] * c).sum();
    }
    if let Some(y) = a.lu().solve(&rhs) {
        for (i, &e) in eliminated.iter().enumerate() {
            w[e] = -y[i];
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ModuleSpace;

    #[test]
    fn identity_is_positive_for_any_seed() {
        let id = Operator::identity(ModuleSpace::of(2, 3).unwrap());
        for seed in 0..5 {
            let out = psd_sampling_oracle(&id, 50, seed, &Tolerance::default()).unwrap();
            assert!(out.positive);
        }
    }

    #[test]
    fn indefinite_diagonal_found_by_random_draws() {
        let d = Operator::diagonal(&[1.0, -1.0]);
        let out = psd_sampling_oracle(&d, 1000, 7, &Tolerance::default()).unwrap();
        assert!(!out.positive);
        match out.witness {
            Some(WitnessSource::RandomDraw { trial }) => assert!(trial < 20),
            other => panic!("unexpected witness {other:?}"),
        }
    }

    #[test]
    fn hidden_small_negative_direction_is_found() {
        // One eigenvalue of -1e-4 among large positive ones: random draws miss it.
        let d = Operator::diagonal(&[100.0, 50.0, 80.0, -1e-4, 0.0, 0.0]);
        let out = psd_sampling_oracle(&d, 200, 1, &Tolerance::default()).unwrap();
        assert!(!out.positive);
    }

    #[test]
    fn rank_deficient_positive_is_accepted() {
        let v = CMatrix::from_fn(5, 2, |i, j| C64::new((i + 2 * j) as f64 - 2.0, (i * j) as f64 * 0.3));
        let p = Operator::on(ModuleSpace::of(1, 5).unwrap(), &v * v.adjoint()).unwrap();
        let out = psd_sampling_oracle(&p, 200, 3, &Tolerance::default()).unwrap();
        assert!(out.positive);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let n = Operator::on(e, CMatrix::from_row_slice(2, 2, &[ZERO, C64::new(1.0, 0.0), ZERO, ZERO])).unwrap();
        assert!(psd_sampling_oracle(&n, 10, 0, &Tolerance::default()).is_err());
    }
}
