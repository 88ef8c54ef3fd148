//! Seeded random building blocks. Every trial draws from its own ChaCha8 stream keyed
//! by `(seed, trial)`, so trials are independent of evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{CMatrix, ModuleElement, ModuleSpace, Operator, C64};

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Entries with independent standard normal real and imaginary parts.
pub fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

/// `w x r` matrix with orthonormal columns (`r ≤ w`).
pub fn orthonormal_columns(rng: &mut impl Rng, w: usize, r: usize) -> CMatrix {
    assert!(r <= w);
    if r == 0 {
        return CMatrix::zeros(w, 0);
    }
    let q = gaussian(rng, w, r).qr().q();
    q.columns(0, r).into_owned()
}

pub fn random_unitary(rng: &mut impl Rng, w: usize) -> CMatrix {
    orthonormal_columns(rng, w, w)
}

/// Singular value drawn log-uniformly from `[0.1, 10]`, keeping condition numbers of
/// generated operators at most 100.
pub fn singular_value(rng: &mut impl Rng) -> f64 {
    10f64.powf(rng.random_range(-1.0..=1.0))
}

/// `rows x cols` matrix `U diag(s) V^H` of the given rank with `s` from [`singular_value`].
pub fn matrix_of_rank(rng: &mut impl Rng, rows: usize, cols: usize, rank: usize) -> CMatrix {
    let rank = rank.min(rows).min(cols);
    let u = orthonormal_columns(rng, rows, rank);
    let v = orthonormal_columns(rng, cols, rank);
    let mut us = u;
    for j in 0..rank {
        let s = singular_value(rng);
        us.column_mut(j).scale_mut(s);
    }
    us * v.adjoint()
}

pub fn operator_of_rank(rng: &mut impl Rng, domain: ModuleSpace, codomain: ModuleSpace, rank: usize) -> Operator {
    let mat = matrix_of_rank(rng, domain.width(), codomain.width(), rank);
    Operator::new(domain, codomain, mat).expect("generated shape")
}

/// Rank drawn uniformly from `0..=max`.
pub fn any_rank(rng: &mut impl Rng, max: usize) -> usize {
    rng.random_range(0..=max)
}

pub fn random_element(rng: &mut impl Rng, space: ModuleSpace) -> ModuleElement {
    ModuleElement::new(space, gaussian(rng, space.k(), space.width())).expect("generated shape")
}

/// Invertible matrix with singular values from [`singular_value`].
pub fn invertible(rng: &mut impl Rng, w: usize) -> CMatrix {
    matrix_of_rank(rng, w, w, w)
}

/// Orthonormal rows spanning the row space of `m` (relative cutoff `1e-10`).
pub fn row_space_basis(m: &CMatrix) -> CMatrix {
    crate::algebra::row_space_basis(m, 1e-10)
}

/// Orthonormal rows completing `basis` (orthonormal rows) to a basis of `C^w`.
pub fn complete_basis(rng: &mut impl Rng, basis: &CMatrix) -> CMatrix {
    let w = basis.ncols();
    let r = basis.nrows();
    let mut out = CMatrix::zeros(w, w);
    out.rows_mut(0, r).copy_from(basis);
    let mut filled = r;
    while filled < w {
        let mut v = gaussian(rng, 1, w);
        for _ in 0..2 {
            for i in 0..filled {
                let row = out.row(i).into_owned();
                let c = (&v * row.adjoint())[(0, 0)];
                v -= row * c;
            }
        }
        let norm = v.norm();
        if norm > 1e-8 {
            out.row_mut(filled).copy_from(&(v / C64::new(norm, 0.0)));
            filled += 1;
        }
    }
    out
}
