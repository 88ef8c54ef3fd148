//! Finite-rank Hilbert C*-modules over the matrix algebra `A = M_k(C)`.
//!
//! The free module `E = A^n` is realised concretely:
//!
//! * an algebra element is a `k x k` complex matrix;
//! * a module element `x = (a_1, ..., a_n)` is the `k x kn` matrix `[a_1 | ... | a_n]`;
//! * the inner product is `<x, y> = X Y^H = sum_i a_i b_i^*`;
//! * an adjointable operator `T: A^n -> A^m` is a `kn x km` matrix `Θ_T` acting on the
//!   right, `x ↦ X Θ_T`. Every matrix of that shape commutes with the left action
//!   `a·x = aX`, and every adjointable module map has this form.
//!
//! Because operators act on the right, the composite `S ∘ T` (apply `T` first) is
//! represented by `Θ_T Θ_S`. [`Operator::compose`] takes care of the reversal so that
//! callers can write operator identities in their usual order.

mod audit;
mod oracle;
mod spectral;

pub use audit::{record_psd_decisions, PsdDecision};
pub(crate) use audit::without_recording;
pub use oracle::{psd_sampling_oracle, PsdOracleOutcome, WitnessSource};
pub(crate) use oracle::sample_positive;
pub use spectral::{
    hermitian_eigen, is_positive, kernel_projector, operator_sqrt, pseudo_inverse, pseudo_inverse_sqrt, psd_order, range_inclusion,
    range_projector, rank, row_space_basis, singular_values, spectral_norm, HermitianEigen, PsdVerdict,
    RangeInclusion,
};

use nalgebra::DMatrix;
pub use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };

/// Numerical tolerances shared by every decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative tolerance for residual and order decisions.
    pub rel_tol: f64,
    /// Relative singular-value cutoff used for rank decisions.
    pub rank_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel_tol: 1e-9,
            rank_tol: 1e-10,
        }
    }
}

impl Tolerance {
    pub fn new(rel_tol: f64, rank_tol: f64) -> Result<Self> {
        if !(rel_tol >= 0.0 && rel_tol.is_finite()) {
            return Err(Error::schema("rel_tol", "must be a finite nonnegative number"));
        }
        if !(rank_tol >= 0.0 && rank_tol.is_finite()) {
            return Err(Error::schema("rank_tol", "must be a finite nonnegative number"));
        }
        Ok(Tolerance { rel_tol, rank_tol })
    }
}

/// The coefficient algebra `M_k(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Algebra {
    k: usize,
}

impl Algebra {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::schema("algebra_k", "must be at least 1"));
        }
        Ok(Algebra { k })
    }

    /// The scalar case `A = C`.
    pub fn scalar() -> Self {
        Algebra { k: 1 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement {
            mat: CMatrix::identity(self.k, self.k),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            mat: CMatrix::zeros(self.k, self.k),
        }
    }
}

/// An element of `M_k(C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    mat: CMatrix,
}

impl AlgebraElement {
    pub fn from_matrix(mat: CMatrix) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::dims(
                "algebra element",
                "nonempty square matrix",
                format!("{}x{}", mat.nrows(), mat.ncols()),
            ));
        }
        Ok(AlgebraElement { mat })
    }

    pub fn k(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn adjoint(&self) -> AlgebraElement {
        AlgebraElement {
            mat: self.mat.adjoint(),
        }
    }

    /// C*-norm (largest singular value).
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.mat)
    }

    /// Positivity in the C*-algebra, up to `tol · max(1, ‖a‖)`.
    pub fn is_positive(&self, tol: f64) -> bool {
        let herm = hermitian_part(&self.mat);
        if spectral_norm(&(&self.mat - &herm)) > tol * self.norm().max(1.0) {
            return false;
        }
        let eig = hermitian_eigen(&herm);
        let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        eig.values.iter().all(|&v| v >= -tol * scale)
    }
}

/// The free module `A^n` over `A = M_k(C)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleSpace {
    algebra: Algebra,
    n: usize,
}

impl ModuleSpace {
    pub fn new(algebra: Algebra, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::schema("module_n", "must be at least 1"));
        }
        Ok(ModuleSpace { algebra, n })
    }

    /// Shorthand for `ModuleSpace::new(Algebra::new(k)?, n)`.
    pub fn of(k: usize, n: usize) -> Result<Self> {
        ModuleSpace::new(Algebra::new(k)?, n)
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn k(&self) -> usize {
        self.algebra.k
    }

    /// Rank of the free module.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Complex dimension of the row space a module element lives in (`k·n`).
    pub fn width(&self) -> usize {
        self.algebra.k * self.n
    }

    pub fn zero(&self) -> ModuleElement {
        ModuleElement {
            space: *self,
            mat: CMatrix::zeros(self.k(), self.width()),
        }
    }

    /// The `j`-th standard basis element `(0, …, 1_A, …, 0)`.
    pub fn basis_element(&self, j: usize) -> ModuleElement {
        assert!(j < self.n, "basis index out of range");
        let k = self.k();
        let mut mat = CMatrix::zeros(k, self.width());
        for i in 0..k {
            mat[(i, j * k + i)] = ONE;
        }
        ModuleElement { space: *self, mat }
    }

    pub fn standard_basis(&self) -> Vec<ModuleElement> {
        (0..self.n).map(|j| self.basis_element(j)).collect()
    }

    /// Build an element from its `n` coefficient blocks.
    pub fn element_from_blocks(&self, blocks: &[AlgebraElement]) -> Result<ModuleElement> {
        if blocks.len() != self.n {
            return Err(Error::dims("module element blocks", self.n, blocks.len()));
        }
        let k = self.k();
        let mut mat = CMatrix::zeros(k, self.width());
        for (j, b) in blocks.iter().enumerate() {
            if b.k() != k {
                return Err(Error::dims("algebra block", k, b.k()));
            }
            mat.view_mut((0, j * k), (k, k)).copy_from(b.matrix());
        }
        Ok(ModuleElement { space: *self, mat })
    }
}

/// A point of `E = A^n`, stored as the `k x kn` matrix of its coefficient blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleElement {
    space: ModuleSpace,
    mat: CMatrix,
}

impl ModuleElement {
    pub fn new(space: ModuleSpace, mat: CMatrix) -> Result<Self> {
        if mat.shape() != (space.k(), space.width()) {
            return Err(Error::dims(
                "module element",
                format!("{}x{} (k x kn)", space.k(), space.width()),
                format!("{}x{}", mat.nrows(), mat.ncols()),
            ));
        }
        Ok(ModuleElement { space, mat })
    }

    /// Scalar-case element `(v_1, …, v_n)` of `C^n`.
    pub fn scalar_row(values: &[f64]) -> ModuleElement {
        let space = ModuleSpace::of(1, values.len()).expect("nonempty row");
        ModuleElement {
            space,
            mat: real_matrix(1, values.len(), values),
        }
    }

    pub fn space(&self) -> ModuleSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn block(&self, j: usize) -> AlgebraElement {
        let k = self.space.k();
        AlgebraElement {
            mat: self.mat.view((0, j * k), (k, k)).into_owned(),
        }
    }

    pub fn blocks(&self) -> Vec<AlgebraElement> {
        (0..self.space.n).map(|j| self.block(j)).collect()
    }

    /// `<x, y> = X Y^H`.
    pub fn inner(&self, other: &ModuleElement) -> Result<AlgebraElement> {
        if self.space != other.space {
            return Err(Error::dims(
                "inner product",
                format!("{:?}", self.space),
                format!("{:?}", other.space),
            ));
        }
        Ok(AlgebraElement {
            mat: &self.mat * other.mat.adjoint(),
        })
    }

    /// `‖x‖ = ‖<x, x>‖^{1/2}`, i.e. the largest singular value of `X`.
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.mat)
    }

    /// Left module action `a·x`.
    pub fn left_mul(&self, a: &AlgebraElement) -> Result<ModuleElement> {
        if a.k() != self.space.k() {
            return Err(Error::dims("left action", self.space.k(), a.k()));
        }
        Ok(ModuleElement {
            space: self.space,
            mat: a.matrix() * &self.mat,
        })
    }

    pub fn scale(&self, s: C64) -> ModuleElement {
        ModuleElement {
            space: self.space,
            mat: self.mat.map(|z| z * s),
        }
    }

    pub fn add(&self, other: &ModuleElement) -> Result<ModuleElement> {
        if self.space != other.space {
            return Err(Error::dims(
                "module addition",
                format!("{:?}", self.space),
                format!("{:?}", other.space),
            ));
        }
        Ok(ModuleElement {
            space: self.space,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &ModuleElement) -> Result<ModuleElement> {
        self.add(&other.scale(-ONE))
    }
}

/// Free-function form of [`ModuleElement::inner`].
pub fn inner_product(x: &ModuleElement, y: &ModuleElement) -> Result<AlgebraElement> {
    x.inner(y)
}

/// Free-function form of [`Operator::apply`].
/// Row-major real matrix, lifted to complex entries.
pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    assert_eq!(data.len(), rows * cols, "real_matrix: data length");
    CMatrix::from_fn(rows, cols, |i, j| C64::new(data[i * cols + j], 0.0))
}

pub fn apply(t: &Operator, x: &ModuleElement) -> Result<ModuleElement> {
    t.apply(x)
}

/// Adjointable operator `A^n -> A^m`, represented by the `kn x km` matrix acting on the right.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    domain: ModuleSpace,
    codomain: ModuleSpace,
    mat: CMatrix,
}

impl Operator {
    pub fn new(domain: ModuleSpace, codomain: ModuleSpace, mat: CMatrix) -> Result<Self> {
        if domain.algebra != codomain.algebra {
            return Err(Error::dims(
                "operator algebra",
                domain.k(),
                codomain.k(),
            ));
        }
        if mat.shape() != (domain.width(), codomain.width()) {
            return Err(Error::dims(
                "operator matrix",
                format!(
                    "{}x{} (kn x km)",
                    domain.width(),
                    codomain.width()
                ),
                format!("{}x{}", mat.nrows(), mat.ncols()),
            ));
        }
        Ok(Operator {
            domain,
            codomain,
            mat,
        })
    }

    /// An operator on `space` from its representing matrix.
    pub fn on(space: ModuleSpace, mat: CMatrix) -> Result<Self> {
        Operator::new(space, space, mat)
    }

    pub fn identity(space: ModuleSpace) -> Self {
        Operator {
            domain: space,
            codomain: space,
            mat: CMatrix::identity(space.width(), space.width()),
        }
    }

    pub fn zero(domain: ModuleSpace, codomain: ModuleSpace) -> Self {
        Operator {
            domain,
            codomain,
            mat: CMatrix::zeros(domain.width(), codomain.width()),
        }
    }

    /// Real diagonal operator in the scalar case `k = 1`; convenient for small examples.
    pub fn diagonal(values: &[f64]) -> Self {
        let space = ModuleSpace::of(1, values.len()).expect("nonempty diagonal");
        let d = nalgebra::DVector::from_iterator(values.len(), values.iter().map(|&v| C64::new(v, 0.0)));
        Operator {
            domain: space,
            codomain: space,
            mat: CMatrix::from_diagonal(&d),
        }
    }

    /// Lifts a `n x m` scalar matrix to `A^n -> A^m` by tensoring with `1_A`.
    pub fn amplify(algebra: Algebra, scalar: &CMatrix) -> Result<Self> {
        let k = algebra.k();
        let domain = ModuleSpace::new(algebra, scalar.nrows())?;
        let codomain = ModuleSpace::new(algebra, scalar.ncols())?;
        let mut mat = CMatrix::zeros(domain.width(), codomain.width());
        for i in 0..scalar.nrows() {
            for j in 0..scalar.ncols() {
                for d in 0..k {
                    mat[(i * k + d, j * k + d)] = scalar[(i, j)];
                }
            }
        }
        Operator::new(domain, codomain, mat)
    }

    pub fn domain(&self) -> ModuleSpace {
        self.domain
    }

    pub fn codomain(&self) -> ModuleSpace {
        self.codomain
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn apply(&self, x: &ModuleElement) -> Result<ModuleElement> {
        if x.space != self.domain {
            return Err(Error::dims(
                "operator application",
                format!("{:?}", self.domain),
                format!("{:?}", x.space),
            ));
        }
        Ok(ModuleElement {
            space: self.codomain,
            mat: &x.mat * &self.mat,
        })
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            domain: self.codomain,
            codomain: self.domain,
            mat: self.mat.adjoint(),
        }
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &Operator) -> Result<Operator> {
        if inner.codomain != self.domain {
            return Err(Error::dims(
                "composition",
                format!("{:?}", self.domain),
                format!("{:?}", inner.codomain),
            ));
        }
        Ok(Operator {
            domain: inner.domain,
            codomain: self.codomain,
            mat: &inner.mat * &self.mat,
        })
    }

    /// `T T*`, an operator on the codomain.
    pub fn gram_range(&self) -> Operator {
        Operator {
            domain: self.codomain,
            codomain: self.codomain,
            mat: self.mat.adjoint() * &self.mat,
        }
    }

    /// `T* T`, an operator on the domain.
    pub fn gram_domain(&self) -> Operator {
        Operator {
            domain: self.domain,
            codomain: self.domain,
            mat: &self.mat * self.mat.adjoint(),
        }
    }

    pub fn add(&self, other: &Operator) -> Result<Operator> {
        self.check_same_shape(other, "operator addition")?;
        Ok(Operator {
            domain: self.domain,
            codomain: self.codomain,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Operator) -> Result<Operator> {
        self.check_same_shape(other, "operator subtraction")?;
        Ok(Operator {
            domain: self.domain,
            codomain: self.codomain,
            mat: &self.mat - &other.mat,
        })
    }

    pub fn scale(&self, s: f64) -> Operator {
        Operator {
            domain: self.domain,
            codomain: self.codomain,
            mat: self.mat.map(|z| z * s),
        }
    }

    pub fn scale_complex(&self, s: C64) -> Operator {
        Operator {
            domain: self.domain,
            codomain: self.codomain,
            mat: self.mat.map(|z| z * s),
        }
    }

    /// Operator norm (largest singular value of the representing matrix).
    pub fn norm(&self) -> f64 {
        spectral_norm(&self.mat)
    }

    /// `‖T - T*‖`, defined only for endomorphisms.
    pub fn self_adjoint_residual(&self) -> Result<f64> {
        if !self.is_endomorphism() {
            return Err(Error::dims(
                "self-adjointness",
                format!("{:?}", self.domain),
                format!("{:?}", self.codomain),
            ));
        }
        Ok(spectral_norm(&(&self.mat - self.mat.adjoint())))
    }

    /// Stacks `[A | B]: dom(A) ⊕ dom(B) -> F`, `(u, v) ↦ Au + Bv`.
    ///
    /// A pair `(u, v)` is the element `[U | V]`, so the representing matrix stacks
    /// `Θ_A` above `Θ_B`.
    pub fn row_stack(a: &Operator, b: &Operator) -> Result<Operator> {
        if a.codomain != b.codomain {
            return Err(Error::dims(
                "operator stacking",
                format!("{:?}", a.codomain),
                format!("{:?}", b.codomain),
            ));
        }
        let domain = ModuleSpace::new(a.domain.algebra, a.domain.n + b.domain.n)?;
        let mut mat = CMatrix::zeros(domain.width(), a.codomain.width());
        mat.view_mut((0, 0), a.mat.shape()).copy_from(&a.mat);
        mat.view_mut((a.mat.nrows(), 0), b.mat.shape()).copy_from(&b.mat);
        Ok(Operator {
            domain,
            codomain: a.codomain,
            mat,
        })
    }

    /// Splits `Z: G -> E1 ⊕ E2` into `(X: G -> E1, Y: G -> E2)`; inverse of stacking on the codomain side.
    pub fn split_codomain(&self, first: ModuleSpace) -> Result<(Operator, Operator)> {
        if first.n > self.codomain.n || first.algebra != self.codomain.algebra {
            return Err(Error::dims(
                "codomain split",
                format!("rank <= {}", self.codomain.n),
                first.n,
            ));
        }
        let rest = self.codomain.n - first.n;
        let w1 = first.width();
        let x = Operator {
            domain: self.domain,
            codomain: first,
            mat: self.mat.columns(0, w1).into_owned(),
        };
        let second = ModuleSpace::new(first.algebra, rest.max(1))?;
        let y_mat = if rest == 0 {
            CMatrix::zeros(self.domain.width(), second.width())
        } else {
            self.mat.columns(w1, self.mat.ncols() - w1).into_owned()
        };
        let y = Operator {
            domain: self.domain,
            codomain: second,
            mat: y_mat,
        };
        Ok((x, y))
    }

    fn check_same_shape(&self, other: &Operator, context: &'static str) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::dims(
                context,
                format!("{:?} -> {:?}", self.domain, self.codomain),
                format!("{:?} -> {:?}", other.domain, other.codomain),
            ));
        }
        Ok(())
    }
}

/// `(M + M^H) / 2`.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).map(|z| z * 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn orthogonal_scalar_vectors_have_zero_inner_product() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let ip = e.basis_element(0).inner(&e.basis_element(1)).unwrap();
        assert_eq!(ip.matrix()[(0, 0)], ZERO);
    }

    #[test]
    fn identity_against_itself_is_identity() {
        let e = ModuleSpace::of(2, 1).unwrap();
        let x = e.basis_element(0);
        let ip = x.inner(&x).unwrap();
        assert_eq!(ip.matrix(), &CMatrix::identity(2, 2));
    }

    #[test]
    fn inner_product_against_identity_is_adjoint() {
        let e = ModuleSpace::of(2, 1).unwrap();
        let g = CMatrix::from_row_slice(2, 2, &[c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0), c(4.0, -1.0)]);
        let x = e.basis_element(0);
        let y = ModuleElement::new(e, g.clone()).unwrap();
        let ip = x.inner(&y).unwrap();
        assert_eq!(ip.matrix(), &g.adjoint());
    }

    #[test]
    fn inner_product_rejects_mismatched_spaces() {
        let a = ModuleSpace::of(1, 2).unwrap().zero();
        let b = ModuleSpace::of(1, 3).unwrap().zero();
        assert!(matches!(a.inner(&b), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn diagonal_action() {
        let t = Operator::diagonal(&[2.0, 0.0]);
        let x = ModuleElement::new(t.domain(), CMatrix::from_row_slice(1, 2, &[ONE, ONE])).unwrap();
        let y = t.apply(&x).unwrap();
        assert_eq!(y.matrix()[(0, 0)], c(2.0, 0.0));
        assert_eq!(y.matrix()[(0, 1)], ZERO);
        let id = Operator::identity(t.domain());
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn adjoint_of_shift_is_reverse_shift() {
        let up = Operator::on(
            ModuleSpace::of(1, 3).unwrap(),
            CMatrix::from_fn(3, 3, |i, j| if j == i + 1 { ONE } else { ZERO }),
        )
        .unwrap();
        let down = CMatrix::from_fn(3, 3, |i, j| if i == j + 1 { ONE } else { ZERO });
        assert_eq!(up.adjoint().matrix(), &down);
        let id = Operator::identity(up.domain());
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn composition_reverses_matrix_order() {
        let e = ModuleSpace::of(1, 2).unwrap();
        let s = Operator::on(e, CMatrix::from_row_slice(2, 2, &[ONE, ONE, ZERO, ONE])).unwrap();
        let t = Operator::on(e, CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])).unwrap();
        let st = s.compose(&t).unwrap();
        for j in 0..2 {
            let ej = e.basis_element(j);
            let expected = s.apply(&t.apply(&ej).unwrap()).unwrap();
            assert_eq!(st.apply(&ej).unwrap(), expected);
        }
        assert_eq!(st.matrix(), &(t.matrix() * s.matrix()));
    }

    #[test]
    fn zero_rank_spaces_are_rejected() {
        assert!(matches!(Algebra::new(0), Err(Error::Schema { .. })));
        assert!(matches!(ModuleSpace::of(2, 0), Err(Error::Schema { .. })));
    }

    #[test]
    fn stacking_and_splitting_are_inverse() {
        let e = ModuleSpace::of(2, 2).unwrap();
        let a = Operator::identity(e);
        let b = Operator::identity(e).scale(2.0);
        let st = Operator::row_stack(&a, &b).unwrap();
        assert_eq!(st.domain().n(), 4);
        let back = st.adjoint().split_codomain(e).unwrap();
        assert_eq!(back.0, a.adjoint());
        assert_eq!(back.1, b.adjoint());
    }
}
