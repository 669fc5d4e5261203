//! Exact dense linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use scalar::{Scalar, ScalarField};
pub use subspace::{Echelon, Quotient, Subspace, SubspaceOps};

/// Reduced row-echelon form, rank and pivot columns of `m`.
pub fn rref(m: &Matrix) -> Rref {
    m.rref()
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> crate::Result<Option<Matrix>> {
    a.solve(b)
}

/// Null space of `m`.
pub fn kernel(m: &Matrix) -> Subspace {
    m.kernel()
}

/// Canonical row span of `vectors`.
pub fn span(vectors: &Matrix, ambient_dim: usize) -> crate::Result<Subspace> {
    Subspace::span(vectors, ambient_dim)
}

/// The zero vector of length `n`.
pub fn zero_vector(field: ScalarField, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

/// The `i`-th unit vector of length `n`.
pub fn unit_vector(field: ScalarField, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_mul(c, x);
    }
}
