//! Exact linear algebra over the rationals.

mod echelon;
mod mat;
pub mod scalar;
mod subspace;

pub use echelon::Echelon;
pub use mat::Mat;
pub use scalar::{
    add_scaled, frac, int, is_zero_vec, parse_scalar, render, render_vec, scale_vec, sub_vec, to_dense,
    to_sparse, unit_vector, zeros, ParseScalarError, Scalar, SparseVec, Vector,
};
pub use subspace::Subspace;

/// Reduced row-echelon form of `m`.
pub fn rref(m: &Mat) -> Mat {
    m.rref()
}

/// Canonical basis of the null space of `m`.
pub fn kernel_basis(m: &Mat) -> Subspace {
    m.kernel_basis()
}

/// Some `x` with `m · x = b`, free variables zero, or `None` if inconsistent.
pub fn solve(m: &Mat, b: &[Scalar]) -> Option<Vector> {
    m.solve(b)
}
