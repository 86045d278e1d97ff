use num_traits::Zero;

use super::echelon::Echelon;
use super::mat::Mat;
use super::scalar::{to_dense, to_sparse, Scalar, SparseVec, Vector};

/// A subspace of `Q^n` held in reduced row-echelon form, so equal subspaces have equal
/// representations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { echelon: Echelon::new(ambient_dim) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::from_sparse(
            ambient_dim,
            (0..ambient_dim).map(|i| vec![(i, num_traits::One::one())]).collect(),
        )
    }

    pub fn from_sparse(ambient_dim: usize, gens: Vec<SparseVec>) -> Self {
        Subspace { echelon: Echelon::from_rows(ambient_dim, gens) }
    }

    pub fn from_vectors(ambient_dim: usize, gens: &[Vector]) -> Self {
        Subspace::from_sparse(ambient_dim, gens.iter().map(|v| to_sparse(v)).collect())
    }

    pub fn from_echelon(mut echelon: Echelon) -> Self {
        echelon.make_reduced();
        Subspace { echelon }
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ncols()
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn basis_sparse(&self) -> &[SparseVec] {
        self.echelon.reduced_rows()
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.basis_sparse().iter().map(|r| to_dense(self.ambient_dim(), r)).collect()
    }

    /// Basis vectors as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_columns(self.ambient_dim(), &self.basis())
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.echelon.pivots()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "dimension mismatch");
        self.echelon.contains(&to_sparse(v))
    }

    pub fn contains_sparse(&self, v: &[(usize, Scalar)]) -> bool {
        self.echelon.contains(v)
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim(), "dimension mismatch");
        let mut out = super::scalar::zeros(self.ambient_dim());
        for (c, r) in coords.iter().zip(self.basis_sparse()) {
            if c.is_zero() {
                continue;
            }
            for (j, x) in r {
                out[*j] += c * x;
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis_sparse().iter().all(|r| other.contains_sparse(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut gens: Vec<SparseVec> = self.basis_sparse().to_vec();
        gens.extend(other.basis_sparse().iter().cloned());
        Subspace::from_sparse(self.ambient_dim(), gens)
    }

    /// Intersection, computed as the kernel of `[B_self | -B_other]`.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim(), other.ambient_dim());
        let n = self.ambient_dim();
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let neg_b = Mat::zeros(n, b.cols()).sub(&b);
        let k = a.hstack(&neg_b).kernel_basis();
        let gens: Vec<Vector> = k
            .basis()
            .iter()
            .map(|v| a.apply(&v[..a.cols()]))
            .collect();
        Subspace::from_vectors(n, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::int;

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn equal_spans_have_equal_representations() {
        let a = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::from_vectors(3, &[v(&[1, 2, 1]), v(&[1, 0, -1]), v(&[2, 2, 0])]);
        assert_eq!(a, b);
    }

    #[test]
    fn coordinates_and_combine() {
        let s = Subspace::from_vectors(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let w = v(&[2, 5, 3]);
        let c = s.coordinates(&w).unwrap();
        assert_eq!(s.combine(&c), w);
        assert!(s.coordinates(&v(&[0, 0, 1])).is_none());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_vectors(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i, Subspace::from_vectors(3, &[v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }
}
