use std::fmt;

use num_traits::{One, Zero};

use super::echelon::Echelon;
use super::scalar::{to_dense, to_sparse, zeros, Scalar, SparseVec, Vector};
use super::subspace::Subspace;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        Mat { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: &[Vector]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Mat { rows: rows.len(), cols, data }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Mat::from_vec(rows, cols, entries.iter().map(|&x| super::scalar::int(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Scalar) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_column(&mut self, j: usize, v: &[Scalar]) {
        assert_eq!(v.len(), self.rows);
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// `self · v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let mut out = zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = &self.data[i * self.cols + j];
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    /// Stacks `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        Mat::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows).map(|i| to_sparse(self.row(i))).collect()
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.cols, self.sparse_rows())
    }

    /// Reduced row-echelon form with the same shape; zero rows at the bottom.
    pub fn rref(&self) -> Mat {
        let e = self.echelon();
        let mut out = Mat::zeros(self.rows, self.cols);
        for (i, r) in e.reduced_rows().iter().enumerate() {
            for (j, x) in r {
                out.set(i, *j, x.clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Canonical basis of `{v : self · v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let e = self.echelon();
        let mut gens = Vec::new();
        for f in e.free_columns() {
            let mut v: SparseVec = Vec::new();
            for r in e.reduced_rows() {
                if let Ok(pos) = r.binary_search_by_key(&f, |(c, _)| *c) {
                    v.push((r[0].0, -r[pos].1.clone()));
                }
            }
            v.push((f, Scalar::one()));
            v.sort_by_key(|(c, _)| *c);
            gens.push(v);
        }
        Subspace::from_sparse(self.cols, gens)
    }

    /// A solution of `self · x = b` with free variables set to zero, or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "dimension mismatch in solve");
        let aug = self.hstack(&Mat::from_columns(self.rows, &[b.to_vec()]));
        let e = aug.echelon();
        if e.is_pivot(self.cols) {
            return None;
        }
        let mut x = zeros(self.cols);
        for r in e.reduced_rows() {
            let last = r.last().unwrap();
            if last.0 == self.cols {
                x[r[0].0] = last.1.clone();
            }
        }
        Some(x)
    }

    /// Solves `self · X = B` column by column; `None` if any column is inconsistent.
    pub fn solve_many(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(b.rows, self.rows, "dimension mismatch in solve");
        let aug = self.hstack(b);
        let e = aug.echelon();
        if e.pivots().iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for r in e.reduced_rows() {
            let p = r[0].0;
            for (c, v) in r.iter().skip(1) {
                if *c >= self.cols {
                    x.set(p, c - self.cols, v.clone());
                }
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve_many(&Mat::identity(self.rows))?;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Dense image of a sparse column vector.
    pub fn apply_sparse(&self, v: &[(usize, Scalar)]) -> Vector {
        self.apply(&to_dense(self.cols, v))
    }
}
