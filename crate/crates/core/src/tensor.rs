//! Bimodules and tensor products over a noncommutative base, realized as explicit
//! quotient spaces of the plain tensor product.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{ensure_automorphism, AlgMorphism, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{to_sparse, zeros, Echelon, Mat, Scalar, SparseVec, Subspace, Vector};
use crate::report::Report;

/// A space with a left action of `left_base` and a right action of `right_base`, each
/// given by one matrix per base basis element.
#[derive(Debug, Clone)]
pub struct Bimodule {
    pub dim: usize,
    pub left_base: Arc<Algebra>,
    pub right_base: Arc<Algebra>,
    pub left: Vec<Mat>,
    pub right: Vec<Mat>,
}

impl Bimodule {
    pub fn new(dim: usize, left_base: Arc<Algebra>, right_base: Arc<Algebra>, left: Vec<Mat>, right: Vec<Mat>) -> Result<Self> {
        if left.len() != left_base.dim() || right.len() != right_base.dim() {
            return Err(Error::DimensionMismatch("one action matrix per base basis element".into()));
        }
        if left.iter().chain(&right).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch("action matrices must be square of the module dimension".into()));
        }
        Ok(Bimodule { dim, left_base, right_base, left, right })
    }

    /// An algebra as a bimodule over two of its subalgebras, by multiplication.
    pub fn of_algebra(a: &Algebra, left: &Subalgebra, right: &Subalgebra) -> Self {
        let lm = left.basis().iter().map(|b| a.left_mult_matrix(b)).collect();
        let rm = right.basis().iter().map(|b| a.right_mult_matrix(b)).collect();
        Bimodule::new(a.dim(), left.algebra().clone(), right.algebra().clone(), lm, rm).expect("shapes agree")
    }

    fn combine(ms: &[Mat], coords: &[Scalar], n: usize) -> Mat {
        let mut out = Mat::zeros(n, n);
        for (m, c) in ms.iter().zip(coords) {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let v = m.get(i, j);
                    if !v.is_zero() {
                        out.add_at(i, j, &(c * v));
                    }
                }
            }
        }
        out
    }

    pub fn left_operator(&self, r: &[Scalar]) -> Mat {
        Bimodule::combine(&self.left, r, self.dim)
    }

    pub fn right_operator(&self, r: &[Scalar]) -> Mat {
        Bimodule::combine(&self.right, r, self.dim)
    }
}

/// Unitality, associativity of both actions, and commutation of left with right.
pub fn check_bimodule(m: &Bimodule) -> Report {
    let mut rep = Report::new();
    let id = Mat::identity(m.dim);
    rep.assert("left_unit", &[], m.left_operator(m.left_base.unit()) == id);
    rep.assert("right_unit", &[], m.right_operator(m.right_base.unit()) == id);
    let (dl, dr) = (m.left_base.dim(), m.right_base.dim());
    for i in 0..dl {
        for j in 0..dl {
            let lhs = m.left_operator(&m.left_base.mul_basis(i, j));
            rep.assert("left_associativity", &[i, j], lhs == m.left[i].mul(&m.left[j]));
        }
    }
    for i in 0..dr {
        for j in 0..dr {
            let lhs = m.right_operator(&m.right_base.mul_basis(i, j));
            rep.assert("right_associativity", &[i, j], lhs == m.right[j].mul(&m.right[i]));
        }
    }
    for i in 0..dl {
        for j in 0..dr {
            rep.assert("actions_commute", &[i, j], m.left[i].mul(&m.right[j]) == m.right[j].mul(&m.left[i]));
        }
    }
    rep
}

/// `M ⊗_R N` as the quotient of `M ⊗ N` (index `i * dim N + j`) by the span of the
/// balancing relations. The quotient basis is the set of non-pivot columns of the
/// canonical relation echelon; projection reads the normal form at those columns.
#[derive(Debug, Clone)]
pub struct TensorOverBase {
    left_dim: usize,
    right_dim: usize,
    relations: Subspace,
    free: Vec<usize>,
    free_pos: Vec<Option<usize>>,
}

impl TensorOverBase {
    /// Quotient of `Q^{left_dim} ⊗ Q^{right_dim}` by the span of `gens`.
    pub fn from_relations(left_dim: usize, right_dim: usize, gens: Vec<SparseVec>) -> Self {
        let n = left_dim * right_dim;
        let mut e = Echelon::new(n);
        for g in gens {
            if !g.is_empty() {
                e.insert(g);
            }
        }
        e.make_reduced();
        let free = e.free_columns();
        let mut free_pos = vec![None; n];
        for (k, &c) in free.iter().enumerate() {
            free_pos[c] = Some(k);
        }
        TensorOverBase { left_dim, right_dim, relations: Subspace::from_echelon(e), free, free_pos }
    }

    /// Relations `(x · r) ⊗ y − x ⊗ (r · y)` for basis `x`, `y` and each pair of
    /// matching operators (`right_on_left[k]`, `left_on_right[k]`).
    pub fn from_actions(left_dim: usize, right_dim: usize, right_on_left: &[Mat], left_on_right: &[Mat]) -> Self {
        assert_eq!(right_on_left.len(), left_on_right.len());
        let mut gens = Vec::new();
        for (p, q) in right_on_left.iter().zip(left_on_right) {
            let pcols: Vec<SparseVec> = (0..left_dim).map(|x| to_sparse(&p.column(x))).collect();
            let qcols: Vec<SparseVec> = (0..right_dim).map(|y| to_sparse(&q.column(y))).collect();
            for (x, xr) in pcols.iter().enumerate() {
                for (y, ry) in qcols.iter().enumerate() {
                    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                    for (i, c) in xr {
                        *acc.entry(i * right_dim + y).or_insert_with(Scalar::zero) += c;
                    }
                    for (j, c) in ry {
                        *acc.entry(x * right_dim + j).or_insert_with(Scalar::zero) -= c;
                    }
                    let g: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if !g.is_empty() {
                        gens.push(g);
                    }
                }
            }
        }
        gens.sort();
        gens.dedup();
        TensorOverBase::from_relations(left_dim, right_dim, gens)
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn ambient_dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.right_dim + j
    }

    /// Ambient indices of the quotient basis.
    pub fn quotient_basis_indices(&self) -> &[usize] {
        &self.free
    }

    pub fn quotient_basis(&self) -> Vec<Vector> {
        self.free.iter().map(|&c| crate::linalg::unit_vector(self.ambient_dim(), c)).collect()
    }

    pub fn normal_form(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.relations.echelon().reduce(v)
    }

    pub fn project_sparse(&self, v: &[(usize, Scalar)]) -> Vector {
        let mut out = zeros(self.dim());
        for (c, x) in self.normal_form(v) {
            out[self.free_pos[c].expect("normal form lives on free columns")] = x;
        }
        out
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim(), "dimension mismatch in projection");
        self.project_sparse(&to_sparse(v))
    }

    pub fn section_sparse(&self, q: &[Scalar]) -> SparseVec {
        q.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (self.free[k], x.clone()))
            .collect()
    }

    pub fn section(&self, q: &[Scalar]) -> Vector {
        crate::linalg::to_dense(self.ambient_dim(), &self.section_sparse(q))
    }

    pub fn projection_matrix(&self) -> Mat {
        let cols: Vec<Vector> = (0..self.ambient_dim()).map(|c| self.project_sparse(&[(c, Scalar::one())])).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    pub fn section_matrix(&self) -> Mat {
        Mat::from_fn(self.ambient_dim(), self.dim(), |i, k| if self.free[k] == i { Scalar::one() } else { Scalar::zero() })
    }

    pub fn is_relation(&self, v: &[(usize, Scalar)]) -> bool {
        self.relations.contains_sparse(v)
    }

    /// `u ≡ v` modulo the relations.
    pub fn equal(&self, u: &[Scalar], v: &[Scalar]) -> bool {
        self.relations.contains(&crate::linalg::sub_vec(u, v))
    }

    pub fn equal_sparse(&self, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> bool {
        let mut d: SparseVec = u.to_vec();
        d.extend(v.iter().map(|(i, x)| (*i, -x.clone())));
        self.relations.contains_sparse(&d)
    }

    /// Splits an ambient vector into `(i, j, coefficient)` terms.
    pub fn terms(&self, v: &[(usize, Scalar)]) -> Vec<(usize, usize, Scalar)> {
        v.iter().map(|(c, x)| (c / self.right_dim, c % self.right_dim, x.clone())).collect()
    }

    /// Matrix of the map on quotients induced by an ambient-level map `f`, using the
    /// section on the source side and projection on the target side.
    pub fn induced_map(&self, target: &TensorOverBase, f: impl Fn(&SparseVec) -> SparseVec) -> Mat {
        let cols: Vec<Vector> = (0..self.dim())
            .map(|k| target.project_sparse(&f(&vec![(self.free[k], Scalar::one())])))
            .collect();
        Mat::from_columns(target.dim(), &cols)
    }
}

/// Sum of sparse terms keyed by ambient index, dropping zeros.
pub fn collect_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (i, x) in terms {
        if !x.is_zero() {
            *acc.entry(i).or_insert_with(Scalar::zero) += x;
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// `(P ⊗ Q) v` on an ambient vector of a tensor with factor dimensions `(cols P, cols Q)`.
pub fn kron_apply(p: &Mat, q: &Mat, v: &[(usize, Scalar)]) -> SparseVec {
    let (m, n) = (q.cols(), q.rows());
    let mut out = Vec::new();
    for (c, x) in v {
        let (i, j) = (c / m, c % m);
        let pi = p.column(i);
        let qj = q.column(j);
        for (a, y) in pi.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            for (b, z) in qj.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                out.push((a * n + b, x * y * z));
            }
        }
    }
    collect_terms(out)
}

/// `M ⊗_R N` for bimodules with matching base.
pub fn tensor_over_base(ml: &Bimodule, mr: &Bimodule) -> Result<TensorOverBase> {
    if *ml.right_base != *mr.left_base {
        return Err(Error::BaseMismatch("right base of the left factor differs from left base of the right factor".into()));
    }
    Ok(TensorOverBase::from_actions(ml.dim, mr.dim, &ml.right, &mr.left))
}

/// `A ⊗_B A` with the multiplication bimodule structure.
pub fn algebra_tensor_square(a: &Algebra, b: &Subalgebra) -> TensorOverBase {
    let m = Bimodule::of_algebra(a, b, b);
    tensor_over_base(&m, &m).expect("same base on both sides")
}

/// A subspace of a quotient tensor, in quotient coordinates.
#[derive(Debug, Clone)]
pub struct InvariantSubspace {
    pub tensor: Arc<TensorOverBase>,
    pub space: Subspace,
}

impl InvariantSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Ambient representatives (via the section) of the canonical basis.
    pub fn representatives(&self) -> Vec<SparseVec> {
        self.space.basis().iter().map(|q| self.tensor.section_sparse(q)).collect()
    }
}

/// Matrix on quotient coordinates of `e ↦ f(e)` where `f` acts on ambient vectors of
/// `A ⊗ A`.
fn quotient_operator(t: &TensorOverBase, f: impl Fn(&SparseVec) -> SparseVec) -> Mat {
    t.induced_map(t, f)
}

/// Left multiplication of the first leg by `x`, or right multiplication of the second
/// leg by `y`, on an ambient vector of `A ⊗ A`.
pub fn mult_legs(a: &Algebra, v: &SparseVec, left: Option<&[Scalar]>, right: Option<&[Scalar]>) -> SparseVec {
    let d = a.dim();
    let mut out = Vec::new();
    for (c, x) in v {
        let (i, j) = (c / d, c % d);
        let li = match left {
            Some(l) => a.mul(l, &a.basis_vector(i)),
            None => a.basis_vector(i),
        };
        let rj = match right {
            Some(r) => a.mul(&a.basis_vector(j), r),
            None => a.basis_vector(j),
        };
        for (p, y) in li.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            for (q, z) in rj.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                out.push((p * d + q, x * y * z));
            }
        }
    }
    collect_terms(out)
}

/// `(A ⊗_B A)^B = { e : b e = e b for all b ∈ B }`.
pub fn invariants_of_tensor_square(a: &Algebra, b: &Subalgebra) -> InvariantSubspace {
    let t = Arc::new(algebra_tensor_square(a, b));
    let n = t.dim();
    let mut stacked = Mat::zeros(0, n);
    for x in b.basis() {
        let m = quotient_operator(&t, |v| {
            let l = mult_legs(a, v, Some(&x), None);
            let r = mult_legs(a, v, None, Some(&x));
            collect_terms(l.into_iter().chain(r.into_iter().map(|(i, c)| (i, -c))))
        });
        stacked = stacked.vstack(&m);
    }
    InvariantSubspace { tensor: t, space: stacked.kernel_basis() }
}

/// `({}_σA ⊗_B A)^A = { e : e a = σ(a) e for all a ∈ A }` in `A ⊗_B A`.
pub fn twisted_invariants(a: &Arc<Algebra>, b: &Subalgebra, sigma: &AlgMorphism) -> Result<InvariantSubspace> {
    ensure_automorphism(sigma)?;
    if *sigma.domain != **a {
        return Err(Error::NotAutomorphism("automorphism of a different algebra".into()));
    }
    for (i, x) in b.basis().iter().enumerate() {
        if sigma.apply(x) != *x {
            return Err(Error::Precondition(format!("automorphism moves base basis element {i}")));
        }
    }
    let t = Arc::new(algebra_tensor_square(a, b));
    let n = t.dim();
    let mut stacked = Mat::zeros(0, n);
    for k in 0..a.dim() {
        let x = a.basis_vector(k);
        let sx = sigma.apply(&x);
        let m = quotient_operator(&t, |v| {
            let r = mult_legs(a, v, None, Some(&x));
            let l = mult_legs(a, v, Some(&sx), None);
            collect_terms(r.into_iter().chain(l.into_iter().map(|(i, c)| (i, -c))))
        });
        stacked = stacked.vstack(&m);
    }
    Ok(InvariantSubspace { tensor: t, space: stacked.kernel_basis() })
}
