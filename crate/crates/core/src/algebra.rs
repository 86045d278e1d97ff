//! Finite-dimensional unital associative algebras given by structure constants.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, to_sparse, unit_vector, zeros, Mat, Scalar, SparseVec, Subspace, Vector};
use crate::report::Report;

/// An algebra with basis `labels`; `e_i · e_j = Σ_k c[i][j][k] e_k` where the sparse
/// vector `table[i * dim + j]` holds the nonzero `c[i][j][k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra {
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vector,
}

impl Algebra {
    /// Shape-checked constructor. Axioms are not enforced here; see [`check_algebra`].
    pub fn new(labels: Vec<String>, table: Vec<SparseVec>, unit: Vector) -> Result<Self> {
        let d = labels.len();
        if table.len() != d * d {
            return Err(Error::DimensionMismatch(format!(
                "structure table has {} entries, expected {}",
                table.len(),
                d * d
            )));
        }
        if unit.len() != d {
            return Err(Error::DimensionMismatch(format!("unit has length {}, expected {d}", unit.len())));
        }
        if table.iter().flatten().any(|(k, _)| *k >= d) {
            return Err(Error::DimensionMismatch("structure constant index out of range".into()));
        }
        let table = table
            .into_iter()
            .map(|v| {
                let mut dense = zeros(d);
                for (k, x) in v {
                    dense[k] += x;
                }
                to_sparse(&dense)
            })
            .collect();
        Ok(Algebra { labels, table, unit })
    }

    /// Builds the table from a function returning the coordinates of `e_i · e_j`.
    pub fn from_fn(labels: Vec<String>, unit: Vector, f: impl Fn(usize, usize) -> Vector) -> Self {
        let d = labels.len();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let v = f(i, j);
                assert_eq!(v.len(), d);
                table.push(to_sparse(&v));
            }
        }
        Algebra::new(labels, table, unit).expect("shapes are consistent by construction")
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    /// Coordinates of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    /// Overwrites the coefficient of `e_k` in `e_i · e_j`.
    pub fn set_structure_constant(&mut self, i: usize, j: usize, k: usize, value: Scalar) {
        let d = self.dim();
        let mut dense = zeros(d);
        for (c, x) in &self.table[i * d + j] {
            dense[*c] = x.clone();
        }
        dense[k] = value;
        self.table[i * d + j] = to_sparse(&dense);
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.basis_product(i, j)
            .iter()
            .find(|(c, _)| *c == k)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vector {
        zeros(self.dim())
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim();
        assert!(x.len() == d && y.len() == d, "dimension mismatch in product");
        let mut out = zeros(d);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i * d + j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vector {
        let mut out = zeros(self.dim());
        for (k, c) in self.basis_product(i, j) {
            out[*k] = c.clone();
        }
        out
    }

    /// Product of a list of coordinate vectors, left to right.
    pub fn mul_all(&self, xs: &[&[Scalar]]) -> Vector {
        let mut acc = self.unit.clone();
        for x in xs {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_mult_matrix(&self, x: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Mat::from_columns(self.dim(), &cols)
    }

    pub fn element(&self, coords: Vector) -> Result<Element<'_>> {
        Element::new(self, coords)
    }

    /// Human-readable rendering of a coordinate vector, such as `2·e1 + -1/2·e2`.
    pub fn render(&self, x: &[Scalar]) -> String {
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("{}·{}", c, self.labels[i]) })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// A coordinate vector tied to its algebra.
#[derive(Debug, Clone)]
pub struct Element<'a> {
    algebra: &'a Algebra,
    coords: Vector,
}

impl<'a> Element<'a> {
    pub fn new(algebra: &'a Algebra, coords: Vector) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra has dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        Ok(Element { algebra, coords })
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn algebra(&self) -> &'a Algebra {
        self.algebra
    }

    pub fn mul(&self, other: &Element<'a>) -> Result<Element<'a>> {
        if !std::ptr::eq(self.algebra, other.algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element { algebra: self.algebra, coords: self.algebra.mul(&self.coords, &other.coords) })
    }
}

impl PartialEq for Element<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.algebra, other.algebra) && self.coords == other.coords
    }
}

/// A linear map between algebras given by its matrix (column `j` is the image of basis
/// vector `j`), claimed to be an algebra map or, when `anti`, an anti-homomorphism.
#[derive(Debug, Clone)]
pub struct AlgMorphism {
    pub domain: Arc<Algebra>,
    pub codomain: Arc<Algebra>,
    pub matrix: Mat,
    pub anti: bool,
}

impl AlgMorphism {
    pub fn new(domain: Arc<Algebra>, codomain: Arc<Algebra>, matrix: Mat, anti: bool) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(AlgMorphism { domain, codomain, matrix, anti })
    }

    pub fn from_images(domain: Arc<Algebra>, codomain: Arc<Algebra>, images: &[Vector], anti: bool) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::DimensionMismatch("one image per domain basis vector expected".into()));
        }
        let m = Mat::from_columns(codomain.dim(), images);
        AlgMorphism::new(domain, codomain, m, anti)
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let n = a.dim();
        AlgMorphism { domain: a.clone(), codomain: a, matrix: Mat::identity(n), anti: false }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vector {
        self.matrix.apply(x)
    }

    pub fn image_of_basis(&self, j: usize) -> Vector {
        self.matrix.column(j)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &AlgMorphism) -> AlgMorphism {
        AlgMorphism {
            domain: self.domain.clone(),
            codomain: other.codomain.clone(),
            matrix: other.matrix.mul(&self.matrix),
            anti: self.anti != other.anti,
        }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.dim() == self.codomain.dim() && self.rank() == self.domain.dim()
    }

    pub fn inverse(&self) -> Option<AlgMorphism> {
        let inv = self.matrix.inverse()?;
        Some(AlgMorphism {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix: inv,
            anti: self.anti,
        })
    }
}

/// Verifies unit preservation and (anti-)multiplicativity on all basis pairs, and records
/// rank, injectivity and surjectivity.
pub fn morphism_check(f: &AlgMorphism) -> Report {
    let mut r = Report::new();
    let (a, b) = (&f.domain, &f.codomain);
    r.compare("unit", &[], &f.apply(a.unit()), b.unit());
    let images: Vec<Vector> = (0..a.dim()).map(|j| f.image_of_basis(j)).collect();
    let name = if f.anti { "anti_multiplicative" } else { "multiplicative" };
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = f.apply(&a.mul_basis(i, j));
            let rhs = if f.anti { b.mul(&images[j], &images[i]) } else { b.mul(&images[i], &images[j]) };
            r.compare(name, &[i, j], &lhs, &rhs);
        }
    }
    let rank = f.rank();
    r.set_fact("rank", rank);
    r.set_fact("injective", rank == a.dim());
    r.set_fact("surjective", rank == b.dim());
    r
}

/// Associativity on all basis triples and both unit laws on all basis elements.
pub fn check_algebra(a: &Algebra) -> Report {
    let mut r = Report::new();
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            let ij = a.mul_basis(i, j);
            for k in 0..d {
                let lhs = a.mul(&ij, &a.basis_vector(k));
                let rhs = a.mul(&a.basis_vector(i), &a.mul_basis(j, k));
                r.compare("associativity", &[i, j, k], &lhs, &rhs);
            }
        }
    }
    for i in 0..d {
        let e = a.basis_vector(i);
        r.compare("left_unit", &[i], &a.mul(a.unit(), &e), &e);
        r.compare("right_unit", &[i], &a.mul(&e, a.unit()), &e);
    }
    r.touch("associativity");
    r
}

/// The opposite algebra: same basis and labels, `x ·op y = y · x`.
pub fn opposite(a: &Algebra) -> Algebra {
    let d = a.dim();
    let table = (0..d * d).map(|ij| a.table[(ij % d) * d + ij / d].clone()).collect();
    Algebra { labels: a.labels.clone(), table, unit: a.unit.clone() }
}

/// `A ⊗ B` with componentwise product; basis `(i, j)` has index `i * dim B + j`.
pub fn tensor_algebra(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let labels = (0..da * db).map(|ij| format!("{}⊗{}", a.label(ij / db), b.label(ij % db))).collect();
    let mut table = Vec::with_capacity(da * db * da * db);
    for p in 0..da * db {
        for q in 0..da * db {
            let (i, j, k, l) = (p / db, p % db, q / db, q % db);
            let mut v = SparseVec::new();
            for (s, x) in a.basis_product(i, k) {
                for (t, y) in b.basis_product(j, l) {
                    v.push((s * db + t, x * y));
                }
            }
            table.push(v);
        }
    }
    let unit = tensor_vectors(a.unit(), b.unit());
    Algebra::new(labels, table, unit).expect("tensor shapes are consistent")
}

/// Coordinates of `x ⊗ y` in the basis of [`tensor_algebra`].
pub fn tensor_vectors(x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = zeros(x.len() * y.len());
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                out[i * y.len() + j] = a * b;
            }
        }
    }
    out
}

/// `End(A)` under composition. Basis `E_ij` (index `i * n + j`) sends `e_j` to `e_i`.
pub fn endomorphism_algebra(a: &Algebra) -> Algebra {
    matrix_algebra_with_labels(a.dim(), |i, j| format!("E[{},{}]", a.label(i), a.label(j)))
}

/// Matrix of an endomorphism as a coordinate vector in [`endomorphism_algebra`].
pub fn endo_to_vector(m: &Mat) -> Vector {
    m.entries().to_vec()
}

pub fn vector_to_endo(n: usize, v: &[Scalar]) -> Mat {
    Mat::from_vec(n, n, v.to_vec())
}

fn matrix_algebra_with_labels(n: usize, label: impl Fn(usize, usize) -> String) -> Algebra {
    let labels = (0..n * n).map(|ij| label(ij / n, ij % n)).collect();
    let mut table = Vec::with_capacity(n.pow(4));
    for p in 0..n * n {
        for q in 0..n * n {
            let (i, j, k, l) = (p / n, p % n, q / n, q % n);
            table.push(if j == k { vec![(i * n + l, Scalar::one())] } else { Vec::new() });
        }
    }
    let mut unit = zeros(n * n);
    for i in 0..n {
        unit[i * n + i] = Scalar::one();
    }
    Algebra::new(labels, table, unit).expect("matrix algebra shapes are consistent")
}

/// `M_n(Q)` with matrix units `E_ij` (1-based labels), index `i * n + j`.
pub fn matrix_algebra(n: usize) -> Algebra {
    matrix_algebra_with_labels(n, |i, j| format!("E{}{}", i + 1, j + 1))
}

/// `Q^n` with orthogonal idempotents `e1, …, en`.
pub fn diagonal_algebra(n: usize) -> Algebra {
    let labels = (1..=n).map(|i| format!("e{i}")).collect();
    Algebra::from_fn(labels, vec![Scalar::one(); n], |i, j| {
        if i == j {
            unit_vector(n, i)
        } else {
            zeros(n)
        }
    })
}

/// `Q[x]/(x²)` with basis `1, x`.
pub fn dual_numbers() -> Algebra {
    Algebra::from_fn(vec!["1".into(), "x".into()], vec![int(1), int(0)], |i, j| {
        if i + j < 2 {
            unit_vector(2, i + j)
        } else {
            zeros(2)
        }
    })
}

/// The one-dimensional algebra `Q`.
pub fn ground_field() -> Algebra {
    Algebra::from_fn(vec!["1".into()], vec![int(1)], |_, _| vec![int(1)])
}

/// A subspace of an algebra closed under multiplication and containing the unit, with
/// the induced algebra on its canonical basis.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    pub parent: Arc<Algebra>,
    pub space: Subspace,
    induced: Arc<Algebra>,
}

impl Subalgebra {
    pub fn new(parent: Arc<Algebra>, space: Subspace) -> Result<Self> {
        if space.ambient_dim() != parent.dim() {
            return Err(Error::DimensionMismatch("subspace ambient dimension differs from algebra".into()));
        }
        let unit_coords = space
            .coordinates(parent.unit())
            .ok_or_else(|| Error::NotSubalgebra("unit not contained".into()))?;
        let basis = space.basis();
        let d = basis.len();
        let mut table = Vec::with_capacity(d * d);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let c = space
                    .coordinates(&parent.mul(x, y))
                    .ok_or_else(|| Error::NotSubalgebra(format!("product of basis vectors {i} and {j} leaves the subspace")))?;
                table.push(to_sparse(&c));
            }
        }
        let labels = basis.iter().map(|v| format!("[{}]", parent.render(v))).collect();
        let induced = Arc::new(Algebra::new(labels, table, unit_coords)?);
        Ok(Subalgebra { parent, space, induced })
    }

    pub fn whole(parent: Arc<Algebra>) -> Self {
        let n = parent.dim();
        Subalgebra::new(parent, Subspace::full(n)).expect("whole algebra is a subalgebra")
    }

    pub fn scalars(parent: Arc<Algebra>) -> Self {
        let u = parent.unit().clone();
        let n = parent.dim();
        Subalgebra::new(parent, Subspace::from_vectors(n, &[u])).expect("scalar multiples of the unit")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.space.basis()
    }

    /// The subalgebra as an algebra in its own right, on the canonical basis.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.induced
    }

    /// The inclusion into the parent.
    pub fn inclusion(&self) -> AlgMorphism {
        AlgMorphism {
            domain: self.induced.clone(),
            codomain: self.parent.clone(),
            matrix: self.space.basis_matrix(),
            anti: false,
        }
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.space.contains(x)
    }

    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vector> {
        self.space.coordinates(x)
    }

    pub fn embed(&self, coords: &[Scalar]) -> Vector {
        self.space.combine(coords)
    }
}

/// Checks that `f` is a multiplicative, unital, bijective self-map of its domain.
pub fn ensure_automorphism(f: &AlgMorphism) -> Result<()> {
    if f.anti || !Arc::ptr_eq(&f.domain, &f.codomain) && *f.domain != *f.codomain {
        return Err(Error::NotAutomorphism("not an endomorphism of a single algebra".into()));
    }
    let rep = morphism_check(f);
    if !rep.passed() {
        let w = rep.failed_checks().join(", ");
        return Err(Error::NotAutomorphism(format!("fails {w}")));
    }
    if !f.is_bijective() {
        return Err(Error::NotAutomorphism("not bijective".into()));
    }
    Ok(())
}

/// Common fixed points of the given automorphisms.
pub fn fixed_subalgebra(a: &Arc<Algebra>, autos: &[AlgMorphism]) -> Result<Subalgebra> {
    let n = a.dim();
    let mut stacked = Mat::zeros(0, n);
    for f in autos {
        if *f.domain != **a {
            return Err(Error::NotAutomorphism("automorphism of a different algebra".into()));
        }
        ensure_automorphism(f)?;
        stacked = stacked.vstack(&f.matrix.sub(&Mat::identity(n)));
    }
    Subalgebra::new(a.clone(), stacked.kernel_basis())
}

/// `{ r ∈ A : r b = b r for every basis vector b of B }`.
pub fn centralizer(a: &Arc<Algebra>, b: &Subalgebra) -> Subalgebra {
    let n = a.dim();
    let mut stacked = Mat::zeros(0, n);
    for x in b.basis() {
        stacked = stacked.vstack(&a.right_mult_matrix(&x).sub(&a.left_mult_matrix(&x)));
    }
    Subalgebra::new(a.clone(), stacked.kernel_basis()).expect("centralizers are subalgebras")
}

/// Restriction of an endomorphism of the parent to a subalgebra it preserves.
pub fn restrict(f: &AlgMorphism, sub: &Subalgebra) -> Result<AlgMorphism> {
    let mut images = Vec::with_capacity(sub.dim());
    for (i, v) in sub.basis().iter().enumerate() {
        let c = sub
            .coordinates(&f.apply(v))
            .ok_or_else(|| Error::Precondition(format!("image of basis vector {i} leaves the subalgebra")))?;
        images.push(c);
    }
    AlgMorphism::from_images(sub.algebra().clone(), sub.algebra().clone(), &images, f.anti)
}

/// The algebra map `Q^n → Q^n` permuting coordinates: `e_i ↦ e_{perm[i]}`.
pub fn permutation_morphism(a: &Arc<Algebra>, perm: &[usize]) -> AlgMorphism {
    let images: Vec<Vector> = perm.iter().map(|&p| unit_vector(a.dim(), p)).collect();
    AlgMorphism::from_images(a.clone(), a.clone(), &images, false).expect("permutation shape")
}

/// Conjugation `x ↦ u x u⁻¹` by an invertible element.
pub fn conjugation(a: &Arc<Algebra>, u: &[Scalar], u_inv: &[Scalar]) -> AlgMorphism {
    let images: Vec<Vector> = (0..a.dim()).map(|j| a.mul_all(&[u, &a.basis_vector(j), u_inv])).collect();
    AlgMorphism::from_images(a.clone(), a.clone(), &images, false).expect("conjugation shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(a: Algebra) -> Arc<Algebra> {
        Arc::new(a)
    }

    #[test]
    fn matrix_units_multiply() {
        let m = matrix_algebra(2);
        assert_eq!(m.mul_basis(0, 1), m.basis_vector(1));
        let q2 = diagonal_algebra(2);
        assert_eq!(q2.mul(&[int(1), int(0)], &[int(0), int(1)]), zeros(2));
        let x = vec![int(3), int(-2)];
        assert_eq!(q2.mul(q2.unit(), &x), x);
    }

    #[test]
    fn element_mismatch_is_an_error() {
        let a = diagonal_algebra(2);
        let b = diagonal_algebra(2);
        let x = a.element(a.unit().clone()).unwrap();
        let y = b.element(b.unit().clone()).unwrap();
        assert_eq!(x.mul(&y).unwrap_err(), Error::AlgebraMismatch);
        assert!(a.element(vec![int(1)]).is_err());
    }

    #[test]
    fn builtin_algebras_pass() {
        for a in [diagonal_algebra(2), matrix_algebra(2), dual_numbers(), ground_field()] {
            assert!(check_algebra(&a).passed(), "{:?}", a.labels());
        }
    }

    #[test]
    fn corrupted_matrix_units_are_caught() {
        let mut m = matrix_algebra(2);
        m.set_structure_constant(0, 1, 1, int(0));
        let r = check_algebra(&m);
        assert!(!r.check_passed("associativity"));
        assert_eq!(r.first_witness("associativity").unwrap().indices, vec![0, 1, 2]);
    }

    #[test]
    fn opposite_examples() {
        let q2 = diagonal_algebra(2);
        assert_eq!(opposite(&q2), q2);
        let m = matrix_algebra(2);
        let op = opposite(&m);
        assert_eq!(op.mul_basis(1, 0), m.basis_vector(1));
        assert_eq!(opposite(&op), m);
    }

    #[test]
    fn tensor_examples() {
        let m = matrix_algebra(2);
        assert_eq!(tensor_algebra(&m, &opposite(&m)).dim(), 16);
        let q4 = tensor_algebra(&diagonal_algebra(2), &diagonal_algebra(2));
        assert_eq!(q4.dim(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { q4.basis_vector(i) } else { zeros(4) };
                assert_eq!(q4.mul_basis(i, j), expect);
            }
        }
        let aq = tensor_algebra(&m, &ground_field());
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(aq.mul_basis(i, j), m.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn endomorphism_algebra_composes_like_matrices() {
        let q2 = diagonal_algebra(2);
        let e = endomorphism_algebra(&q2);
        assert_eq!(e.dim(), 4);
        assert!(check_algebra(&e).passed());
        let f = Mat::from_i64(2, 2, &[1, 2, 0, 3]);
        let g = Mat::from_i64(2, 2, &[0, 1, 1, 1]);
        let fg = e.mul(&endo_to_vector(&f), &endo_to_vector(&g));
        assert_eq!(vector_to_endo(2, &fg), f.mul(&g));
        assert_eq!(vector_to_endo(2, e.unit()), Mat::identity(2));
    }

    #[test]
    fn fixed_subalgebra_examples() {
        let q2 = arc(diagonal_algebra(2));
        assert_eq!(fixed_subalgebra(&q2, &[]).unwrap().dim(), 2);
        let swap = permutation_morphism(&q2, &[1, 0]);
        assert_eq!(fixed_subalgebra(&q2, &[swap]).unwrap().dim(), 1);
        let m2 = arc(matrix_algebra(2));
        let u = vec![int(1), int(0), int(0), int(-1)];
        let conj = conjugation(&m2, &u, &u);
        let fixed = fixed_subalgebra(&m2, &[conj]).unwrap();
        assert_eq!(fixed.dim(), 2);
        assert!(fixed.contains(&m2.basis_vector(0)) && fixed.contains(&m2.basis_vector(3)));
        let proj = AlgMorphism::new(q2.clone(), q2.clone(), Mat::from_i64(2, 2, &[1, 0, 0, 0]), false).unwrap();
        assert!(fixed_subalgebra(&q2, &[proj]).is_err());
    }

    #[test]
    fn centralizer_examples() {
        let m2 = arc(matrix_algebra(2));
        assert_eq!(centralizer(&m2, &Subalgebra::whole(m2.clone())).dim(), 1);
        assert_eq!(centralizer(&m2, &Subalgebra::scalars(m2.clone())).dim(), 4);
        let diag = Subalgebra::new(
            m2.clone(),
            Subspace::from_vectors(4, &[m2.basis_vector(0), m2.basis_vector(3)]),
        )
        .unwrap();
        assert_eq!(centralizer(&m2, &diag).space, diag.space);
    }

    #[test]
    fn morphism_check_examples() {
        let q2 = arc(diagonal_algebra(2));
        let r = morphism_check(&AlgMorphism::identity(q2.clone()));
        assert!(r.passed() && r.flag_fact("injective") == Some(true) && r.flag_fact("surjective") == Some(true));
        let r = morphism_check(&permutation_morphism(&q2, &[1, 0]));
        assert!(r.passed() && r.count_fact("rank") == Some(2));
        let q = arc(ground_field());
        let p = AlgMorphism::new(q2, q, Mat::from_i64(1, 2, &[1, 0]), false).unwrap();
        let r = morphism_check(&p);
        assert!(r.passed());
        assert_eq!((r.flag_fact("surjective"), r.flag_fact("injective")), (Some(true), Some(false)));
    }
}
