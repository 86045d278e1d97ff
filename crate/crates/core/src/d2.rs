//! Depth-two extensions `A | B`: the bimodule endomorphism algebra `S = End_B A_B` as a
//! bialgebroid over the centralizer `R`, quasibase discovery, Galois systems,
//! pseudo-Galois elements, and the comparison maps `Ψ`, `Φ` and `h`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{
    centralizer, endo_to_vector, endomorphism_algebra, morphism_check, restrict, tensor_vectors, vector_to_endo,
    AlgMorphism, Algebra, Subalgebra,
};
use crate::bialgebroid::{check_bialgebroid_morphism, BialgebroidMorphism, LeftBialgebroid};
use crate::constructions::{re_bowtie_g, triple_vector, BowtieAlgebroid};
use crate::error::{Error, Result};
use crate::hopf::{group_action_to_module_action, restrict_action, smash_product, GroupData, ModuleAction};
use crate::linalg::{add_scaled, to_sparse, unit_vector, zeros, Mat, Scalar, SparseVec, Vector};
use crate::report::Report;
use crate::tensor::{
    algebra_tensor_square, collect_terms, invariants_of_tensor_square, mult_legs, twisted_invariants,
    InvariantSubspace, TensorOverBase,
};

/// An extension `B ⊆ A` with the centralizer `R = C_A(B)` and the tensor square `A ⊗_B A`.
#[derive(Debug, Clone)]
pub struct ExtensionData {
    pub a: Arc<Algebra>,
    pub b: Subalgebra,
    pub r: Subalgebra,
    pub tensor: Arc<TensorOverBase>,
}

impl ExtensionData {
    pub fn new(a: Arc<Algebra>, b: Subalgebra) -> Result<Self> {
        if *b.parent != *a {
            return Err(Error::AlgebraMismatch);
        }
        let r = centralizer(&a, &b);
        let tensor = Arc::new(algebra_tensor_square(&a, &b));
        Ok(ExtensionData { a, b, r, tensor })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Quotient matrix of `x ⊗ y ↦ x ⊗ y z`.
    fn right_op(&self, z: &[Scalar]) -> Mat {
        self.tensor.induced_map(&self.tensor, |v| mult_legs(&self.a, v, None, Some(z)))
    }

    /// Quotient matrix of `x ⊗ y ↦ z x ⊗ y`.
    fn left_op(&self, z: &[Scalar]) -> Mat {
        self.tensor.induced_map(&self.tensor, |v| mult_legs(&self.a, v, Some(z), None))
    }

    fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.tensor.project(&tensor_vectors(x, y))
    }
}

/// `End_B A_B` as a subalgebra of `End(A)` (row-major flattening of matrices).
#[derive(Debug, Clone)]
pub struct EndoAlgebra {
    pub sub: Subalgebra,
    pub maps: Vec<Mat>,
}

impl EndoAlgebra {
    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.sub.algebra()
    }

    pub fn coordinates(&self, m: &Mat) -> Option<Vector> {
        self.sub.coordinates(&endo_to_vector(m))
    }

    pub fn to_map(&self, coords: &[Scalar]) -> Mat {
        vector_to_endo(self.maps.first().map_or(0, Mat::rows), &self.sub.embed(coords))
    }
}

/// Linear maps `f` of `A` with `f ∘ λ_b = λ_b ∘ f` and `f ∘ ρ_b = ρ_b ∘ f` for `b ∈ B`.
pub fn bimodule_endos(ext: &ExtensionData) -> EndoAlgebra {
    let a = &ext.a;
    let n = a.dim();
    let mut rows: Vec<Vector> = Vec::new();
    for b in ext.b.basis() {
        for l in [a.left_mult_matrix(&b), a.right_mult_matrix(&b)] {
            for i in 0..n {
                for j in 0..n {
                    let mut row = zeros(n * n);
                    for k in 0..n {
                        row[i * n + k] += l.get(k, j);
                        row[k * n + j] -= l.get(i, k);
                    }
                    rows.push(row);
                }
            }
        }
    }
    let space = Mat::from_rows(n * n, &rows).kernel_basis();
    let sub = Subalgebra::new(Arc::new(endomorphism_algebra(a)), space).expect("bimodule maps form a subalgebra");
    let maps = sub.basis().iter().map(|v| vector_to_endo(n, v)).collect();
    EndoAlgebra { sub, maps }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Quasibases `(β_i, t_i)` with `Σ t_i β_i(x) y = x ⊗ y` (left) or `(γ_j, u_j)` with
/// `x ⊗ y = Σ x γ_j(y) u_j` (right). Tensors are ambient representatives in `A ⊗ A`.
#[derive(Debug, Clone)]
pub struct D2Quasibases {
    pub side: Side,
    pub maps: Vec<Mat>,
    pub tensors: Vec<SparseVec>,
}

impl D2Quasibases {
    pub fn n(&self) -> usize {
        self.maps.len()
    }

    pub fn render(&self) -> Vec<String> {
        self.maps
            .iter()
            .zip(&self.tensors)
            .map(|(m, t)| {
                let m: Vec<String> = m.entries().iter().map(ToString::to_string).collect();
                let t: Vec<String> = t.iter().map(|(i, x)| format!("{i}:{x}")).collect();
                format!("[{}] | [{}]", m.join(","), t.join(","))
            })
            .collect()
    }
}

fn find_quasibases(ext: &ExtensionData, endos: &EndoAlgebra, side: Side) -> Option<D2Quasibases> {
    let a = &ext.a;
    let n = a.dim();
    let inv = invariants_of_tensor_square(a, &ext.b);
    let reps = inv.representatives();
    let vs: Vec<Vector> = inv.space.basis();
    let dq = ext.tensor.dim();
    let nmaps = endos.dim();
    let ncols = nmaps * vs.len();
    let mut m = Mat::zeros(n * dq, ncols);
    let mut rhs = zeros(n * dq);
    for x in 0..n {
        let ex = a.basis_vector(x);
        let target = ext.pair(&ex, a.unit());
        let target = if side == Side::Left { target } else { ext.pair(a.unit(), &ex) };
        for (r, v) in target.into_iter().enumerate() {
            rhs[x * dq + r] = v;
        }
        for (i, f) in endos.maps.iter().enumerate() {
            let op = match side {
                Side::Left => ext.right_op(&f.apply(&ex)),
                Side::Right => ext.left_op(&f.apply(&ex)),
            };
            for (k, q) in vs.iter().enumerate() {
                let col = op.apply(q);
                for (r, v) in col.into_iter().enumerate() {
                    m.set(x * dq + r, i * vs.len() + k, v);
                }
            }
        }
    }
    let sol = m.solve(&rhs)?;
    let mut tensors = Vec::with_capacity(nmaps);
    for i in 0..nmaps {
        let mut t = Vec::new();
        for (k, rep) in reps.iter().enumerate() {
            let c = &sol[i * vs.len() + k];
            if !c.is_zero() {
                t.extend(rep.iter().map(|(p, v)| (*p, c * v)));
            }
        }
        tensors.push(collect_terms(t));
    }
    Some(D2Quasibases { side, maps: endos.maps.clone(), tensors })
}

/// Fixes `β_i` to the canonical basis of `S` and solves `Σ t_i β_i(x) = x ⊗ 1` for
/// `t_i ∈ (A ⊗_B A)^B`. Absent when the linear system is inconsistent.
pub fn find_left_d2_quasibases(ext: &ExtensionData, endos: &EndoAlgebra) -> Option<D2Quasibases> {
    find_quasibases(ext, endos, Side::Left)
}

/// Mirror of [`find_left_d2_quasibases`]: solves `1 ⊗ y = Σ γ_j(y) u_j`.
pub fn find_right_d2_quasibases(ext: &ExtensionData, endos: &EndoAlgebra) -> Option<D2Quasibases> {
    find_quasibases(ext, endos, Side::Right)
}

/// The defining identity on all basis pairs, plus membership of the maps in `S` and of the
/// tensors in `(A ⊗_B A)^B`.
pub fn verify_quasibases(ext: &ExtensionData, endos: &EndoAlgebra, qb: &D2Quasibases) -> Report {
    let a = &ext.a;
    let n = a.dim();
    let t = &ext.tensor;
    let mut rep = Report::new();
    let name = match qb.side {
        Side::Left => "left_d2_identity",
        Side::Right => "right_d2_identity",
    };
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (a.basis_vector(x), a.basis_vector(y));
            let mut lhs = Vec::new();
            for (f, tv) in qb.maps.iter().zip(&qb.tensors) {
                let term = match qb.side {
                    Side::Left => mult_legs(a, tv, None, Some(&a.mul(&f.apply(&ex), &ey))),
                    Side::Right => mult_legs(a, tv, Some(&a.mul(&ex, &f.apply(&ey))), None),
                };
                lhs.extend(term);
            }
            let rhs = to_sparse(&tensor_vectors(&ex, &ey));
            rep.assert(name, &[x, y], t.equal_sparse(&collect_terms(lhs), &rhs));
        }
    }
    for (i, (f, tv)) in qb.maps.iter().zip(&qb.tensors).enumerate() {
        rep.assert("maps_in_endos", &[i], endos.coordinates(f).is_some());
        for b in ext.b.basis() {
            let l = mult_legs(a, tv, Some(&b), None);
            let r = mult_legs(a, tv, None, Some(&b));
            rep.assert("tensors_invariant", &[i], t.equal_sparse(&l, &r));
        }
    }
    rep.set_fact("n", qb.n());
    rep.touch(name);
    rep
}

/// `α(x) = Σ α(t¹_i) t²_i β_i(x)` for every basis `α` of `S` and `x` of `A`, and
/// `T_i(α) = α(t¹_i) t²_i ∈ R`.
pub fn projectivity_identity_check(ext: &ExtensionData, endos: &EndoAlgebra, qb: &D2Quasibases) -> Result<Report> {
    if qb.side != Side::Left {
        return Err(Error::Precondition("projectivity identity needs left quasibases".into()));
    }
    let a = &ext.a;
    let n = a.dim();
    let mut rep = Report::new();
    for (k, alpha) in endos.maps.iter().enumerate() {
        let ts: Vec<Vector> = qb
            .tensors
            .iter()
            .map(|tv| {
                let mut acc = zeros(n);
                for (p, q, c) in ext.tensor.terms(tv) {
                    add_scaled(&mut acc, &c, &a.mul(&alpha.apply(&a.basis_vector(p)), &a.basis_vector(q)));
                }
                acc
            })
            .collect();
        for (i, ti) in ts.iter().enumerate() {
            rep.assert("dual_basis_in_centralizer", &[k, i], ext.r.contains(ti));
        }
        for x in 0..n {
            let ex = a.basis_vector(x);
            let mut rhs = zeros(n);
            for (ti, beta) in ts.iter().zip(&qb.maps) {
                add_scaled(&mut rhs, &Scalar::one(), &a.mul(ti, &beta.apply(&ex)));
            }
            rep.compare("projectivity_identity", &[k, x], &alpha.apply(&ex), &rhs);
        }
    }
    Ok(rep)
}

/// A Galois system `Σ a_i b_i = 1`, `Σ a_i σ(b_i) = 0` (σ ≠ id) for a group of automorphisms.
#[derive(Debug, Clone)]
pub struct GaloisSystem {
    pub g: GroupData,
    pub autos: Vec<AlgMorphism>,
    pub pairs: Vec<(Vector, Vector)>,
    pub ext: ExtensionData,
}

impl GaloisSystem {
    pub fn render(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|(x, y)| format!("{} ⊗ {}", self.ext.a.render(x), self.ext.a.render(y)))
            .collect()
    }
}

/// Rank factorization of a matrix `T = Σ_i col_i row_iᵀ` via the reduced row echelon form.
pub fn rank_decompose(t: &Mat) -> Vec<(Vector, Vector)> {
    let mut e = t.echelon();
    let rows = e.rows().to_vec();
    let pivots = e.pivots();
    rows.iter()
        .zip(pivots)
        .map(|(row, p)| (t.column(p), crate::linalg::to_dense(t.cols(), row)))
        .collect()
}

/// Solves `μ(t) = 1`, `μ(id ⊗ σ)(t) = 0` for `t ∈ A ⊗ A`, then splits `t` into rank-one
/// terms. `B` is the fixed subalgebra. Absent when the system is inconsistent.
pub fn galois_check(a: &Arc<Algebra>, g: &GroupData, autos: &[AlgMorphism]) -> Result<Option<GaloisSystem>> {
    group_action_to_module_action(g, autos)?;
    let n = a.dim();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (s, sigma) in autos.iter().enumerate() {
        let mut block = Mat::zeros(n, n * n);
        for p in 0..n {
            for q in 0..n {
                let v = a.mul(&a.basis_vector(p), &sigma.image_of_basis(q));
                for (k, x) in v.into_iter().enumerate() {
                    block.set(k, p * n + q, x);
                }
            }
        }
        rows.push(block);
        if s == 0 {
            rhs.extend(a.unit().iter().cloned());
        } else {
            rhs.extend(zeros(n));
        }
    }
    let m = rows.iter().skip(1).fold(rows[0].clone(), |acc, b| acc.vstack(b));
    let Some(sol) = m.solve(&rhs) else {
        return Ok(None);
    };
    let pairs = rank_decompose(&Mat::from_vec(n, n, sol));
    let b = crate::algebra::fixed_subalgebra(a, autos)?;
    let ext = ExtensionData::new(a.clone(), b)?;
    Ok(Some(GaloisSystem { g: g.clone(), autos: autos.to_vec(), pairs, ext }))
}

/// Verifies the Galois system identities on the stored pairs.
pub fn verify_galois_system(sys: &GaloisSystem) -> Report {
    let a = &sys.ext.a;
    let mut rep = Report::new();
    for (s, sigma) in sys.autos.iter().enumerate() {
        let mut acc = zeros(a.dim());
        for (x, y) in &sys.pairs {
            add_scaled(&mut acc, &Scalar::one(), &a.mul(x, &sigma.apply(y)));
        }
        let expect = if s == 0 { a.unit().clone() } else { zeros(a.dim()) };
        rep.compare("galois_identity", &[s], &acc, &expect);
    }
    rep.set_fact("pairs", sys.pairs.len());
    rep
}

/// The isomorphism `h(x ⊗ y) = Σ_σ x σ(y) # σ` from `A ⊗_B A` to `A ⋊ G` and its inverse
/// `h⁻¹(a # τ) = Σ_i a τ(a_i) ⊗ b_i`, as matrices on quotient coordinates.
pub struct GaloisIso {
    pub smash: Arc<Algebra>,
    pub h: Mat,
    pub h_inv: Mat,
    pub report: Report,
}

pub fn galois_iso_h(sys: &GaloisSystem) -> Result<GaloisIso> {
    let ext = &sys.ext;
    let a = &ext.a;
    let (n, ng) = (a.dim(), sys.g.order());
    let m = group_action_to_module_action(&sys.g, &sys.autos)?;
    let smash = Arc::new(smash_product(&m)?);
    let t = &ext.tensor;
    let h_amb = |p: usize, q: usize| -> Vector {
        let mut v = zeros(n * ng);
        for (s, sigma) in sys.autos.iter().enumerate() {
            let xy = a.mul(&a.basis_vector(p), &sigma.image_of_basis(q));
            add_scaled(&mut v, &Scalar::one(), &tensor_vectors(&xy, &unit_vector(ng, s)));
        }
        v
    };
    let mut rep = Report::new();
    for (k, rel) in t.relations().basis_sparse().iter().enumerate() {
        let mut v = zeros(n * ng);
        for (p, q, c) in t.terms(rel) {
            add_scaled(&mut v, &c, &h_amb(p, q));
        }
        rep.assert("h_well_defined", &[k], v.iter().all(Zero::is_zero));
    }
    let cols: Vec<Vector> = t.quotient_basis_indices().iter().map(|&c| h_amb(c / n, c % n)).collect();
    let h = Mat::from_columns(n * ng, &cols);
    let inv_cols: Vec<Vector> = (0..n * ng)
        .map(|p| {
            let (x, s) = (p / ng, p % ng);
            let mut acc = Vec::new();
            for (ai, bi) in &sys.pairs {
                let left = a.mul(&a.basis_vector(x), &sys.autos[s].apply(ai));
                acc.extend(to_sparse(&tensor_vectors(&left, bi)));
            }
            t.project_sparse(&collect_terms(acc))
        })
        .collect();
    let h_inv = Mat::from_columns(t.dim(), &inv_cols);
    rep.assert("h_inverse_left", &[], h_inv.mul(&h).is_identity());
    rep.assert("h_inverse_right", &[], h.mul(&h_inv).is_identity());
    for x in 0..n {
        let ax = tensor_vectors(&a.basis_vector(x), &unit_vector(ng, 0));
        let lop = ext.left_op(&a.basis_vector(x));
        let rop = ext.right_op(&a.basis_vector(x));
        for k in 0..t.dim() {
            let q = unit_vector(t.dim(), k);
            let hq = h.apply(&q);
            rep.compare("h_left_linear", &[x, k], &h.apply(&lop.apply(&q)), &smash.mul(&ax, &hq));
            rep.compare("h_right_linear", &[x, k], &h.apply(&rop.apply(&q)), &smash.mul(&hq, &ax));
        }
    }
    rep.set_fact("h_rank", h.rank());
    Ok(GaloisIso { smash, h, h_inv, report: rep })
}

/// `S` as a left `R`-bialgebroid: source `λ`, target `ρ`, counit `α ↦ α(1)`, coproduct
/// `Δ(α) = Σ_i α(? t¹_i) t²_i ⊗_R β_i`. The right-quasibase form
/// `Σ_j γ_j ⊗_R u¹_j α(u²_j ?)` is compared coset by coset.
pub fn s_bialgebroid(
    ext: &ExtensionData,
    endos: &EndoAlgebra,
    left: &D2Quasibases,
    right: &D2Quasibases,
) -> Result<(LeftBialgebroid, Report)> {
    if left.side != Side::Left || right.side != Side::Right {
        return Err(Error::Precondition("s_bialgebroid needs left and right quasibases".into()));
    }
    let a = &ext.a;
    let n = a.dim();
    let total = endos.algebra().clone();
    let base = ext.r.algebra().clone();
    let ns = endos.dim();
    let coords = |m: &Mat, what: &str| -> Result<Vector> {
        endos
            .coordinates(m)
            .ok_or_else(|| Error::Precondition(format!("{what} is not a B-bimodule map")))
    };
    let r_basis = ext.r.basis();
    let mut s_img = Vec::new();
    let mut t_img = Vec::new();
    for r in &r_basis {
        s_img.push(coords(&a.left_mult_matrix(r), "λ_r")?);
        t_img.push(coords(&a.right_mult_matrix(r), "ρ_r")?);
    }
    let source = AlgMorphism::from_images(base.clone(), total.clone(), &s_img, false)?;
    let target = AlgMorphism::from_images(base.clone(), total.clone(), &t_img, true)?;

    let mut rep = Report::new();
    let mut counit = Mat::zeros(ext.r.dim(), ns);
    for (k, alpha) in endos.maps.iter().enumerate() {
        let v = alpha.apply(a.unit());
        match ext.r.coordinates(&v) {
            Some(c) => {
                counit.set_column(k, &c);
                rep.assert("counit_in_centralizer", &[k], true);
            }
            None => {
                rep.assert("counit_in_centralizer", &[k], false);
            }
        }
    }

    let left_form = |alpha: &Mat| -> Result<SparseVec> {
        let mut out = Vec::new();
        for (beta, tv) in left.maps.iter().zip(&left.tensors) {
            let mut m = Mat::zeros(n, n);
            for (p, q, c) in ext.tensor.terms(tv) {
                let f = a.right_mult_matrix(&a.basis_vector(q)).mul(alpha).mul(&a.right_mult_matrix(&a.basis_vector(p)));
                m = add_mat(&m, &c, &f);
            }
            let first = coords(&m, "α(? t¹) t²")?;
            let second = coords(beta, "β_i")?;
            out.extend(to_sparse(&tensor_vectors(&first, &second)));
        }
        Ok(collect_terms(out))
    };
    let right_form = |alpha: &Mat| -> Result<SparseVec> {
        let mut out = Vec::new();
        for (gamma, uv) in right.maps.iter().zip(&right.tensors) {
            let mut m = Mat::zeros(n, n);
            for (p, q, c) in ext.tensor.terms(uv) {
                let f = a.left_mult_matrix(&a.basis_vector(p)).mul(alpha).mul(&a.left_mult_matrix(&a.basis_vector(q)));
                m = add_mat(&m, &c, &f);
            }
            let first = coords(gamma, "γ_j")?;
            let second = coords(&m, "u¹ α(u² ?)")?;
            out.extend(to_sparse(&tensor_vectors(&first, &second)));
        }
        Ok(collect_terms(out))
    };
    let mut coproduct = Vec::with_capacity(ns);
    let mut rights = Vec::with_capacity(ns);
    for alpha in &endos.maps {
        coproduct.push(left_form(alpha)?);
        rights.push(right_form(alpha)?);
    }
    let b = LeftBialgebroid::new(total, base, source, target, coproduct, counit)?;
    for (k, r) in rights.iter().enumerate() {
        rep.assert("coproduct_forms_agree", &[k], b.tensor.equal_sparse(&b.coproduct[k], r));
    }
    rep.set_fact("dim", ns);
    Ok((b, rep))
}

fn add_mat(m: &Mat, c: &Scalar, f: &Mat) -> Mat {
    let data = m.entries().iter().zip(f.entries()).map(|(x, y)| x + c * y).collect();
    Mat::from_vec(m.rows(), m.cols(), data)
}

/// `φ(α ⊗_R β)(x ⊗_B y) = α(x) β(y)`: well defined on both quotients, injective, valued in
/// `B`-bimodule maps, and `φ(Δ(α))(x ⊗ y) = α(xy)`.
pub fn phi_iso_check(ext: &ExtensionData, endos: &EndoAlgebra, s: &LeftBialgebroid) -> Report {
    let a = &ext.a;
    let n = a.dim();
    let ns = endos.dim();
    let t = &ext.tensor;
    let dq = t.dim();
    let mut rep = Report::new();
    let phi_pair = |i: usize, j: usize, p: usize, q: usize| -> Vector {
        a.mul(&endos.maps[i].apply(&a.basis_vector(p)), &endos.maps[j].apply(&a.basis_vector(q)))
    };
    // Value of φ on an ambient S ⊗ S vector, as a map from quotient coordinates of A ⊗_B A.
    let phi_of = |v: &SparseVec| -> Vector {
        let mut out = zeros(n * dq);
        for (i, j, c) in s.tensor.terms(v) {
            for (k, &amb) in t.quotient_basis_indices().iter().enumerate() {
                let val = phi_pair(i, j, amb / n, amb % n);
                for (o, x) in val.into_iter().enumerate() {
                    if !x.is_zero() {
                        out[o * dq + k] += &c * x;
                    }
                }
            }
        }
        out
    };
    for i in 0..ns {
        for j in 0..ns {
            for (k, rel) in t.relations().basis_sparse().iter().enumerate() {
                let mut acc = zeros(n);
                for (p, q, c) in t.terms(rel) {
                    add_scaled(&mut acc, &c, &phi_pair(i, j, p, q));
                }
                rep.assert("phi_balanced", &[i, j, k], acc.iter().all(Zero::is_zero));
            }
        }
    }
    for (k, rel) in s.tensor.relations().basis_sparse().iter().enumerate() {
        rep.assert("phi_well_defined", &[k], phi_of(rel).iter().all(Zero::is_zero));
    }
    let cols: Vec<Vector> = s
        .tensor
        .quotient_basis_indices()
        .iter()
        .map(|&c| phi_of(&vec![(c, Scalar::one())]))
        .collect();
    let phi = Mat::from_columns(n * dq, &cols);
    let rank = phi.rank();
    rep.assert("phi_injective", &[], rank == s.tensor.dim());
    rep.set_fact("phi_rank", rank);
    rep.set_fact("tensor_dim", s.tensor.dim());
    for b in ext.b.basis() {
        let lop = ext.left_op(&b);
        let rop = ext.right_op(&b);
        for (k, col) in cols.iter().enumerate() {
            let f = Mat::from_vec(n, dq, col.clone());
            let ok_l = f.mul(&lop) == a.left_mult_matrix(&b).mul(&f);
            let ok_r = f.mul(&rop) == a.right_mult_matrix(&b).mul(&f);
            rep.assert("phi_bimodule", &[k], ok_l && ok_r);
        }
    }
    for (k, alpha) in endos.maps.iter().enumerate() {
        let f = Mat::from_vec(n, dq, phi_of(&s.coproduct[k]));
        for x in 0..n {
            for y in 0..n {
                let q = ext.pair(&a.basis_vector(x), &a.basis_vector(y));
                rep.compare("phi_coproduct", &[k, x, y], &f.apply(&q), &alpha.apply(&a.mul_basis(x, y)));
            }
        }
    }
    rep
}

/// Pseudo-Galois elements `1 ⊗ 1 = Σ_σ Σ_i r_{i,σ} e_{i,σ}` with `r ∈ R` and
/// `e ∈ (_σA ⊗_B A)^A`, with the quasibases they induce.
#[derive(Debug, Clone)]
pub struct PseudoGaloisData {
    pub gset: Vec<AlgMorphism>,
    pub elements: Vec<Vec<(Vector, SparseVec)>>,
    pub left: D2Quasibases,
    pub right: D2Quasibases,
}

impl PseudoGaloisData {
    pub fn render(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (s, els) in self.elements.iter().enumerate() {
            for (r, e) in els {
                let r: Vec<String> = r.iter().map(ToString::to_string).collect();
                let e: Vec<String> = e.iter().map(|(i, x)| format!("{i}:{x}")).collect();
                out.push(format!("{s}: [{}] | [{}]", r.join(","), e.join(",")));
            }
        }
        out
    }
}

/// Solves for `q_σ ∈ R ⊗ (_σA ⊗_B A)^A` with `Σ_σ (contraction of q_σ) = 1 ⊗ 1` and
/// rank-decomposes each `q_σ`. Absent when unsolvable.
pub fn pseudo_galois_elements(ext: &ExtensionData, gset: &[AlgMorphism]) -> Result<Option<PseudoGaloisData>> {
    let a = &ext.a;
    let n = a.dim();
    let t = &ext.tensor;
    let r_basis = ext.r.basis();
    let invs: Vec<InvariantSubspace> =
        gset.iter().map(|s| twisted_invariants(a, &ext.b, s)).collect::<Result<_>>()?;
    let mut cols = Vec::new();
    let mut layout = Vec::new();
    for (s, inv) in invs.iter().enumerate() {
        let reps = inv.representatives();
        for (l, r) in r_basis.iter().enumerate() {
            for (k, rep) in reps.iter().enumerate() {
                cols.push(t.project_sparse(&mult_legs(a, rep, Some(r), None)));
                layout.push((s, l, k));
            }
        }
    }
    let m = Mat::from_columns(t.dim(), &cols);
    let Some(sol) = m.solve(&ext.pair(a.unit(), a.unit())) else {
        return Ok(None);
    };
    let mut elements = Vec::with_capacity(gset.len());
    let mut left = D2Quasibases { side: Side::Left, maps: Vec::new(), tensors: Vec::new() };
    let mut right = D2Quasibases { side: Side::Right, maps: Vec::new(), tensors: Vec::new() };
    for (s, inv) in invs.iter().enumerate() {
        let reps = inv.representatives();
        let mut d = Mat::zeros(r_basis.len(), reps.len());
        for ((s2, l, k), x) in layout.iter().zip(&sol) {
            if *s2 == s {
                d.set(*l, *k, x.clone());
            }
        }
        let sigma = &gset[s];
        let sigma_inv = sigma.inverse().ok_or_else(|| Error::NotAutomorphism("not invertible".into()))?;
        let mut els = Vec::new();
        for (rc, ec) in rank_decompose(&d) {
            let mut r = zeros(n);
            for (l, c) in rc.iter().enumerate() {
                add_scaled(&mut r, c, &r_basis[l]);
            }
            let mut e = Vec::new();
            for (k, c) in ec.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                e.extend(reps[k].iter().map(|(p, v)| (*p, c * v)));
            }
            let e = collect_terms(e);
            right.maps.push(a.left_mult_matrix(&r).mul(&sigma.matrix));
            right.tensors.push(e.clone());
            left.maps.push(sigma_inv.matrix.mul(&a.right_mult_matrix(&r)));
            left.tensors.push(e.clone());
            els.push((r, e));
        }
        elements.push(els);
    }
    Ok(Some(PseudoGaloisData { gset: gset.to_vec(), elements, left, right }))
}

/// Eq. `1 ⊗ 1 = Σ r e`, the expanded identity `x ⊗ y = Σ x r σ(y) e` on all basis pairs,
/// and membership `r ∈ R`, `e` twisted-central.
pub fn verify_pseudo_galois(ext: &ExtensionData, pg: &PseudoGaloisData) -> Report {
    let a = &ext.a;
    let n = a.dim();
    let t = &ext.tensor;
    let mut rep = Report::new();
    let mut total = Vec::new();
    for (s, els) in pg.elements.iter().enumerate() {
        let sigma = &pg.gset[s];
        for (i, (r, e)) in els.iter().enumerate() {
            rep.assert("elements_in_centralizer", &[s, i], ext.r.contains(r));
            for x in 0..n {
                let ex = a.basis_vector(x);
                let lhs = mult_legs(a, e, None, Some(&ex));
                let rhs = mult_legs(a, e, Some(&sigma.apply(&ex)), None);
                rep.assert("elements_twisted_central", &[s, i, x], t.equal_sparse(&lhs, &rhs));
            }
            total.extend(mult_legs(a, e, Some(r), None));
        }
    }
    let one = to_sparse(&tensor_vectors(a.unit(), a.unit()));
    rep.assert("pseudo_galois_identity", &[], t.equal_sparse(&collect_terms(total), &one));
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (a.basis_vector(x), a.basis_vector(y));
            let mut acc = Vec::new();
            for (s, els) in pg.elements.iter().enumerate() {
                let sy = pg.gset[s].apply(&ey);
                for (r, e) in els {
                    acc.extend(mult_legs(a, e, Some(&a.mul_all(&[&ex, r, &sy])), None));
                }
            }
            let rhs = to_sparse(&tensor_vectors(&ex, &ey));
            rep.assert("expanded_identity", &[x, y], t.equal_sparse(&collect_terms(acc), &rhs));
        }
    }
    rep.set_fact("n", pg.elements.iter().map(Vec::len).sum::<usize>());
    rep
}

/// The action of `G` restricted to `R`, as automorphisms of `R` on its canonical basis.
pub fn restricted_autos(ext: &ExtensionData, autos: &[AlgMorphism]) -> Result<Vec<AlgMorphism>> {
    autos.iter().map(|s| restrict(s, &ext.r)).collect()
}

/// `Ψ(r ⊗ s̄ ⋈ σ) = λ_r ∘ σ ∘ ρ_s` from `R^e ⋈ G` to `S`, checked as a bialgebroid morphism.
/// Returns the bowtie it starts from along with the morphism.
pub fn psi_epimorphism(
    ext: &ExtensionData,
    endos: &EndoAlgebra,
    s: &Arc<LeftBialgebroid>,
    g: &GroupData,
    autos: &[AlgMorphism],
) -> Result<(BowtieAlgebroid, BialgebroidMorphism, Report)> {
    let a = &ext.a;
    let r_autos = restricted_autos(ext, autos)?;
    let (bw, group_rep) = re_bowtie_g(ext.r.algebra(), g, &r_autos)?;
    let r_basis = ext.r.basis();
    let (nr, ng) = (r_basis.len(), g.order());
    let mut images = Vec::with_capacity(bw.dim());
    for x in 0..nr {
        for y in 0..nr {
            for k in 0..ng {
                let m = a.left_mult_matrix(&r_basis[x]).mul(&autos[k].matrix).mul(&a.right_mult_matrix(&r_basis[y]));
                images.push(
                    endos
                        .coordinates(&m)
                        .ok_or_else(|| Error::Precondition("λ_r ∘ σ ∘ ρ_s is not a B-bimodule map".into()))?,
                );
            }
        }
    }
    let map = AlgMorphism::from_images(bw.bialgebroid.total.clone(), s.total.clone(), &images, false)?;
    let f = BialgebroidMorphism { domain: bw.bialgebroid.clone(), codomain: s.clone(), map };
    let mut rep = check_bialgebroid_morphism(&f, None)?;
    let rank = f.map.rank();
    rep.set_fact("domain_dim", bw.dim());
    rep.set_fact("codomain_dim", s.dim());
    rep.set_fact("kernel_dim", bw.dim() - rank);
    rep.merge("bowtie", group_rep);
    Ok((bw, f, rep))
}

/// `Φ(α) = Σ_σ Σ_i α(a_i) σ(b_i) # σ` from `S` to `R ⋊ G`, its inverse `r # τ ↦ λ_r ∘ τ`,
/// the closed form of `Φ ∘ Ψ`, and the splitting `r # σ ↦ r ⊗ 1̄ ⋈ σ`.
pub fn phi_frobenius_split(
    sys: &GaloisSystem,
    endos: &EndoAlgebra,
    bw: &BowtieAlgebroid,
    psi: &BialgebroidMorphism,
) -> Result<Report> {
    let ext = &sys.ext;
    let a = &ext.a;
    let ng = sys.g.order();
    let m = group_action_to_module_action(&sys.g, &sys.autos)?;
    let rm: ModuleAction = restrict_action(&m, &ext.r)?;
    let smash = Arc::new(smash_product(&rm)?);
    let nr = ext.r.dim();
    let mut rep = Report::new();
    let mut images = Vec::with_capacity(endos.dim());
    for (k, alpha) in endos.maps.iter().enumerate() {
        let mut v = zeros(nr * ng);
        for (s, sigma) in sys.autos.iter().enumerate() {
            let mut acc = zeros(a.dim());
            for (ai, bi) in &sys.pairs {
                add_scaled(&mut acc, &Scalar::one(), &a.mul(&alpha.apply(ai), &sigma.apply(bi)));
            }
            match ext.r.coordinates(&acc) {
                Some(c) => {
                    add_scaled(&mut v, &Scalar::one(), &tensor_vectors(&c, &unit_vector(ng, s)));
                    rep.assert("phi_in_centralizer", &[k, s], true);
                }
                None => {
                    rep.assert("phi_in_centralizer", &[k, s], false);
                }
            }
        }
        images.push(v);
    }
    let phi = AlgMorphism::from_images(endos.algebra().clone(), smash.clone(), &images, false)?;
    rep.merge("phi", morphism_check(&phi));
    rep.assert("phi_bijective", &[], phi.is_bijective());
    rep.set_fact("phi_rank", phi.rank());

    let r_basis = ext.r.basis();
    let inv_cols: Vec<Vector> = (0..nr * ng)
        .map(|p| {
            let m = a.left_mult_matrix(&r_basis[p / ng]).mul(&sys.autos[p % ng].matrix);
            endos.coordinates(&m).unwrap_or_else(|| zeros(endos.dim()))
        })
        .collect();
    let inv = Mat::from_columns(endos.dim(), &inv_cols);
    rep.assert("phi_inverse_left", &[], inv.mul(&phi.matrix).is_identity());
    rep.assert("phi_inverse_right", &[], phi.matrix.mul(&inv).is_identity());

    let comp = phi.matrix.mul(&psi.map.matrix);
    let one_r = ext.r.algebra().unit().clone();
    for x in 0..nr {
        for y in 0..nr {
            for s in 0..ng {
                let p = bw.index(x, y, s);
                let mut expect = zeros(nr * ng);
                for t in 0..ng {
                    let mut acc = zeros(a.dim());
                    for (ai, bi) in &sys.pairs {
                        let inner = a.mul_all(&[ai, &r_basis[y], &sys.autos[t].apply(bi)]);
                        add_scaled(&mut acc, &Scalar::one(), &a.mul(&r_basis[x], &sys.autos[s].apply(&inner)));
                    }
                    let c = ext.r.coordinates(&acc).unwrap_or_else(|| zeros(nr));
                    add_scaled(&mut expect, &Scalar::one(), &tensor_vectors(&c, &unit_vector(ng, sys.g.mul(s, t))));
                }
                rep.compare("phi_psi_closed_form", &[p], &comp.column(p), &expect);
            }
        }
    }

    let sec_imgs: Vec<Vector> = (0..nr * ng)
        .map(|p| triple_vector(&unit_vector(nr, p / ng), &one_r, &unit_vector(ng, p % ng)))
        .collect();
    let section = AlgMorphism::from_images(smash, bw.bialgebroid.total.clone(), &sec_imgs, false)?;
    rep.merge("section", morphism_check(&section));
    rep.assert("split", &[], comp.mul(&section.matrix).is_identity());
    Ok(rep)
}

/// Surjectivity of `r ⊗ s̄ ⋈ h ↦ λ_r ∘ λ_{h▷} ∘ ρ_s` onto `S`, and the rank of
/// `r # h ↦ λ_r ∘ λ_{h▷}` from `R ⋊ H`. `B` must lie in the invariants `A^H`.
pub fn pseudo_hopf_galois_check(ext: &ExtensionData, endos: &EndoAlgebra, m: &ModuleAction) -> Result<Report> {
    let a = &ext.a;
    if *m.alg != **a {
        return Err(Error::AlgebraMismatch);
    }
    let nh = m.dim_h();
    for (i, b) in ext.b.basis().iter().enumerate() {
        for h in 0..nh {
            let expect: Vector = b.iter().map(|x| x * m.hopf.counit_basis(h)).collect();
            if m.act_basis_on(h, b) != expect {
                return Err(Error::Precondition(format!("base element {i} is not H-invariant (h = {h})")));
            }
        }
    }
    let mut rep = Report::new();
    let left = find_left_d2_quasibases(ext, endos).is_some();
    let right = find_right_d2_quasibases(ext, endos).is_some();
    rep.set_fact("left_d2", left);
    rep.set_fact("right_d2", right);
    if !(left && right) {
        return Err(Error::Precondition("extension is not depth two".into()));
    }
    let r_basis = ext.r.basis();
    let ops: Vec<Mat> = (0..nh).map(|h| m.operator(&m.hopf.alg.basis_vector(h))).collect();
    let mut cols = Vec::new();
    let mut in_s = true;
    for r in &r_basis {
        for s in &r_basis {
            for op in &ops {
                let f = a.left_mult_matrix(r).mul(op).mul(&a.right_mult_matrix(s));
                in_s &= endos.coordinates(&f).is_some();
                cols.push(endo_to_vector(&f));
            }
        }
    }
    rep.assert("lands_in_endos", &[], in_s);
    let n2 = a.dim() * a.dim();
    let rank = Mat::from_columns(n2, &cols).rank();
    rep.set_fact("rank", rank);
    rep.set_fact("s_dim", endos.dim());
    rep.set_fact("surjective", rank == endos.dim());
    let nat: Vec<Vector> = r_basis
        .iter()
        .flat_map(|r| ops.iter().map(move |op| endo_to_vector(&a.left_mult_matrix(r).mul(op))))
        .collect();
    let nat_rank = Mat::from_columns(n2, &nat).rank();
    rep.set_fact("nat_rank", nat_rank);
    rep.set_fact("nat_bijective", nat_rank == nat.len() && nat_rank == endos.dim());
    Ok(rep)
}
