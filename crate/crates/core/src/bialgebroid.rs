//! Left bialgebroids and Hopf algebroids over a finite-dimensional base, with complete
//! axiom checks evaluated as coset equalities in the tensor quotients.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{endomorphism_algebra, morphism_check, AlgMorphism, Algebra};
use crate::error::{Error, Result};
use crate::linalg::{to_dense, to_sparse, zeros, Mat, Scalar, SparseVec, Vector};
use crate::report::Report;
use crate::tensor::{collect_terms, TensorOverBase};

/// A left bialgebroid `(T, R, s, t, Δ, ε)`. `coproduct[j]` is an ambient representative
/// of `Δ(e_j)` in `T ⊗ T` (index `i * dim T + k`); `counit` is `dim R × dim T`.
#[derive(Debug, Clone)]
pub struct LeftBialgebroid {
    pub total: Arc<Algebra>,
    pub base: Arc<Algebra>,
    pub source: AlgMorphism,
    pub target: AlgMorphism,
    pub coproduct: Vec<SparseVec>,
    pub counit: Mat,
    pub tensor: Arc<TensorOverBase>,
}

/// `T ⊗_R T` for the bimodule structure `r · x · r' = s(r) t(r') x`:
/// relations `t(r) x ⊗ y − x ⊗ s(r) y`.
pub fn balanced_tensor(total: &Algebra, source: &AlgMorphism, target: &AlgMorphism) -> TensorOverBase {
    let dr = source.domain.dim();
    let tl: Vec<Mat> = (0..dr).map(|r| total.left_mult_matrix(&target.image_of_basis(r))).collect();
    let sl: Vec<Mat> = (0..dr).map(|r| total.left_mult_matrix(&source.image_of_basis(r))).collect();
    TensorOverBase::from_actions(total.dim(), total.dim(), &tl, &sl)
}

impl LeftBialgebroid {
    pub fn new(
        total: Arc<Algebra>,
        base: Arc<Algebra>,
        source: AlgMorphism,
        target: AlgMorphism,
        coproduct: Vec<SparseVec>,
        counit: Mat,
    ) -> Result<Self> {
        let (dt, dr) = (total.dim(), base.dim());
        if source.matrix.rows() != dt || source.matrix.cols() != dr || target.matrix.rows() != dt || target.matrix.cols() != dr {
            return Err(Error::DimensionMismatch("source/target must map base into total".into()));
        }
        if coproduct.len() != dt || counit.rows() != dr || counit.cols() != dt {
            return Err(Error::DimensionMismatch("coproduct or counit has the wrong shape".into()));
        }
        if coproduct.iter().flatten().any(|(i, _)| *i >= dt * dt) {
            return Err(Error::DimensionMismatch("coproduct index out of range".into()));
        }
        let tensor = Arc::new(balanced_tensor(&total, &source, &target));
        Ok(LeftBialgebroid { total, base, source, target, coproduct, counit, tensor })
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn s(&self, r: &[Scalar]) -> Vector {
        self.source.apply(r)
    }

    pub fn t(&self, r: &[Scalar]) -> Vector {
        self.target.apply(r)
    }

    pub fn eps(&self, x: &[Scalar]) -> Vector {
        self.counit.apply(x)
    }

    /// Representative of `Δ(x)`.
    pub fn delta(&self, x: &[Scalar]) -> SparseVec {
        collect_terms(
            x.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .flat_map(|(j, c)| self.coproduct[j].iter().map(move |(k, y)| (*k, c * y))),
        )
    }

    pub fn coproduct_matrix(&self) -> Mat {
        let d = self.dim();
        let cols: Vec<Vector> = self.coproduct.iter().map(|v| to_dense(d * d, v)).collect();
        Mat::from_columns(d * d, &cols)
    }

    /// Quotient coordinates of `Δ(x)` in `T ⊗_R T`.
    pub fn delta_class(&self, x: &[Scalar]) -> Vector {
        self.tensor.project_sparse(&self.delta(x))
    }

    /// `(T ⊗_R T) ⊗_R T`, with `T ⊗_R T` carrying the right action on its second leg.
    pub fn triple_tensor(&self) -> TensorOverBase {
        let q = &self.tensor;
        let (dt, dr) = (self.dim(), self.base.dim());
        let mut right_on_q = Vec::with_capacity(dr);
        let mut left_on_t = Vec::with_capacity(dr);
        for r in 0..dr {
            let tr = self.target.image_of_basis(r);
            let m = q.induced_map(q, |v| {
                let mut out = Vec::new();
                for (i, j, c) in q.terms(v) {
                    let y = self.total.mul(&tr, &self.total.basis_vector(j));
                    for (k, z) in y.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                        out.push((i * dt + k, &c * z));
                    }
                }
                collect_terms(out)
            });
            right_on_q.push(m);
            left_on_t.push(self.total.left_mult_matrix(&self.source.image_of_basis(r)));
        }
        TensorOverBase::from_actions(q.dim(), dt, &right_on_q, &left_on_t)
    }

    /// Maps `Σ c · e_i ⊗ e_j ⊗ e_k` into the ambient space of [`Self::triple_tensor`].
    fn triple_rep(&self, terms: Vec<(usize, usize, usize, Scalar)>) -> SparseVec {
        let dt = self.dim();
        let mut by_last: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (i, j, k, c) in terms {
            by_last.entry(k).or_default().push((i * dt + j, c));
        }
        let mut out = Vec::new();
        for (k, v) in by_last {
            let q = self.tensor.project_sparse(&collect_terms(v));
            for (p, x) in q.into_iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                out.push((p * dt + k, x));
            }
        }
        collect_terms(out)
    }
}

/// Factorwise product `(Σ x ⊗ y)(Σ x' ⊗ y') = Σ x x' ⊗ y y'` of ambient representatives.
pub fn tensor_mul(a: &Algebra, u: &[(usize, Scalar)], v: &[(usize, Scalar)]) -> SparseVec {
    let d = a.dim();
    let mut out = Vec::new();
    for (p, x) in u {
        let (i, j) = (p / d, p % d);
        for (q, y) in v {
            let (k, l) = (q / d, q % d);
            let xy = x * y;
            for (s, c1) in a.basis_product(i, k) {
                for (t, c2) in a.basis_product(j, l) {
                    out.push((s * d + t, &xy * c1 * c2));
                }
            }
        }
    }
    collect_terms(out)
}

/// `(X ⊗ Y) · Σ x ⊗ y = Σ X x ⊗ Y y` with either side optional (identity when absent),
/// multiplying on the left (`on_left = true`) or on the right.
pub fn legs_mul(a: &Algebra, v: &[(usize, Scalar)], first: Option<&[Scalar]>, second: Option<&[Scalar]>, on_left: bool) -> SparseVec {
    let d = a.dim();
    let side = |z: Option<&[Scalar]>, i: usize| -> Vector {
        match z {
            Some(z) if on_left => a.mul(z, &a.basis_vector(i)),
            Some(z) => a.mul(&a.basis_vector(i), z),
            None => a.basis_vector(i),
        }
    };
    let mut out = Vec::new();
    for (p, c) in v {
        let (i, j) = (p / d, p % d);
        let x = side(first, i);
        let y = side(second, j);
        for (s, xs) in x.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
            for (t, yt) in y.iter().enumerate().filter(|(_, z)| !z.is_zero()) {
                out.push((s * d + t, c * xs * yt));
            }
        }
    }
    collect_terms(out)
}

fn render_sparse(v: &[(usize, Scalar)]) -> Vec<String> {
    v.iter().map(|(i, x)| format!("{i}:{x}")).collect()
}

fn compare_cosets(rep: &mut Report, t: &TensorOverBase, name: &str, idx: &[usize], lhs: &SparseVec, rhs: &SparseVec) -> bool {
    let ok = t.equal_sparse(lhs, rhs);
    rep.record(name, idx, ok, || (render_sparse(lhs), render_sparse(rhs)));
    ok
}

/// Every left-bialgebroid axiom on basis elements, pairs and triples.
pub fn check_left_bialgebroid(b: &LeftBialgebroid) -> Report {
    let mut rep = Report::new();
    let (t_alg, r_alg) = (&b.total, &b.base);
    let (dt, dr) = (t_alg.dim(), r_alg.dim());
    let tq = &b.tensor;

    let sm = morphism_check(&b.source);
    let tm = morphism_check(&b.target);
    for (prefix, m) in [("source", sm), ("target", tm)] {
        let mut sub = Report::new();
        sub.checks = m.checks;
        rep.merge(prefix, sub);
    }
    if !b.target.anti {
        rep.assert("target_is_anti", &[], false);
    }
    let s_img: Vec<Vector> = (0..dr).map(|r| b.source.image_of_basis(r)).collect();
    let t_img: Vec<Vector> = (0..dr).map(|r| b.target.image_of_basis(r)).collect();
    for r in 0..dr {
        for q in 0..dr {
            let lhs = t_alg.mul(&s_img[r], &t_img[q]);
            let rhs = t_alg.mul(&t_img[q], &s_img[r]);
            rep.compare("source_target_commute", &[r, q], &lhs, &rhs);
        }
    }

    let deltas: Vec<SparseVec> = b.coproduct.clone();
    for x in 0..dt {
        let ex = t_alg.basis_vector(x);
        let ex_eps = b.eps(&ex);
        for r in 0..dr {
            let sx = t_alg.mul(&s_img[r], &ex);
            let lhs = b.delta(&sx);
            let rhs = legs_mul(t_alg, &deltas[x], Some(&s_img[r]), None, true);
            compare_cosets(&mut rep, tq, "coproduct_left_linear", &[r, x], &lhs, &rhs);

            let tx = t_alg.mul(&t_img[r], &ex);
            let lhs = b.delta(&tx);
            let rhs = legs_mul(t_alg, &deltas[x], None, Some(&t_img[r]), true);
            compare_cosets(&mut rep, tq, "coproduct_right_linear", &[r, x], &lhs, &rhs);

            let er = r_alg.basis_vector(r);
            rep.compare("counit_left_linear", &[r, x], &b.eps(&sx), &r_alg.mul(&er, &ex_eps));
            rep.compare("counit_right_linear", &[r, x], &b.eps(&tx), &r_alg.mul(&ex_eps, &er));

            let tr = t_img[r].clone();
            let lhs = legs_mul(t_alg, &deltas[x], Some(&tr), None, false);
            let rhs = legs_mul(t_alg, &deltas[x], None, Some(&s_img[r]), false);
            compare_cosets(&mut rep, tq, "takeuchi", &[x, r], &lhs, &rhs);
        }

        let mut left = zeros(dt);
        let mut right = zeros(dt);
        for (i, j, c) in tq.terms(&deltas[x]) {
            let l = t_alg.mul(&b.s(&b.eps(&t_alg.basis_vector(i))), &t_alg.basis_vector(j));
            let r = t_alg.mul(&b.t(&b.eps(&t_alg.basis_vector(j))), &t_alg.basis_vector(i));
            for k in 0..dt {
                left[k] += &c * &l[k];
                right[k] += &c * &r[k];
            }
        }
        rep.compare("left_counit", &[x], &left, &ex);
        rep.compare("right_counit", &[x], &right, &ex);
    }

    for r in 0..dr {
        let er = r_alg.basis_vector(r);
        rep.compare("counit_source", &[r], &b.eps(&s_img[r]), &er);
        rep.compare("counit_target", &[r], &b.eps(&t_img[r]), &er);
    }
    rep.compare("counit_unital", &[], &b.eps(t_alg.unit()), r_alg.unit());
    let one = to_sparse(t_alg.unit());
    let mut oo = Vec::new();
    for (i, x) in &one {
        for (j, y) in &one {
            oo.push((i * dt + j, x * y));
        }
    }
    compare_cosets(&mut rep, tq, "coproduct_unital", &[], &b.delta(t_alg.unit()), &collect_terms(oo));

    let triple = b.triple_tensor();
    for x in 0..dt {
        let mut lt = Vec::new();
        let mut rt = Vec::new();
        for (i, j, c) in tq.terms(&deltas[x]) {
            for (p, q, c2) in tq.terms(&deltas[i]) {
                lt.push((p, q, j, &c * &c2));
            }
            for (p, q, c2) in tq.terms(&deltas[j]) {
                rt.push((i, p, q, &c * &c2));
            }
        }
        let lhs = b.triple_rep(lt);
        let rhs = b.triple_rep(rt);
        compare_cosets(&mut rep, &triple, "coassociativity", &[x], &lhs, &rhs);
    }
    rep.set_fact("tensor_dim", tq.dim());
    rep.set_fact("triple_tensor_dim", triple.dim());

    for x in 0..dt {
        for y in 0..dt {
            let xy = t_alg.mul_basis(x, y);
            let lhs = b.delta(&xy);
            let rhs = tensor_mul(t_alg, &deltas[x], &deltas[y]);
            compare_cosets(&mut rep, tq, "coproduct_multiplicative", &[x, y], &lhs, &rhs);

            let ex = t_alg.basis_vector(x);
            let ey = t_alg.basis_vector(y);
            let e = b.eps(&xy);
            let via_s = b.eps(&t_alg.mul(&ex, &b.s(&b.eps(&ey))));
            let via_t = b.eps(&t_alg.mul(&ex, &b.t(&b.eps(&ey))));
            rep.compare("counit_source_composite", &[x, y], &e, &via_s);
            rep.compare("counit_target_composite", &[x, y], &e, &via_t);
        }
    }
    rep
}

/// A left bialgebroid with an invertible anti-automorphism `τ` (the antipode).
#[derive(Debug, Clone)]
pub struct HopfAlgebroid {
    pub bialgebroid: LeftBialgebroid,
    pub antipode: AlgMorphism,
}

/// The antipode axioms: `τ` an invertible anti-automorphism, `τ ∘ t = s`,
/// `Σ τ⁻¹(x₂)₁ ⊗ τ⁻¹(x₂)₂ x₁ ≡ τ⁻¹(x) ⊗ 1` and `Σ τ(x₁)₁ x₂ ⊗ τ(x₁)₂ ≡ 1 ⊗ τ(x)`.
/// A non-invertible antipode is an error, reported before any axiom is evaluated.
pub fn check_hopf_algebroid(h: &HopfAlgebroid) -> Result<Report> {
    let b = &h.bialgebroid;
    let tau = &h.antipode;
    let tau_inv = tau
        .matrix
        .inverse()
        .ok_or_else(|| Error::NotInvertible("antipode".into()))?;
    let mut rep = Report::new();
    let (t_alg, dt, dr) = (&b.total, b.dim(), b.base.dim());
    if !tau.anti {
        rep.assert("antipode_is_anti", &[], false);
    }
    let mc = morphism_check(tau);
    let mut sub = Report::new();
    sub.checks = mc.checks;
    rep.merge("antipode", sub);
    for r in 0..dr {
        let lhs = tau.apply(&b.target.image_of_basis(r));
        rep.compare("antipode_target_source", &[r], &lhs, &b.source.image_of_basis(r));
    }
    let tq = &b.tensor;
    let one = t_alg.unit();
    for x in 0..dt {
        let ex = t_alg.basis_vector(x);
        let mut lhs2 = Vec::new();
        let mut lhs3 = Vec::new();
        for (i, j, c) in tq.terms(&b.coproduct[x]) {
            let ei = t_alg.basis_vector(i);
            let ej = t_alg.basis_vector(j);
            let d2 = b.delta(&tau_inv.apply(&ej));
            for (p, q) in legs_mul(t_alg, &d2, None, Some(&ei), false) {
                lhs2.push((p, &c * q));
            }
            let d3 = b.delta(&tau.apply(&ei));
            for (p, q) in legs_mul(t_alg, &d3, Some(&ej), None, false) {
                lhs3.push((p, &c * q));
            }
        }
        let rhs2 = to_sparse(&crate::algebra::tensor_vectors(&tau_inv.apply(&ex), one));
        let rhs3 = to_sparse(&crate::algebra::tensor_vectors(one, &tau.apply(&ex)));
        compare_cosets(&mut rep, tq, "antipode_inverse_coproduct", &[x], &collect_terms(lhs2), &rhs2);
        compare_cosets(&mut rep, tq, "antipode_coproduct", &[x], &collect_terms(lhs3), &rhs3);
    }
    rep.set_fact("antipode_involutive", tau.matrix.mul(&tau.matrix).is_identity());
    Ok(rep)
}

/// A claimed morphism of left bialgebroids over the same base.
#[derive(Debug, Clone)]
pub struct BialgebroidMorphism {
    pub domain: Arc<LeftBialgebroid>,
    pub codomain: Arc<LeftBialgebroid>,
    pub map: AlgMorphism,
}

/// Source, target and counit triangles, the coproduct square through the induced map on
/// `⊗_R` quotients, and the antipode square when both antipodes are supplied.
pub fn check_bialgebroid_morphism(f: &BialgebroidMorphism, antipodes: Option<(&AlgMorphism, &AlgMorphism)>) -> Result<Report> {
    let (a, b) = (&f.domain, &f.codomain);
    if *a.base != *b.base {
        return Err(Error::BaseMismatch("bialgebroids over different bases".into()));
    }
    let mut rep = Report::new();
    let mc = morphism_check(&f.map);
    for (k, v) in mc.facts.clone() {
        rep.facts.insert(k, v);
    }
    let mut sub = Report::new();
    sub.checks = mc.checks;
    rep.merge("algebra", sub);
    let dr = a.base.dim();
    for r in 0..dr {
        rep.compare(
            "source_triangle",
            &[r],
            &f.map.apply(&a.source.image_of_basis(r)),
            &b.source.image_of_basis(r),
        );
        rep.compare(
            "target_triangle",
            &[r],
            &f.map.apply(&a.target.image_of_basis(r)),
            &b.target.image_of_basis(r),
        );
    }
    let (da, db) = (a.dim(), b.dim());
    let images: Vec<SparseVec> = (0..da).map(|j| to_sparse(&f.map.image_of_basis(j))).collect();
    for x in 0..da {
        let ex = a.total.basis_vector(x);
        let fx = f.map.apply(&ex);
        rep.compare("counit_triangle", &[x], &b.eps(&fx), &a.eps(&ex));
        let mut ff = Vec::new();
        for (i, j, c) in a.tensor.terms(&a.coproduct[x]) {
            for (p, u) in &images[i] {
                for (q, v) in &images[j] {
                    ff.push((p * db + q, &c * u * v));
                }
            }
        }
        compare_cosets(&mut rep, &b.tensor, "coproduct_square", &[x], &collect_terms(ff), &b.delta(&fx));
        if let Some((ta, tb)) = antipodes {
            rep.compare("antipode_square", &[x], &f.map.apply(&ta.apply(&ex)), &tb.apply(&fx));
        }
    }
    Ok(rep)
}

/// `ξ ↦ (x ↦ ε(ξ · s(x)))` into `End(R)`; the endomorphism matrix is flattened row-major.
pub fn anchor_map(b: &LeftBialgebroid) -> AlgMorphism {
    let n = b.base.dim();
    let end = Arc::new(endomorphism_algebra(&b.base));
    let cols: Vec<Vector> = (0..b.dim())
        .map(|xi| {
            let e = b.total.basis_vector(xi);
            let m = anchor_of(b, &e);
            m.entries().to_vec()
        })
        .collect();
    AlgMorphism::new(b.total.clone(), end, Mat::from_columns(n * n, &cols), false).expect("anchor shape")
}

/// The endomorphism `x ↦ ε(ξ · s(x))` of the base.
pub fn anchor_of(b: &LeftBialgebroid, xi: &[Scalar]) -> Mat {
    let n = b.base.dim();
    let cols: Vec<Vector> = (0..n)
        .map(|x| b.eps(&b.total.mul(xi, &b.source.image_of_basis(x))))
        .collect();
    Mat::from_columns(n, &cols)
}

/// `a ⊗ b̄ ↦ s(a) t(b)` from the enveloping algebra of the base.
pub fn lu_map_matrix(b: &LeftBialgebroid) -> Mat {
    let n = b.base.dim();
    let cols: Vec<Vector> = (0..n * n)
        .map(|ab| b.total.mul(&b.source.image_of_basis(ab / n), &b.target.image_of_basis(ab % n)))
        .collect();
    Mat::from_columns(b.dim(), &cols)
}

/// Matrix of `x ↦ a x c` on the base.
pub fn two_sided_mult(base: &Algebra, a: &[Scalar], c: &[Scalar]) -> Mat {
    base.left_mult_matrix(a).mul(&base.right_mult_matrix(c))
}

/// `anchor ∘ lu = (a ⊗ b̄ ↦ λ_a ∘ ρ_b)`, the anchor is an algebra map, and
/// `anchor(ξ)(1) = ε(ξ)`.
pub fn check_anchor_triangle(b: &LeftBialgebroid) -> Report {
    let mut rep = Report::new();
    let an = anchor_map(b);
    let mc = morphism_check(&an);
    let mut sub = Report::new();
    sub.checks = mc.checks;
    rep.merge("anchor", sub);
    let n = b.base.dim();
    let lu = lu_map_matrix(b);
    for a in 0..n {
        for c in 0..n {
            let img = an.apply(&lu.column(a * n + c));
            let expect = two_sided_mult(&b.base, &b.base.basis_vector(a), &b.base.basis_vector(c));
            rep.compare("anchor_triangle", &[a, c], &img, expect.entries());
        }
    }
    for xi in 0..b.dim() {
        let m = anchor_of(b, &b.total.basis_vector(xi));
        rep.compare("anchor_at_unit", &[xi], &m.apply(b.base.unit()), &b.eps(&b.total.basis_vector(xi)));
    }
    rep
}

/// Does `f` send every representative perturbation to the same class? Used by tests of
/// well-definedness; exposed for reuse by callers that build their own bialgebroids.
pub fn relation_sample(t: &TensorOverBase, weights: &[Scalar]) -> SparseVec {
    let basis = t.relations().basis_sparse();
    let mut out = Vec::new();
    for (w, r) in weights.iter().zip(basis) {
        if w.is_zero() {
            continue;
        }
        for (i, x) in r {
            out.push((*i, w * x));
        }
    }
    collect_terms(out)
}
