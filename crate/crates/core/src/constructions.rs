//! Concrete algebroids: the enveloping algebroid `A^e`, the bowtie `A^e ⋈ H`, its group
//! specialization `R^e ⋈ G`, the Connes–Moscovici algebroid `A ⊙ H ⊙ A`, the canonical
//! embeddings, the universal map out of the bowtie, and the isomorphism between the two.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{morphism_check, opposite, tensor_algebra, tensor_vectors, AlgMorphism, Algebra};
use crate::bialgebroid::{
    anchor_of, check_bialgebroid_morphism, lu_map_matrix, BialgebroidMorphism, HopfAlgebroid, LeftBialgebroid,
};
use crate::error::{Error, Result};
use crate::hopf::{
    check_module_algebra, group_action_to_module_action, is_involutive, right_cross_product, smash_product,
    GroupData, ModuleAction,
};
use crate::linalg::{render_vec, to_sparse, zeros, Mat, Scalar, SparseVec, Vector};
use crate::report::Report;
use crate::tensor::collect_terms;

/// `x ⊗ y ⊗ z` in the basis `(i * len y + j) * len z + k`.
pub fn triple_vector(x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
    tensor_vectors(&tensor_vectors(x, y), z)
}

fn accumulate(acc: &mut BTreeMap<usize, Scalar>, c: &Scalar, v: &[Scalar]) {
    for (i, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        *acc.entry(i).or_insert_with(Scalar::zero) += c * x;
    }
}

fn finish(acc: BTreeMap<usize, Scalar>) -> SparseVec {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn ambient_pair(x: &[Scalar], y: &[Scalar]) -> SparseVec {
    to_sparse(&tensor_vectors(x, y))
}

fn merge_checks(rep: &mut Report, prefix: &str, other: Report) {
    let mut sub = Report::new();
    sub.checks = other.checks;
    rep.merge(prefix, sub);
}

/// Lu's Hopf algebroid `A ⊗ A^op` over `A`: `s(a) = a ⊗ 1̄`, `t(b) = 1 ⊗ b̄`,
/// `ε(a ⊗ b̄) = ab`, `Δ(a ⊗ b̄) = (a ⊗ 1̄) ⊗ (1 ⊗ b̄)`, antipode the twist.
pub fn lu_algebroid(a: &Arc<Algebra>) -> HopfAlgebroid {
    let n = a.dim();
    let total = Arc::new(tensor_algebra(a, &opposite(a)));
    let one = a.unit();
    let s_img: Vec<Vector> = (0..n).map(|i| tensor_vectors(&a.basis_vector(i), one)).collect();
    let t_img: Vec<Vector> = (0..n).map(|i| tensor_vectors(one, &a.basis_vector(i))).collect();
    let source = AlgMorphism::from_images(a.clone(), total.clone(), &s_img, false).expect("source shape");
    let target = AlgMorphism::from_images(a.clone(), total.clone(), &t_img, true).expect("target shape");
    let counit_cols: Vec<Vector> = (0..n * n).map(|ab| a.mul_basis(ab / n, ab % n)).collect();
    let counit = Mat::from_columns(n, &counit_cols);
    let coproduct = (0..n * n).map(|ab| ambient_pair(&s_img[ab / n], &t_img[ab % n])).collect();
    let twist: Vec<Vector> = (0..n * n)
        .map(|ab| tensor_vectors(&a.basis_vector(ab % n), &a.basis_vector(ab / n)))
        .collect();
    let antipode = AlgMorphism::from_images(total.clone(), total.clone(), &twist, true).expect("twist shape");
    let bialgebroid =
        LeftBialgebroid::new(total, a.clone(), source, target, coproduct, counit).expect("enveloping shapes");
    HopfAlgebroid { bialgebroid, antipode }
}

/// `A^e ⋈ H` built from a module algebra. Basis `(a, b, h)` has index
/// `a * (dim A · dim H) + b * dim H + h`. The antipode is present only when `S² = id`.
#[derive(Debug, Clone)]
pub struct BowtieAlgebroid {
    pub action: ModuleAction,
    pub bialgebroid: Arc<LeftBialgebroid>,
    pub antipode: Option<AlgMorphism>,
}

impl BowtieAlgebroid {
    pub fn dim(&self) -> usize {
        self.bialgebroid.dim()
    }

    pub fn index(&self, a: usize, b: usize, h: usize) -> usize {
        let (na, nh) = (self.action.dim_a(), self.action.dim_h());
        a * na * nh + b * nh + h
    }

    /// `a ⊗ b̄ ⋈ h` for arbitrary vectors.
    pub fn element(&self, a: &[Scalar], b: &[Scalar], h: &[Scalar]) -> Vector {
        triple_vector(a, b, h)
    }

    pub fn hopf_algebroid(&self) -> Option<HopfAlgebroid> {
        self.antipode
            .as_ref()
            .map(|t| HopfAlgebroid { bialgebroid: (*self.bialgebroid).clone(), antipode: t.clone() })
    }
}

fn ensure_action(m: &ModuleAction) -> Result<()> {
    let rep = check_module_algebra(m);
    if rep.passed() {
        Ok(())
    } else {
        Err(Error::InvalidAction(format!("fails {}", rep.failed_checks().join(", "))))
    }
}

/// The algebra `A^e ⋈ H` with
/// `(a ⊗ b̄ ⋈ h)(c ⊗ d̄ ⋈ k) = a(h₁ · c) ⊗ \overline{d(S(k₂) · b)} ⋈ h₂ k₁`.
pub fn bowtie_algebra(m: &ModuleAction) -> Result<Algebra> {
    ensure_action(m)?;
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let n = na * na * nh;
    let split = |p: usize| (p / (na * nh), (p / nh) % na, p % nh);
    let labels = (0..n)
        .map(|p| {
            let (x, y, z) = split(p);
            format!("{}⊗{}°⋈{}", a.label(x), a.label(y), h.alg.label(z))
        })
        .collect();
    let s_basis: Vec<Vector> = (0..nh).map(|k| h.antipode_basis(k)).collect();
    let mut table = Vec::with_capacity(n * n);
    for p in 0..n {
        let (x, y, hh) = split(p);
        let dh = h.delta(hh);
        for q in 0..n {
            let (u, v, k) = split(q);
            let dk = h.delta(k);
            let mut acc = BTreeMap::new();
            for (h1, h2, c1) in &dh {
                let left = a.mul(&a.basis_vector(x), &m.act_basis(*h1, u));
                for (k1, k2, c2) in &dk {
                    let right = a.mul(&a.basis_vector(v), &m.act(&s_basis[*k2], &a.basis_vector(y)));
                    let hk = h.alg.mul_basis(*h2, *k1);
                    accumulate(&mut acc, &(c1 * c2), &triple_vector(&left, &right, &hk));
                }
            }
            table.push(finish(acc));
        }
    }
    Algebra::new(labels, table, triple_vector(a.unit(), a.unit(), h.alg.unit()))
}

/// The bowtie algebroid: `s(a) = a ⊗ 1̄ ⋈ 1`, `t(a) = 1 ⊗ ā ⋈ 1`, `ε(a ⊗ c̄ ⋈ h) = a(h · c)`,
/// `Δ(a ⊗ c̄ ⋈ h) = (a ⊗ 1̄ ⋈ h₁) ⊗ (1 ⊗ c̄ ⋈ h₂)`, and `τ(a ⊗ b̄ ⋈ h) = b ⊗ ā ⋈ S(h)`
/// when `H` is involutive.
pub fn bowtie(m: &ModuleAction) -> Result<BowtieAlgebroid> {
    let total = Arc::new(bowtie_algebra(m)?);
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let (one_a, one_h) = (a.unit(), h.alg.unit());
    let s_img: Vec<Vector> = (0..na).map(|i| triple_vector(&a.basis_vector(i), one_a, one_h)).collect();
    let t_img: Vec<Vector> = (0..na).map(|i| triple_vector(one_a, &a.basis_vector(i), one_h)).collect();
    let source = AlgMorphism::from_images(a.clone(), total.clone(), &s_img, false)?;
    let target = AlgMorphism::from_images(a.clone(), total.clone(), &t_img, true)?;
    let n = total.dim();
    let mut counit = Mat::zeros(na, n);
    let mut coproduct = Vec::with_capacity(n);
    let mut tau = Vec::with_capacity(n);
    for x in 0..na {
        for y in 0..na {
            for k in 0..nh {
                let col = x * na * nh + y * nh + k;
                counit.set_column(col, &a.mul(&a.basis_vector(x), &m.act_basis(k, y)));
                let mut terms = Vec::new();
                for (k1, k2, c) in h.delta(k) {
                    let left = triple_vector(&a.basis_vector(x), one_a, &h.alg.basis_vector(k1));
                    let right = triple_vector(one_a, &a.basis_vector(y), &h.alg.basis_vector(k2));
                    terms.extend(ambient_pair(&left, &right).into_iter().map(|(i, v)| (i, &c * v)));
                }
                coproduct.push(collect_terms(terms));
                tau.push(triple_vector(&a.basis_vector(y), &a.basis_vector(x), &h.antipode_basis(k)));
            }
        }
    }
    let antipode = if is_involutive(h) {
        Some(AlgMorphism::from_images(total.clone(), total.clone(), &tau, true)?)
    } else {
        None
    };
    let bialgebroid = Arc::new(LeftBialgebroid::new(total, a.clone(), source, target, coproduct, counit)?);
    Ok(BowtieAlgebroid { action: m.clone(), bialgebroid, antipode })
}

/// The antipode formula `τ(a ⊗ b̄ ⋈ h) = b ⊗ ā ⋈ S(h)`, available only for involutive `H`.
pub fn bowtie_antipode(bw: &BowtieAlgebroid) -> Result<AlgMorphism> {
    bw.antipode
        .clone()
        .ok_or_else(|| Error::Precondition("antipode requires an involutive Hopf algebra (S² = id)".into()))
}

/// `R^e ⋈ G` for a group of automorphisms, together with an entrywise comparison of every
/// structure map against its group specialization: product
/// `(r ⊗ s̄ ⋈ σ)(u ⊗ v̄ ⋈ τ) = rσ(u) ⊗ \overline{vτ⁻¹(s)} ⋈ στ`, unit, source, target,
/// counit `rσ(s)`, coproduct `(r ⊗ 1̄ ⋈ σ) ⊗ (1 ⊗ s̄ ⋈ σ)` and antipode `s ⊗ r̄ ⋈ σ⁻¹`.
pub fn re_bowtie_g(r: &Arc<Algebra>, g: &GroupData, autos: &[AlgMorphism]) -> Result<(BowtieAlgebroid, Report)> {
    if autos.first().is_some_and(|f| *f.domain != **r) {
        return Err(Error::AlgebraMismatch);
    }
    let m = group_action_to_module_action(g, autos)?;
    let bw = bowtie(&m)?;
    let b = &bw.bialgebroid;
    let (nr, ng) = (r.dim(), g.order());
    let e = |i: usize| r.basis_vector(i);
    let grp = |s: usize| crate::linalg::unit_vector(ng, s);
    let one = r.unit();
    let mut rep = Report::new();
    let elems: Vec<(usize, usize, usize)> =
        (0..nr).flat_map(|x| (0..nr).flat_map(move |y| (0..ng).map(move |s| (x, y, s)))).collect();
    for &(x, y, s) in &elems {
        let p = bw.index(x, y, s);
        for &(u, v, t) in &elems {
            let q = bw.index(u, v, t);
            let lhs = b.total.mul_basis(p, q);
            let left = r.mul(&e(x), &autos[s].apply(&e(u)));
            let right = r.mul(&e(v), &autos[g.inverse[t]].apply(&e(y)));
            let rhs = triple_vector(&left, &right, &grp(g.mul(s, t)));
            rep.compare("group_product", &[p, q], &lhs, &rhs);
        }
        let eps = r.mul(&e(x), &autos[s].apply(&e(y)));
        rep.compare("group_counit", &[p], &b.eps(&b.total.basis_vector(p)), &eps);
        let delta = ambient_pair(&triple_vector(&e(x), one, &grp(s)), &triple_vector(one, &e(y), &grp(s)));
        let ok = b.tensor.equal_sparse(&b.coproduct[p], &delta);
        rep.assert("group_coproduct", &[p], ok);
        if let Some(tau) = &bw.antipode {
            let rhs = triple_vector(&e(y), &e(x), &grp(g.inverse[s]));
            rep.compare("group_antipode", &[p], &tau.image_of_basis(p), &rhs);
        }
    }
    rep.compare("group_unit", &[], b.total.unit(), &triple_vector(one, one, &grp(0)));
    for x in 0..nr {
        rep.compare("group_source", &[x], &b.source.image_of_basis(x), &triple_vector(&e(x), one, &grp(0)));
        rep.compare("group_target", &[x], &b.target.image_of_basis(x), &triple_vector(one, &e(x), &grp(0)));
    }
    rep.touch("group_antipode");
    Ok((bw, rep))
}

/// The four canonical algebra maps into `A^e ⋈ H`.
#[derive(Debug, Clone)]
pub struct Embeddings {
    /// `a ⊗ b̄ ↦ a ⊗ b̄ ⋈ 1`.
    pub enveloping: AlgMorphism,
    /// `j₁(a # h) = a ⊗ 1̄ ⋈ h` on the smash product.
    pub j1: AlgMorphism,
    /// `j₂(h # ā) = 1 ⊗ ā ⋈ h` on the right cross product.
    pub j2: AlgMorphism,
    /// `h ↦ 1 ⊗ 1̄ ⋈ h`.
    pub hopf: AlgMorphism,
}

fn injectivity(rep: &mut Report, name: &str, f: &AlgMorphism) {
    let mc = morphism_check(f);
    rep.assert(&format!("{name}.injective"), &[], mc.flag_fact("injective") == Some(true));
    rep.set_fact(&format!("{name}.rank"), f.rank());
    merge_checks(rep, name, mc);
}

/// Builds the embeddings and verifies them: injective algebra maps, `A^e` as a Hopf
/// algebroid morphism, `H` compatible with counit, coproduct and antipode, and the
/// cofibered-sum relations `j₁ ∘ ι₁ = j₂ ∘ ι₂` and `j₂(k₂(a)) j₁(k₁(b)) = j₁(k₁(b)) j₂(k₂(a))`.
pub fn embeddings(bw: &BowtieAlgebroid) -> Result<(Embeddings, Report)> {
    let m = &bw.action;
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let b = &bw.bialgebroid;
    let total = b.total.clone();
    let (one_a, one_h) = (a.unit(), h.alg.unit());
    let ea = |i: usize| a.basis_vector(i);
    let eh = |i: usize| h.alg.basis_vector(i);

    let lu = lu_algebroid(a);
    let env_imgs: Vec<Vector> = (0..na * na).map(|p| triple_vector(&ea(p / na), &ea(p % na), one_h)).collect();
    let enveloping = AlgMorphism::from_images(lu.bialgebroid.total.clone(), total.clone(), &env_imgs, false)?;
    let smash = Arc::new(smash_product(m)?);
    let j1_imgs: Vec<Vector> = (0..na * nh).map(|p| triple_vector(&ea(p / nh), one_a, &eh(p % nh))).collect();
    let j1 = AlgMorphism::from_images(smash.clone(), total.clone(), &j1_imgs, false)?;
    let cross = Arc::new(right_cross_product(m)?);
    let j2_imgs: Vec<Vector> = (0..nh * na).map(|p| triple_vector(one_a, &ea(p % na), &eh(p / na))).collect();
    let j2 = AlgMorphism::from_images(cross.clone(), total.clone(), &j2_imgs, false)?;
    let h_imgs: Vec<Vector> = (0..nh).map(|k| triple_vector(one_a, one_a, &eh(k))).collect();
    let hopf = AlgMorphism::from_images(h.alg.clone(), total.clone(), &h_imgs, false)?;

    let mut rep = Report::new();
    injectivity(&mut rep, "enveloping", &enveloping);
    injectivity(&mut rep, "j1", &j1);
    injectivity(&mut rep, "j2", &j2);
    injectivity(&mut rep, "hopf", &hopf);

    let env_morphism = BialgebroidMorphism {
        domain: Arc::new(lu.bialgebroid.clone()),
        codomain: b.clone(),
        map: enveloping.clone(),
    };
    let antipodes = bw.antipode.as_ref().map(|t| (&lu.antipode, t));
    let mut env_rep = check_bialgebroid_morphism(&env_morphism, antipodes)?;
    env_rep.facts.clear();
    rep.merge("enveloping_algebroid", env_rep);

    for k in 0..nh {
        let img = &h_imgs[k];
        let eps: Vector = one_a.iter().map(|u| u * h.counit_basis(k)).collect();
        rep.compare("hopf_counit", &[k], &b.eps(img), &eps);
        let mut terms = Vec::new();
        for (k1, k2, c) in h.delta(k) {
            terms.extend(ambient_pair(&h_imgs[k1], &h_imgs[k2]).into_iter().map(|(i, v)| (i, &c * v)));
        }
        rep.assert("hopf_coproduct", &[k], b.tensor.equal_sparse(&b.delta(img), &collect_terms(terms)));
        if let Some(tau) = &bw.antipode {
            rep.compare("hopf_antipode", &[k], &tau.apply(img), &hopf.apply(&h.antipode_basis(k)));
        }

        let iota1 = tensor_vectors(one_a, &eh(k));
        let iota2 = tensor_vectors(&eh(k), one_a);
        rep.compare("cofibered_square", &[k], &j1.apply(&iota1), &j2.apply(&iota2));
    }
    rep.touch("hopf_antipode");
    for x in 0..na {
        let k2 = j2.apply(&tensor_vectors(one_h, &ea(x)));
        for y in 0..na {
            let k1 = j1.apply(&tensor_vectors(&ea(y), one_h));
            rep.compare("cofibered_commutation", &[x, y], &total.mul(&k2, &k1), &total.mul(&k1, &k2));
        }
    }
    Ok((Embeddings { enveloping, j1, j2, hopf }, rep))
}

fn hypothesis(name: &str, idx: &[usize], lhs: &[Scalar], rhs: &[Scalar]) -> Result<()> {
    if lhs == rhs {
        return Ok(());
    }
    Err(Error::HypothesisFailed {
        which: name.to_string(),
        witness: format!("{idx:?}: [{}] ≠ [{}]", render_vec(lhs).join(", "), render_vec(rhs).join(", ")),
    })
}

/// The unique algebra map `F(a ⊗ b̄ ⋈ h) = f₁(a # h) f₂(1 # b̄)` out of the bowtie, given
/// unital algebra maps from the smash product and the right cross product that agree on
/// `H` and whose images of `A` and `A^op` commute. Verifies `F` is multiplicative,
/// `F ∘ jᵢ = fᵢ`, and that the bowtie is spanned by `j₁(a # h) j₂(1 # b̄)`.
pub fn universal_map(target: &Arc<Algebra>, f1: &AlgMorphism, f2: &AlgMorphism, m: &ModuleAction) -> Result<(AlgMorphism, Report)> {
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    if f1.domain.dim() != na * nh || f2.domain.dim() != na * nh {
        return Err(Error::DimensionMismatch("f1, f2 must be defined on A ⋊ H and H ⋉ A^op".into()));
    }
    if *f1.codomain != **target || *f2.codomain != **target {
        return Err(Error::AlgebraMismatch);
    }
    for (name, f) in [("f1", f1), ("f2", f2)] {
        if f.anti || !morphism_check(f).passed() {
            return Err(Error::Precondition(format!("{name} is not a unital algebra homomorphism")));
        }
    }
    let (one_a, one_h) = (a.unit(), h.alg.unit());
    let ea = |i: usize| a.basis_vector(i);
    let eh = |i: usize| h.alg.basis_vector(i);
    for k in 0..nh {
        hypothesis(
            "square",
            &[k],
            &f1.apply(&tensor_vectors(one_a, &eh(k))),
            &f2.apply(&tensor_vectors(&eh(k), one_a)),
        )?;
    }
    for x in 0..na {
        let k1 = f1.apply(&tensor_vectors(&ea(x), one_h));
        for y in 0..na {
            let k2 = f2.apply(&tensor_vectors(one_h, &ea(y)));
            hypothesis("commutation", &[x, y], &target.mul(&k1, &k2), &target.mul(&k2, &k1))?;
        }
    }

    let bw_alg = Arc::new(bowtie_algebra(m)?);
    let n = bw_alg.dim();
    let images: Vec<Vector> = (0..n)
        .map(|p| {
            let (x, y, k) = (p / (na * nh), (p / nh) % na, p % nh);
            let u = f1.apply(&tensor_vectors(&ea(x), &eh(k)));
            let v = f2.apply(&tensor_vectors(one_h, &ea(y)));
            target.mul(&u, &v)
        })
        .collect();
    let f = AlgMorphism::from_images(bw_alg.clone(), target.clone(), &images, false)?;

    let mut rep = Report::new();
    let mc = morphism_check(&f);
    rep.set_fact("rank", f.rank());
    rep.set_fact("kernel_dim", n - f.rank());
    rep.set_fact("injective", f.rank() == n);
    merge_checks(&mut rep, "homomorphism", mc);
    for p in 0..na * nh {
        let (x, k) = (p / nh, p % nh);
        let j1 = triple_vector(&ea(x), one_a, &eh(k));
        rep.compare("factors_through_j1", &[p], &f.apply(&j1), &f1.image_of_basis(p));
    }
    for p in 0..nh * na {
        let (k, y) = (p / na, p % na);
        let j2 = triple_vector(one_a, &ea(y), &eh(k));
        rep.compare("factors_through_j2", &[p], &f.apply(&j2), &f2.image_of_basis(p));
    }
    for p in 0..n {
        let (x, y, k) = (p / (na * nh), (p / nh) % na, p % nh);
        let u = triple_vector(&ea(x), one_a, &eh(k));
        let v = triple_vector(one_a, &ea(y), one_h);
        rep.compare("spanning_factorization", &[p], &bw_alg.mul(&u, &v), &bw_alg.basis_vector(p));
    }
    Ok((f, rep))
}

/// `A ⊙ H ⊙ A`: basis `(a, h, b)` has index `a * (dim H · dim A) + h * dim A + b`.
#[derive(Debug, Clone)]
pub struct CMAlgebroid {
    pub action: ModuleAction,
    pub bialgebroid: Arc<LeftBialgebroid>,
}

impl CMAlgebroid {
    pub fn dim(&self) -> usize {
        self.bialgebroid.dim()
    }

    pub fn index(&self, a: usize, h: usize, b: usize) -> usize {
        let (na, nh) = (self.action.dim_a(), self.action.dim_h());
        a * nh * na + h * na + b
    }
}

/// The algebra `A ⊙ H ⊙ A` with `(a ⊙ h ⊙ b)(c ⊙ k ⊙ d) = a(h₁ · c) ⊙ h₂k ⊙ (h₃ · d)b`.
pub fn cm_algebra(m: &ModuleAction) -> Result<Algebra> {
    ensure_action(m)?;
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let n = na * nh * na;
    let split = |p: usize| (p / (nh * na), (p / na) % nh, p % na);
    let labels = (0..n)
        .map(|p| {
            let (x, k, y) = split(p);
            format!("{}⊙{}⊙{}", a.label(x), h.alg.label(k), a.label(y))
        })
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for p in 0..n {
        let (x, hh, y) = split(p);
        let d2 = h.delta2(hh);
        for q in 0..n {
            let (u, k, v) = split(q);
            let mut acc = BTreeMap::new();
            for (h1, h2, h3, c) in &d2 {
                let left = a.mul(&a.basis_vector(x), &m.act_basis(*h1, u));
                let mid = h.alg.mul_basis(*h2, k);
                let right = a.mul(&m.act_basis(*h3, v), &a.basis_vector(y));
                accumulate(&mut acc, c, &triple_vector(&left, &mid, &right));
            }
            table.push(finish(acc));
        }
    }
    Algebra::new(labels, table, triple_vector(a.unit(), h.alg.unit(), a.unit()))
}

/// The Connes–Moscovici bialgebroid: `s(a) = a ⊙ 1 ⊙ 1`, `t(b) = 1 ⊙ 1 ⊙ b`,
/// `ε(a ⊙ h ⊙ b) = a ε(h) b`, `Δ(a ⊙ h ⊙ b) = (a ⊙ h₁ ⊙ 1) ⊗ (1 ⊙ h₂ ⊙ b)`.
pub fn cm_algebroid(m: &ModuleAction) -> Result<CMAlgebroid> {
    let total = Arc::new(cm_algebra(m)?);
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let (one_a, one_h) = (a.unit(), h.alg.unit());
    let ea = |i: usize| a.basis_vector(i);
    let eh = |i: usize| h.alg.basis_vector(i);
    let s_img: Vec<Vector> = (0..na).map(|i| triple_vector(&ea(i), one_h, one_a)).collect();
    let t_img: Vec<Vector> = (0..na).map(|i| triple_vector(one_a, one_h, &ea(i))).collect();
    let source = AlgMorphism::from_images(a.clone(), total.clone(), &s_img, false)?;
    let target = AlgMorphism::from_images(a.clone(), total.clone(), &t_img, true)?;
    let n = total.dim();
    let mut counit = Mat::zeros(na, n);
    let mut coproduct = Vec::with_capacity(n);
    for x in 0..na {
        for k in 0..nh {
            for y in 0..na {
                let col = x * nh * na + k * na + y;
                let ab = a.mul_basis(x, y);
                let eps: Vector = ab.iter().map(|v| v * h.counit_basis(k)).collect();
                counit.set_column(col, &eps);
                let mut terms = Vec::new();
                for (k1, k2, c) in h.delta(k) {
                    let left = triple_vector(&ea(x), &eh(k1), one_a);
                    let right = triple_vector(one_a, &eh(k2), &ea(y));
                    terms.extend(ambient_pair(&left, &right).into_iter().map(|(i, v)| (i, &c * v)));
                }
                coproduct.push(collect_terms(terms));
            }
        }
    }
    let bialgebroid = Arc::new(LeftBialgebroid::new(total, a.clone(), source, target, coproduct, counit)?);
    Ok(CMAlgebroid { action: m.clone(), bialgebroid })
}

/// `f₁(a # h) = a ⊙ h ⊙ 1` and `f₂(k # b̄) = 1 ⊙ k₁ ⊙ (k₂ · b)` into `A ⊙ H ⊙ A`.
pub fn cm_structure_maps(cm: &CMAlgebroid) -> Result<(AlgMorphism, AlgMorphism)> {
    let m = &cm.action;
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let total = cm.bialgebroid.total.clone();
    let f1_imgs: Vec<Vector> = (0..na * nh)
        .map(|p| triple_vector(&a.basis_vector(p / nh), &h.alg.basis_vector(p % nh), a.unit()))
        .collect();
    let f2_imgs: Vec<Vector> = (0..nh * na)
        .map(|p| {
            let (k, y) = (p / na, p % na);
            let mut acc = BTreeMap::new();
            for (k1, k2, c) in h.delta(k) {
                accumulate(&mut acc, &c, &triple_vector(a.unit(), &h.alg.basis_vector(k1), &m.act_basis(k2, y)));
            }
            crate::linalg::to_dense(total.dim(), &finish(acc))
        })
        .collect();
    let f1 = AlgMorphism::from_images(Arc::new(smash_product(m)?), total.clone(), &f1_imgs, false)?;
    let f2 = AlgMorphism::from_images(Arc::new(right_cross_product(m)?), total, &f2_imgs, false)?;
    Ok((f1, f2))
}

/// `F(a ⊗ b̄ ⋈ h) = a ⊙ h₁ ⊙ (h₂ · b)` from the bowtie to the Connes–Moscovici algebroid.
/// Verifies `F` is bijective, a bialgebroid morphism (which transports the bowtie
/// coproduct onto the CM coproduct), that its inverse is an algebra map, and that it
/// coincides with the universal map induced by the CM structure maps.
pub fn op_isomorphism(bw: &BowtieAlgebroid, cm: &CMAlgebroid) -> Result<(BialgebroidMorphism, Report)> {
    let m = &bw.action;
    if *cm.action.alg != *m.alg || cm.action.action != m.action {
        return Err(Error::Precondition("bowtie and CM algebroid come from different actions".into()));
    }
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let n = bw.dim();
    let images: Vec<Vector> = (0..n)
        .map(|p| {
            let (x, y, k) = (p / (na * nh), (p / nh) % na, p % nh);
            let mut acc = BTreeMap::new();
            for (k1, k2, c) in h.delta(k) {
                accumulate(&mut acc, &c, &triple_vector(&a.basis_vector(x), &h.alg.basis_vector(k1), &m.act_basis(k2, y)));
            }
            crate::linalg::to_dense(cm.dim(), &finish(acc))
        })
        .collect();
    let map = AlgMorphism::from_images(bw.bialgebroid.total.clone(), cm.bialgebroid.total.clone(), &images, false)?;
    let f = BialgebroidMorphism { domain: bw.bialgebroid.clone(), codomain: cm.bialgebroid.clone(), map };
    let mut rep = check_bialgebroid_morphism(&f, None)?;
    rep.assert("bijective", &[], f.map.is_bijective());
    if let Some(inv) = f.map.inverse() {
        merge_checks(&mut rep, "inverse", morphism_check(&inv));
        let round = inv.matrix.mul(&f.map.matrix);
        rep.assert("inverse_roundtrip", &[], round.is_identity());
    } else {
        rep.assert("inverse_roundtrip", &[], false);
    }
    let (f1, f2) = cm_structure_maps(cm)?;
    let (u, urep) = universal_map(&cm.bialgebroid.total, &f1, &f2, m)?;
    rep.assert("universal_map.agrees", &[], u.matrix == f.map.matrix);
    merge_checks(&mut rep, "universal_map", urep);
    Ok((f, rep))
}

/// `λ_a ∘ λ_{h▷} ∘ ρ_b = Σ λ_a ∘ ρ_{h₂▷b} ∘ λ_{h₁▷}` evaluated on every basis `x`.
pub fn check_anchor_identity(m: &ModuleAction) -> Report {
    let (a, h) = (&m.alg, &m.hopf);
    let (na, nh) = (m.dim_a(), m.dim_h());
    let mut rep = Report::new();
    for x in 0..na {
        for y in 0..na {
            for k in 0..nh {
                let delta = h.delta(k);
                for z in 0..na {
                    let lhs = a.mul(&a.basis_vector(x), &m.act_basis_on(k, &a.mul_basis(z, y)));
                    let mut rhs = zeros(na);
                    for (k1, k2, c) in &delta {
                        let v = a.mul_all(&[&a.basis_vector(x), &m.act_basis(*k1, z), &m.act_basis(*k2, y)]);
                        crate::linalg::add_scaled(&mut rhs, c, &v);
                    }
                    rep.compare("anchor_identity", &[x, y, k, z], &lhs, &rhs);
                }
            }
        }
    }
    rep
}

/// The anchors of both algebroids in closed form, `a ⊗ b̄ ⋈ h ↦ λ_a ∘ λ_{h▷} ∘ ρ_b` and
/// `a ⊙ h ⊙ b ↦ λ_a ∘ ρ_b ∘ λ_{h▷}`, and compatibility of the anchors with `F`.
pub fn check_anchor_formulas(bw: &BowtieAlgebroid, cm: &CMAlgebroid, f: &BialgebroidMorphism) -> Report {
    let m = &bw.action;
    let a = &m.alg;
    let (na, nh) = (m.dim_a(), m.dim_h());
    let mut rep = Report::new();
    for x in 0..na {
        for y in 0..na {
            for k in 0..nh {
                let p = bw.index(x, y, k);
                let xi = bw.bialgebroid.total.basis_vector(p);
                let an = anchor_of(&bw.bialgebroid, &xi);
                let q = cm.index(x, k, y);
                let cm_an = anchor_of(&cm.bialgebroid, &cm.bialgebroid.total.basis_vector(q));
                let f_an = anchor_of(&cm.bialgebroid, &f.map.apply(&xi));
                rep.assert("anchor_transport", &[p], an == f_an);
                for z in 0..na {
                    let expect = a.mul(&a.basis_vector(x), &m.act_basis_on(k, &a.mul_basis(z, y)));
                    rep.compare("bowtie_anchor", &[p, z], &an.column(z), &expect);
                    let expect = a.mul_all(&[&a.basis_vector(x), &m.act_basis(k, z), &a.basis_vector(y)]);
                    rep.compare("cm_anchor", &[q, z], &cm_an.column(z), &expect);
                }
            }
        }
    }
    rep
}

/// `a ⊗ b̄ ↦ s(a) t(b)` as a morphism from the enveloping algebroid of the base.
pub fn lu_morphism(b: &Arc<LeftBialgebroid>) -> Result<BialgebroidMorphism> {
    let lu = lu_algebroid(&b.base);
    let map = AlgMorphism::new(lu.bialgebroid.total.clone(), b.total.clone(), lu_map_matrix(b), false)?;
    Ok(BialgebroidMorphism { domain: Arc::new(lu.bialgebroid), codomain: b.clone(), map })
}
