//! Hopf algebras, group algebras, module-algebra actions and the smash products built
//! from them.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{check_algebra, morphism_check, AlgMorphism, Algebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{int, unit_vector, zeros, Mat, Scalar, Vector};
use crate::report::Report;

/// A finite group by multiplication table; index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupData {
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

impl GroupData {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGroup("table must be square and match the labels".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for i in 0..n {
            if table[0][i] != i || table[i][0] != i {
                return Err(Error::InvalidGroup(format!("index 0 is not an identity at {i}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == 0 && table[b][a] == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(GroupData { labels, table, inverse })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn trivial() -> Self {
        GroupData::new(vec!["e".into()], vec![vec![0]]).expect("trivial group")
    }

    /// Cyclic group of order `n`; element `k` is the `k`-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|k| if k == 0 { "e".to_string() } else { format!("g{k}") }).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupData::new(labels, table).expect("cyclic group")
    }

    /// Symmetric group on three letters, elements as permutations in lexicographic order.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        let labels = perms.iter().map(|p| format!("({}{}{})", p[0], p[1], p[2])).collect();
        GroupData::new(labels, table).expect("symmetric group")
    }
}

/// A Hopf algebra: `coproduct` is `dim² × dim` with column `j` holding `Δ(e_j)` in the
/// tensor basis `(i, k) ↦ i * dim + k`; `counit` is `1 × dim`.
#[derive(Debug, Clone)]
pub struct HopfAlgebra {
    pub alg: Arc<Algebra>,
    pub coproduct: Mat,
    pub counit: Mat,
    pub antipode: AlgMorphism,
}

/// One Sweedler summand `c · e_left ⊗ e_right`.
pub type Pair = (usize, usize, Scalar);

impl HopfAlgebra {
    pub fn new(alg: Arc<Algebra>, coproduct: Mat, counit: Mat, antipode: Mat) -> Result<Self> {
        let d = alg.dim();
        if coproduct.rows() != d * d || coproduct.cols() != d || counit.rows() != 1 || counit.cols() != d {
            return Err(Error::DimensionMismatch("Hopf structure maps have the wrong shape".into()));
        }
        let antipode = AlgMorphism::new(alg.clone(), alg.clone(), antipode, true)?;
        Ok(HopfAlgebra { alg, coproduct, counit, antipode })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn counit_of(&self, x: &[Scalar]) -> Scalar {
        self.counit.apply(x)[0].clone()
    }

    pub fn counit_basis(&self, j: usize) -> &Scalar {
        self.counit.get(0, j)
    }

    /// Sweedler summands of `Δ(e_j)`.
    pub fn delta(&self, j: usize) -> Vec<Pair> {
        let d = self.dim();
        (0..d * d)
            .filter_map(|ik| {
                let c = self.coproduct.get(ik, j);
                (!c.is_zero()).then(|| (ik / d, ik % d, c.clone()))
            })
            .collect()
    }

    /// Summands of `(Δ ⊗ id)Δ(e_j)` as `(a, b, c, coefficient)`.
    pub fn delta2(&self, j: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (x, z, c) in self.delta(j) {
            for (a, b, c2) in self.delta(x) {
                out.push((a, b, z, &c * &c2));
            }
        }
        out
    }

    /// Summands of `(Δ ⊗ id ⊗ id)(Δ ⊗ id)Δ(e_j)`.
    pub fn delta3(&self, j: usize) -> Vec<([usize; 4], Scalar)> {
        let mut out = Vec::new();
        for (x, b, c, k) in self.delta2(j) {
            for (a0, a1, k2) in self.delta(x) {
                out.push(([a0, a1, b, c], &k * &k2));
            }
        }
        out
    }

    pub fn antipode_of(&self, x: &[Scalar]) -> Vector {
        self.antipode.apply(x)
    }

    pub fn antipode_basis(&self, j: usize) -> Vector {
        self.antipode.image_of_basis(j)
    }

    pub fn antipode_inverse(&self) -> Result<Mat> {
        self.antipode
            .matrix
            .inverse()
            .ok_or_else(|| Error::NotInvertible("Hopf antipode".into()))
    }
}

/// Verifies every Hopf algebra axiom on basis elements.
pub fn check_hopf(h: &HopfAlgebra) -> Report {
    let mut r = Report::new();
    let a = &h.alg;
    let d = h.dim();
    r.merge("algebra", check_algebra(a));
    for j in 0..d {
        let mut lhs = zeros(d * d * d);
        let mut rhs = zeros(d * d * d);
        for (x, z, c) in h.delta(j) {
            for (p, q, c2) in h.delta(x) {
                lhs[(p * d + q) * d + z] += &c * &c2;
            }
            for (p, q, c2) in h.delta(z) {
                rhs[(x * d + p) * d + q] += &c * &c2;
            }
        }
        r.compare("coassociativity", &[j], &lhs, &rhs);

        let e = unit_vector(d, j);
        let mut left = zeros(d);
        let mut right = zeros(d);
        let mut s_left = zeros(d);
        let mut s_right = zeros(d);
        for (x, z, c) in h.delta(j) {
            left[z] += &c * h.counit_basis(x);
            right[x] += &c * h.counit_basis(z);
            let sl = a.mul(&h.antipode_basis(x), &unit_vector(d, z));
            let sr = a.mul(&unit_vector(d, x), &h.antipode_basis(z));
            for k in 0..d {
                s_left[k] += &c * &sl[k];
                s_right[k] += &c * &sr[k];
            }
        }
        r.compare("left_counit", &[j], &left, &e);
        r.compare("right_counit", &[j], &right, &e);
        let eps_one: Vector = a.unit().iter().map(|u| u * h.counit_basis(j)).collect();
        r.compare("antipode_left", &[j], &s_left, &eps_one);
        r.compare("antipode_right", &[j], &s_right, &eps_one);
    }
    for i in 0..d {
        for j in 0..d {
            let prod = a.mul_basis(i, j);
            let lhs = h.coproduct.apply(&prod);
            let mut rhs = zeros(d * d);
            for (p, q, c) in h.delta(i) {
                for (s, t, c2) in h.delta(j) {
                    let l = a.mul_basis(p, s);
                    let m = a.mul_basis(q, t);
                    let cc = &c * &c2;
                    for (u, x) in l.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        for (v, y) in m.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                            rhs[u * d + v] += &cc * x * y;
                        }
                    }
                }
            }
            r.compare("coproduct_multiplicative", &[i, j], &lhs, &rhs);
            let lhs = vec![h.counit_of(&prod)];
            let rhs = vec![h.counit_basis(i) * h.counit_basis(j)];
            r.compare("counit_multiplicative", &[i, j], &lhs, &rhs);
        }
    }
    let one = a.unit();
    let mut one_one = zeros(d * d);
    for (i, x) in one.iter().enumerate() {
        for (j, y) in one.iter().enumerate() {
            one_one[i * d + j] = x * y;
        }
    }
    r.compare("coproduct_unital", &[], &h.coproduct.apply(one), &one_one);
    r.compare("counit_unital", &[], &[h.counit_of(one)], &[Scalar::one()]);
    let anti = morphism_check(&h.antipode);
    for key in ["unit", "anti_multiplicative"] {
        if let Some(c) = anti.check(key) {
            let mut sub = Report::new();
            sub.checks.insert(key.to_string(), c.clone());
            r.merge("antipode", sub);
        }
    }
    r.set_fact("involutive", is_involutive(h));
    r
}

/// `S² = id`.
pub fn is_involutive(h: &HopfAlgebra) -> bool {
    h.antipode.matrix.mul(&h.antipode.matrix).is_identity()
}

/// `K[G]` with `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &GroupData) -> HopfAlgebra {
    let n = g.order();
    let alg = Arc::new(Algebra::from_fn(g.labels.clone(), unit_vector(n, 0), |i, j| unit_vector(n, g.mul(i, j))));
    let coproduct = Mat::from_fn(n * n, n, |ik, j| if ik == j * n + j { Scalar::one() } else { Scalar::zero() });
    let counit = Mat::from_fn(1, n, |_, _| Scalar::one());
    let antipode = Mat::from_fn(n, n, |i, j| if i == g.inverse[j] { Scalar::one() } else { Scalar::zero() });
    HopfAlgebra::new(alg, coproduct, counit, antipode).expect("group algebra shapes")
}

/// Sweedler's four-dimensional Hopf algebra: `g² = 1`, `x² = 0`, `xg = -gx`,
/// `Δx = x ⊗ 1 + g ⊗ x`, `S(x) = -gx`. Basis `1, g, x, gx`. Its antipode has order 4.
pub fn sweedler_hopf() -> HopfAlgebra {
    let idx = |a: usize, b: usize| a + 2 * b;
    let labels = vec!["1".into(), "g".into(), "x".into(), "gx".into()];
    let alg = Arc::new(Algebra::from_fn(labels, unit_vector(4, 0), |i, j| {
        let (a, b, c, d) = (i % 2, i / 2, j % 2, j / 2);
        if b + d >= 2 {
            return zeros(4);
        }
        let sign = if b * c == 1 { -1 } else { 1 };
        let mut v = zeros(4);
        v[idx((a + c) % 2, b + d)] = int(sign);
        v
    }));
    let mut coproduct = Mat::zeros(16, 4);
    let t = |i: usize, k: usize| i * 4 + k;
    coproduct.set(t(0, 0), 0, int(1));
    coproduct.set(t(1, 1), 1, int(1));
    coproduct.set(t(2, 0), 2, int(1));
    coproduct.set(t(1, 2), 2, int(1));
    coproduct.set(t(3, 1), 3, int(1));
    coproduct.set(t(0, 3), 3, int(1));
    let counit = Mat::from_i64(1, 4, &[1, 1, 0, 0]);
    let mut antipode = Mat::zeros(4, 4);
    antipode.set(0, 0, int(1));
    antipode.set(1, 1, int(1));
    antipode.set(3, 2, int(-1));
    antipode.set(2, 3, int(1));
    HopfAlgebra::new(alg, coproduct, counit, antipode).expect("Sweedler shapes")
}

/// An action `H ⊗ A → A`; column `h * dim A + a` of `action` is `e_h · e_a`.
#[derive(Debug, Clone)]
pub struct ModuleAction {
    pub hopf: Arc<HopfAlgebra>,
    pub alg: Arc<Algebra>,
    pub action: Mat,
}

impl ModuleAction {
    pub fn new(hopf: Arc<HopfAlgebra>, alg: Arc<Algebra>, action: Mat) -> Result<Self> {
        if action.rows() != alg.dim() || action.cols() != hopf.dim() * alg.dim() {
            return Err(Error::DimensionMismatch("action matrix has the wrong shape".into()));
        }
        Ok(ModuleAction { hopf, alg, action })
    }

    pub fn dim_a(&self) -> usize {
        self.alg.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.hopf.dim()
    }

    /// `e_h · e_a`.
    pub fn act_basis(&self, h: usize, a: usize) -> Vector {
        self.action.column(h * self.dim_a() + a)
    }

    /// `e_h · x`.
    pub fn act_basis_on(&self, h: usize, x: &[Scalar]) -> Vector {
        let da = self.dim_a();
        let mut out = zeros(da);
        for (a, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..da {
                let v = self.action.get(i, h * da + a);
                if !v.is_zero() {
                    out[i] += c * v;
                }
            }
        }
        out
    }

    /// `h · x` for arbitrary vectors.
    pub fn act(&self, h: &[Scalar], x: &[Scalar]) -> Vector {
        let mut out = zeros(self.dim_a());
        for (k, c) in h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = self.act_basis_on(k, x);
            for (o, y) in out.iter_mut().zip(v) {
                *o += c * y;
            }
        }
        out
    }

    /// Matrix of `x ↦ e_h · x`.
    pub fn operator(&self, h: &[Scalar]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim_a()).map(|a| self.act(h, &unit_vector(self.dim_a(), a))).collect();
        Mat::from_columns(self.dim_a(), &cols)
    }
}

/// `h · a = ε(h) a`.
pub fn trivial_action(hopf: Arc<HopfAlgebra>, alg: Arc<Algebra>) -> ModuleAction {
    let (dh, da) = (hopf.dim(), alg.dim());
    let action = Mat::from_fn(da, dh * da, |i, col| {
        let (h, a) = (col / da, col % da);
        if i == a {
            hopf.counit_basis(h).clone()
        } else {
            Scalar::zero()
        }
    });
    ModuleAction::new(hopf, alg, action).expect("trivial action shape")
}

/// The `K[G]`-module algebra structure induced by a group of automorphisms, where
/// `autos[k]` is the automorphism assigned to group element `k`.
pub fn group_action_to_module_action(g: &GroupData, autos: &[AlgMorphism]) -> Result<ModuleAction> {
    let n = g.order();
    if autos.len() != n {
        return Err(Error::NotHomomorphic(format!("{} automorphisms for a group of order {n}", autos.len())));
    }
    let alg = autos[0].domain.clone();
    for f in autos {
        if *f.domain != *alg || *f.codomain != *alg {
            return Err(Error::NotAutomorphism("automorphisms act on different algebras".into()));
        }
        crate::algebra::ensure_automorphism(f)?;
    }
    if !autos[0].matrix.is_identity() {
        return Err(Error::NotHomomorphic("identity element does not act as the identity".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if autos[a].matrix.mul(&autos[b].matrix) != autos[g.mul(a, b)].matrix {
                return Err(Error::NotHomomorphic(format!("σ_{a} ∘ σ_{b} ≠ σ_{}", g.mul(a, b))));
            }
        }
    }
    let hopf = Arc::new(group_algebra(g));
    let da = alg.dim();
    let action = Mat::from_fn(da, n * da, |i, col| autos[col / da].matrix.get(i, col % da).clone());
    ModuleAction::new(hopf, alg, action)
}

/// Module axioms, measuring, and `h · 1 = ε(h) 1`, on basis elements.
pub fn check_module_algebra(m: &ModuleAction) -> Report {
    let mut r = Report::new();
    let (h, a) = (&m.hopf, &m.alg);
    let (dh, da) = (m.dim_h(), m.dim_a());
    for x in 0..da {
        let e = unit_vector(da, x);
        r.compare("module_unit", &[x], &m.act(h.alg.unit(), &e), &e);
    }
    for p in 0..dh {
        for q in 0..dh {
            let pq = h.alg.mul_basis(p, q);
            for x in 0..da {
                let lhs = m.act(&pq, &unit_vector(da, x));
                let rhs = m.act_basis_on(p, &m.act_basis(q, x));
                r.compare("module_associativity", &[p, q, x], &lhs, &rhs);
            }
        }
    }
    for k in 0..dh {
        let delta = h.delta(k);
        for x in 0..da {
            for y in 0..da {
                let lhs = m.act_basis_on(k, &a.mul_basis(x, y));
                let mut rhs = zeros(da);
                for (p, q, c) in &delta {
                    let prod = a.mul(&m.act_basis(*p, x), &m.act_basis(*q, y));
                    for (o, v) in rhs.iter_mut().zip(prod) {
                        *o += c * v;
                    }
                }
                r.compare("measuring", &[k, x, y], &lhs, &rhs);
            }
        }
        let rhs: Vector = a.unit().iter().map(|u| u * h.counit_basis(k)).collect();
        r.compare("unit_action", &[k], &m.act_basis_on(k, a.unit()), &rhs);
    }
    r
}

fn ensure_valid(m: &ModuleAction) -> Result<()> {
    let rep = check_module_algebra(m);
    if rep.passed() {
        Ok(())
    } else {
        Err(Error::InvalidAction(format!("fails {}", rep.failed_checks().join(", "))))
    }
}

/// `A ⋊ H` on `A ⊗ H` (index `a * dim H + h`) with
/// `(a # h)(b # k) = a (h₁ · b) # h₂ k`.
pub fn smash_product(m: &ModuleAction) -> Result<Algebra> {
    ensure_valid(m)?;
    let (h, a) = (&m.hopf, &m.alg);
    let (dh, da) = (m.dim_h(), m.dim_a());
    let labels = (0..da * dh).map(|i| format!("{}#{}", a.label(i / dh), h.alg.label(i % dh))).collect();
    let mut table = Vec::with_capacity((da * dh).pow(2));
    for p in 0..da * dh {
        let (x, hh) = (p / dh, p % dh);
        let delta = h.delta(hh);
        for q in 0..da * dh {
            let (y, k) = (q / dh, q % dh);
            let mut v = zeros(da * dh);
            for (h1, h2, c) in &delta {
                let left = a.mul(&a.basis_vector(x), &m.act_basis(*h1, y));
                let right = h.alg.mul_basis(*h2, k);
                add_tensor(&mut v, c, &left, &right);
            }
            table.push(crate::linalg::to_sparse(&v));
        }
    }
    let unit = crate::algebra::tensor_vectors(a.unit(), h.alg.unit());
    Algebra::new(labels, table, unit)
}

/// `H ⋉ A^op` on `H ⊗ A` (index `h * dim A + a`) with
/// `(h # ā)(k # b̄) = h k₁ # (ā · k₂) b̄` and `ā · k = \overline{S(k) · a}`.
pub fn right_cross_product(m: &ModuleAction) -> Result<Algebra> {
    ensure_valid(m)?;
    let (h, a) = (&m.hopf, &m.alg);
    let (dh, da) = (m.dim_h(), m.dim_a());
    let labels = (0..dh * da).map(|i| format!("{}#{}°", h.alg.label(i / da), a.label(i % da))).collect();
    let mut table = Vec::with_capacity((da * dh).pow(2));
    for p in 0..dh * da {
        let (hh, x) = (p / da, p % da);
        for q in 0..dh * da {
            let (k, y) = (q / da, q % da);
            let mut v = zeros(dh * da);
            for (k1, k2, c) in h.delta(k) {
                let left = h.alg.mul_basis(hh, k1);
                let sx = m.act(&h.antipode_basis(k2), &a.basis_vector(x));
                let right = a.mul(&a.basis_vector(y), &sx);
                add_tensor(&mut v, &c, &left, &right);
            }
            table.push(crate::linalg::to_sparse(&v));
        }
    }
    let unit = crate::algebra::tensor_vectors(h.alg.unit(), a.unit());
    Algebra::new(labels, table, unit)
}

/// `v += c · (x ⊗ y)` in the basis `i * len(y) + j`.
pub(crate) fn add_tensor(v: &mut [Scalar], c: &Scalar, x: &[Scalar], y: &[Scalar]) {
    let n = y.len();
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let ca = c * a;
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                v[i * n + j] += &ca * b;
            }
        }
    }
}

/// Restricts an action to a subalgebra it preserves, on the subalgebra's canonical basis.
pub fn restrict_action(m: &ModuleAction, sub: &Subalgebra) -> Result<ModuleAction> {
    let (dh, ds) = (m.dim_h(), sub.dim());
    let basis = sub.basis();
    let mut action = Mat::zeros(ds, dh * ds);
    for h in 0..dh {
        for (j, b) in basis.iter().enumerate() {
            let img = m.act_basis_on(h, b);
            let c = sub
                .coordinates(&img)
                .ok_or_else(|| Error::Precondition(format!("H-basis {h} moves subalgebra basis {j} outside")))?;
            action.set_column(h * ds + j, &c);
        }
    }
    ModuleAction::new(m.hopf.clone(), sub.algebra().clone(), action)
}

/// Sparse helper used by constructions: Sweedler summands of `Δ(x)` for a vector `x`.
pub fn delta_of(h: &HopfAlgebra, x: &[Scalar]) -> Vec<Pair> {
    let mut acc: std::collections::BTreeMap<(usize, usize), Scalar> = Default::default();
    for (j, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (a, b, k) in h.delta(j) {
            *acc.entry((a, b)).or_insert_with(Scalar::zero) += c * &k;
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, b), c)| (a, b, c)).collect()
}
