//! Instances: the built-in catalogue and the TOML instance format.
//!
//! ```toml
//! name = "c2-swap"
//! suites = ["all"]
//! base = "fixed"            # fixed | scalars | whole
//!
//! [algebra]
//! basis = ["e1", "e2"]
//! unit = { e1 = "1", e2 = "1" }
//! products = { "e1*e1" = { e1 = "1" }, "e2*e2" = { e2 = "1" } }
//!
//! [group]
//! elements = ["e", "s"]
//! table = [["e", "s"], ["s", "e"]]
//!
//! [action.s]
//! e1 = { e2 = "1" }
//! e2 = { e1 = "1" }
//! ```
//!
//! Coefficients are integers or strings `"p/q"`; floating-point literals are rejected.
//! Unlisted products are zero. A general Hopf action uses `[hopf]` (basis, unit, products,
//! `coproduct = { h = { "a|b" = "1" } }`, `counit`, `antipode`) and `[hopf_action.h]`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Deserialize;

use crate::algebra::{
    conjugation, diagonal_algebra, dual_numbers, fixed_subalgebra, matrix_algebra, permutation_morphism, AlgMorphism,
    Algebra, Subalgebra,
};
use crate::error::{Error, Result};
use crate::hopf::{group_action_to_module_action, GroupData, HopfAlgebra, ModuleAction};
use crate::linalg::{int, parse_scalar, to_sparse, Mat, Scalar, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Galois,
    Bowtie,
    Cm,
    Weyl,
}

impl Suite {
    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "all" => Ok(Suite::All),
            "galois" => Ok(Suite::Galois),
            "bowtie" => Ok(Suite::Bowtie),
            "cm" => Ok(Suite::Cm),
            "weyl" => Ok(Suite::Weyl),
            other => Err(Error::Parse(format!("unknown suite `{other}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Galois => "galois",
            Suite::Bowtie => "bowtie",
            Suite::Cm => "cm",
            Suite::Weyl => "weyl",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseChoice {
    /// The invariants `A^G` (or `A^H`).
    Fixed,
    Scalars,
    Whole,
}

#[derive(Debug, Clone)]
pub enum Action {
    Group { g: GroupData, autos: Vec<AlgMorphism> },
    Hopf(ModuleAction),
}

impl Action {
    pub fn module_action(&self) -> Result<ModuleAction> {
        match self {
            Action::Group { g, autos } => group_action_to_module_action(g, autos),
            Action::Hopf(m) => Ok(m.clone()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteInstance {
    pub algebra: Arc<Algebra>,
    pub action: Option<Action>,
    pub base: BaseChoice,
    /// Group element indices forming the automorphism set for pseudo-Galois elements.
    pub gset: Option<Vec<usize>>,
}

impl FiniteInstance {
    /// The base subalgebra `B` of the extension.
    pub fn base_subalgebra(&self) -> Result<Subalgebra> {
        let a = &self.algebra;
        match (self.base, &self.action) {
            (BaseChoice::Scalars, _) => Ok(Subalgebra::scalars(a.clone())),
            (BaseChoice::Whole, _) | (BaseChoice::Fixed, None) => Ok(Subalgebra::whole(a.clone())),
            (BaseChoice::Fixed, Some(Action::Group { autos, .. })) => fixed_subalgebra(a, autos),
            (BaseChoice::Fixed, Some(Action::Hopf(m))) => invariant_subalgebra(m),
        }
    }
}

/// `A^H = {x : h ▷ x = ε(h) x}`.
pub fn invariant_subalgebra(m: &ModuleAction) -> Result<Subalgebra> {
    let a = &m.alg;
    let n = a.dim();
    let mut rows = Mat::zeros(0, n);
    for h in 0..m.dim_h() {
        let op = m.operator(&m.hopf.alg.basis_vector(h));
        let eps = m.hopf.counit_basis(h).clone();
        let shifted = Mat::from_fn(n, n, |i, j| {
            let d = if i == j { eps.clone() } else { Scalar::zero() };
            op.get(i, j) - d
        });
        rows = rows.vstack(&shifted);
    }
    Subalgebra::new(a.clone(), rows.kernel_basis())
}

#[derive(Debug, Clone)]
pub enum InstanceKind {
    Finite(FiniteInstance),
    Weyl,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub kind: InstanceKind,
    pub suites: Vec<Suite>,
}

pub const BUILTINS: [&str; 7] = [
    "c2-swap-k2",
    "cn-cyclic-kn",
    "m2-inner-c2",
    "m2-azumaya-id",
    "dual-numbers-c2",
    "trivial-action-counterexample",
    "weyl",
];

fn group_instance(name: &str, a: Arc<Algebra>, g: GroupData, autos: Vec<AlgMorphism>, base: BaseChoice) -> Instance {
    Instance {
        name: name.into(),
        kind: InstanceKind::Finite(FiniteInstance { algebra: a, action: Some(Action::Group { g, autos }), base, gset: None }),
        suites: vec![Suite::All],
    }
}

/// `Qⁿ` with the cyclic shift `e_i ↦ e_{i+k}` for the element `k` of `Cₙ`.
pub fn cyclic_shift(n: usize) -> (Arc<Algebra>, GroupData, Vec<AlgMorphism>) {
    let a = Arc::new(diagonal_algebra(n));
    let autos = (0..n)
        .map(|k| permutation_morphism(&a, &(0..n).map(|i| (i + k) % n).collect::<Vec<_>>()))
        .collect();
    (a, GroupData::cyclic(n), autos)
}

/// A built-in instance by name; `n` parameterizes `cn-cyclic-kn` (default 3).
pub fn builtin(name: &str, n: Option<usize>) -> Option<Instance> {
    let inst = match name {
        "c2-swap-k2" => {
            let (a, g, autos) = cyclic_shift(2);
            group_instance(name, a, g, autos, BaseChoice::Fixed)
        }
        "cn-cyclic-kn" => {
            let n = n.unwrap_or(3);
            if n == 0 {
                return None;
            }
            let (a, g, autos) = cyclic_shift(n);
            group_instance(name, a, g, autos, BaseChoice::Fixed)
        }
        "m2-inner-c2" => {
            let a = Arc::new(matrix_algebra(2));
            let u = vec![int(1), int(0), int(0), int(-1)];
            let autos = vec![AlgMorphism::identity(a.clone()), conjugation(&a, &u, &u)];
            group_instance(name, a, GroupData::cyclic(2), autos, BaseChoice::Fixed)
        }
        "m2-azumaya-id" => {
            let a = Arc::new(matrix_algebra(2));
            group_instance(name, a.clone(), GroupData::trivial(), vec![AlgMorphism::identity(a)], BaseChoice::Scalars)
        }
        "dual-numbers-c2" => {
            let a = Arc::new(dual_numbers());
            let neg = AlgMorphism::new(a.clone(), a.clone(), Mat::from_i64(2, 2, &[1, 0, 0, -1]), false)
                .expect("shape");
            group_instance(name, a.clone(), GroupData::cyclic(2), vec![AlgMorphism::identity(a), neg], BaseChoice::Fixed)
        }
        "trivial-action-counterexample" => {
            let a = Arc::new(diagonal_algebra(2));
            let autos = vec![AlgMorphism::identity(a.clone()); 2];
            group_instance(name, a, GroupData::cyclic(2), autos, BaseChoice::Fixed)
        }
        "weyl" => Instance { name: name.into(), kind: InstanceKind::Weyl, suites: vec![Suite::Weyl] },
        _ => return None,
    };
    Some(inst)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Exact {
    Int(i64),
    Text(String),
    Float(f64),
}

impl Exact {
    fn scalar(&self) -> Result<Scalar> {
        match self {
            Exact::Int(n) => Ok(int(*n)),
            Exact::Text(s) => parse_scalar(s).map_err(|e| Error::Parse(format!("bad coefficient `{s}`: {}", e.0))),
            Exact::Float(x) => Err(Error::Parse(format!("floating-point literal {x:?} is not allowed; use \"p/q\""))),
        }
    }
}

type Combo = BTreeMap<String, Exact>;
type MapBlock = BTreeMap<String, Combo>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraBlock {
    basis: Vec<String>,
    unit: Combo,
    #[serde(default)]
    products: BTreeMap<String, Combo>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupBlock {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfBlock {
    #[serde(flatten)]
    algebra: AlgebraBlock,
    coproduct: BTreeMap<String, Combo>,
    counit: Combo,
    antipode: MapBlock,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    name: String,
    #[serde(default)]
    suites: Vec<String>,
    base: Option<String>,
    pseudo_galois_set: Option<Vec<String>>,
    algebra: AlgebraBlock,
    group: Option<GroupBlock>,
    action: Option<BTreeMap<String, MapBlock>>,
    hopf: Option<HopfBlock>,
    hopf_action: Option<BTreeMap<String, MapBlock>>,
}

fn index_of(labels: &[String], l: &str, what: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| Error::Parse(format!("unknown {what} `{l}`")))
}

fn combo(labels: &[String], c: &Combo) -> Result<Vector> {
    let mut v = vec![Scalar::zero(); labels.len()];
    for (l, x) in c {
        v[index_of(labels, l, "basis label")?] += x.scalar()?;
    }
    Ok(v)
}

fn map_matrix(labels: &[String], m: &MapBlock, require_all: bool) -> Result<Mat> {
    let n = labels.len();
    let mut cols = vec![vec![Scalar::zero(); n]; n];
    for (l, img) in m {
        cols[index_of(labels, l, "basis label")?] = combo(labels, img)?;
    }
    if require_all {
        if let Some(l) = labels.iter().find(|l| !m.contains_key(*l)) {
            return Err(Error::Parse(format!("map does not give the image of `{l}`")));
        }
    }
    Ok(Mat::from_columns(n, &cols))
}

fn build_algebra(b: &AlgebraBlock) -> Result<Algebra> {
    let labels = &b.basis;
    let d = labels.len();
    if d == 0 {
        return Err(Error::Parse("algebra has an empty basis".into()));
    }
    let mut table = vec![Vec::new(); d * d];
    for (key, img) in &b.products {
        let (l, r) = key
            .split_once('*')
            .ok_or_else(|| Error::Parse(format!("product key `{key}` must look like `a*b`")))?;
        let (i, j) = (index_of(labels, l.trim(), "basis label")?, index_of(labels, r.trim(), "basis label")?);
        table[i * d + j] = to_sparse(&combo(labels, img)?);
    }
    Algebra::new(labels.clone(), table, combo(labels, &b.unit)?)
}

fn build_hopf(b: &HopfBlock) -> Result<HopfAlgebra> {
    let alg = Arc::new(build_algebra(&b.algebra)?);
    let labels = &b.algebra.basis;
    let d = labels.len();
    let mut cop = Mat::zeros(d * d, d);
    for (h, terms) in &b.coproduct {
        let j = index_of(labels, h, "Hopf basis label")?;
        for (key, c) in terms {
            let (l, r) = key
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("coproduct key `{key}` must look like `a|b`")))?;
            let (p, q) = (index_of(labels, l.trim(), "Hopf basis label")?, index_of(labels, r.trim(), "Hopf basis label")?);
            cop.add_at(p * d + q, j, &c.scalar()?);
        }
    }
    let counit = Mat::from_rows(d, &[combo(labels, &b.counit)?]);
    let antipode = map_matrix(labels, &b.antipode, false)?;
    HopfAlgebra::new(alg, cop, counit, antipode)
}

/// Parses a TOML instance. Shapes and names are validated here; axioms are checked by the suite.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let f: InstanceFile = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let a = Arc::new(build_algebra(&f.algebra)?);
    let labels = &f.algebra.basis;
    let suites = if f.suites.is_empty() {
        vec![Suite::All]
    } else {
        f.suites.iter().map(|s| Suite::parse(s)).collect::<Result<_>>()?
    };
    if suites.contains(&Suite::Weyl) {
        return Err(Error::Parse("the weyl suite applies only to the built-in weyl instance".into()));
    }
    let mut gset = None;
    let action = match (&f.group, &f.hopf) {
        (Some(_), Some(_)) => return Err(Error::Parse("give either a group or a hopf block, not both".into())),
        (Some(gb), None) => {
            let table = gb
                .table
                .iter()
                .map(|row| row.iter().map(|x| index_of(&gb.elements, x, "group element")).collect())
                .collect::<Result<_>>()?;
            let g = GroupData::new(gb.elements.clone(), table)?;
            let blocks = f.action.as_ref();
            let mut autos = Vec::with_capacity(g.order());
            for (k, el) in gb.elements.iter().enumerate() {
                let m = match blocks.and_then(|b| b.get(el)) {
                    Some(m) => map_matrix(labels, m, true)?,
                    None if k == 0 => Mat::identity(a.dim()),
                    None => return Err(Error::Parse(format!("no action given for group element `{el}`"))),
                };
                autos.push(AlgMorphism::new(a.clone(), a.clone(), m, false)?);
            }
            if let Some(set) = &f.pseudo_galois_set {
                gset = Some(set.iter().map(|x| index_of(&gb.elements, x, "group element")).collect::<Result<_>>()?);
            }
            Some(Action::Group { g, autos })
        }
        (None, Some(hb)) => {
            let hopf = Arc::new(build_hopf(hb)?);
            let hl = &hb.algebra.basis;
            let (dh, da) = (hl.len(), a.dim());
            let mut action = Mat::zeros(da, dh * da);
            if let Some(blocks) = &f.hopf_action {
                for (h, m) in blocks {
                    let hi = index_of(hl, h, "Hopf basis label")?;
                    let op = map_matrix(labels, m, false)?;
                    for x in 0..da {
                        action.set_column(hi * da + x, &op.column(x));
                    }
                }
            }
            Some(Action::Hopf(ModuleAction::new(hopf, a.clone(), action)?))
        }
        (None, None) => None,
    };
    if f.action.is_some() && f.group.is_none() {
        return Err(Error::Parse("an action block needs a group block".into()));
    }
    let base = match f.base.as_deref() {
        None | Some("fixed") => BaseChoice::Fixed,
        Some("scalars") => BaseChoice::Scalars,
        Some("whole") => BaseChoice::Whole,
        Some(other) => return Err(Error::Parse(format!("unknown base `{other}`"))),
    };
    Ok(Instance { name: f.name, kind: InstanceKind::Finite(FiniteInstance { algebra: a, action, base, gset }), suites })
}
