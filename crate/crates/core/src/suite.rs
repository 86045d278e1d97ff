//! Suite orchestration over an instance, and the text and structured report formats.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{check_algebra, tensor_algebra, tensor_vectors, AlgMorphism};
use crate::bialgebroid::{check_anchor_triangle, check_bialgebroid_morphism, check_hopf_algebroid, check_left_bialgebroid};
use crate::constructions::{
    bowtie, check_anchor_formulas, check_anchor_identity, cm_algebroid, embeddings, lu_morphism, op_isomorphism,
    re_bowtie_g, universal_map, BowtieAlgebroid,
};
use crate::d2::{
    bimodule_endos, find_left_d2_quasibases, find_right_d2_quasibases, galois_check, galois_iso_h,
    phi_frobenius_split, phi_iso_check, projectivity_identity_check, psi_epimorphism, pseudo_galois_elements,
    pseudo_hopf_galois_check, s_bialgebroid, verify_galois_system, verify_pseudo_galois, verify_quasibases,
    EndoAlgebra, ExtensionData, GaloisSystem,
};
use crate::error::{Error, Result};
use crate::hopf::{check_hopf, is_involutive, right_cross_product, smash_product, GroupData, ModuleAction};
use crate::instances::{Action, FiniteInstance, Instance, InstanceKind, Suite};
use crate::linalg::{Mat, Scalar};
use crate::report::Report;
use crate::weyl::{weyl_antipode, weyl_axiom_suite, weyl_coproduct, weyl_counit, PBWElement};

pub const DEFAULT_DEGREE: u32 = 6;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Overrides the instance's own suite list.
    pub suite: Option<Suite>,
    pub degree: u32,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { suite: None, degree: DEFAULT_DEGREE, timing: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub instance: String,
    pub suites: Vec<String>,
    #[serde(flatten)]
    pub report: Report,
    /// Steps that did not apply, with the reason.
    pub absent: BTreeMap<String, String>,
    /// SHA-256 of each rendered certificate.
    pub digests: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl SuiteReport {
    fn new(instance: &str, suites: &[Suite]) -> Self {
        SuiteReport {
            instance: instance.to_string(),
            suites: suites.iter().map(|s| s.name().to_string()).collect(),
            report: Report::new(),
            absent: BTreeMap::new(),
            digests: BTreeMap::new(),
            wall_time_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.report.passed()
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    fn absent(&mut self, name: &str, reason: impl Into<String>) {
        self.absent.insert(name.to_string(), reason.into());
    }

    fn digest(&mut self, name: &str, lines: &[String]) {
        let hash = Sha256::digest(lines.join("\n").as_bytes());
        self.digests.insert(name.to_string(), hex::encode(hash));
    }

    fn merge(&mut self, prefix: &str, rep: Report) {
        self.report.merge(prefix, rep);
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("instance {}\nsuites {}\n", self.instance, self.suites.join(","));
        for (name, c) in &self.report.checks {
            if c.passed() {
                out.push_str(&format!("PASS {name} ({} cases)\n", c.cases));
            } else {
                out.push_str(&format!("FAIL {name} ({}/{} cases failed)\n", c.failures, c.cases));
                for w in &c.witnesses {
                    out.push_str(&format!(
                        "  at {:?}: lhs [{}] rhs [{}]\n",
                        w.indices,
                        w.lhs.join(", "),
                        w.rhs.join(", ")
                    ));
                }
            }
        }
        for (name, why) in &self.absent {
            out.push_str(&format!("ABSENT {name}: {why}\n"));
        }
        for (name, v) in &self.report.facts {
            out.push_str(&format!("fact {name} = {v}\n"));
        }
        for (name, d) in &self.digests {
            out.push_str(&format!("digest {name} = {d}\n"));
        }
        if let Some(ms) = self.wall_time_ms {
            out.push_str(&format!("wall_time_ms {ms}\n"));
        }
        let failed = self.report.failed_checks().len();
        out.push_str(&format!("summary: {} checks, {failed} failed\n", self.report.checks.len()));
        out
    }

    pub fn to_structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Runs the selected suites. `Err` means a precondition failed before the checks could run.
pub fn run_instance(inst: &Instance, opts: &RunOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let suites = opts.suite.map_or_else(|| inst.suites.clone(), |s| vec![s]);
    let mut out = SuiteReport::new(&inst.name, &suites);
    let wants = |s: Suite| suites.contains(&Suite::All) || suites.contains(&s);
    match &inst.kind {
        InstanceKind::Weyl => {
            if wants(Suite::Weyl) {
                run_weyl(&mut out, opts.degree)?;
            }
        }
        InstanceKind::Finite(f) => {
            if suites == [Suite::Weyl] {
                return Err(Error::Precondition("the weyl suite applies only to the weyl instance".into()));
            }
            run_finite(&mut out, f, &wants)?;
        }
    }
    if opts.timing {
        out.wall_time_ms = Some(start.elapsed().as_millis());
    }
    Ok(out)
}

fn run_weyl(out: &mut SuiteReport, degree: u32) -> Result<()> {
    if degree == 0 {
        return Err(Error::Precondition("degree cap must be at least 1".into()));
    }
    out.merge("weyl", weyl_axiom_suite(degree));
    let mut spots = Report::new();
    let d = weyl_coproduct(&PBWElement::monomial(1, 0, 2)).to_string();
    let expect = "XZ^2⊗1 + 2·XZ⊗Z + X⊗Z^2";
    spots.record("coproduct_xz2", &[], d == expect, || (vec![d.clone()], vec![expect.into()]));
    let e = weyl_counit(&PBWElement::monomial(0, 2, 1)).to_string();
    spots.record("counit_y2z", &[], e == "2·X", || (vec![e.clone()], vec!["2·X".into()]));
    let t = weyl_antipode(&PBWElement::monomial(1, 2, 3)).to_string();
    let expect = "-X^2Z^3Y";
    spots.record("antipode_xy2z3", &[], t == expect, || (vec![t.clone()], vec![expect.into()]));
    out.merge("weyl.spot", spots);
    Ok(())
}

fn run_finite(out: &mut SuiteReport, f: &FiniteInstance, wants: &dyn Fn(Suite) -> bool) -> Result<()> {
    let a = &f.algebra;
    out.merge("algebra", check_algebra(a));
    out.report.set_fact("algebra.dim", a.dim());
    if !out.passed() {
        return Ok(());
    }
    let m = match &f.action {
        Some(action) => {
            let m = action.module_action()?;
            out.merge("hopf", check_hopf(&m.hopf));
            out.report.set_fact("hopf.dim", m.dim_h());
            out.report.set_fact("hopf.involutive", is_involutive(&m.hopf));
            out.merge("module_algebra", crate::hopf::check_module_algebra(&m));
            if !out.passed() {
                return Ok(());
            }
            Some(m)
        }
        None => None,
    };
    let mut bw = None;
    if wants(Suite::Bowtie) || wants(Suite::Cm) {
        match &m {
            Some(m) => bw = Some(run_bowtie(out, m, f)?),
            None => out.absent("bowtie", "no action"),
        }
    }
    if wants(Suite::Cm) {
        if let (Some(m), Some(bw)) = (&m, &bw) {
            run_cm(out, m, bw)?;
        } else {
            out.absent("cm", "no action");
        }
    }
    if wants(Suite::Galois) {
        run_galois(out, f, m.as_ref())?;
    }
    Ok(())
}

fn run_bowtie(out: &mut SuiteReport, m: &ModuleAction, f: &FiniteInstance) -> Result<BowtieAlgebroid> {
    let bw = bowtie(m)?;
    let b = &bw.bialgebroid;
    out.report.set_fact("bowtie.dim", bw.dim());
    out.merge("bowtie.algebra", check_algebra(&b.total));
    out.merge("bowtie.bialgebroid", check_left_bialgebroid(b));
    match bw.hopf_algebroid() {
        Some(h) => out.merge("bowtie.hopf_algebroid", check_hopf_algebroid(&h)?),
        None => out.absent("bowtie.hopf_algebroid", "antipode of H is not involutive"),
    }
    if let Some(Action::Group { g, autos }) = &f.action {
        let (_, rep) = re_bowtie_g(&f.algebra, g, autos)?;
        out.merge("bowtie.group_formulas", rep);
    }
    let (emb, rep) = embeddings(&bw)?;
    out.merge("bowtie.embeddings", rep);
    let (_, rep) = universal_map(&b.total, &emb.j1, &emb.j2, m)?;
    out.merge("bowtie.universal_map", rep);
    if let Some(rep) = trivial_action_universal_map(m)? {
        out.merge("bowtie.trivial_action_map", rep);
    }
    out.merge("bowtie.anchor_identity", check_anchor_identity(m));
    out.merge("bowtie.anchor_triangle", check_anchor_triangle(b));
    let lu = lu_morphism(b)?;
    out.merge("bowtie.lu_map", check_bialgebroid_morphism(&lu, None)?);
    Ok(bw)
}

/// For a trivial action on a commutative algebra, the universal map into `A ⊗ H` induced by
/// `a # h ↦ a ⊗ h` and `h # b̄ ↦ b ⊗ h`, with kernel dimension `(dim A² − dim A) · dim H`.
fn trivial_action_universal_map(m: &ModuleAction) -> Result<Option<Report>> {
    let a = &m.alg;
    let h = &m.hopf;
    let (da, dh) = (a.dim(), h.dim());
    let trivial = (0..dh).all(|k| {
        let op = m.operator(&h.alg.basis_vector(k));
        let eps = h.counit_basis(k);
        (0..da).all(|i| (0..da).all(|j| *op.get(i, j) == if i == j { eps.clone() } else { Scalar::zero() }))
    });
    let commutative = (0..da).all(|i| (0..da).all(|j| a.mul_basis(i, j) == a.mul_basis(j, i)));
    if !(trivial && commutative) {
        return Ok(None);
    }
    let target = Arc::new(tensor_algebra(a, &h.alg));
    let smash = Arc::new(smash_product(m)?);
    let cross = Arc::new(right_cross_product(m)?);
    let f1 = AlgMorphism::new(smash, target.clone(), Mat::identity(da * dh), false)?;
    let swap: Vec<_> = (0..da * dh)
        .map(|p| tensor_vectors(&a.basis_vector(p % da), &h.alg.basis_vector(p / da)))
        .collect();
    let f2 = AlgMorphism::from_images(cross, target.clone(), &swap, false)?;
    let (_, mut rep) = universal_map(&target, &f1, &f2, m)?;
    let expect = (da * da - da) * dh;
    let got = rep.count_fact("kernel_dim").unwrap_or(usize::MAX);
    rep.record("kernel_formula", &[], got == expect, || (vec![got.to_string()], vec![expect.to_string()]));
    Ok(Some(rep))
}

fn run_cm(out: &mut SuiteReport, m: &ModuleAction, bw: &BowtieAlgebroid) -> Result<()> {
    let cm = cm_algebroid(m)?;
    out.report.set_fact("cm.dim", cm.dim());
    out.merge("cm.algebra", check_algebra(&cm.bialgebroid.total));
    out.merge("cm.bialgebroid", check_left_bialgebroid(&cm.bialgebroid));
    out.merge("cm.anchor_triangle", check_anchor_triangle(&cm.bialgebroid));
    let (iso, rep) = op_isomorphism(bw, &cm)?;
    out.merge("cm.op_isomorphism", rep);
    out.merge("cm.anchor", check_anchor_formulas(bw, &cm, &iso));
    Ok(())
}

/// `S`, its quasibases and its bialgebroid structure for one extension.
struct EndoSide {
    endos: EndoAlgebra,
    s: Option<Arc<crate::bialgebroid::LeftBialgebroid>>,
}

fn endo_side(out: &mut SuiteReport, prefix: &str, ext: &ExtensionData) -> Result<EndoSide> {
    let endos = bimodule_endos(ext);
    out.report.set_fact(&format!("{prefix}.b_dim"), ext.b.dim());
    out.report.set_fact(&format!("{prefix}.r_dim"), ext.r.dim());
    out.report.set_fact(&format!("{prefix}.s_dim"), endos.dim());
    out.report.set_fact(&format!("{prefix}.tensor_dim"), ext.tensor.dim());
    let left = find_left_d2_quasibases(ext, &endos);
    let right = find_right_d2_quasibases(ext, &endos);
    out.report.set_fact(&format!("{prefix}.left_d2"), left.is_some());
    out.report.set_fact(&format!("{prefix}.right_d2"), right.is_some());
    if let Some(l) = &left {
        out.merge(&format!("{prefix}.left_quasibases"), verify_quasibases(ext, &endos, l));
        out.merge(&format!("{prefix}.projectivity"), projectivity_identity_check(ext, &endos, l)?);
        out.digest(&format!("{prefix}.left_quasibases"), &l.render());
    } else {
        out.absent(&format!("{prefix}.left_quasibases"), "left D2 system is inconsistent");
    }
    if let Some(r) = &right {
        out.merge(&format!("{prefix}.right_quasibases"), verify_quasibases(ext, &endos, r));
        out.digest(&format!("{prefix}.right_quasibases"), &r.render());
    } else {
        out.absent(&format!("{prefix}.right_quasibases"), "right D2 system is inconsistent");
    }
    let s = match (&left, &right) {
        (Some(l), Some(r)) => {
            let (b, rep) = s_bialgebroid(ext, &endos, l, r)?;
            out.merge(&format!("{prefix}.s_structure"), rep);
            out.merge(&format!("{prefix}.s_bialgebroid"), check_left_bialgebroid(&b));
            out.merge(&format!("{prefix}.phi"), phi_iso_check(ext, &endos, &b));
            Some(Arc::new(b))
        }
        _ => {
            out.absent(&format!("{prefix}.s_bialgebroid"), "extension is not depth two");
            None
        }
    };
    Ok(EndoSide { endos, s })
}

fn same_base(x: &ExtensionData, y: &ExtensionData) -> bool {
    x.b.dim() == y.b.dim() && x.b.basis().iter().all(|v| y.b.contains(v))
}

fn run_galois(out: &mut SuiteReport, f: &FiniteInstance, m: Option<&ModuleAction>) -> Result<()> {
    let ext = ExtensionData::new(f.algebra.clone(), f.base_subalgebra()?)?;
    let side = endo_side(out, "d2", &ext)?;
    let group = match &f.action {
        Some(Action::Group { g, autos }) => Some((g, autos)),
        _ => None,
    };
    let mut galois_here = false;
    if let Some((g, autos)) = group {
        let gset: Vec<AlgMorphism> = match &f.gset {
            Some(ix) => ix.iter().map(|&i| autos[i].clone()).collect(),
            None => autos.clone(),
        };
        let pseudo = run_pseudo_galois(out, "pseudo_galois", &ext, &side, &gset)?;
        let psi_rank = run_psi(out, "psi", &ext, &side, g, autos)?;
        if pseudo && gset.len() == autos.len() {
            if let Some((rank, dim)) = psi_rank {
                out.report.record("psi.surjective_when_pseudo_galois", &[], rank == dim, || {
                    (vec![rank.to_string()], vec![dim.to_string()])
                });
            }
        }
        match galois_check(&f.algebra, g, autos)? {
            Some(sys) => {
                galois_here = same_base(&sys.ext, &ext);
                run_galois_system(out, &sys, &ext, &side, g, autos)?;
            }
            None => out.absent("galois", "no Galois system for the group"),
        }
    }
    if let Some(m) = m {
        match pseudo_hopf_galois_check(&ext, &side.endos, m) {
            Ok(mut rep) => {
                if galois_here {
                    let ok = rep.flag_fact("nat_bijective") == Some(true);
                    rep.assert("nat_bijective_on_galois", &[], ok);
                }
                out.merge("pseudo_hopf_galois", rep);
            }
            Err(Error::Precondition(why)) => out.absent("pseudo_hopf_galois", why),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn run_pseudo_galois(
    out: &mut SuiteReport,
    prefix: &str,
    ext: &ExtensionData,
    side: &EndoSide,
    gset: &[AlgMorphism],
) -> Result<bool> {
    if let Some(i) = gset.iter().position(|s| ext.b.basis().iter().any(|b| s.apply(b) != *b)) {
        out.absent(prefix, format!("automorphism {i} does not fix the base"));
        return Ok(false);
    }
    match pseudo_galois_elements(ext, gset)? {
        Some(pg) => {
            out.merge(prefix, verify_pseudo_galois(ext, &pg));
            out.merge(&format!("{prefix}.left_quasibases"), verify_quasibases(ext, &side.endos, &pg.left));
            out.merge(&format!("{prefix}.right_quasibases"), verify_quasibases(ext, &side.endos, &pg.right));
            out.digest(prefix, &pg.render());
            out.report.set_fact(&format!("{prefix}.found"), true);
            Ok(true)
        }
        None => {
            out.report.set_fact(&format!("{prefix}.found"), false);
            out.absent(prefix, "no pseudo-Galois elements for this automorphism set");
            Ok(false)
        }
    }
}

/// Returns `(rank, dim S)` when `Ψ` was built.
fn run_psi(
    out: &mut SuiteReport,
    prefix: &str,
    ext: &ExtensionData,
    side: &EndoSide,
    g: &GroupData,
    autos: &[AlgMorphism],
) -> Result<Option<(usize, usize)>> {
    let Some(s) = &side.s else {
        out.absent(prefix, "S is not a bialgebroid here");
        return Ok(None);
    };
    match psi_epimorphism(ext, &side.endos, s, g, autos) {
        Ok((_, psi, rep)) => {
            let rank = psi.map.rank();
            out.report.set_fact(&format!("{prefix}.surjective"), rank == s.dim());
            out.merge(prefix, rep);
            Ok(Some((rank, s.dim())))
        }
        Err(Error::Precondition(why)) => {
            out.absent(prefix, why);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn run_galois_system(
    out: &mut SuiteReport,
    sys: &GaloisSystem,
    ext: &ExtensionData,
    side: &EndoSide,
    g: &GroupData,
    autos: &[AlgMorphism],
) -> Result<()> {
    out.merge("galois.system", verify_galois_system(sys));
    out.digest("galois.system", &sys.render());
    let iso = galois_iso_h(sys)?;
    out.merge("galois.h", iso.report);
    let own;
    let (gext, gside) = if same_base(&sys.ext, ext) {
        (ext, side)
    } else {
        own = endo_side(out, "galois.d2", &sys.ext)?;
        (&sys.ext, &own)
    };
    let found = run_pseudo_galois(out, "galois.pseudo_galois", gext, gside, autos)?;
    out.report.assert("galois.implies_pseudo_galois", &[], found);
    let Some(s) = &gside.s else {
        out.report.assert("galois.depth_two", &[], false);
        return Ok(());
    };
    let (bw, psi, rep) = psi_epimorphism(gext, &gside.endos, s, g, autos)?;
    out.report.assert("galois.psi_surjective", &[], psi.map.rank() == s.dim());
    out.merge("galois.psi", rep);
    out.merge("galois.phi_split", phi_frobenius_split(sys, &gside.endos, &bw, &psi)?);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::builtin;

    fn run(name: &str, n: Option<usize>) -> SuiteReport {
        run_instance(&builtin(name, n).unwrap(), &RunOptions { degree: 2, ..RunOptions::default() }).unwrap()
    }

    #[test]
    fn c2_swap_pins() {
        let r = run("c2-swap-k2", None);
        assert!(r.passed(), "{:?}", r.report.failed_checks());
        assert_eq!(r.report.count_fact("bowtie.dim"), Some(8));
        assert_eq!(r.report.count_fact("d2.s_dim"), Some(4));
        assert_eq!(r.report.count_fact("psi.rank"), Some(4));
        assert_eq!(r.report.count_fact("psi.kernel_dim"), Some(4));
        assert!(r.absent.is_empty(), "{:?}", r.absent);
    }

    #[test]
    fn dual_numbers_has_no_galois_system() {
        let r = run("dual-numbers-c2", None);
        assert!(r.passed(), "{:?}", r.report.failed_checks());
        assert!(r.absent.contains_key("galois"));
        assert_eq!(r.report.flag_fact("d2.left_d2"), Some(true));
        assert_eq!(r.report.count_fact("pseudo_hopf_galois.rank"), Some(3));
    }

    #[test]
    fn weyl_spot_values() {
        let r = run("weyl", None);
        assert!(r.passed(), "{:?}", r.report.failed_checks());
        assert!(r.report.check_passed("weyl.spot.coproduct_xz2"));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run("c2-swap-k2", None).to_structured();
        let b = run("c2-swap-k2", None).to_structured();
        assert_eq!(a, b);
        assert!(!a.contains("wall_time_ms"));
    }
}
