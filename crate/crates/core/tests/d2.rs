use std::sync::Arc;

use algebroid::algebra::{
    diagonal_algebra, dual_numbers, fixed_subalgebra, matrix_algebra, tensor_vectors, AlgMorphism, Algebra, Subalgebra,
};
use algebroid::bialgebroid::check_left_bialgebroid;
use algebroid::d2::{
    bimodule_endos, find_left_d2_quasibases, find_right_d2_quasibases, galois_check, galois_iso_h, phi_frobenius_split,
    phi_iso_check, projectivity_identity_check, pseudo_galois_elements, pseudo_hopf_galois_check, psi_epimorphism,
    s_bialgebroid, verify_galois_system, verify_pseudo_galois, verify_quasibases, D2Quasibases, EndoAlgebra,
    ExtensionData, Side,
};
use algebroid::hopf::{group_action_to_module_action, GroupData};
use algebroid::instances::{builtin, cyclic_shift, Action, InstanceKind};
use algebroid::linalg::{add_scaled, to_sparse, unit_vector, zeros, Scalar, SparseVec};
use algebroid::tensor::collect_terms;
use num_traits::One;

fn group(name: &str, n: Option<usize>) -> (Arc<Algebra>, GroupData, Vec<AlgMorphism>) {
    match builtin(name, n).unwrap().kind {
        InstanceKind::Finite(f) => match f.action {
            Some(Action::Group { g, autos }) => (f.algebra, g, autos),
            _ => unreachable!(),
        },
        InstanceKind::Weyl => unreachable!(),
    }
}

fn fixed_ext(name: &str, n: Option<usize>) -> (ExtensionData, GroupData, Vec<AlgMorphism>) {
    let (a, g, autos) = group(name, n);
    let b = fixed_subalgebra(&a, &autos).unwrap();
    (ExtensionData::new(a, b).unwrap(), g, autos)
}

fn right_mul(a: &Algebra, t: &SparseVec, z: &[Scalar], on_left_leg: bool, n: usize) -> SparseVec {
    let mut out = Vec::new();
    for (idx, c) in t {
        let (u, v) = (a.basis_vector(idx / n), a.basis_vector(idx % n));
        let v2 = if on_left_leg { tensor_vectors(&a.mul(z, &u), &v) } else { tensor_vectors(&u, &a.mul(&v, z)) };
        for (k, x) in to_sparse(&v2) {
            out.push((k, c * x));
        }
    }
    collect_terms(out)
}

/// Evaluates `Σ t_i β_i(x) y` (left) or `Σ x γ_j(y) u_j` (right) directly and compares with `x ⊗ y`.
fn quasibase_identity_holds(ext: &ExtensionData, qb: &D2Quasibases) -> bool {
    let a = &ext.a;
    let n = a.dim();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let (ex, ey) = (a.basis_vector(x), a.basis_vector(y));
            let mut acc = Vec::new();
            for (m, t) in qb.maps.iter().zip(&qb.tensors) {
                match qb.side {
                    Side::Left => acc.extend(right_mul(a, t, &a.mul(&m.apply(&ex), &ey), false, n)),
                    Side::Right => acc.extend(right_mul(a, t, &a.mul(&ex, &m.apply(&ey)), true, n)),
                }
            }
            ext.tensor.equal_sparse(&collect_terms(acc), &to_sparse(&tensor_vectors(&ex, &ey)))
        })
    })
}

fn both_quasibases(ext: &ExtensionData, endos: &EndoAlgebra) -> (D2Quasibases, D2Quasibases) {
    let l = find_left_d2_quasibases(ext, endos).expect("left D2");
    let r = find_right_d2_quasibases(ext, endos).expect("right D2");
    assert!(verify_quasibases(ext, endos, &l).passed());
    assert!(verify_quasibases(ext, endos, &r).passed());
    assert!(quasibase_identity_holds(ext, &l));
    assert!(quasibase_identity_holds(ext, &r));
    (l, r)
}

#[test]
fn bimodule_endomorphism_dimensions() {
    let m2 = Arc::new(matrix_algebra(2));
    let whole = ExtensionData::new(m2.clone(), Subalgebra::whole(m2.clone())).unwrap();
    assert_eq!(bimodule_endos(&whole).dim(), 1);
    let q2 = Arc::new(diagonal_algebra(2));
    let scalars = ExtensionData::new(q2.clone(), Subalgebra::scalars(q2.clone())).unwrap();
    assert_eq!(bimodule_endos(&scalars).dim(), 4);
    let (diag, _, _) = fixed_ext("m2-inner-c2", None);
    let endos = bimodule_endos(&diag);
    assert_eq!(endos.dim(), 4);
    for f in &endos.maps {
        for b in diag.b.basis() {
            let lb = diag.a.left_mult_matrix(&b);
            let rb = diag.a.right_mult_matrix(&b);
            assert_eq!(f.mul(&lb), lb.mul(f));
            assert_eq!(f.mul(&rb), rb.mul(f));
        }
    }
}

#[test]
fn quasibases_on_small_extensions() {
    let q2 = Arc::new(diagonal_algebra(2));
    let ext = ExtensionData::new(q2.clone(), Subalgebra::scalars(q2)).unwrap();
    both_quasibases(&ext, &bimodule_endos(&ext));

    let m2 = Arc::new(matrix_algebra(2));
    let ext = ExtensionData::new(m2.clone(), Subalgebra::whole(m2)).unwrap();
    let endos = bimodule_endos(&ext);
    let (l, _) = both_quasibases(&ext, &endos);
    assert_eq!(l.n(), 1);
    assert!(l.maps[0].is_identity());

    let d = Arc::new(dual_numbers());
    let ext = ExtensionData::new(d.clone(), Subalgebra::scalars(d)).unwrap();
    both_quasibases(&ext, &bimodule_endos(&ext));
}

#[test]
fn projectivity_identity_on_group_extensions() {
    for name in ["c2-swap-k2", "m2-inner-c2"] {
        let (ext, _, _) = fixed_ext(name, None);
        let endos = bimodule_endos(&ext);
        let (l, _) = both_quasibases(&ext, &endos);
        let rep = projectivity_identity_check(&ext, &endos, &l).unwrap();
        assert!(rep.passed(), "{name}: {:?}", rep.failed_checks());
    }
}

#[test]
fn galois_systems() {
    for n in [2, 3, 4] {
        let (a, g, autos) = cyclic_shift(n);
        let sys = galois_check(&a, &g, &autos).unwrap().expect("cyclic shift is Galois");
        assert!(verify_galois_system(&sys).passed());
        for (k, sigma) in autos.iter().enumerate() {
            let mut acc = zeros(n);
            for (x, y) in &sys.pairs {
                add_scaled(&mut acc, &Scalar::one(), &a.mul(x, &sigma.apply(y)));
            }
            let expect = if k == 0 { a.unit().clone() } else { zeros(n) };
            assert_eq!(acc, expect);
        }
    }
    let (a, g, autos) = group("dual-numbers-c2", None);
    assert!(galois_check(&a, &g, &autos).unwrap().is_none());
    let m2 = Arc::new(matrix_algebra(2));
    let sys = galois_check(&m2, &GroupData::trivial(), &[AlgMorphism::identity(m2.clone())]).unwrap().unwrap();
    assert!(verify_galois_system(&sys).passed());
}

#[test]
fn galois_isomorphism_h() {
    let (a, g, autos) = cyclic_shift(2);
    let sys = galois_check(&a, &g, &autos).unwrap().unwrap();
    let iso = galois_iso_h(&sys).unwrap();
    assert!(iso.report.passed(), "{:?}", iso.report.failed_checks());
    assert_eq!(iso.h.rows(), 4);
    assert_eq!(iso.h.cols(), 4);
    assert!(iso.h_inv.mul(&iso.h).is_identity());
    let t = &sys.ext.tensor;
    let one_one = t.project(&tensor_vectors(a.unit(), a.unit()));
    let mut sum = zeros(4);
    for s in 0..2 {
        add_scaled(&mut sum, &Scalar::one(), &tensor_vectors(a.unit(), &unit_vector(2, s)));
    }
    assert_eq!(iso.h.apply(&one_one), sum);
    let e1 = a.basis_vector(0);
    let h_e1e1 = iso.h.apply(&t.project(&tensor_vectors(&e1, &e1)));
    assert_eq!(h_e1e1, tensor_vectors(&e1, &unit_vector(2, 0)));
}

#[test]
fn s_bialgebroids() {
    let m2 = Arc::new(matrix_algebra(2));
    let ext = ExtensionData::new(m2.clone(), Subalgebra::whole(m2)).unwrap();
    let endos = bimodule_endos(&ext);
    let (l, r) = both_quasibases(&ext, &endos);
    let (s, rep) = s_bialgebroid(&ext, &endos, &l, &r).unwrap();
    assert!(rep.passed());
    assert_eq!(s.dim(), 1);

    let (ext, _, _) = fixed_ext("c2-swap-k2", None);
    let endos = bimodule_endos(&ext);
    let (l, r) = both_quasibases(&ext, &endos);
    let (s, rep) = s_bialgebroid(&ext, &endos, &l, &r).unwrap();
    assert!(rep.passed(), "{:?}", rep.failed_checks());
    assert_eq!(s.dim(), 4);
    assert_eq!(s.base.dim(), 2);
    let srep = check_left_bialgebroid(&s);
    assert!(srep.passed(), "{:?}", srep.failed_checks());
    let one = s.total.unit().clone();
    let id_id = to_sparse(&tensor_vectors(&one, &one));
    assert!(s.tensor.equal_sparse(&s.delta(&one), &id_id));
    let phi = phi_iso_check(&ext, &endos, &s);
    assert!(phi.passed(), "{:?}", phi.failed_checks());
}

#[test]
fn pseudo_galois_elements_on_examples() {
    let m2 = Arc::new(matrix_algebra(2));
    let ext = ExtensionData::new(m2.clone(), Subalgebra::scalars(m2.clone())).unwrap();
    let pg = pseudo_galois_elements(&ext, &[AlgMorphism::identity(m2)]).unwrap().expect("H-separable");
    assert!(verify_pseudo_galois(&ext, &pg).passed());
    assert!(quasibase_identity_holds(&ext, &pg.left));
    assert!(quasibase_identity_holds(&ext, &pg.right));

    let (ext, _, autos) = fixed_ext("c2-swap-k2", None);
    let pg = pseudo_galois_elements(&ext, &autos).unwrap().expect("Galois implies pseudo-Galois");
    assert!(verify_pseudo_galois(&ext, &pg).passed());

    let (ext, _, autos) = fixed_ext("dual-numbers-c2", None);
    let verdict = pseudo_galois_elements(&ext, &autos[..1]).unwrap();
    assert!(verdict.is_none());
}

#[test]
fn galois_instances_are_pseudo_galois_with_valid_quasibases() {
    for (name, n) in [("c2-swap-k2", None), ("cn-cyclic-kn", Some(2)), ("cn-cyclic-kn", Some(3)), ("m2-inner-c2", None)] {
        let (a, g, autos) = group(name, n);
        let Some(sys) = galois_check(&a, &g, &autos).unwrap() else { continue };
        let pg = pseudo_galois_elements(&sys.ext, &autos).unwrap().expect(name);
        assert!(verify_pseudo_galois(&sys.ext, &pg).passed());
        let endos = bimodule_endos(&sys.ext);
        assert!(verify_quasibases(&sys.ext, &endos, &pg.left).passed());
        assert!(verify_quasibases(&sys.ext, &endos, &pg.right).passed());
        assert!(quasibase_identity_holds(&sys.ext, &pg.left), "{name}");
        assert!(quasibase_identity_holds(&sys.ext, &pg.right), "{name}");
    }
}

fn psi_facts(ext: &ExtensionData, g: &GroupData, autos: &[AlgMorphism]) -> (usize, usize, usize) {
    let endos = bimodule_endos(ext);
    let (l, r) = both_quasibases(ext, &endos);
    let (s, _) = s_bialgebroid(ext, &endos, &l, &r).unwrap();
    let s = Arc::new(s);
    let (_, psi, rep) = psi_epimorphism(ext, &endos, &s, g, autos).unwrap();
    assert!(rep.passed(), "{:?}", rep.failed_checks());
    (psi.domain.dim(), s.dim(), psi.map.rank())
}

#[test]
fn psi_ranks() {
    let (ext, g, autos) = fixed_ext("c2-swap-k2", None);
    assert_eq!(psi_facts(&ext, &g, &autos), (8, 4, 4));
    let (ext, g, autos) = fixed_ext("m2-inner-c2", None);
    let (dom, s, rank) = psi_facts(&ext, &g, &autos);
    assert_eq!((dom, s, rank), (8, 4, 4));

    let m2 = Arc::new(matrix_algebra(2));
    let ext = ExtensionData::new(m2.clone(), Subalgebra::scalars(m2.clone())).unwrap();
    assert_eq!(psi_facts(&ext, &GroupData::trivial(), &[AlgMorphism::identity(m2)]), (16, 16, 16));
}

#[test]
fn phi_splits_psi_on_cyclic_extensions() {
    for n in [2, 3] {
        let (a, g, autos) = cyclic_shift(n);
        let sys = galois_check(&a, &g, &autos).unwrap().unwrap();
        let ext = &sys.ext;
        let endos = bimodule_endos(ext);
        let (l, r) = both_quasibases(ext, &endos);
        let s = Arc::new(s_bialgebroid(ext, &endos, &l, &r).unwrap().0);
        assert_eq!(s.dim(), n * n);
        let (bw, psi, _) = psi_epimorphism(ext, &endos, &s, &g, &autos).unwrap();
        let rep = phi_frobenius_split(&sys, &endos, &bw, &psi).unwrap();
        assert!(rep.passed(), "{:?}", rep.failed_checks());
        assert!(rep.check_passed("phi_bijective") && rep.check_passed("split"));
    }
}

#[test]
fn pseudo_hopf_galois_ranks() {
    let m2 = Arc::new(matrix_algebra(2));
    let ext = ExtensionData::new(m2.clone(), Subalgebra::scalars(m2.clone())).unwrap();
    let m = group_action_to_module_action(&GroupData::trivial(), &[AlgMorphism::identity(m2)]).unwrap();
    let rep = pseudo_hopf_galois_check(&ext, &bimodule_endos(&ext), &m).unwrap();
    assert_eq!(rep.count_fact("rank"), Some(16));
    assert_eq!(rep.flag_fact("surjective"), Some(true));

    let (ext, g, autos) = fixed_ext("c2-swap-k2", None);
    let m = group_action_to_module_action(&g, &autos).unwrap();
    let rep = pseudo_hopf_galois_check(&ext, &bimodule_endos(&ext), &m).unwrap();
    assert!(rep.passed());
    assert_eq!(rep.flag_fact("surjective"), Some(true));
    assert_eq!(rep.count_fact("nat_rank"), Some(4));
    assert_eq!(rep.flag_fact("nat_bijective"), Some(true));

    let (ext, g, autos) = fixed_ext("dual-numbers-c2", None);
    let m = group_action_to_module_action(&g, &autos).unwrap();
    let rep = pseudo_hopf_galois_check(&ext, &bimodule_endos(&ext), &m).unwrap();
    assert_eq!(rep.count_fact("rank"), Some(3));
    assert_eq!(rep.count_fact("s_dim"), Some(4));
    assert_eq!(rep.flag_fact("surjective"), Some(false));

    let q2 = Arc::new(diagonal_algebra(2));
    let ext = ExtensionData::new(q2.clone(), Subalgebra::whole(q2)).unwrap();
    let err = pseudo_hopf_galois_check(&ext, &bimodule_endos(&ext), &m_swap());
    assert!(matches!(err, Err(algebroid::error::Error::Precondition(_))));
}

fn m_swap() -> algebroid::hopf::ModuleAction {
    let (_, g, autos) = cyclic_shift(2);
    group_action_to_module_action(&g, &autos).unwrap()
}

#[test]
fn dual_numbers_are_depth_two_but_not_galois() {
    let (ext, g, autos) = fixed_ext("dual-numbers-c2", None);
    assert!(galois_check(&ext.a, &g, &autos).unwrap().is_none());
    assert_eq!(ext.b.dim(), 1);
    both_quasibases(&ext, &bimodule_endos(&ext));
}
