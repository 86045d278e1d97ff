use std::sync::Arc;

use algebroid::algebra::{
    centralizer, check_algebra, conjugation, diagonal_algebra, dual_numbers, endo_to_vector, endomorphism_algebra,
    fixed_subalgebra, ground_field, matrix_algebra, morphism_check, opposite, permutation_morphism, tensor_algebra,
    tensor_vectors, vector_to_endo, AlgMorphism, Algebra, Subalgebra,
};
use algebroid::hopf::{
    check_hopf, check_module_algebra, group_action_to_module_action, group_algebra, is_involutive,
    right_cross_product, smash_product, sweedler_hopf, trivial_action, GroupData, HopfAlgebra, ModuleAction,
};
use algebroid::instances::cyclic_shift;
use algebroid::linalg::{frac, int, unit_vector, Mat, Scalar, Vector};
use num_traits::Zero;
use proptest::prelude::*;

fn matmul(n: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
    let mut out = vec![Scalar::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i * n + j] += &x[i * n + k] * &y[k * n + j];
            }
        }
    }
    out
}

fn rational_vec(len: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec((-4i64..=4, 1i64..=3), len)
        .prop_map(|v| v.into_iter().map(|(p, q)| frac(p, q)).collect())
}

fn table_equal(a: &Algebra, b: &Algebra) -> bool {
    a.dim() == b.dim()
        && a.unit() == b.unit()
        && (0..a.dim()).all(|i| (0..a.dim()).all(|j| a.mul_basis(i, j) == b.mul_basis(i, j)))
}

fn m2_inner() -> (Arc<Algebra>, Vec<AlgMorphism>) {
    let a = Arc::new(matrix_algebra(2));
    let u = vec![int(1), int(0), int(0), int(-1)];
    let autos = vec![AlgMorphism::identity(a.clone()), conjugation(&a, &u, &u)];
    (a, autos)
}

#[test]
fn products_in_small_algebras() {
    let q2 = diagonal_algebra(2);
    assert_eq!(q2.mul(&[int(1), int(0)], &[int(0), int(1)]), vec![int(0), int(0)]);
    let m2 = matrix_algebra(2);
    let e = |i: usize| m2.basis_vector(i);
    assert_eq!(m2.mul(&e(0), &e(1)), matmul(2, &e(0), &e(1)));
    assert_eq!(m2.mul(&e(0), &e(1)), e(1));
    let x = m2.element(vec![int(1), int(2), int(3), int(4)]).unwrap();
    let one = m2.element(m2.unit().clone()).unwrap();
    assert_eq!(one.mul(&x).unwrap().coords(), x.coords());
    let other = q2.element(q2.unit().clone()).unwrap();
    assert!(x.mul(&other).is_err());
}

#[test]
fn corrupted_structure_constant_is_named() {
    assert!(check_algebra(&diagonal_algebra(2)).passed());
    assert!(check_algebra(&matrix_algebra(2)).passed());
    let mut m2 = matrix_algebra(2);
    m2.set_structure_constant(0, 1, 1, int(0));
    let rep = check_algebra(&m2);
    assert!(!rep.check_passed("associativity"));
    let w = rep.first_witness("associativity").unwrap();
    assert_eq!(w.indices.len(), 3);
    let (i, j, k) = (w.indices[0], w.indices[1], w.indices[2]);
    let lhs = m2.mul(&m2.mul_basis(i, j), &m2.basis_vector(k));
    let rhs = m2.mul(&m2.basis_vector(i), &m2.mul_basis(j, k));
    assert_ne!(lhs, rhs);
    let (e11, e12, e21) = (0, 1, 2);
    let lhs = m2.mul(&m2.mul_basis(e11, e12), &m2.basis_vector(e21));
    let rhs = m2.mul(&m2.basis_vector(e11), &m2.mul_basis(e12, e21));
    assert_eq!((lhs, rhs), (m2.zero_vector(), m2.basis_vector(e11)));
}

#[test]
fn opposite_and_tensor() {
    let q2 = diagonal_algebra(2);
    assert!(table_equal(&opposite(&q2), &q2));
    let m2 = matrix_algebra(2);
    let op = opposite(&m2);
    assert_eq!(op.mul_basis(1, 0), m2.basis_vector(1));
    assert!(table_equal(&opposite(&op), &m2));
    assert!(check_algebra(&op).passed());

    let t = tensor_algebra(&m2, &ground_field());
    assert!(table_equal(&t, &m2));
    let env = tensor_algebra(&m2, &op);
    assert_eq!(env.dim(), 16);
    assert!(check_algebra(&env).passed());
    let q4 = tensor_algebra(&q2, &q2);
    assert!(table_equal(&q4, &diagonal_algebra(4)));
}

#[test]
fn endomorphism_algebra_is_composition() {
    let q2 = diagonal_algebra(2);
    let end = endomorphism_algebra(&q2);
    assert_eq!(end.dim(), 4);
    assert_eq!(end.unit(), &endo_to_vector(&Mat::identity(2)));
    let f = Mat::from_i64(2, 2, &[0, 1, 0, 0]);
    let g = Mat::from_i64(2, 2, &[0, 0, 1, 0]);
    let fg = end.mul(&endo_to_vector(&f), &endo_to_vector(&g));
    assert_eq!(vector_to_endo(2, &fg), f.mul(&g));
    assert!(check_algebra(&end).passed());
}

#[test]
fn fixed_subalgebras_and_centralizers() {
    let q2 = Arc::new(diagonal_algebra(2));
    assert_eq!(fixed_subalgebra(&q2, &[]).unwrap().dim(), 2);
    let swap = permutation_morphism(&q2, &[1, 0]);
    let b = fixed_subalgebra(&q2, &[swap]).unwrap();
    assert_eq!(b.dim(), 1);
    assert!(b.contains(&[int(1), int(1)]));

    let (m2, autos) = m2_inner();
    let diag = fixed_subalgebra(&m2, &autos).unwrap();
    assert_eq!(diag.dim(), 2);
    assert!(diag.contains(&m2.basis_vector(0)) && diag.contains(&m2.basis_vector(3)));
    assert_eq!(centralizer(&m2, &Subalgebra::whole(m2.clone())).dim(), 1);
    assert_eq!(centralizer(&m2, &Subalgebra::scalars(m2.clone())).dim(), 4);
    let c = centralizer(&m2, &diag);
    assert_eq!(c.dim(), 2);
    assert!(diag.basis().iter().all(|v| c.contains(v)));
    for s in &autos {
        assert!(c.basis().iter().all(|v| c.contains(&s.apply(v))));
    }
    let bad = AlgMorphism::new(m2.clone(), m2.clone(), Mat::zeros(4, 4), false).unwrap();
    assert!(fixed_subalgebra(&m2, &[bad]).is_err());
}

#[test]
fn morphism_checks() {
    let q2 = Arc::new(diagonal_algebra(2));
    let id = morphism_check(&AlgMorphism::identity(q2.clone()));
    assert!(id.passed());
    assert_eq!(id.flag_fact("injective"), Some(true));
    let swap = morphism_check(&permutation_morphism(&q2, &[1, 0]));
    assert!(swap.passed() && swap.flag_fact("surjective") == Some(true));
    let q = Arc::new(ground_field());
    let proj = AlgMorphism::new(q2, q, Mat::from_i64(1, 2, &[1, 0]), false).unwrap();
    let rep = morphism_check(&proj);
    assert!(rep.passed(), "{:?}", rep.failed_checks());
    assert_eq!(rep.flag_fact("surjective"), Some(true));
    assert_eq!(rep.flag_fact("injective"), Some(false));
}

#[test]
fn group_algebras_are_involutive_hopf_algebras() {
    let triv = group_algebra(&GroupData::trivial());
    assert_eq!(triv.dim(), 1);
    assert!(check_hopf(&triv).passed());
    let c2 = group_algebra(&GroupData::cyclic(2));
    assert!(check_hopf(&c2).passed());
    assert!(c2.antipode.matrix.is_identity());
    let s3 = group_algebra(&GroupData::symmetric3());
    assert_eq!(s3.dim(), 6);
    assert!(check_hopf(&s3).passed());
    assert!(is_involutive(&s3));
    assert!(!s3.antipode.matrix.is_identity());
}

#[test]
fn corrupted_hopf_data_is_detected() {
    let mut c2 = group_algebra(&GroupData::cyclic(2));
    c2.counit.set(0, 1, int(0));
    let rep = check_hopf(&c2);
    assert!(!rep.check_passed("left_counit"));
    assert_eq!(rep.first_witness("left_counit").unwrap().indices, vec![1]);

    let s3 = group_algebra(&GroupData::symmetric3());
    let alg = s3.alg.clone();
    let mut anti = s3.antipode.matrix.clone();
    for j in 0..6 {
        for i in 0..6 {
            anti.set(i, j, if i == (j + 1) % 6 { int(1) } else { int(0) });
        }
    }
    let bad = HopfAlgebra::new(alg, s3.coproduct.clone(), s3.counit.clone(), anti).unwrap();
    assert!(!is_involutive(&bad));
    assert!(!check_hopf(&bad).passed());
}

#[test]
fn sweedler_algebra_is_not_involutive() {
    let h = sweedler_hopf();
    assert!(check_hopf(&h).passed());
    assert!(!is_involutive(&h));
}

#[test]
fn module_algebra_actions() {
    let (q2, g, autos) = cyclic_shift(2);
    let m = group_action_to_module_action(&g, &autos).unwrap();
    assert!(check_module_algebra(&m).passed());
    let (m2, autos) = m2_inner();
    assert!(check_module_algebra(&group_action_to_module_action(&g, &autos).unwrap()).passed());
    let t = trivial_action(Arc::new(group_algebra(&GroupData::symmetric3())), m2.clone());
    assert!(check_module_algebra(&t).passed());
    let not_hom = vec![permutation_morphism(&q2, &[1, 0]), permutation_morphism(&q2, &[1, 0])];
    assert!(group_action_to_module_action(&g, &not_hom).is_err());

    let mut broken = m.action.clone();
    for x in 0..2 {
        broken.set_column(2 + x, &unit_vector(2, x));
    }
    broken.set_column(0, &unit_vector(2, 1));
    broken.set_column(1, &unit_vector(2, 0));
    let bad = ModuleAction::new(m.hopf.clone(), q2, broken).unwrap();
    let rep = check_module_algebra(&bad);
    assert!(!rep.check_passed("module_unit"));
}

#[test]
fn smash_and_cross_products_follow_group_formulas() {
    for (a, g, autos) in [cyclic_shift(2), cyclic_shift(3)] {
        let m = group_action_to_module_action(&g, &autos).unwrap();
        let smash = smash_product(&m).unwrap();
        let cross = right_cross_product(&m).unwrap();
        assert!(check_algebra(&smash).passed());
        assert!(check_algebra(&cross).passed());
        let (da, dg) = (a.dim(), g.order());
        for x in 0..da {
            for s in 0..dg {
                for y in 0..da {
                    for t in 0..dg {
                        let ea = a.basis_vector(x);
                        let eb = a.basis_vector(y);
                        let st = g.mul(s, t);
                        let gs = unit_vector(dg, s);
                        let gt = unit_vector(dg, t);
                        let got = smash.mul(&tensor_vectors(&ea, &gs), &tensor_vectors(&eb, &gt));
                        let want = tensor_vectors(&a.mul(&ea, &autos[s].apply(&eb)), &unit_vector(dg, st));
                        assert_eq!(got, want);
                        let got = cross.mul(&tensor_vectors(&gs, &ea), &tensor_vectors(&gt, &eb));
                        let moved = autos[g.inverse[t]].apply(&ea);
                        let want = tensor_vectors(&unit_vector(dg, st), &a.mul(&eb, &moved));
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }
    let (q2, g, autos) = cyclic_shift(2);
    let m = group_action_to_module_action(&g, &autos).unwrap();
    let smash = smash_product(&m).unwrap();
    let e1_sigma = tensor_vectors(&q2.basis_vector(0), &unit_vector(2, 1));
    assert!(smash.mul(&e1_sigma, &e1_sigma).iter().all(|c| c.is_zero()));
    let cross = right_cross_product(&m).unwrap();
    let sigma_e1 = tensor_vectors(&unit_vector(2, 1), &q2.basis_vector(0));
    assert!(cross.mul(&sigma_e1, &sigma_e1).iter().all(|c| c.is_zero()));
}

#[test]
fn trivial_action_smash_is_tensor_algebra() {
    let a = Arc::new(dual_numbers());
    let h = Arc::new(group_algebra(&GroupData::symmetric3()));
    let m = trivial_action(h.clone(), a.clone());
    assert!(table_equal(&smash_product(&m).unwrap(), &tensor_algebra(&a, &h.alg)));
    assert!(table_equal(&right_cross_product(&m).unwrap(), &tensor_algebra(&h.alg, &opposite(&a))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrix_algebra_product_is_matrix_product(x in rational_vec(9), y in rational_vec(9)) {
        let m3 = matrix_algebra(3);
        prop_assert_eq!(m3.mul(&x, &y), matmul(3, &x, &y));
    }

    #[test]
    fn endomorphism_product_is_composition(x in rational_vec(9), y in rational_vec(9)) {
        let end = endomorphism_algebra(&diagonal_algebra(3));
        let (f, g) = (vector_to_endo(3, &x), vector_to_endo(3, &y));
        prop_assert_eq!(vector_to_endo(3, &end.mul(&x, &y)), f.mul(&g));
    }

    #[test]
    fn opposite_reverses_products(x in rational_vec(4), y in rational_vec(4)) {
        let m2 = matrix_algebra(2);
        prop_assert_eq!(opposite(&m2).mul(&x, &y), m2.mul(&y, &x));
    }

    #[test]
    fn tensor_product_is_componentwise(x in rational_vec(2), u in rational_vec(4), y in rational_vec(2), v in rational_vec(4)) {
        let (a, b) = (dual_numbers(), matrix_algebra(2));
        let t = tensor_algebra(&a, &b);
        prop_assert_eq!(
            t.mul(&tensor_vectors(&x, &u), &tensor_vectors(&y, &v)),
            tensor_vectors(&a.mul(&x, &y), &b.mul(&u, &v))
        );
    }

    #[test]
    fn smash_product_is_associative_on_random_elements(
        x in rational_vec(8), y in rational_vec(8), z in rational_vec(8)
    ) {
        let (_, autos) = m2_inner();
        let m = group_action_to_module_action(&GroupData::cyclic(2), &autos).unwrap();
        let s = smash_product(&m).unwrap();
        prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
        let c = right_cross_product(&m).unwrap();
        prop_assert_eq!(c.mul(&c.mul(&x, &y), &z), c.mul(&x, &c.mul(&y, &z)));
    }

    #[test]
    fn actions_measure_products(x in rational_vec(4), y in rational_vec(4), h in rational_vec(2)) {
        let (_, autos) = m2_inner();
        let m = group_action_to_module_action(&GroupData::cyclic(2), &autos).unwrap();
        let a = &m.alg;
        let lhs = m.act(&h, &a.mul(&x, &y));
        let mut rhs = vec![Scalar::zero(); 4];
        for (p, q, c) in algebroid::hopf::delta_of(&m.hopf, &h) {
            let term = a.mul(&m.act_basis_on(p, &x), &m.act_basis_on(q, &y));
            algebroid::linalg::add_scaled(&mut rhs, &c, &term);
        }
        prop_assert_eq!(lhs, rhs);
    }
}
