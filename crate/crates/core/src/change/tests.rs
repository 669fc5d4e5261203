use std::sync::Arc;

use super::*;
use crate::exactla::ScalarField;
use crate::gmod::{direct_sum, shift_right};
use crate::gring::{algebra_groupoid_ring, concentrated_ring, matrix_ring, Algebra};
use crate::gset::{objects_gset, regular_gset};
use crate::structure::{cyclic_group, subgroupoid};

fn q() -> ScalarField {
    ScalarField::Rationals
}

fn m2() -> Arc<GradedRing> {
    Arc::new(matrix_ring(q(), 2).unwrap())
}

fn dual_c2() -> Arc<GradedRing> {
    let g = Arc::new(cyclic_group(2).unwrap());
    Arc::new(algebra_groupoid_ring(&Algebra::dual_numbers(q()), g, &[true, true]).unwrap())
}

fn regular_module(r: &Arc<GradedRing>, x: &Arc<GSet>) -> Arc<Bimodule> {
    let parts: Vec<Arc<Bimodule>> = (0..x.size()).map(|p| Arc::new(shift_right(r, x, p, None).unwrap())).collect();
    direct_sum(&parts, &parts[0]).unwrap().module
}

#[test]
fn identity_triple_is_an_equivalence() {
    let r = dual_c2();
    let x = Arc::new(objects_gset(r.groupoid().clone(), Side::Right));
    let t = AdmissibleTriple::identity(&r, &x).unwrap();
    assert!(equiv_rest(&t).unwrap().verdict);
    let m = regular_module(&r, &x);
    assert!(find_isomorphism(&ind(&t, &m).unwrap().module, &m, 1).unwrap().is_some());
    let res_m = res(&t, &m).unwrap();
    assert_eq!(res_m.module.dims(), m.dims());
}

#[test]
fn bad_triples_name_the_axiom() {
    let r = m2();
    let x = Arc::new(regular_gset(r.groupoid().clone(), Side::Right));
    let id: Vec<Matrix> = (0..4).map(|g| Matrix::identity(q(), r.dim(g))).collect();
    // swapping two points breaks equivariance
    let err = validate_triple(r.clone(), r.clone(), x.clone(), x.clone(), id.clone(), (0..4).collect(), vec![1, 0, 2, 3])
        .unwrap_err();
    let v = err.violation().unwrap();
    assert!(v.axiom == "components" || v.axiom == "equivariance");
    // ρ = 2·id is not multiplicative
    let two: Vec<Matrix> = id.iter().map(|m| m.scale(&q().from_i64(2))).collect();
    let err = validate_triple(r.clone(), r.clone(), x.clone(), x.clone(), two, (0..4).collect(), (0..4).collect()).unwrap_err();
    assert_eq!(err.violation().unwrap().axiom, "multiplicative");
}

#[test]
fn restricting_matrices_to_the_diagonal() {
    let s = m2();
    let h0 = s.groupoid().objects_subgroupoid();
    let t = restriction_triple(&s, &h0).unwrap();
    assert!(equiv_rest(&t).unwrap().verdict);
    let c = cor_checks(&s, &h0).unwrap();
    assert!(c.agree, "{c:?}");
    assert!(c.equiv_objects && c.strongly_graded);
}

#[test]
fn concentrated_ring_fails_the_generator_condition() {
    let g = Arc::new(cyclic_group(2).unwrap());
    let s = Arc::new(concentrated_ring(q(), g.clone()));
    let h0 = g.objects_subgroupoid();
    let t = restriction_triple(&s, &h0).unwrap();
    let v = equiv_rest(&t).unwrap();
    assert!(!v.verdict);
    assert!(matches!(v.failure, Some(EquivFailure::Generator { y: 1, .. })));
    let c = cor_checks(&s, &h0).unwrap();
    assert!(c.agree, "{c:?}");
    assert!(!c.strongly_graded && c.strong_source.is_some());
}

#[test]
fn res_and_ind_are_adjoint() {
    let s = m2();
    let h0 = s.groupoid().objects_subgroupoid();
    let t = restriction_triple(&s, &h0).unwrap();
    let y = t.y_set.clone();
    let n = regular_module(&s, &y);
    for x in 0..t.x_set.size() {
        let m = Arc::new(shift_right(&t.source, &t.x_set, x, None).unwrap());
        let adj = res_ind_adjunction(&t, &m, &n).unwrap();
        assert_eq!(adj.ind_space.dim(), adj.res_space.dim());
        exten_shift(&t, x).unwrap();
        assert!(ind_is_tensor(&t, &m, 3).unwrap());
    }
    let m = regular_module(&t.source, &t.x_set);
    assert_eq!(round_trips(&t, &m, &n, 5).unwrap(), (true, true));
}

#[test]
fn classical_triples_validate() {
    let s = dual_c2();
    let g = s.groupoid().clone();
    let x = Arc::new(regular_gset(g.clone(), Side::Right));
    forgetful_triple(&s, &x).unwrap();
    let whole = subgroupoid(&g, &[0, 1]).unwrap();
    let t = coset_triple(&s, &whole).unwrap();
    assert_eq!(t.y_set.size(), 1);
    let t = quotient_triple(&s, &x, &[0, 0]).unwrap();
    assert_eq!(t.y_set.size(), 1);
    let h0 = g.objects_subgroupoid();
    let t = restriction_triple_hg(&s, &h0).unwrap();
    assert_eq!(t.x_set.size(), 2);
    // S_g ≠ 0 with g outside the identity subgroupoid
    assert!(!equiv_rest(&t).unwrap().verdict);
    let c = cor_checks(&s, &h0).unwrap();
    assert!(c.agree, "{c:?}");
    assert_eq!(c.outside_g, Some(1));
}
