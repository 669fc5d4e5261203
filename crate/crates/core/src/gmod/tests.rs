use std::collections::BTreeMap;
use std::sync::Arc;

use super::*;
use crate::exactla::{unit_vector, Matrix, ScalarField};
use crate::gring::{base_ring, matrix_ring, GradedRing};
use crate::gset::{objects_gset, point_gset, regular_gset, GSet, Side};
use crate::structure::pair_index;

fn q() -> ScalarField {
    ScalarField::Rationals
}

fn m2() -> (Arc<GradedRing>, Arc<GSet>) {
    let r = Arc::new(matrix_ring(q(), 2).unwrap());
    let i = Arc::new(objects_gset(r.groupoid().clone(), Side::Right));
    (r, i)
}

/// `K^(I)` over `FM_2(K)`: row vectors with `e_i · E_ij = e_j`.
fn row_vectors(r: &Arc<GradedRing>, i: &Arc<GSet>) -> Bimodule {
    let mut act = BTreeMap::new();
    for a in 0..2 {
        for b in 0..2 {
            act.insert((a, pair_index(2, a + 1, b + 1)), vec![Matrix::from_i64(q(), &[vec![1]])]);
        }
    }
    right_module(r.clone(), i.clone(), vec![1, 1], act).unwrap()
}

#[test]
fn ring_over_right_regular_set() {
    let (r, _) = m2();
    let x = Arc::new(regular_gset(r.groupoid().clone(), Side::Right));
    // M_x = R_x
    let comps: Vec<_> = (0..4)
        .map(|a| crate::exactla::Subspace::from_vectors(q(), 4, vec![r.basis_element(a, 0)]))
        .collect();
    let rr = r.clone();
    let m = realize(
        Grading::trivial(q()),
        Grading::new(r.clone(), x).unwrap(),
        &comps,
        &|_, _, _, v| v.to_vec(),
        &|_, v, h, j| rr.mul(v, &rr.basis_element(h, j)),
    )
    .unwrap();
    assert_eq!(m.dims(), &[1, 1, 1, 1]);
}

#[test]
fn row_vector_module_and_rejections() {
    let (r, i) = m2();
    let m = row_vectors(&r, &i);
    assert_eq!(m.total_dim(), 2);
    // action given where 1·(2,1) is undefined
    let mut act = BTreeMap::new();
    act.insert((0, pair_index(2, 2, 1)), vec![Matrix::from_i64(q(), &[vec![1]])]);
    let err = right_module(r.clone(), i.clone(), vec![1, 1], act).unwrap_err();
    assert_eq!(err.violation().unwrap().axiom, "grading");
    // no action at all: not unital
    let err = right_module(r.clone(), i.clone(), vec![1, 1], BTreeMap::new()).unwrap_err();
    assert_eq!(err.violation().unwrap().axiom, "unital");
    assert!(err.to_string().starts_with("not unital"));
    // E_12 acting by 2: breaks associativity
    let mut act = BTreeMap::new();
    for a in 0..2 {
        for b in 0..2 {
            let v = if (a, b) == (0, 1) { 2 } else { 1 };
            act.insert((a, pair_index(2, a + 1, b + 1)), vec![Matrix::from_i64(q(), &[vec![v]])]);
        }
    }
    let err = right_module(r, i, vec![1, 1], act).unwrap_err();
    assert_eq!(err.violation().unwrap().axiom, "associativity");
}

#[test]
fn shifts() {
    let (r, i) = m2();
    let s = shift_right(&r, &i, 0, None).unwrap();
    assert_eq!(s.dims(), &[1, 1]);
    let p = Arc::new(point_gset(r.groupoid().clone(), Side::Right));
    let whole = shift_right(&r, &p, 0, None).unwrap();
    assert_eq!(whole.dims(), &[4]);
    let l = shift_left(&r, &i, 0, None).unwrap();
    assert_eq!(l.dims(), &[1, 1]);
    // (x)R_y and ₓR(y) are spanned by the same degrees
    let x = regular_gset(r.groupoid().clone(), Side::Right);
    for a in 0..4 {
        for b in 0..4 {
            let right: Vec<usize> = (0..4).filter(|&g| x.right(a, g) == Some(b)).collect();
            let left: Vec<usize> = (0..4).filter(|&g| x.left(g, b) == Some(a)).collect();
            assert_eq!(right, left);
        }
    }
}

#[test]
fn r_hat_dimensions() {
    let (r, _) = m2();
    let p = Arc::new(point_gset(r.groupoid().clone(), Side::Right));
    assert_eq!(r_hat(&r, &p).unwrap().total_dim(), 4);
    let x = Arc::new(regular_gset(r.groupoid().clone(), Side::Right));
    assert_eq!(r_hat(&r, &x).unwrap().total_dim(), 8);
    let k = Arc::new(base_ring(q()));
    let pt = Arc::new(point_gset(k.groupoid().clone(), Side::Right));
    assert_eq!(r_hat(&k, &pt).unwrap().dims(), &[1]);
}

#[test]
fn hom_spaces() {
    let (r, i) = m2();
    let m = Arc::new(row_vectors(&r, &i));
    assert_eq!(hom_space(&m, &m).unwrap().dim(), 1);
    let z = Arc::new(zero_module(&m).unwrap());
    assert_eq!(hom_space(&m, &z).unwrap().dim(), 0);
    for x in 0..2 {
        let s = Arc::new(shift_right(&r, &i, x, None).unwrap().with_gradings(m.left().clone(), m.right().clone()).unwrap());
        assert_eq!(hom_space(&s, &m).unwrap().dim(), m.dim(x));
    }
}

#[test]
fn lambda_maps() {
    let (r, i) = m2();
    let m = Arc::new(row_vectors(&r, &i));
    let zero = lambda_m(&m, 0, &[q().zero()], None).unwrap();
    assert!(zero.is_zero());
    // M = (x)R, m = u^x: λ is the identity of (x)R
    let s = Arc::new(shift_right(&r, &i, 0, None).unwrap());
    let units = r.local_units();
    let ux = units.u_pow_x(&units.top(), &i, 0);
    let coords = shift_basis(&r, &i, 0, 0, None)
        .into_iter()
        .map(|(g, k)| r.component(&ux, g)[k].clone())
        .collect::<Vec<_>>();
    let lam = lambda_m(&s, 0, &coords, None).unwrap();
    assert!(lam.blocks.iter().all(Matrix::is_identity));
    // λ_s : (x)R → (g·x)R
    let g = pair_index(2, 1, 2);
    let x = 1; // x ∈ X_{d(g)}
    let f = left_multiplication(&r, &i, g, &[q().one()], x).unwrap();
    assert_eq!(f.target.dims(), s.dims());
}

#[test]
fn kernels_cokernels_sums() {
    let (r, i) = m2();
    let m = Arc::new(row_vectors(&r, &i));
    let id = GradedHom::identity(m.clone());
    assert_eq!(kernel(&id).unwrap().0.total_dim(), 0);
    assert_eq!(cokernel(&id).unwrap().0.total_dim(), 0);
    assert_eq!(image(&id).unwrap().0.total_dim(), 2);
    let s = direct_sum(&[m.clone(), m.clone()], &m).unwrap();
    assert_eq!(s.module.dims(), &[2, 2]);
    let comp = s.projections[0].compose(&s.injections[0]).unwrap();
    assert!(comp.blocks.iter().all(Matrix::is_identity));
}

#[test]
fn presentations_and_lifts() {
    let (r, i) = m2();
    let m = Arc::new(row_vectors(&r, &i));
    let p = generator_epi(&m).unwrap();
    assert_eq!(p.generators.len(), 1);
    assert!(p.epi.is_surjective());
    let z = Arc::new(zero_module(&m).unwrap());
    assert!(generator_epi(&z).unwrap().generators.is_empty());
    assert!(is_projective(&m).unwrap());
    // lift the identity-like map u(x)R → M through the presentation
    let g = &p.generators[0];
    let target_map = lambda_m(&m, g.x, &g.vector, Some(&g.unit)).unwrap();
    let lift = projectivity_witness(&g.unit, g.x, &p.epi, &target_map).unwrap();
    assert!(p.epi.compose(&lift).unwrap().same_blocks(&target_map));
}

#[test]
fn unit_observation() {
    let (r, i) = m2();
    let m = row_vectors(&r, &i);
    let units = r.local_units();
    for u in units.all() {
        for x in 0..2 {
            let ux = units.u_pow_x(&u, &i, x);
            let uu = units.element(&u);
            for k in 0..m.dim(x) {
                let v = unit_vector(q(), m.dim(x), k);
                assert_eq!(m.right_operator(x, &ux).apply(&v), m.right_operator(x, &uu).apply(&v));
            }
        }
    }
}
