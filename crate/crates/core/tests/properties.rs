use std::sync::Arc;

use ggr_core::change::{generator_failure, res_ind_adjunction};
use ggr_core::exactla::{Matrix, ScalarField};
use ggr_core::functors::{adjunction_maps, hotimes, r_hat_tensor_map};
use ggr_core::gmod::r_hat;
use ggr_core::sample::Sampler;
use ggr_core::structure::semigroup_completion;
use proptest::prelude::*;

fn field(p: bool) -> ScalarField {
    if p {
        ScalarField::Prime(3)
    } else {
        ScalarField::Rationals
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..5, seed: u64, p: bool) {
        let f = field(p);
        let mut s = Sampler::new(seed, f);
        let m = Matrix::from_rows(f, cols, (0..rows).map(|_| s.vector(cols)).collect()).unwrap();
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in m.kernel().basis_vectors() {
            prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn groupoid_laws(seed: u64) {
        let g = Sampler::new(seed, ScalarField::Rationals).groupoid();
        for a in 0..g.size() {
            let (d, t, i) = (g.d(a), g.t(a), g.inv(a));
            prop_assert_eq!(g.mul(a, d), Some(a));
            prop_assert_eq!(g.mul(t, a), Some(a));
            prop_assert_eq!(g.mul(a, i), Some(t));
            prop_assert_eq!(g.mul(i, a), Some(d));
            for b in 0..g.size() {
                prop_assert_eq!(g.mul(a, b).is_some(), d == g.t(b));
            }
        }
        let c = semigroup_completion(&g);
        prop_assert!(c.associativity_failure().is_none());
        prop_assert!(c.is_inverse());
        prop_assert!(c.non_orthogonal_idempotents().is_none());
    }

    #[test]
    fn gset_laws(seed: u64) {
        let mut s = Sampler::new(seed, ScalarField::Rationals);
        let g = s.groupoid();
        let x = s.gset(&g);
        for p in 0..x.size() {
            for a in 0..g.size() {
                prop_assert_eq!(x.right(p, a).is_some(), x.in_component(p, g.t(a)));
                let Some(q) = x.right(p, a) else { continue };
                prop_assert!(x.in_component(q, g.d(a)));
                for b in 0..g.size() {
                    if let Some(ab) = g.mul(a, b) {
                        prop_assert_eq!(x.right(q, b), x.right(p, ab));
                    }
                }
            }
        }
    }

    #[test]
    fn ring_is_associative(seed: u64, p: bool) {
        let mut s = Sampler::new(seed, field(p));
        let r = s.ring();
        let n = r.total_dim();
        let (a, b, c) = (s.vector(n), s.vector(n), s.vector(n));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        let one = r.local_units().element(&r.local_units().top());
        prop_assert_eq!(r.mul(&one, &a), a.clone());
        prop_assert_eq!(r.mul(&a, &one), a);
    }

    #[test]
    fn r_hat_is_a_left_unit(seed: u64, p: bool) {
        let mut s = Sampler::new(seed, field(p));
        let r = s.ring();
        let x = s.gset(r.groupoid());
        let rh = Arc::new(r_hat(&r, &x).unwrap());
        let n = s.bimodule(&r, &x).unwrap();
        let t = hotimes(&rh, &n).unwrap();
        prop_assert_eq!(t.module.dims(), n.dims());
        prop_assert!(r_hat_tensor_map(&r, &x, &t, &n).unwrap().is_isomorphism());
    }

    #[test]
    fn tensor_hom_dims_match(seed: u64, p: bool) {
        let mut s = Sampler::new(seed, field(p));
        let r = s.ring();
        let x = s.gset(r.groupoid());
        let m = s.module(&r, &x).unwrap();
        let q = s.bimodule(&r, &x).unwrap();
        let n = s.module(&r, &x).unwrap();
        let adj = adjunction_maps(&m, &q, &n).unwrap();
        prop_assert_eq!(adj.left_space.dim(), adj.right_space.dim());
    }

    #[test]
    fn res_ind_dims_match(seed: u64, p: bool) {
        let mut s = Sampler::new(seed, field(p));
        let t = s.triple().unwrap();
        let m = s.module(&t.source, &t.x_set).unwrap();
        let n = s.module(&t.target, &t.y_set).unwrap();
        let adj = res_ind_adjunction(&t, &m, &n).unwrap();
        prop_assert_eq!(adj.ind_space.dim(), adj.res_space.dim());
    }

    #[test]
    fn generator_condition_needs_only_the_top_unit(seed: u64) {
        let t = Sampler::new(seed, ScalarField::Rationals).triple().unwrap();
        let units = t.target.local_units();
        let all = generator_failure(&t, &units.all());
        let top = generator_failure(&t, &[units.top()]);
        prop_assert_eq!(all.is_some(), top.is_some());
    }
}
