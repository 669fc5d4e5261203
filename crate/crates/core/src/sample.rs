//! Seeded random instances for property suites: small groupoids, graded
//! rings, G-sets, modules, bimodules and triples.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::change::{restriction_triple, AdmissibleTriple};
use crate::error::Result;
use crate::exactla::{Echelon, Scalar, ScalarField, Subspace};
use crate::gmod::{direct_sum, hom_space, quotient_module, r_hat, shift_right, Bimodule, GradedHom};
use crate::gring::{validate_graded_ring, Algebra, GradedRing};
use crate::gset::{objects_gset, point_gset, regular_gset, GSet, Side};
use crate::structure::{cyclic_group, disjoint_union, pair_groupoid, subgroupoid, Groupoid};

pub struct Sampler {
    rng: ChaCha8Rng,
    pub field: ScalarField,
}

impl Sampler {
    pub fn new(seed: u64, field: ScalarField) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            field,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn scalar(&mut self) -> Scalar {
        self.field.from_i64(self.rng.gen_range(-2..=2))
    }

    pub fn vector(&mut self, n: usize) -> Vec<Scalar> {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// A groupoid with at most four objects: a cyclic group, a pair
    /// groupoid, or a disjoint union of two of those.
    pub fn groupoid(&mut self) -> Arc<Groupoid> {
        let part = |rng: &mut ChaCha8Rng, max_objects: usize| -> Groupoid {
            if max_objects >= 2 && rng.gen_bool(0.5) {
                pair_groupoid(rng.gen_range(2..=max_objects.min(3))).expect("small pair groupoid")
            } else {
                cyclic_group(rng.gen_range(1..=3)).expect("small cyclic group")
            }
        };
        let g = match self.rng.gen_range(0..3) {
            0 | 1 => part(&mut self.rng, 4),
            _ => {
                let a = part(&mut self.rng, 2);
                let b = part(&mut self.rng, 2);
                disjoint_union(&[a, b]).expect("disjoint union")
            }
        };
        Arc::new(g)
    }

    pub fn algebra(&mut self) -> Algebra {
        match self.rng.gen_range(0..4) {
            0 => Algebra::field(self.field),
            1 => Algebra::split(self.field),
            _ => Algebra::dual_numbers(self.field),
        }
    }

    /// `R_g ⊆ A` for `g` in a random support, with full `A` at objects and
    /// random subspaces elsewhere, enlarged until closed under products.
    pub fn ring_over(&mut self, groupoid: Arc<Groupoid>) -> Arc<GradedRing> {
        let a = self.algebra();
        let g = groupoid.clone();
        let n = g.size();
        let mut parts: Vec<Subspace> = vec![Subspace::zero(self.field, a.dim); n];
        for k in 0..n {
            if self.rng.gen_bool(0.75) {
                parts[k] = self.random_part(&a);
            }
        }
        for k in 0..n {
            if !parts[k].is_zero() {
                for e in [g.d(k), g.t(k)] {
                    parts[e] = Subspace::full(self.field, a.dim);
                }
            }
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                for y in 0..n {
                    let Some(xy) = g.mul(x, y) else { continue };
                    if parts[x].is_zero() || parts[y].is_zero() {
                        continue;
                    }
                    let mut e = Echelon::new(self.field, a.dim);
                    for v in parts[xy].basis_vectors() {
                        e.insert(v.clone());
                    }
                    for u in parts[x].basis_vectors() {
                        for v in parts[y].basis_vectors() {
                            if e.insert(algebra_mul(&a, u, v)) {
                                changed = true;
                            }
                        }
                    }
                    parts[xy] = e.into_subspace();
                }
            }
            if !changed {
                break;
            }
        }
        Arc::new(sub_algebra_ring(&a, groupoid, &parts).expect("closed homogeneous subspaces give a graded ring"))
    }

    fn random_part(&mut self, a: &Algebra) -> Subspace {
        if a.dim == 1 || self.rng.gen_bool(0.5) {
            return Subspace::full(self.field, a.dim);
        }
        let v = loop {
            let v = self.vector(a.dim);
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        };
        Subspace::from_vectors(self.field, a.dim, vec![v])
    }

    pub fn ring(&mut self) -> Arc<GradedRing> {
        let g = self.groupoid();
        self.ring_over(g)
    }

    /// The regular, objects or one-point right G-set.
    pub fn gset(&mut self, groupoid: &Arc<Groupoid>) -> Arc<GSet> {
        let g = groupoid.clone();
        Arc::new(match self.rng.gen_range(0..3) {
            0 => regular_gset(g, Side::Right),
            1 => objects_gset(g, Side::Right),
            _ => point_gset(g, Side::Right),
        })
    }

    /// A quotient of one or two shifts by the submodule generated by a
    /// random homogeneous element.
    pub fn module(&mut self, ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<Arc<Bimodule>> {
        let k = self.rng.gen_range(1..=2);
        let parts = (0..k)
            .map(|_| {
                let x = self.rng.gen_range(0..gset.size());
                Ok(Arc::new(shift_right(ring, gset, x, None)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let sum = direct_sum(&parts, &parts[0])?.module;
        self.cut(&sum)
    }

    /// A quotient of `R̂` by the sub-bimodule generated by a random element,
    /// or `R̂` itself.
    pub fn bimodule(&mut self, ring: &Arc<GradedRing>, gset: &Arc<GSet>) -> Result<Arc<Bimodule>> {
        let rh = Arc::new(r_hat(ring, gset)?);
        if self.rng.gen_bool(0.3) {
            return Ok(rh);
        }
        self.cut(&rh)
    }

    /// `m` modulo the submodule generated by one random element, or `m`
    /// itself with probability one half.
    pub fn cut(&mut self, m: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        let nonzero: Vec<usize> = (0..m.dims().len()).filter(|&c| m.dim(c) > 0).collect();
        if nonzero.is_empty() || self.rng.gen_bool(0.5) {
            return Ok(m.clone());
        }
        let c = *nonzero.choose(&mut self.rng).expect("nonempty");
        let v = self.vector(m.dim(c));
        let rels = generated(m, &[(c, v)]);
        Ok(quotient_module(m, &rels)?.0)
    }

    /// A random element of `Hom(m, n)`.
    pub fn hom(&mut self, m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<GradedHom> {
        let space = hom_space(m, n)?;
        let coords = self.vector(space.dim());
        Ok(space.hom(&coords))
    }

    /// The identity triple, or the restriction to the identities or to the
    /// whole groupoid, on a random ring.
    pub fn triple(&mut self) -> Result<AdmissibleTriple> {
        let s = self.ring();
        let h = s.groupoid().clone();
        match self.rng.gen_range(0..3) {
            0 => {
                let y = self.gset(&h);
                AdmissibleTriple::identity(&s, &y)
            }
            1 => restriction_triple(&s, &h.objects_subgroupoid()),
            _ => {
                let all: Vec<usize> = (0..h.size()).collect();
                restriction_triple(&s, &subgroupoid(&h, &all)?)
            }
        }
    }
}

fn algebra_mul(a: &Algebra, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![a.field.zero(); a.dim];
    for (i, x) in u.iter().enumerate() {
        for (j, y) in v.iter().enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let c = x * y;
            for (k, z) in a.table[i * a.dim + j].iter().enumerate() {
                out[k].add_mul(&c, z);
            }
        }
    }
    out
}

/// `R_g = parts[g] ⊆ A` with the product of `A`; `parts` must be closed
/// under products along the groupoid.
pub fn sub_algebra_ring(a: &Algebra, groupoid: Arc<Groupoid>, parts: &[Subspace]) -> Result<GradedRing> {
    let g = groupoid.clone();
    let dims: Vec<usize> = parts.iter().map(Subspace::dim).collect();
    let mut mult = BTreeMap::new();
    for x in 0..g.size() {
        for y in 0..g.size() {
            let Some(xy) = g.mul(x, y) else { continue };
            if dims[x] == 0 || dims[y] == 0 {
                continue;
            }
            let mut table = Vec::with_capacity(dims[x] * dims[y]);
            for u in parts[x].basis_vectors() {
                for v in parts[y].basis_vectors() {
                    let w = algebra_mul(a, u, v);
                    table.push(parts[xy].coordinates(&w).ok_or_else(|| {
                        crate::Error::invalid(format!("R_{}·R_{} leaves R_{}", g.label(x), g.label(y), g.label(xy)))
                    })?);
                }
            }
            mult.insert((x, y), table);
        }
    }
    validate_graded_ring(groupoid, a.field, dims, mult)
}

/// Components of the sub-bimodule generated by the given `(component,
/// vector)` pairs.
pub fn generated(m: &Bimodule, gens: &[(usize, Vec<Scalar>)]) -> Vec<Subspace> {
    let field = m.field();
    let mut spans: Vec<Echelon> = m.dims().iter().map(|&d| Echelon::new(field, d)).collect();
    let mut queue: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (c, v) in gens {
        if spans[*c].insert(v.clone()) {
            queue.push((*c, v.clone()));
        }
    }
    while let Some((c, v)) = queue.pop() {
        let mut images = Vec::new();
        for (&(h, src), blocks) in m.left_actions() {
            if src == c {
                let t = m.left_target(h, c).expect("defined");
                images.extend(blocks.iter().map(|b| (t, b.apply(&v))));
            }
        }
        for (&(src, h), blocks) in m.right_actions() {
            if src == c {
                let t = m.right_target(c, h).expect("defined");
                images.extend(blocks.iter().map(|b| (t, b.apply(&v))));
            }
        }
        for (t, w) in images {
            if spans[t].insert(w.clone()) {
                queue.push((t, w));
            }
        }
    }
    spans.into_iter().map(Echelon::into_subspace).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_rings_are_valid_and_reproducible() {
        for seed in 0..10 {
            let a = Sampler::new(seed, ScalarField::Rationals).ring();
            let b = Sampler::new(seed, ScalarField::Rationals).ring();
            assert_eq!(a.dims(), b.dims());
            assert!(a.groupoid().objects().len() <= 4);
        }
    }

    #[test]
    fn sampled_modules_are_valid() {
        let mut s = Sampler::new(7, ScalarField::prime(3).unwrap());
        for _ in 0..10 {
            let r = s.ring();
            let x = s.gset(r.groupoid());
            s.module(&r, &x).unwrap();
            s.bimodule(&r, &x).unwrap();
            s.triple().unwrap();
        }
    }
}
