//! Groupoid-graded rings given by structure constants.

mod build;
pub mod semigroup;

pub use build::{
    algebra_groupoid_ring, base_ring, concentrated_ring, groupoid_ring, matrix_ring, ring_from_i64, Algebra,
};

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{axpy, is_zero_vector, Matrix, Scalar, ScalarField, Subspace};
use crate::gset::GSet;
use crate::structure::{trivial_groupoid, Groupoid, Subgroupoid};

/// Structure constants for one degree pair: entry `i * dim_h + j` holds the
/// coordinates of `b_i · b_j` in `R_{gh}`.
pub type Table = Vec<Vec<Scalar>>;

/// A ring `R = ⊕_g R_g` graded by a finite groupoid, with `R_g R_h ⊆ R_{gh}`
/// and `R_g R_h = 0` when `gh` is undefined.
///
/// Elements are coordinate vectors in the concatenation of the components,
/// ordered by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    groupoid: Arc<Groupoid>,
    field: ScalarField,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
    mult: BTreeMap<(usize, usize), Table>,
    identities: Vec<Vec<Scalar>>,
}

/// Validates structure constants. Missing tables on defined pairs mean zero
/// products; tables on undefined pairs are rejected.
pub fn validate_graded_ring(
    groupoid: Arc<Groupoid>,
    field: ScalarField,
    dims: Vec<usize>,
    mult: BTreeMap<(usize, usize), Table>,
) -> Result<GradedRing> {
    let ring = GradedRing::unchecked(groupoid, field, dims, mult)?;
    ring.check_associative()?;
    ring.with_identities()
}

impl GradedRing {
    fn unchecked(
        groupoid: Arc<Groupoid>,
        field: ScalarField,
        dims: Vec<usize>,
        mut mult: BTreeMap<(usize, usize), Table>,
    ) -> Result<GradedRing> {
        let g = &*groupoid;
        if dims.len() != g.size() {
            return Err(Error::dimension(format!("{} component dimensions for {} degrees", dims.len(), g.size())));
        }
        for (&(a, b), table) in &mult {
            if a >= g.size() || b >= g.size() {
                return Err(Error::invalid(format!("degree pair ({a},{b}) out of range")));
            }
            let Some(c) = g.mul(a, b) else {
                return Err(Error::axiom(
                    "grading",
                    format!("product table given for {}·{}, which is undefined", g.label(a), g.label(b)),
                    vec![a, b],
                ));
            };
            if table.len() != dims[a] * dims[b] {
                return Err(Error::dimension(format!(
                    "table for ({},{}) has {} entries, expected {}",
                    g.label(a),
                    g.label(b),
                    table.len(),
                    dims[a] * dims[b]
                )));
            }
            for v in table {
                if v.len() != dims[c] {
                    return Err(Error::axiom(
                        "grading",
                        format!(
                            "products of {} and {} must land in the {}-dimensional component {}",
                            g.label(a),
                            g.label(b),
                            dims[c],
                            g.label(c)
                        ),
                        vec![a, b],
                    ));
                }
                if v.iter().any(|s| s.field() != field) {
                    return Err(Error::invalid("structure constant from another field"));
                }
            }
        }
        for a in 0..g.size() {
            for b in 0..g.size() {
                if let Some(c) = g.mul(a, b) {
                    mult.entry((a, b)).or_insert_with(|| vec![vec![field.zero(); dims[c]]; dims[a] * dims[b]]);
                }
            }
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for &d in &dims {
            offsets.push(total);
            total += d;
        }
        Ok(GradedRing {
            groupoid,
            field,
            dims,
            offsets,
            total,
            mult,
            identities: Vec::new(),
        })
    }

    fn check_associative(&self) -> Result<()> {
        let g = &*self.groupoid;
        for a in 0..g.size() {
            for b in 0..g.size() {
                let Some(ab) = g.mul(a, b) else { continue };
                for c in 0..g.size() {
                    let Some(bc) = g.mul(b, c) else { continue };
                    for i in 0..self.dims[a] {
                        for j in 0..self.dims[b] {
                            let x = &self.mult[&(a, b)][i * self.dims[b] + j];
                            for k in 0..self.dims[c] {
                                let left = self.mul_coords(ab, x, c, &self.basis_coords(c, k));
                                let y = &self.mult[&(b, c)][j * self.dims[c] + k];
                                let right = self.mul_coords(a, &self.basis_coords(a, i), bc, y);
                                if left != right {
                                    return Err(Error::axiom(
                                        "associativity",
                                        format!(
                                            "associativity fails at ({i},{j},{k}) in degrees ({},{},{})",
                                            g.label(a),
                                            g.label(b),
                                            g.label(c)
                                        ),
                                        vec![i, j, k, a, b, c],
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves for the identity of each `R_e` acting on every component it touches.
    fn with_identities(mut self) -> Result<GradedRing> {
        let g = self.groupoid.clone();
        let mut ids = Vec::with_capacity(g.objects().len());
        for &e in g.objects() {
            let de = self.dims[e];
            let mut rows: Vec<Vec<Scalar>> = Vec::new();
            let mut rhs: Vec<Scalar> = Vec::new();
            for a in 0..g.size() {
                let da = self.dims[a];
                if g.t(a) == e {
                    // u · b_j = b_j
                    let table = &self.mult[&(e, a)];
                    for j in 0..da {
                        for k in 0..da {
                            rows.push((0..de).map(|i| table[i * da + j][k].clone()).collect());
                            rhs.push(if j == k { self.field.one() } else { self.field.zero() });
                        }
                    }
                }
                if g.d(a) == e {
                    // b_j · u = b_j
                    let table = &self.mult[&(a, e)];
                    for j in 0..da {
                        for k in 0..da {
                            rows.push((0..de).map(|i| table[j * de + i][k].clone()).collect());
                            rhs.push(if j == k { self.field.one() } else { self.field.zero() });
                        }
                    }
                }
            }
            let m = Matrix::from_rows(self.field, de, rows)?;
            let b = Matrix::from_rows(self.field, 1, rhs.into_iter().map(|s| vec![s]).collect())?;
            match m.solve(&b)? {
                Some(x) => ids.push(x.column(0)),
                None => {
                    return Err(Error::axiom(
                        "local units",
                        format!("no graded local units: component {} has no local identity", g.label(e)),
                        vec![e],
                    ))
                }
            }
        }
        self.identities = ids;
        Ok(self)
    }

    pub fn groupoid(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, g: usize) -> usize {
        self.dims[g]
    }

    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn offset(&self, g: usize) -> usize {
        self.offsets[g]
    }

    /// Structure constants for `(g, h)`; `None` when `gh` is undefined.
    pub fn table(&self, g: usize, h: usize) -> Option<&Table> {
        self.mult.get(&(g, h))
    }

    /// Tables with at least one nonzero constant.
    pub fn nonzero_tables(&self) -> impl Iterator<Item = (&(usize, usize), &Table)> {
        self.mult.iter().filter(|(_, t)| t.iter().any(|v| !is_zero_vector(v)))
    }

    /// Coordinates of the `i`-th basis vector of `R_g` inside `R_g`.
    pub fn basis_coords(&self, g: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dims[g]];
        v[i] = self.field.one();
        v
    }

    /// Coordinates of `a · b` in `R_{gh}`; empty when `gh` is undefined.
    pub fn mul_coords(&self, g: usize, a: &[Scalar], h: usize, b: &[Scalar]) -> Vec<Scalar> {
        match self.mul_homogeneous(g, a, h, b) {
            Some((_, v)) => v,
            None => Vec::new(),
        }
    }

    /// `a · b` together with its degree `gh`, or `None` if `gh` is undefined.
    pub fn mul_homogeneous(&self, g: usize, a: &[Scalar], h: usize, b: &[Scalar]) -> Option<(usize, Vec<Scalar>)> {
        let gh = self.groupoid.mul(g, h)?;
        let table = &self.mult[&(g, h)];
        let dh = self.dims[h];
        let mut out = vec![self.field.zero(); self.dims[gh]];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                axpy(&mut out, &c, &table[i * dh + j]);
            }
        }
        Some((gh, out))
    }

    /// Matrix of `b ↦ a·b` from `R_h` to `R_{gh}` for `a ∈ R_g`.
    pub fn left_mult_matrix(&self, g: usize, a: &[Scalar], h: usize) -> Option<Matrix> {
        let gh = self.groupoid.mul(g, h)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dims[h]).map(|j| self.mul_coords(g, a, h, &self.basis_coords(h, j))).collect();
        Some(Matrix::from_columns(self.field, self.dims[gh], &cols))
    }

    /// Matrix of `b ↦ b·a` from `R_g` to `R_{gh}` for `a ∈ R_h`.
    pub fn right_mult_matrix(&self, g: usize, h: usize, a: &[Scalar]) -> Option<Matrix> {
        let gh = self.groupoid.mul(g, h)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dims[g]).map(|i| self.mul_coords(g, &self.basis_coords(g, i), h, a)).collect();
        Some(Matrix::from_columns(self.field, self.dims[gh], &cols))
    }

    /// Flat vector of the `i`-th basis element of `R_g`.
    pub fn basis_element(&self, g: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.total];
        v[self.offsets[g] + i] = self.field.one();
        v
    }

    /// Embeds coordinates of `R_g` into the flat space.
    pub fn embed(&self, g: usize, a: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.total];
        v[self.offsets[g]..self.offsets[g] + self.dims[g]].clone_from_slice(a);
        v
    }

    /// The `R_g` part of a flat vector.
    pub fn component<'a>(&self, v: &'a [Scalar], g: usize) -> &'a [Scalar] {
        &v[self.offsets[g]..self.offsets[g] + self.dims[g]]
    }

    /// Degrees where a flat vector has nonzero parts.
    pub fn support(&self, v: &[Scalar]) -> Vec<usize> {
        (0..self.dims.len()).filter(|&g| !is_zero_vector(self.component(v, g))).collect()
    }

    /// Product of flat vectors.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.total];
        let sa = self.support(a);
        let sb = self.support(b);
        for &g in &sa {
            for &h in &sb {
                if let Some((gh, v)) = self.mul_homogeneous(g, self.component(a, g), h, self.component(b, h)) {
                    let off = self.offsets[gh];
                    for (k, x) in v.into_iter().enumerate() {
                        out[off + k] = &out[off + k] + &x;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn zero_element(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.total]
    }

    /// The identity of `R_e` (coordinates in `R_e`).
    pub fn local_identity(&self, e: usize) -> &[Scalar] {
        let p = self.groupoid.object_position(e).expect("local identities exist only at objects");
        &self.identities[p]
    }

    /// Span of all products `R_g R_h` inside `R_{gh}`; `None` if `gh` is undefined.
    pub fn product_span(&self, g: usize, h: usize) -> Option<Subspace> {
        let gh = self.groupoid.mul(g, h)?;
        Some(Subspace::from_vectors(self.field, self.dims[gh], self.mult[&(g, h)].iter().cloned()))
    }

    /// First `g` with `R_{g⁻¹} R_g ≠ R_{d(g)}`.
    pub fn strong_grading_failure(&self) -> Option<usize> {
        let g = &*self.groupoid;
        (0..g.size()).find(|&a| self.product_span(g.inv(a), a).map(|s| s.dim()) != Some(self.dims[g.d(a)]))
    }

    /// First `g` with `R_g R_{g⁻¹} ≠ R_{t(g)}`.
    pub fn strong_grading_failure_target(&self) -> Option<usize> {
        let g = &*self.groupoid;
        (0..g.size()).find(|&a| self.product_span(a, g.inv(a)).map(|s| s.dim()) != Some(self.dims[g.t(a)]))
    }

    /// `R_{g⁻¹} R_g = R_{d(g)}` for every `g`.
    pub fn is_strongly_graded(&self) -> bool {
        self.strong_grading_failure().is_none()
    }

    /// `R_g R_h = R_{gh}` whenever `gh` is defined.
    pub fn is_strongly_graded_all_pairs(&self) -> bool {
        self.mult.keys().all(|&(g, h)| {
            let gh = self.groupoid.mul(g, h).expect("tables only on defined pairs");
            self.product_span(g, h).map(|s| s.dim()) == Some(self.dims[gh])
        })
    }

    pub fn local_units(&self) -> UnitSet {
        let g = &*self.groupoid;
        let mut objects = Vec::new();
        let mut elements = Vec::new();
        for (p, &e) in g.objects().iter().enumerate() {
            if self.dims[e] > 0 {
                objects.push(e);
                elements.push(self.embed(e, &self.identities[p]));
            }
        }
        UnitSet {
            objects,
            elements,
            total: self.total,
            field: self.field,
        }
    }

    /// `R_H = ⊕_{h ∈ H} R_h` for a subgroupoid `H`.
    pub fn restrict(&self, sub: &Subgroupoid) -> Result<GradedRing> {
        let emb = &sub.embedding;
        let dims = emb.iter().map(|&g| self.dims[g]).collect();
        let mut mult = BTreeMap::new();
        for (i, &a) in emb.iter().enumerate() {
            for (j, &b) in emb.iter().enumerate() {
                if let Some(t) = self.mult.get(&(a, b)) {
                    mult.insert((i, j), t.clone());
                }
            }
        }
        validate_graded_ring(Arc::new(sub.groupoid.clone()), self.field, dims, mult)
    }

    /// The same ring graded by the trivial groupoid.
    pub fn forget_grading(&self) -> Result<GradedRing> {
        let n = self.total;
        let mut table = vec![vec![self.field.zero(); n]; n * n];
        for (&(g, h), t) in &self.mult {
            let gh = self.groupoid.mul(g, h).expect("tables only on defined pairs");
            for i in 0..self.dims[g] {
                for j in 0..self.dims[h] {
                    let row = &mut table[(self.offsets[g] + i) * n + self.offsets[h] + j];
                    for (k, x) in t[i * self.dims[h] + j].iter().enumerate() {
                        row[self.offsets[gh] + k] = x.clone();
                    }
                }
            }
        }
        let mut mult = BTreeMap::new();
        mult.insert((0, 0), table);
        validate_graded_ring(Arc::new(trivial_groupoid()), self.field, vec![n], mult)
    }

    /// Label of the `i`-th basis vector of `R_g`.
    pub fn basis_label(&self, g: usize, i: usize) -> String {
        if self.dims[g] == 1 {
            self.groupoid.label(g).to_string()
        } else {
            format!("{}[{i}]", self.groupoid.label(g))
        }
    }
}

/// A homogeneous decomposition of a ring element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    parts: BTreeMap<usize, Vec<Scalar>>,
}

impl GradedElement {
    pub fn from_flat(ring: &GradedRing, v: &[Scalar]) -> Self {
        let parts = ring.support(v).into_iter().map(|g| (g, ring.component(v, g).to_vec())).collect();
        GradedElement { parts }
    }

    pub fn homogeneous(g: usize, coords: Vec<Scalar>) -> Self {
        let mut parts = BTreeMap::new();
        if !is_zero_vector(&coords) {
            parts.insert(g, coords);
        }
        GradedElement { parts }
    }

    pub fn to_flat(&self, ring: &GradedRing) -> Vec<Scalar> {
        let mut v = ring.zero_element();
        for (&g, c) in &self.parts {
            let off = ring.offset(g);
            v[off..off + c.len()].clone_from_slice(c);
        }
        v
    }

    pub fn support(&self) -> Vec<usize> {
        self.parts.keys().copied().collect()
    }

    pub fn part(&self, g: usize) -> Option<&[Scalar]> {
        self.parts.get(&g).map(Vec::as_slice)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn mul(&self, other: &GradedElement, ring: &GradedRing) -> GradedElement {
        GradedElement::from_flat(ring, &ring.mul(&self.to_flat(ring), &other.to_flat(ring)))
    }
}

/// A unit `Σ_{e ∈ S} 1_e` named by its set of objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Unit {
    pub objects: BTreeSet<usize>,
}

impl Unit {
    /// `u ≤ v ⟺ uv = u = vu`, which for sums of orthogonal identities is inclusion.
    pub fn le(&self, other: &Unit) -> bool {
        self.objects.is_subset(&other.objects)
    }
}

/// The graded local units: finite sums of the identities `1_e` of the
/// nonzero components `R_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSet {
    objects: Vec<usize>,
    elements: Vec<Vec<Scalar>>,
    total: usize,
    field: ScalarField,
}

impl UnitSet {
    /// Objects `e` with `R_e ≠ 0`.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    /// Largest unit, the sum of all local identities.
    pub fn top(&self) -> Unit {
        Unit {
            objects: self.objects.iter().copied().collect(),
        }
    }

    pub fn single(&self, e: usize) -> Unit {
        Unit {
            objects: [e].into_iter().collect(),
        }
    }

    /// Every nonempty sum of local identities (at least the zero unit when
    /// there are none).
    pub fn all(&self) -> Vec<Unit> {
        let n = self.objects.len();
        assert!(n < 20, "too many objects to enumerate units");
        if n == 0 {
            return vec![Unit { objects: BTreeSet::new() }];
        }
        (1u32..(1 << n))
            .map(|mask| Unit {
                objects: (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.objects[i]).collect(),
            })
            .collect()
    }

    /// The flat ring element of a unit.
    pub fn element(&self, u: &Unit) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.total];
        for (e, x) in self.objects.iter().zip(&self.elements) {
            if u.objects.contains(e) {
                v = v.iter().zip(x).map(|(a, b)| a + b).collect();
            }
        }
        v
    }

    /// Flat vector of `1_e`, zero if `R_e = 0`.
    pub fn identity_element(&self, e: usize) -> Vec<Scalar> {
        match self.objects.iter().position(|&o| o == e) {
            Some(i) => self.elements[i].clone(),
            None => vec![self.field.zero(); self.total],
        }
    }

    /// Smallest unit fixing every element of `elements` on both sides.
    pub fn covering(&self, ring: &GradedRing, elements: &[Vec<Scalar>]) -> Unit {
        let g = ring.groupoid();
        let mut objects = BTreeSet::new();
        for v in elements {
            for a in ring.support(v) {
                for e in [g.d(a), g.t(a)] {
                    if self.objects.contains(&e) {
                        objects.insert(e);
                    }
                }
            }
        }
        Unit { objects }
    }

    /// `u^x = Σ_{e ∈ E_x} u_e`, as a flat ring element.
    pub fn u_pow_x(&self, u: &Unit, x_set: &GSet, x: usize) -> Vec<Scalar> {
        let restricted = Unit {
            objects: u.objects.iter().copied().filter(|&e| x_set.in_component(x, e)).collect(),
        };
        self.element(&restricted)
    }
}

/// Free-standing form of [`GradedRing::local_units`].
pub fn graded_local_units(ring: &GradedRing) -> UnitSet {
    ring.local_units()
}

/// `u^x` for a unit of `ring` and a point of a G-set.
pub fn u_pow_x(ring: &GradedRing, u: &Unit, x_set: &GSet, x: usize) -> Vec<Scalar> {
    ring.local_units().u_pow_x(u, x_set, x)
}
