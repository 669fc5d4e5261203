use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix, Quotient, Scalar, ScalarField};
use crate::gmod::{shift_basis, ActionBlocks, Bimodule, GradedHom, Grading};
use crate::gring::GradedRing;
use crate::gset::GSet;

/// One summand `A ⊗ B` of an ambient tensor space. Basis vector `e_a ⊗ e_b`
/// sits at `offset + a * cols + b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slot {
    /// Index of the first factor (a component of the left module).
    pub left: usize,
    /// Index of the second factor (a component or a degree).
    pub right: usize,
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

impl Slot {
    pub fn index(&self, a: usize, b: usize) -> usize {
        self.offset + a * self.cols + b
    }
}

/// Lays out slots one after the other and returns the ambient dimension.
pub(crate) fn layout(parts: impl IntoIterator<Item = (usize, usize, usize, usize)>) -> (Vec<Slot>, usize) {
    let mut slots = Vec::new();
    let mut offset = 0;
    for (left, right, rows, cols) in parts {
        slots.push(Slot { left, right, offset, rows, cols });
        offset += rows * cols;
    }
    (slots, offset)
}

/// A module presented as a quotient of a sum of tensor products of vector
/// spaces, one quotient per component.
#[derive(Clone, Debug)]
pub struct TensorResult {
    pub module: Arc<Bimodule>,
    pub slots: Vec<Vec<Slot>>,
    pub quotients: Vec<Quotient>,
}

impl TensorResult {
    pub fn slot(&self, c: usize, left: usize, right: usize) -> Option<&Slot> {
        self.slots[c].iter().find(|s| s.left == left && s.right == right)
    }

    /// Class of an ambient vector of component `c`.
    pub fn class(&self, c: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.quotients[c].class(v)
    }

    /// Class of `m ⊗ p`; zero when the pair has no slot in `c`.
    pub fn pure_tensor(&self, c: usize, left: usize, right: usize, m: &[Scalar], p: &[Scalar]) -> Vec<Scalar> {
        let field = self.module.field();
        let q = &self.quotients[c];
        let Some(s) = self.slot(c, left, right) else {
            return vec![field.zero(); q.dim()];
        };
        let mut v = vec![field.zero(); q.ambient_dim()];
        put_kron(&mut v, s, m, p);
        q.class(&v)
    }

    /// Matrix of the map from component `c` into a space of dimension `rows`
    /// induced by the images of `e_a ⊗ e_b`. Fails if a relation is not killed.
    pub fn induced(&self, c: usize, rows: usize, image: &dyn Fn(&Slot, usize, usize) -> Vec<Scalar>) -> Result<Matrix> {
        let field = self.module.field();
        let q = &self.quotients[c];
        let mut ambient = Matrix::zeros(field, rows, q.ambient_dim());
        for s in &self.slots[c] {
            for a in 0..s.rows {
                for b in 0..s.cols {
                    let w = image(s, a, b);
                    for (r, x) in w.into_iter().enumerate() {
                        ambient.set(r, s.index(a, b), x);
                    }
                }
            }
        }
        for rel in q.relations().basis_vectors() {
            if !crate::exactla::is_zero_vector(&ambient.apply(rel)) {
                return Err(Error::invalid(format!("the map does not vanish on the relations of component {c}")));
            }
        }
        let cols: Vec<Vec<Scalar>> = q.free_columns().iter().map(|&k| ambient.column(k)).collect();
        Ok(Matrix::from_columns(field, rows, &cols))
    }
}

/// Adds `m ⊗ p` into `v` at slot `s`.
pub(crate) fn put_kron(v: &mut [Scalar], s: &Slot, m: &[Scalar], p: &[Scalar]) {
    for (a, x) in m.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (b, y) in p.iter().enumerate() {
            if !y.is_zero() {
                let i = s.index(a, b);
                v[i].add_mul(x, y);
            }
        }
    }
}

/// Ambient matrix of a map acting on the first factor of each slot.
pub(crate) type AmbientAction<'a> = dyn Fn(usize, usize, usize, usize) -> Option<Matrix> + 'a;

/// Builds a module from per-component quotients. `left(g, i, c, t)` and
/// `right(c, h, j, t)` return the ambient matrix (target ambient × source
/// ambient) of a basis element acting from component `c` to `t`.
pub(crate) fn assemble(
    left: Grading,
    right: Grading,
    slots: Vec<Vec<Slot>>,
    quotients: Vec<Quotient>,
    lact: &AmbientAction,
    ract: &AmbientAction,
) -> Result<TensorResult> {
    let dims: Vec<usize> = quotients.iter().map(Quotient::dim).collect();
    let shell = Bimodule::unchecked(left, right, dims.clone(), BTreeMap::new(), BTreeMap::new())?;
    let field = shell.field();
    let induce = |m: &Matrix, c: usize, t: usize| -> Matrix {
        debug_assert!(quotients[c]
            .relations()
            .basis_vectors()
            .iter()
            .all(|r| quotients[t].relations().contains_vector(&m.apply(r))));
        let cols: Vec<Vec<Scalar>> = quotients[c].free_columns().iter().map(|&k| quotients[t].class(&m.column(k))).collect();
        Matrix::from_columns(field, dims[t], &cols)
    };
    let mut left_act: BTreeMap<(usize, usize), ActionBlocks> = BTreeMap::new();
    let mut right_act: BTreeMap<(usize, usize), ActionBlocks> = BTreeMap::new();
    if !shell.left().is_trivial() {
        let ring = shell.left().ring.clone();
        for g in 0..ring.groupoid().size() {
            for c in 0..dims.len() {
                let Some(t) = shell.left_target(g, c) else { continue };
                let blocks = (0..ring.dim(g))
                    .map(|i| match lact(g, i, c, t) {
                        Some(m) => induce(&m, c, t),
                        None => Matrix::zeros(field, dims[t], dims[c]),
                    })
                    .collect();
                left_act.insert((g, c), blocks);
            }
        }
    }
    if !shell.right().is_trivial() {
        let ring = shell.right().ring.clone();
        for c in 0..dims.len() {
            for h in 0..ring.groupoid().size() {
                let Some(t) = shell.right_target(c, h) else { continue };
                let blocks = (0..ring.dim(h))
                    .map(|j| match ract(c, h, j, t) {
                        Some(m) => induce(&m, c, t),
                        None => Matrix::zeros(field, dims[t], dims[c]),
                    })
                    .collect();
                right_act.insert((c, h), blocks);
            }
        }
    }
    let module = Bimodule::new(shell.left().clone(), shell.right().clone(), dims, left_act, right_act)?;
    Ok(TensorResult {
        module: Arc::new(module),
        slots,
        quotients,
    })
}

/// `A ⊗ I` placed between matching slots of two components.
pub(crate) fn first_factor_matrix(
    field: ScalarField,
    src: &[Slot],
    src_dim: usize,
    tgt: &[Slot],
    tgt_dim: usize,
    block: &dyn Fn(&Slot) -> Option<(usize, usize, Matrix)>,
) -> Matrix {
    // block(s) = (left, right of the target slot, matrix on the first factor)
    let mut m = Matrix::zeros(field, tgt_dim, src_dim);
    for s in src {
        let Some((tl, tr, a)) = block(s) else { continue };
        let Some(t) = tgt.iter().find(|t| t.left == tl && t.right == tr) else { continue };
        for i in 0..s.rows {
            for k in 0..t.rows {
                let x = a.get(k, i);
                if x.is_zero() {
                    continue;
                }
                for b in 0..s.cols {
                    m.set(t.index(k, b), s.index(i, b), x.clone());
                }
            }
        }
    }
    m
}

/// `I ⊗ B` placed between matching slots of two components.
pub(crate) fn second_factor_matrix(
    field: ScalarField,
    src: &[Slot],
    src_dim: usize,
    tgt: &[Slot],
    tgt_dim: usize,
    block: &dyn Fn(&Slot) -> Option<(usize, usize, Matrix)>,
) -> Matrix {
    let mut m = Matrix::zeros(field, tgt_dim, src_dim);
    for s in src {
        let Some((tl, tr, b)) = block(s) else { continue };
        let Some(t) = tgt.iter().find(|t| t.left == tl && t.right == tr) else { continue };
        for j in 0..s.cols {
            for k in 0..t.cols {
                let x = b.get(k, j);
                if x.is_zero() {
                    continue;
                }
                for a in 0..s.rows {
                    m.set(t.index(a, k), s.index(a, j), x.clone());
                }
            }
        }
    }
    m
}

/// `M ⊗̂_R P` for an `(Z,X)`-bigraded `(T,R)`-bimodule `M` and an
/// `(X,Y)`-bigraded `(R,S)`-bimodule `P`, computed grade by grade:
/// component `(z,y)` is `⊕_x ₂M_x ⊗ ₓP_y` modulo `m·r ⊗ p − m ⊗ r·p`.
pub fn hotimes(m: &Arc<Bimodule>, p: &Arc<Bimodule>) -> Result<TensorResult> {
    if !m.right().same(p.left()) {
        return Err(Error::invalid("the right grading of the first factor must match the left grading of the second"));
    }
    let field = m.field();
    let (nz, nx, ny) = (m.nx(), m.ny(), p.ny());
    let mut slots = Vec::with_capacity(nz * ny);
    let mut ambient = Vec::with_capacity(nz * ny);
    for z in 0..nz {
        for y in 0..ny {
            let (s, n) = layout((0..nx).map(|x| {
                let (cm, cp) = (m.component(z, x), p.component(x, y));
                (cm, cp, m.dim(cm), p.dim(cp))
            }));
            slots.push(s);
            ambient.push(n);
        }
    }
    let comp = |z: usize, y: usize| z * ny + y;
    let ring = &m.right().ring;
    let mut rels: Vec<Echelon> = ambient.iter().map(|&n| Echelon::new(field, n)).collect();
    for z in 0..nz {
        for x1 in 0..nx {
            let cm1 = m.component(z, x1);
            for g in 0..ring.groupoid().size() {
                let Some(cm2) = m.right_target(cm1, g) else { continue };
                let x2 = m.split(cm2).1;
                for y in 0..ny {
                    let c = comp(z, y);
                    if rels[c].is_full() {
                        continue;
                    }
                    let cp2 = p.component(x2, y);
                    let cp1 = p.left_target(g, cp2).expect("g·(x·g) is defined");
                    debug_assert_eq!(cp1, p.component(x1, y));
                    let s1 = &slots[c][x1];
                    let s2 = &slots[c][x2];
                    let mr = &m.right_blocks(cm1, g).expect("defined")[..];
                    let rp = &p.left_blocks(g, cp2).expect("defined")[..];
                    for i in 0..ring.dim(g) {
                        for a in 0..m.dim(cm1) {
                            let ma = mr[i].column(a);
                            for b in 0..p.dim(cp2) {
                                let mut v = vec![field.zero(); ambient[c]];
                                put_kron(&mut v, s2, &ma, &crate::exactla::unit_vector(field, p.dim(cp2), b));
                                let rb = rp[i].column(b);
                                let neg: Vec<Scalar> = rb.iter().map(|s| -s).collect();
                                put_kron(&mut v, s1, &crate::exactla::unit_vector(field, m.dim(cm1), a), &neg);
                                rels[c].insert(v);
                            }
                        }
                    }
                }
            }
        }
    }
    let quotients: Vec<Quotient> = rels.into_iter().map(|e| Quotient::new(e.into_subspace())).collect();
    let lact = |g: usize, i: usize, c: usize, t: usize| -> Option<Matrix> {
        Some(first_factor_matrix(field, &slots[c], ambient[c], &slots[t], ambient[t], &|s| {
            let cm = s.left;
            let target = m.left_target(g, cm)?;
            Some((target, s.right, m.left_blocks(g, cm)?[i].clone()))
        }))
    };
    let ract = |c: usize, h: usize, j: usize, t: usize| -> Option<Matrix> {
        Some(second_factor_matrix(field, &slots[c], ambient[c], &slots[t], ambient[t], &|s| {
            let cp = s.right;
            let target = p.right_target(cp, h)?;
            Some((s.left, target, p.right_blocks(cp, h)?[j].clone()))
        }))
    };
    assemble(m.left().clone(), p.right().clone(), slots.clone(), quotients, &lact, &ract)
}

/// `f ⊗̂ g : M ⊗̂ P → M' ⊗̂ P'`.
pub fn hotimes_map(source: &TensorResult, target: &TensorResult, f: &GradedHom, g: &GradedHom) -> Result<GradedHom> {
    let blocks = (0..source.quotients.len())
        .map(|c| {
            source.induced(c, target.module.dim(c), &|s, a, b| {
                target.pure_tensor(c, s.left, s.right, &f.blocks[s.left].column(a), &g.blocks[s.right].column(b))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GradedHom::new(source.module.clone(), target.module.clone(), blocks)
}

/// `(x)R ⊗̂ N → ₓN, r ⊗ n ↦ r·n`, where the first factor is the right shift
/// `(x)R` and `row` is `ₓN` with the gradings of the tensor product.
pub fn shift_tensor_map(
    ring: &GradedRing,
    gset: &GSet,
    x: usize,
    tensor: &TensorResult,
    n: &Bimodule,
    row: &Arc<Bimodule>,
) -> Result<GradedHom> {
    let field = n.field();
    let blocks = (0..tensor.quotients.len())
        .map(|y| {
            tensor.induced(y, row.dim(y), &|s, a, b| {
                // s.left = x' (component of (x)R), s.right = component (x', y) of N
                let (g, i) = shift_basis(ring, gset, x, s.left, None)[a];
                let e = crate::exactla::unit_vector(field, n.dim(s.right), b);
                let (t, w) = n.act_left(g, &ring.basis_coords(g, i), s.right, &e).expect("g·x' = x is defined");
                debug_assert_eq!(t, n.component(x, y));
                w
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GradedHom::new(tensor.module.clone(), row.clone(), blocks)
}

/// `R̂ ⊗̂ N → N, r ⊗ n ↦ r·n`.
pub fn r_hat_tensor_map(ring: &GradedRing, gset: &GSet, tensor: &TensorResult, n: &Arc<Bimodule>) -> Result<GradedHom> {
    let field = n.field();
    let nx = gset.size();
    let blocks = (0..tensor.quotients.len())
        .map(|c| {
            tensor.induced(c, n.dim(c), &|s, a, b| {
                let (x, x2) = (s.left / nx, s.left % nx);
                let (g, i) = shift_basis(ring, gset, x, x2, None)[a];
                let e = crate::exactla::unit_vector(field, n.dim(s.right), b);
                let (t, w) = n.act_left(g, &ring.basis_coords(g, i), s.right, &e).expect("g·x' = x is defined");
                debug_assert_eq!(t, c);
                w
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GradedHom::new(tensor.module.clone(), n.clone(), blocks)
}

/// Dimensions of the tensor components as a map `component label → dim`.
pub fn tensor_dims(t: &TensorResult) -> Vec<usize> {
    t.module.dims().to_vec()
}

