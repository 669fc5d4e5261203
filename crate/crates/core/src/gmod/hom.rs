use std::sync::Arc;

use super::Bimodule;
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix, Scalar, ScalarField, Subspace};

/// A graded homomorphism given by one block per component.
#[derive(Clone, Debug)]
pub struct GradedHom {
    pub source: Arc<Bimodule>,
    pub target: Arc<Bimodule>,
    pub blocks: Vec<Matrix>,
}

fn same_module(a: &Arc<Bimodule>, b: &Arc<Bimodule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GradedHom {
    /// Checks shapes and linearity on both sides.
    pub fn new(source: Arc<Bimodule>, target: Arc<Bimodule>, blocks: Vec<Matrix>) -> Result<GradedHom> {
        let f = GradedHom::unchecked(source, target, blocks)?;
        if let Some(w) = f.linearity_failure() {
            return Err(Error::axiom("linearity", "the blocks do not commute with the actions", w));
        }
        Ok(f)
    }

    pub(crate) fn unchecked(source: Arc<Bimodule>, target: Arc<Bimodule>, blocks: Vec<Matrix>) -> Result<GradedHom> {
        if !source.same_gradings(&target) || source.dims().len() != target.dims().len() {
            return Err(Error::invalid("homomorphisms need matching gradings"));
        }
        if blocks.len() != source.dims().len() {
            return Err(Error::dimension(format!("{} blocks for {} components", blocks.len(), source.dims().len())));
        }
        for (c, b) in blocks.iter().enumerate() {
            if b.rows() != target.dim(c) || b.cols() != source.dim(c) {
                return Err(Error::dimension(format!(
                    "block {c} is {}×{}, expected {}×{}",
                    b.rows(),
                    b.cols(),
                    target.dim(c),
                    source.dim(c)
                )));
            }
        }
        Ok(GradedHom { source, target, blocks })
    }

    pub fn zero(source: Arc<Bimodule>, target: Arc<Bimodule>) -> GradedHom {
        let f = source.field();
        let blocks = (0..source.dims().len()).map(|c| Matrix::zeros(f, target.dim(c), source.dim(c))).collect();
        GradedHom { source, target, blocks }
    }

    pub fn identity(m: Arc<Bimodule>) -> GradedHom {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| Matrix::identity(f, d)).collect();
        GradedHom {
            source: m.clone(),
            target: m,
            blocks,
        }
    }

    /// Witness `[side, degree, component, basis]` of a failure of linearity.
    pub fn linearity_failure(&self) -> Option<Vec<usize>> {
        let (s, t) = (&self.source, &self.target);
        for (&(g, c), blocks) in s.left_actions() {
            let c2 = s.left_target(g, c).expect("defined");
            let tb = t.left_blocks(g, c);
            for (i, b) in blocks.iter().enumerate() {
                let lhs = self.blocks[c2].mul(b);
                let rhs = match tb {
                    Some(tb) => tb[i].mul(&self.blocks[c]),
                    None => Matrix::zeros(s.field(), t.dim(c2), s.dim(c)),
                };
                if lhs != rhs {
                    return Some(vec![0, g, c, i]);
                }
            }
        }
        for (&(c, h), blocks) in s.right_actions() {
            let c2 = s.right_target(c, h).expect("defined");
            let tb = t.right_blocks(c, h);
            for (j, b) in blocks.iter().enumerate() {
                let lhs = self.blocks[c2].mul(b);
                let rhs = match tb {
                    Some(tb) => tb[j].mul(&self.blocks[c]),
                    None => Matrix::zeros(s.field(), t.dim(c2), s.dim(c)),
                };
                if lhs != rhs {
                    return Some(vec![1, h, c, j]);
                }
            }
        }
        None
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedHom) -> Result<GradedHom> {
        if !same_module(&other.target, &self.source) {
            return Err(Error::invalid("cannot compose: target and source differ"));
        }
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.mul(b)).collect();
        Ok(GradedHom {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &GradedHom) -> GradedHom {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(b)).collect();
        GradedHom {
            blocks,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &GradedHom) -> GradedHom {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.sub(b)).collect();
        GradedHom {
            blocks,
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &Scalar) -> GradedHom {
        GradedHom {
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_injective)
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(Matrix::is_surjective)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.blocks.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<GradedHom> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(GradedHom {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    pub fn apply(&self, c: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.blocks[c].apply(v)
    }

    /// Equal as families of blocks.
    pub fn same_blocks(&self, other: &GradedHom) -> bool {
        self.blocks == other.blocks
    }
}

/// Which actions a homomorphism must respect.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Linearity {
    pub left: bool,
    pub right: bool,
}

impl Linearity {
    pub const BOTH: Linearity = Linearity { left: true, right: true };
    pub const RIGHT: Linearity = Linearity { left: false, right: true };
    pub const LEFT: Linearity = Linearity { left: true, right: false };
}

/// A space of linear maps between chosen components of two bimodules, cut
/// out by linearity constraints.
///
/// `pairs[k] = (cs, ct)` says that block `k` maps source component `cs` to
/// target component `ct`. Blocks are flattened row-major, in pair order.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Arc<Bimodule>,
    pub target: Arc<Bimodule>,
    pairs: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    unknowns: usize,
    space: Subspace,
}

impl HomSpace {
    /// Solves for all maps `f` with blocks on `pairs` that commute with the
    /// requested actions and satisfy `f_k = f_k ∘ fixed[k]` when given.
    pub fn solve(
        source: Arc<Bimodule>,
        target: Arc<Bimodule>,
        pairs: Vec<(usize, usize)>,
        linearity: Linearity,
        fixed: Option<&[Matrix]>,
    ) -> HomSpace {
        let field = source.field();
        let mut offsets = Vec::with_capacity(pairs.len());
        let mut n = 0;
        for &(cs, ct) in &pairs {
            offsets.push(n);
            n += source.dim(cs) * target.dim(ct);
        }
        let mut tgt_of = vec![None; source.dims().len()];
        for (k, &(cs, _)) in pairs.iter().enumerate() {
            tgt_of[cs] = Some(k);
        }
        let mut sys = System {
            field,
            n,
            rows: Echelon::new(field, n),
        };
        let s = &*source;
        let t = &*target;
        let src_dim = |k: usize| s.dim(pairs[k].0);
        let tgt_dim = |k: usize| t.dim(pairs[k].1);
        for (k, &(cs, ct)) in pairs.iter().enumerate() {
            let mut sides: Vec<(bool, usize)> = Vec::new();
            if linearity.left {
                sides.extend((0..s.left().ring.groupoid().size()).map(|g| (true, g)));
            }
            if linearity.right {
                sides.extend((0..s.right().ring.groupoid().size()).map(|h| (false, h)));
            }
            for (is_left, g) in sides {
                let (s_target, s_blocks, t_target, t_blocks) = if is_left {
                    (s.left_target(g, cs), s.left_blocks(g, cs), t.left_target(g, ct), t.left_blocks(g, ct))
                } else {
                    (s.right_target(cs, g), s.right_blocks(cs, g), t.right_target(ct, g), t.right_blocks(ct, g))
                };
                let count = if is_left { s.left().ring.dim(g) } else { s.right().ring.dim(g) };
                // f(p·r) = f(p)·r with p in cs: lhs block k2 = pair of the moved component
                let k2 = s_target.and_then(|c| tgt_of[c]);
                if s_target.is_some() && k2.is_none() && t_target.is_none() {
                    continue;
                }
                let rows_out = match (k2, t_target) {
                    (Some(k2), _) => tgt_dim(k2),
                    (None, Some(c)) => t.dim(c),
                    (None, None) => continue,
                };
                if let (Some(k2), Some(c)) = (k2, t_target) {
                    debug_assert_eq!(pairs[k2].1, c, "pairs must be compatible with the actions");
                }
                for j in 0..count {
                    for a in 0..rows_out {
                        for b in 0..src_dim(k) {
                            let mut row = vec![field.zero(); n];
                            if let (Some(k2), Some(sb)) = (k2, s_blocks) {
                                // Σ_l f_{k2}[a][l] · S[l][b]
                                for l in 0..src_dim(k2) {
                                    let v = sb[j].get(l, b);
                                    if !v.is_zero() {
                                        row[offsets[k2] + a * src_dim(k2) + l] = &row[offsets[k2] + a * src_dim(k2) + l] + v;
                                    }
                                }
                            }
                            if let (Some(_), Some(tb)) = (t_target, t_blocks) {
                                // − Σ_l T[a][l] · f_k[l][b]
                                for l in 0..tgt_dim(k) {
                                    let v = tb[j].get(a, l);
                                    if !v.is_zero() {
                                        let idx = offsets[k] + l * src_dim(k) + b;
                                        row[idx] = &row[idx] - v;
                                    }
                                }
                            }
                            sys.push(row);
                        }
                    }
                }
            }
            if let Some(fixed) = fixed {
                // f_k (I − U_k) = 0
                let u = &fixed[k];
                for a in 0..tgt_dim(k) {
                    for b in 0..src_dim(k) {
                        let mut row = vec![field.zero(); n];
                        for l in 0..src_dim(k) {
                            let mut v = -u.get(l, b);
                            if l == b {
                                v = &v + &field.one();
                            }
                            row[offsets[k] + a * src_dim(k) + l] = v;
                        }
                        sys.push(row);
                    }
                }
            }
        }
        HomSpace {
            source,
            target,
            pairs,
            offsets,
            unknowns: n,
            space: sys.kernel(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Blocks (one per pair) of the flat vector `v`.
    pub fn unflatten(&self, v: &[Scalar]) -> Vec<Matrix> {
        let field = self.source.field();
        self.pairs
            .iter()
            .enumerate()
            .map(|(k, &(cs, ct))| {
                let (r, c) = (self.target.dim(ct), self.source.dim(cs));
                let rows = (0..r).map(|a| v[self.offsets[k] + a * c..self.offsets[k] + (a + 1) * c].to_vec()).collect();
                Matrix::from_rows(field, c, rows).expect("block shape")
            })
            .collect()
    }

    pub fn flatten(&self, blocks: &[Matrix]) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.unknowns);
        for b in blocks {
            for a in 0..b.rows() {
                v.extend_from_slice(b.row(a));
            }
        }
        v
    }

    /// Basis of the solution space, as block families.
    pub fn basis_blocks(&self) -> Vec<Vec<Matrix>> {
        self.space.basis_vectors().iter().map(|v| self.unflatten(v)).collect()
    }

    /// Blocks of `Σ coords[i] · basis[i]`.
    pub fn element(&self, coords: &[Scalar]) -> Vec<Matrix> {
        self.unflatten(&self.space.combine(coords))
    }

    /// Coordinates of a block family, if it lies in the space.
    pub fn coordinates(&self, blocks: &[Matrix]) -> Option<Vec<Scalar>> {
        self.space.coordinates(&self.flatten(blocks))
    }

    /// Whether pairs cover every component once, in order.
    fn is_full(&self) -> bool {
        self.pairs.len() == self.source.dims().len() && self.pairs.iter().enumerate().all(|(k, &(a, b))| a == k && b == k)
    }

    /// Basis as graded homomorphisms; only for full hom spaces.
    pub fn basis(&self) -> Vec<GradedHom> {
        assert!(self.is_full(), "basis homomorphisms need every component");
        self.basis_blocks()
            .into_iter()
            .map(|blocks| GradedHom {
                source: self.source.clone(),
                target: self.target.clone(),
                blocks,
            })
            .collect()
    }

    pub fn hom(&self, coords: &[Scalar]) -> GradedHom {
        assert!(self.is_full(), "homomorphisms need every component");
        GradedHom {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.element(coords),
        }
    }
}

struct System {
    field: ScalarField,
    n: usize,
    rows: Echelon,
}

impl System {
    fn push(&mut self, row: Vec<Scalar>) {
        if row.iter().any(|x| !x.is_zero()) && !self.rows.is_full() {
            self.rows.insert(row);
        }
    }

    fn kernel(self) -> Subspace {
        let (field, n) = (self.field, self.n);
        let rowspace = self.rows.into_subspace();
        let pivots = rowspace.pivots().to_vec();
        let rows = rowspace.basis_vectors();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -&row[f];
            }
            v
        });
        Subspace::from_vectors(field, n, vectors)
    }
}

/// `Hom(M, N)` respecting every action.
pub fn hom_space(m: &Arc<Bimodule>, n: &Arc<Bimodule>) -> Result<HomSpace> {
    if !m.same_gradings(n) {
        return Err(Error::invalid("hom spaces need matching gradings"));
    }
    let pairs = (0..m.dims().len()).map(|c| (c, c)).collect();
    Ok(HomSpace::solve(m.clone(), n.clone(), pairs, Linearity::BOTH, None))
}
