//! Graded modules and bigraded bimodules.
//!
//! One type covers all three: a right `R`-module graded by a right `G`-set is
//! a bimodule whose left side is the base field over a one-point set, and
//! dually for left modules.

mod build;
mod hom;

pub use build::*;
pub use hom::*;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Echelon, Matrix, Scalar, ScalarField};
use crate::gring::{base_ring, GradedRing};
use crate::gset::{point_gset, GSet, Side};

/// A graded ring together with the G-set grading one side of a module.
#[derive(Clone, Debug)]
pub struct Grading {
    pub ring: Arc<GradedRing>,
    pub gset: Arc<GSet>,
    trivial: bool,
}

impl Grading {
    pub fn new(ring: Arc<GradedRing>, gset: Arc<GSet>) -> Result<Self> {
        if !Arc::ptr_eq(ring.groupoid(), gset.groupoid()) && **ring.groupoid() != **gset.groupoid() {
            return Err(Error::invalid("ring and G-set are over different groupoids"));
        }
        Ok(Grading { ring, gset, trivial: false })
    }

    /// The base field over the trivial groupoid acting on one point.
    pub fn trivial(field: ScalarField) -> Self {
        let ring = Arc::new(base_ring(field));
        let gset = Arc::new(point_gset(ring.groupoid().clone(), Side::Right));
        Grading { ring, gset, trivial: true }
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    pub fn field(&self) -> ScalarField {
        self.ring.field()
    }

    pub fn points(&self) -> usize {
        self.gset.size()
    }

    /// Same ring and the same action, ignoring the side it is written on.
    pub fn same(&self, other: &Grading) -> bool {
        if self.trivial && other.trivial {
            return self.field() == other.field();
        }
        let ring_same = Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring;
        ring_same && same_action(&self.gset, &other.gset)
    }
}

/// Whether two G-sets describe the same action, possibly on different sides.
pub fn same_action(a: &GSet, b: &GSet) -> bool {
    if std::ptr::eq(a, b) {
        return true;
    }
    if a.size() != b.size() || !(Arc::ptr_eq(a.groupoid(), b.groupoid()) || **a.groupoid() == **b.groupoid()) {
        return false;
    }
    let g = a.groupoid();
    (0..g.size()).all(|h| (0..a.size()).all(|x| a.right(x, h) == b.right(x, h)))
        && g.objects().iter().all(|&e| (0..a.size()).all(|x| a.in_component(x, e) == b.in_component(x, e)))
}

/// Blocks of one ring basis element acting between two components.
pub type ActionBlocks = Vec<Matrix>;

/// An `(X,Y)`-bigraded `(R,S)`-bimodule `P = ⊕ ₓP_y`.
///
/// Component `(x, y)` has index `x * |Y| + y`. `left[(g, c)]` holds, for each
/// basis element of `R_g`, the matrix of its action from component `c` to
/// `(g·x, y)`; `right[(c, h)]` does the same for `S_h` and `(x, y·h)`. Only
/// keys where the G-set action is defined are stored.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left: Grading,
    right: Grading,
    dims: Vec<usize>,
    left_act: BTreeMap<(usize, usize), ActionBlocks>,
    right_act: BTreeMap<(usize, usize), ActionBlocks>,
}

pub type GradedModule = Bimodule;
pub type BigradedBimodule = Bimodule;

impl PartialEq for Bimodule {
    fn eq(&self, other: &Bimodule) -> bool {
        self.dims == other.dims
            && self.same_gradings(other)
            && self.left_act == other.left_act
            && self.right_act == other.right_act
    }
}

impl Bimodule {
    /// Validates a bimodule. Missing action keys mean zero actions; actions
    /// of a trivial side are the identity and need not be given.
    pub fn new(
        left: Grading,
        right: Grading,
        dims: Vec<usize>,
        left_act: BTreeMap<(usize, usize), ActionBlocks>,
        right_act: BTreeMap<(usize, usize), ActionBlocks>,
    ) -> Result<Bimodule> {
        let m = Bimodule::unchecked(left, right, dims, left_act, right_act)?;
        m.check_axioms()?;
        Ok(m)
    }

    pub(crate) fn unchecked(
        left: Grading,
        right: Grading,
        dims: Vec<usize>,
        mut left_act: BTreeMap<(usize, usize), ActionBlocks>,
        mut right_act: BTreeMap<(usize, usize), ActionBlocks>,
    ) -> Result<Bimodule> {
        let left = normalize(left, Side::Left);
        let right = normalize(right, Side::Right);
        let field = left.field();
        if right.field() != field {
            return Err(Error::invalid("the two sides are over different fields"));
        }
        let (nx, ny) = (left.points(), right.points());
        if dims.len() != nx * ny {
            return Err(Error::dimension(format!("{} component dimensions, expected {}", dims.len(), nx * ny)));
        }
        let mut m = Bimodule {
            left,
            right,
            dims,
            left_act: BTreeMap::new(),
            right_act: BTreeMap::new(),
        };
        let lg = m.left.ring.groupoid().clone();
        for &(g, c) in left_act.keys() {
            if g >= lg.size() || c >= m.dims.len() || m.left_target(g, c).is_none() {
                return Err(Error::axiom(
                    "grading",
                    format!("left action given where the G-set action is undefined (degree {g}, component {c})"),
                    vec![g, c],
                ));
            }
        }
        let rg = m.right.ring.groupoid().clone();
        for &(c, h) in right_act.keys() {
            if h >= rg.size() || c >= m.dims.len() || m.right_target(c, h).is_none() {
                return Err(Error::axiom(
                    "grading",
                    format!("right action given where the G-set action is undefined (component {c}, degree {h})"),
                    vec![c, h],
                ));
            }
        }
        for g in 0..lg.size() {
            for c in 0..m.dims.len() {
                let Some(t) = m.left_target(g, c) else { continue };
                let n = m.left.ring.dim(g);
                let blocks = if m.left.trivial {
                    vec![Matrix::identity(field, m.dims[c])]
                } else {
                    left_act.remove(&(g, c)).unwrap_or_else(|| vec![Matrix::zeros(field, m.dims[t], m.dims[c]); n])
                };
                check_blocks(&blocks, n, m.dims[t], m.dims[c], "left", g, c)?;
                m.left_act.insert((g, c), blocks);
            }
        }
        for c in 0..m.dims.len() {
            for h in 0..rg.size() {
                let Some(t) = m.right_target(c, h) else { continue };
                let n = m.right.ring.dim(h);
                let blocks = if m.right.trivial {
                    vec![Matrix::identity(field, m.dims[c])]
                } else {
                    right_act.remove(&(c, h)).unwrap_or_else(|| vec![Matrix::zeros(field, m.dims[t], m.dims[c]); n])
                };
                check_blocks(&blocks, n, m.dims[t], m.dims[c], "right", h, c)?;
                m.right_act.insert((c, h), blocks);
            }
        }
        Ok(m)
    }

    fn check_axioms(&self) -> Result<()> {
        if !self.left.trivial {
            self.check_left_associative()?;
        }
        if !self.right.trivial {
            self.check_right_associative()?;
        }
        if !self.left.trivial && !self.right.trivial {
            self.check_commuting()?;
        }
        self.check_unital()
    }

    fn check_left_associative(&self) -> Result<()> {
        let r = &*self.left.ring;
        let g = r.groupoid();
        for (&(b, c), lb) in &self.left_act {
            let c1 = self.left_target(b, c).expect("stored keys are defined");
            for a in 0..g.size() {
                let Some(la) = self.left_act.get(&(a, c1)) else { continue };
                let c2 = self.left_target(a, c1).expect("stored keys are defined");
                for (i, mi) in la.iter().enumerate() {
                    for (j, mj) in lb.iter().enumerate() {
                        let lhs = mi.mul(mj);
                        let rhs = match g.mul(a, b) {
                            Some(ab) => {
                                let coeffs = &r.table(a, b).expect("defined")[i * r.dim(b) + j];
                                let blocks = self.left_act.get(&(ab, c));
                                combine(self.field(), coeffs, blocks, self.dims[c2], self.dims[c])
                            }
                            None => Matrix::zeros(self.field(), self.dims[c2], self.dims[c]),
                        };
                        if lhs != rhs {
                            return Err(Error::axiom(
                                "associativity",
                                format!(
                                    "left action is not associative for basis ({i},{j}) in degrees ({},{}) on component {c}",
                                    g.label(a),
                                    g.label(b)
                                ),
                                vec![a, b, c, i, j],
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_right_associative(&self) -> Result<()> {
        let r = &*self.right.ring;
        let g = r.groupoid();
        for (&(c, a), ra) in &self.right_act {
            let c1 = self.right_target(c, a).expect("stored keys are defined");
            for b in 0..g.size() {
                let Some(rb) = self.right_act.get(&(c1, b)) else { continue };
                let c2 = self.right_target(c1, b).expect("stored keys are defined");
                for (i, mi) in ra.iter().enumerate() {
                    for (j, mj) in rb.iter().enumerate() {
                        // (p·s_i)·s_j = p·(s_i s_j)
                        let lhs = mj.mul(mi);
                        let rhs = match g.mul(a, b) {
                            Some(ab) => {
                                let coeffs = &r.table(a, b).expect("defined")[i * r.dim(b) + j];
                                let blocks = self.right_act.get(&(c, ab));
                                combine(self.field(), coeffs, blocks, self.dims[c2], self.dims[c])
                            }
                            None => Matrix::zeros(self.field(), self.dims[c2], self.dims[c]),
                        };
                        if lhs != rhs {
                            return Err(Error::axiom(
                                "associativity",
                                format!(
                                    "right action is not associative for basis ({i},{j}) in degrees ({},{}) on component {c}",
                                    g.label(a),
                                    g.label(b)
                                ),
                                vec![a, b, c, i, j],
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commuting(&self) -> Result<()> {
        for (&(g, c), la) in &self.left_act {
            let cl = self.left_target(g, c).expect("defined");
            for h in 0..self.right.ring.groupoid().size() {
                let Some(ra) = self.right_act.get(&(c, h)) else { continue };
                let cr = self.right_target(c, h).expect("defined");
                let (Some(ra2), Some(la2)) = (self.right_act.get(&(cl, h)), self.left_act.get(&(g, cr))) else {
                    continue;
                };
                for (i, l1) in la.iter().enumerate() {
                    for (j, r1) in ra.iter().enumerate() {
                        if ra2[j].mul(l1) != la2[i].mul(r1) {
                            return Err(Error::axiom(
                                "commuting actions",
                                format!("(r·p)·s ≠ r·(p·s) on component {c}"),
                                vec![g, h, c, i, j],
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unital(&self) -> Result<()> {
        for (name, acts, trivial) in [("left", &self.left_act, self.left.trivial), ("right", &self.right_act, self.right.trivial)] {
            if trivial {
                continue;
            }
            let mut spans: Vec<Echelon> = self.dims.iter().map(|&d| Echelon::new(self.field(), d)).collect();
            for (&key, blocks) in acts.iter() {
                let t = if name == "left" {
                    self.left_target(key.0, key.1)
                } else {
                    self.right_target(key.0, key.1)
                }
                .expect("defined");
                for b in blocks {
                    for col in b.columns() {
                        if spans[t].is_full() {
                            break;
                        }
                        spans[t].insert(col);
                    }
                }
            }
            for (c, s) in spans.iter().enumerate() {
                if !s.is_full() {
                    return Err(Error::axiom(
                        "unital",
                        format!(
                            "not unital: the {name} action reaches only {} of {} dimensions in component {}",
                            s.rank(),
                            self.dims[c],
                            self.component_label(c)
                        ),
                        vec![c],
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> ScalarField {
        self.left.field()
    }

    pub fn left(&self) -> &Grading {
        &self.left
    }

    pub fn right(&self) -> &Grading {
        &self.right
    }

    pub fn nx(&self) -> usize {
        self.left.points()
    }

    pub fn ny(&self) -> usize {
        self.right.points()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn component(&self, x: usize, y: usize) -> usize {
        x * self.ny() + y
    }

    pub fn split(&self, c: usize) -> (usize, usize) {
        (c / self.ny(), c % self.ny())
    }

    pub fn component_label(&self, c: usize) -> String {
        let (x, y) = self.split(c);
        match (self.left.trivial, self.right.trivial) {
            (true, _) => self.right.gset.label(y).to_string(),
            (false, true) => self.left.gset.label(x).to_string(),
            (false, false) => format!("({},{})", self.left.gset.label(x), self.right.gset.label(y)),
        }
    }

    /// Component reached by the left action of degree `g`, if defined.
    pub fn left_target(&self, g: usize, c: usize) -> Option<usize> {
        let (x, y) = self.split(c);
        self.left.gset.left(g, x).map(|x2| self.component(x2, y))
    }

    /// Component reached by the right action of degree `h`, if defined.
    pub fn right_target(&self, c: usize, h: usize) -> Option<usize> {
        let (x, y) = self.split(c);
        self.right.gset.right(y, h).map(|y2| self.component(x, y2))
    }

    pub fn left_blocks(&self, g: usize, c: usize) -> Option<&ActionBlocks> {
        self.left_act.get(&(g, c))
    }

    pub fn right_blocks(&self, c: usize, h: usize) -> Option<&ActionBlocks> {
        self.right_act.get(&(c, h))
    }

    pub fn left_actions(&self) -> &BTreeMap<(usize, usize), ActionBlocks> {
        &self.left_act
    }

    pub fn right_actions(&self) -> &BTreeMap<(usize, usize), ActionBlocks> {
        &self.right_act
    }

    /// `r · p` for `r ∈ R_g` (coordinates) and `p` in component `c`.
    pub fn act_left(&self, g: usize, r: &[Scalar], c: usize, p: &[Scalar]) -> Option<(usize, Vec<Scalar>)> {
        let t = self.left_target(g, c)?;
        let blocks = &self.left_act[&(g, c)];
        Some((t, combine(self.field(), r, Some(blocks), self.dims[t], self.dims[c]).apply(p)))
    }

    /// `p · s` for `p` in component `c` and `s ∈ S_h` (coordinates).
    pub fn act_right(&self, c: usize, p: &[Scalar], h: usize, s: &[Scalar]) -> Option<(usize, Vec<Scalar>)> {
        let t = self.right_target(c, h)?;
        let blocks = &self.right_act[&(c, h)];
        Some((t, combine(self.field(), s, Some(blocks), self.dims[t], self.dims[c]).apply(p)))
    }

    /// Matrix on component `c` of the left action of a flat ring element
    /// whose support stays inside degrees that fix `c`'s left index.
    pub fn left_operator(&self, r: &[Scalar], c: usize) -> Matrix {
        let ring = &self.left.ring;
        let mut m = Matrix::zeros(self.field(), self.dims[c], self.dims[c]);
        for g in ring.support(r) {
            if self.left_target(g, c) == Some(c) {
                let blocks = &self.left_act[&(g, c)];
                m = m.add(&combine(self.field(), ring.component(r, g), Some(blocks), self.dims[c], self.dims[c]));
            }
        }
        m
    }

    /// Matrix on component `c` of the right action of a flat ring element,
    /// keeping only degrees that fix `c`'s right index.
    pub fn right_operator(&self, c: usize, s: &[Scalar]) -> Matrix {
        let ring = &self.right.ring;
        let mut m = Matrix::zeros(self.field(), self.dims[c], self.dims[c]);
        for h in ring.support(s) {
            if self.right_target(c, h) == Some(c) {
                let blocks = &self.right_act[&(c, h)];
                m = m.add(&combine(self.field(), ring.component(s, h), Some(blocks), self.dims[c], self.dims[c]));
            }
        }
        m
    }

    pub fn is_right_module(&self) -> bool {
        self.left.trivial
    }

    pub fn is_left_module(&self) -> bool {
        self.right.trivial
    }

    /// The grading that makes this a one-sided module: the right one for
    /// right modules, the left one for left modules.
    pub fn module_grading(&self) -> &Grading {
        if self.left.trivial {
            &self.right
        } else {
            &self.left
        }
    }

    /// Whether homomorphisms between `self` and `other` make sense.
    pub fn same_gradings(&self, other: &Bimodule) -> bool {
        self.left.same(&other.left) && self.right.same(&other.right)
    }

    /// The same bimodule with each side replaced by an equal grading (used to
    /// share `Arc`s between objects built separately).
    pub fn with_gradings(&self, left: Grading, right: Grading) -> Result<Bimodule> {
        if !self.left.same(&left) || !self.right.same(&right) {
            return Err(Error::invalid("replacement gradings differ"));
        }
        let mut m = self.clone();
        m.left = normalize(left, Side::Left);
        m.right = normalize(right, Side::Right);
        Ok(m)
    }

    /// Component dimensions as text.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = (0..self.dims.len()).map(|c| format!("{}:{}", self.component_label(c), self.dims[c])).collect();
        parts.join(" ")
    }
}

/// Rewrites the G-set of a grading onto the given side.
pub(crate) fn normalize(g: Grading, side: Side) -> Grading {
    if g.gset.side() == side {
        g
    } else {
        Grading {
            gset: Arc::new(g.gset.side_swap()),
            ..g
        }
    }
}

/// `Σ_i coeffs[i] · blocks[i]`.
pub(crate) fn combine(field: ScalarField, coeffs: &[Scalar], blocks: Option<&ActionBlocks>, rows: usize, cols: usize) -> Matrix {
    let mut m = Matrix::zeros(field, rows, cols);
    if let Some(blocks) = blocks {
        for (c, b) in coeffs.iter().zip(blocks) {
            if !c.is_zero() {
                m.add_scaled(c, b);
            }
        }
    }
    m
}

fn check_blocks(blocks: &[Matrix], n: usize, rows: usize, cols: usize, side: &str, g: usize, c: usize) -> Result<()> {
    if blocks.len() != n {
        return Err(Error::dimension(format!(
            "{side} action of degree {g} on component {c}: {} matrices for a {n}-dimensional component",
            blocks.len()
        )));
    }
    for b in blocks {
        if b.rows() != rows || b.cols() != cols {
            return Err(Error::axiom(
                "grading",
                format!(
                    "{side} action of degree {g} on component {c} must be {rows}×{cols}, got {}×{}",
                    b.rows(),
                    b.cols()
                ),
                vec![g, c],
            ));
        }
    }
    Ok(())
}

/// A right module `M = ⊕_x M_x` from blocks `act[(x, g)]`.
pub fn right_module(
    ring: Arc<GradedRing>,
    gset: Arc<GSet>,
    dims: Vec<usize>,
    act: BTreeMap<(usize, usize), ActionBlocks>,
) -> Result<Bimodule> {
    let field = ring.field();
    Bimodule::new(Grading::trivial(field), Grading::new(ring, gset)?, dims, BTreeMap::new(), act)
}

/// A left module `N = ⊕_x ₓN` from blocks `act[(g, x)]`.
pub fn left_module(
    ring: Arc<GradedRing>,
    gset: Arc<GSet>,
    dims: Vec<usize>,
    act: BTreeMap<(usize, usize), ActionBlocks>,
) -> Result<Bimodule> {
    let field = ring.field();
    Bimodule::new(Grading::new(ring, gset)?, Grading::trivial(field), dims, act, BTreeMap::new())
}

#[cfg(test)]
mod tests;
