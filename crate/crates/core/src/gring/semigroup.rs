//! Contracted semigroup algebras `KS` for small semigroups with zero, used to
//! reproduce what goes wrong with shifts and `⊗̂` beyond groupoids.
//!
//! Basis elements are the nonzero elements of `S`; an undefined product is the
//! zero of `S`. Shifts are read off the semigroup table:
//! `(x)R_y = ⊕_{xs = y} R_s` and `_yR(x) = ⊕_{sx = y} R_s`.

use crate::exactla::{Matrix, Scalar, ScalarField, Subspace};
use crate::structure::{arrow_category, PartialSemigroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedAlgebra {
    field: ScalarField,
    semigroup: PartialSemigroup,
    labels: Vec<String>,
}

impl ContractedAlgebra {
    pub fn new(field: ScalarField, semigroup: PartialSemigroup, labels: Vec<String>) -> Self {
        assert_eq!(semigroup.size(), labels.len());
        ContractedAlgebra { field, semigroup, labels }
    }

    pub fn dim(&self) -> usize {
        self.semigroup.size()
    }

    pub fn element(&self, label: &str) -> usize {
        self.labels.iter().position(|l| l == label).expect("unknown label")
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn mul_basis(&self, s: usize, t: usize) -> Option<usize> {
        self.semigroup.mul(s, t)
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (s, x) in a.iter().enumerate() {
            for (t, y) in b.iter().enumerate() {
                if let Some(st) = self.mul_basis(s, t) {
                    out[st].add_mul(x, y);
                }
            }
        }
        out
    }

    /// The two-sided identity of `KS`, if there is one.
    pub fn identity(&self) -> Option<Vec<Scalar>> {
        let n = self.dim();
        // u·t = t and t·u = t for every basis element t, solved for u
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for t in 0..n {
            for k in 0..n {
                let target = if k == t { self.field.one() } else { self.field.zero() };
                let left: Vec<Scalar> = (0..n)
                    .map(|s| if self.mul_basis(s, t) == Some(k) { self.field.one() } else { self.field.zero() })
                    .collect();
                let right: Vec<Scalar> = (0..n)
                    .map(|s| if self.mul_basis(t, s) == Some(k) { self.field.one() } else { self.field.zero() })
                    .collect();
                rows.push(left);
                rhs.push(vec![target.clone()]);
                rows.push(right);
                rhs.push(vec![target]);
            }
        }
        let a = Matrix::from_rows(self.field, n, rows).ok()?;
        let b = Matrix::from_rows(self.field, 1, rhs).ok()?;
        a.solve(&b).ok().flatten().map(|x| x.column(0))
    }

    /// Components of the right shift `(x)R`: pairs `(y, {s : xs = y})`.
    pub fn right_shift(&self, x: usize) -> Vec<(usize, Vec<usize>)> {
        self.grade(|s| self.mul_basis(x, s))
    }

    /// Components of the left shift `R(x)`: pairs `(y, {s : sx = y})`.
    pub fn left_shift(&self, x: usize) -> Vec<(usize, Vec<usize>)> {
        self.grade(|s| self.mul_basis(s, x))
    }

    fn grade(&self, f: impl Fn(usize) -> Option<usize>) -> Vec<(usize, Vec<usize>)> {
        (0..self.dim())
            .filter_map(|y| {
                let parts: Vec<usize> = (0..self.dim()).filter(|&s| f(s) == Some(y)).collect();
                (!parts.is_empty()).then_some((y, parts))
            })
            .collect()
    }

    pub fn right_shift_dim(&self, x: usize) -> usize {
        self.right_shift(x).iter().map(|(_, p)| p.len()).sum()
    }

    pub fn left_shift_dim(&self, x: usize) -> usize {
        self.left_shift(x).iter().map(|(_, p)| p.len()).sum()
    }

    /// Dimension of `(x)R ⊗̂ N` for the graded left ideal `N` spanned by the
    /// basis elements in `ideal` (with `_yN = K y` for `y` in the ideal).
    ///
    /// As `KS` is unital here, `R ⊗_R N ≅ N` by `r ⊗ n ↦ rn`, so the subgroup
    /// generated by matched pure tensors is `Σ_y (x)R_y · _yN` inside `N`.
    pub fn shift_tensor_dim(&self, x: usize, ideal: &[usize]) -> usize {
        let n = self.dim();
        let mut vectors = Vec::new();
        for (y, parts) in self.right_shift(x) {
            if !ideal.contains(&y) {
                continue;
            }
            for s in parts {
                if let Some(p) = self.mul_basis(s, y) {
                    let mut v = vec![self.field.zero(); n];
                    v[p] = self.field.one();
                    vectors.push(v);
                }
            }
        }
        Subspace::from_vectors(self.field, n, vectors).dim()
    }

    /// Dimension of `R̂_r ⊗̂ N = ⊕_x (x)R ⊗̂ N`.
    pub fn hat_tensor_dim(&self, ideal: &[usize]) -> usize {
        (0..self.dim()).map(|x| self.shift_tensor_dim(x, ideal)).sum()
    }
}

/// Upper triangular `2 × 2` matrices `Ke ⊕ Ka ⊕ Kf`, graded by the category
/// with one arrow `a` from `e` to `f` (products `ea = a = af`), and the left
/// ideal `N = R_a`.
pub struct EafFixture {
    pub algebra: ContractedAlgebra,
    pub module: Vec<usize>,
}

pub fn fixture_eaf(field: ScalarField) -> EafFixture {
    let (arrows, labels) = arrow_category();
    // matrix order is the opposite of composition order
    let n = arrows.size();
    let table = (0..n).map(|s| (0..n).map(|t| arrows.mul(t, s)).collect()).collect();
    let semigroup = PartialSemigroup::new(n, table).expect("three elements");
    let algebra = ContractedAlgebra::new(field, semigroup, labels);
    let a = algebra.element("a");
    EafFixture {
        algebra,
        module: vec![a],
    }
}

/// `KT` for the commutative semigroup `T = {z, a, b}` with `a² = a`, `b² = b`
/// and every other product equal to `z`.
pub fn fixture_t(field: ScalarField) -> ContractedAlgebra {
    let (z, a, b) = (0, 1, 2);
    let mut table = vec![vec![Some(z); 3]; 3];
    table[a][a] = Some(a);
    table[b][b] = Some(b);
    let semigroup = PartialSemigroup::new(3, table).expect("three elements");
    ContractedAlgebra::new(field, semigroup, vec!["z".into(), "a".into(), "b".into()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eaf_shifts_and_tensor() {
        let fx = fixture_eaf(ScalarField::Rationals);
        let r = &fx.algebra;
        let (e, a, f) = (r.element("e"), r.element("a"), r.element("f"));
        let right: Vec<usize> = [e, a, f].iter().map(|&x| r.right_shift_dim(x)).collect();
        let left: Vec<usize> = [e, a, f].iter().map(|&x| r.left_shift_dim(x)).collect();
        assert_eq!(right, vec![2, 1, 1]);
        assert_eq!(left, vec![1, 1, 2]);
        assert_eq!(r.right_shift(e), vec![(e, vec![e]), (a, vec![a])]);
        assert_eq!(r.right_shift(a), vec![(a, vec![f])]);
        assert_eq!(r.left_shift(f), vec![(a, vec![a]), (f, vec![f])]);
        assert_eq!(r.hat_tensor_dim(&fx.module), 0);
        let q = ScalarField::Rationals;
        let mut one = vec![q.zero(); 3];
        one[e] = q.one();
        one[f] = q.one();
        assert_eq!(r.identity(), Some(one));
    }

    #[test]
    fn t_fixture() {
        let q = ScalarField::Rationals;
        let r = fixture_t(q);
        let (z, a, b) = (0, 1, 2);
        assert_eq!(r.right_shift(a), vec![(z, vec![z, b]), (a, vec![a])]);
        assert_eq!(r.identity(), Some(vec![q.from_i64(-1), q.one(), q.one()]));
        let all = [z, a, b];
        assert_eq!(r.shift_tensor_dim(z, &all), 1);
        assert_eq!(r.shift_tensor_dim(a, &all), 2);
        assert_eq!(r.hat_tensor_dim(&all), 5);
    }
}
