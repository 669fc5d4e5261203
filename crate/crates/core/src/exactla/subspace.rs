use super::matrix::Matrix;
use super::scalar::{Scalar, ScalarField};
use crate::error::{Error, Result};

/// Incrementally maintained reduced row-echelon basis.
///
/// Rows are kept sorted by pivot column and every row is zero at the
/// pivots of the other rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    field: ScalarField,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: ScalarField, ambient: usize) -> Self {
        Echelon {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Subtracts the echelon rows from `v` so that `v` vanishes on all pivots.
    pub fn reduce_in_place(&self, v: &mut [Scalar]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                x.sub_mul(&c, r);
            }
        }
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector does not live in the ambient space");
        if self.is_full() {
            return false;
        }
        self.reduce_in_place(&mut v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[c].inv().expect("leading entry is nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for row in self.rows.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (r, x) in row.iter_mut().zip(&v) {
                r.sub_mul(&f, x);
            }
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.pivots.insert(pos, c);
        self.rows.insert(pos, v);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace { echelon: self }
    }
}

/// A subspace of `field^ambient`, stored by its canonical reduced
/// row-echelon basis so that equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    echelon: Echelon,
}

impl Subspace {
    pub fn zero(field: ScalarField, ambient: usize) -> Self {
        Echelon::new(field, ambient).into_subspace()
    }

    pub fn full(field: ScalarField, ambient: usize) -> Self {
        let mut e = Echelon::new(field, ambient);
        for i in 0..ambient {
            let mut v = vec![field.zero(); ambient];
            v[i] = field.one();
            e.rows.push(v);
            e.pivots.push(i);
        }
        e.into_subspace()
    }

    pub fn from_vectors<I>(field: ScalarField, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut e = Echelon::new(field, ambient);
        for v in vectors {
            if e.is_full() {
                break;
            }
            e.insert(v);
        }
        e.into_subspace()
    }

    /// Row span of `vectors`.
    pub fn span(vectors: &Matrix, ambient: usize) -> Result<Self> {
        if vectors.cols() != ambient {
            return Err(Error::dimension(format!(
                "vectors have length {} but the ambient dimension is {ambient}",
                vectors.cols()
            )));
        }
        Ok(Subspace::from_vectors(vectors.field(), ambient, vectors.row_vectors()))
    }

    pub fn field(&self) -> ScalarField {
        self.echelon.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.echelon.ambient
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.echelon.is_full()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.echelon.pivots
    }

    pub fn basis_vectors(&self) -> &[Vec<Scalar>] {
        &self.echelon.rows
    }

    /// Basis as a matrix whose rows are the basis vectors.
    pub fn basis(&self) -> Matrix {
        Matrix::from_rows(self.field(), self.ambient_dim(), self.echelon.rows.clone()).expect("rows have ambient length")
    }

    /// Basis as a matrix whose columns are the basis vectors (an injective map into the ambient space).
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.field(), self.ambient_dim(), &self.echelon.rows)
    }

    /// `v` minus its component along the echelon basis; zero iff `v` is in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        self.echelon.reduce_in_place(&mut w);
        w
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim(), "vector does not live in the ambient space");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.echelon.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim(), "coordinate count must equal dimension");
        let mut out = vec![self.field().zero(); self.ambient_dim()];
        for (c, row) in coords.iter().zip(&self.echelon.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                o.add_mul(c, r);
            }
        }
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() || self.field() != other.field() {
            return Err(Error::dimension(format!(
                "subspaces live in different ambient spaces ({} vs {})",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis_vectors().iter().all(|v| self.contains_vector(v)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon.clone();
        for v in other.basis_vectors() {
            e.insert(v.clone());
        }
        Ok(e.into_subspace())
    }

    /// Intersection by Zassenhaus: reduce `[[a, a], [b, 0]]`; rows with a
    /// vanishing left half carry the intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient_dim();
        let field = self.field();
        let mut e = Echelon::new(field, 2 * n);
        for v in self.basis_vectors() {
            let mut w = v.clone();
            w.extend(v.iter().cloned());
            e.insert(w);
        }
        for v in other.basis_vectors() {
            let mut w = v.clone();
            w.extend(std::iter::repeat(field.zero()).take(n));
            e.insert(w);
        }
        let vectors = e
            .rows
            .iter()
            .zip(&e.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(row, _)| row[n..].to_vec());
        Ok(Subspace::from_vectors(field, n, vectors))
    }

    pub fn ops(&self, other: &Subspace) -> Result<SubspaceOps> {
        Ok(SubspaceOps {
            contains: self.contains(other)?,
            equals: self == other,
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
        })
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim(), "map does not start at the ambient space");
        Subspace::from_vectors(self.field(), m.rows(), self.basis_vectors().iter().map(|v| m.apply(v)))
    }
}

/// The four comparisons of two subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub contains: bool,
    pub equals: bool,
    pub sum: Subspace,
    pub intersection: Subspace,
}

/// A quotient `V / W` with coordinates on the non-pivot columns of `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    relations: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(relations: Subspace) -> Self {
        let mut is_pivot = vec![false; relations.ambient_dim()];
        for &p in relations.pivots() {
            is_pivot[p] = true;
        }
        let free = (0..relations.ambient_dim()).filter(|&c| !is_pivot[c]).collect();
        Quotient { relations, free }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    /// Ambient coordinates whose unit vectors represent the quotient basis.
    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Coordinates of the class of `v`.
    pub fn class(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.relations.reduce(v);
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    /// The unit vector representing quotient basis element `k`.
    pub fn representative(&self, k: usize) -> Vec<Scalar> {
        let field = self.relations.field();
        let mut v = vec![field.zero(); self.ambient_dim()];
        v[self.free[k]] = field.one();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarField = ScalarField::Rationals;

    fn sp(rows: &[Vec<i64>], n: usize) -> Subspace {
        if rows.is_empty() {
            return Subspace::zero(Q, n);
        }
        Subspace::span(&Matrix::from_i64(Q, rows), n).unwrap()
    }

    #[test]
    fn span_examples() {
        assert!(sp(&[vec![0, 0], vec![0, 0]], 2).is_zero());
        assert!(sp(&[vec![1, 0], vec![1, 1]], 2).is_full());
        let s = sp(&[vec![2, 4]], 2);
        assert_eq!(s.basis(), Matrix::from_i64(Q, &[vec![1, 2]]));
        assert!(Subspace::span(&Matrix::from_i64(Q, &[vec![1, 2, 3]]), 2).is_err());
    }

    #[test]
    fn ops_examples() {
        let a = sp(&[vec![1, 0]], 2);
        let ops = a.ops(&a).unwrap();
        assert!(ops.equals && ops.contains);
        assert_eq!(ops.sum, a);
        assert_eq!(ops.intersection, a);

        let b = sp(&[vec![0, 1]], 2);
        let ops = a.ops(&b).unwrap();
        assert!(ops.sum.is_full());
        assert!(ops.intersection.is_zero());

        let a = sp(&[vec![1, 1, 0]], 3);
        let b = sp(&[vec![1, 1, 0], vec![0, 0, 1]], 3);
        assert!(b.contains(&a).unwrap());
        assert!(!a.contains(&b).unwrap());
        assert!(a.ops(&sp(&[vec![1]], 1)).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let a = sp(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = sp(&[vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert_eq!(a.intersection(&b).unwrap(), sp(&[vec![0, 1, 0]], 3));
        let c = sp(&[vec![1, 1, 1], vec![1, -1, 0]], 3);
        let i = a.intersection(&c).unwrap();
        assert_eq!(i, sp(&[vec![1, -1, 0]], 3));
    }

    #[test]
    fn coordinates_and_quotient() {
        let s = sp(&[vec![1, 1, 0], vec![0, 0, 1]], 3);
        let v = vec![Q.from_i64(2), Q.from_i64(2), Q.from_i64(-1)];
        let c = s.coordinates(&v).unwrap();
        assert_eq!(s.combine(&c), v);
        assert!(s.coordinates(&[Q.from_i64(1), Q.zero(), Q.zero()]).is_none());

        let q = Quotient::new(s);
        assert_eq!(q.dim(), 1);
        assert_eq!(q.class(&v), vec![Q.zero()]);
        let w = q.representative(0);
        assert_eq!(q.class(&w), vec![Q.one()]);
    }
}
