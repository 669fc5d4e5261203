use std::fmt;

use super::scalar::{Scalar, ScalarField};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
///
/// Linear maps act on column vectors: a map `V -> W` is stored with
/// `dim W` rows and `dim V` columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: ScalarField,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: ScalarField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: ScalarField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed when there are no rows.
    pub fn from_rows(field: ScalarField, cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::dimension(format!("row {i} has length {} but expected {cols}", row.len())));
            }
            for s in &row {
                if s.field() != field {
                    return Err(Error::invalid(format!("entry {s} is not in {field}")));
                }
            }
            entries.extend(row);
        }
        Ok(Matrix { field, rows: nrows, cols, entries })
    }

    /// Convenience constructor from small integers. Panics on ragged input.
    pub fn from_i64(field: ScalarField, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&v| field.from_i64(v)).collect()
            })
            .collect();
        Matrix::from_rows(field, cols, data).expect("shape checked above")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: ScalarField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(field, rows, cols);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.entries[i * cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> ScalarField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length does not match matrix columns");
        let mut out = vec![self.field.zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                o.add_mul(&self.entries[i * self.cols + j], vj);
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i * other.cols + j].add_mul(a, &other.entries[k * other.cols + j]);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix shapes must agree")
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes must agree");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { entries, ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes must agree");
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Matrix { entries, ..self.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        Matrix { entries, ..self.clone() }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix shapes must agree");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_mul(c, b);
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(other.row(i));
        }
        Matrix { field: self.field, rows: self.rows, cols, entries }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Block-diagonal matrix with the given blocks.
    pub fn block_diagonal(field: ScalarField, blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into position `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.entries[i * cols + j] = self.get(r0 + i, c0 + j).clone();
            }
        }
        out
    }

    /// Reduced row-echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            let pivot_row: Vec<Scalar> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    m.entries[i * m.cols + j].sub_mul(&factor, &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Some `X` with `self * X = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(Error::dimension(format!(
                "solve needs equal row counts, got {} and {}",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b).rref();
        if aug.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &p) in aug.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, aug.matrix.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    /// Null space of the matrix (vectors `v` with `self * v = 0`).
    pub fn kernel(&self) -> Subspace {
        let red = self.rref();
        let mut vectors = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut s = vec![false; self.cols];
            for &p in &red.pivots {
                s[p] = true;
            }
            s
        };
        for f in (0..self.cols).filter(|&c| !pivot_set[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[f] = self.field.one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.matrix.get(i, f);
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.field, self.cols, vectors)
    }

    /// Column space as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, self.columns())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.rows
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        self.solve(&Matrix::identity(self.field, self.rows)).ok().flatten().filter(|x| self.mul(x).is_identity())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: ScalarField = ScalarField::Rationals;

    #[test]
    fn rref_identity_and_proportional_rows() {
        let id = Matrix::identity(Q, 2);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);

        let m = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::from_i64(Q, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn rref_over_f2() {
        let f2 = ScalarField::Prime(2);
        let m = Matrix::from_i64(f2, &[vec![1, 1], vec![1, 0]]);
        let r = m.rref();
        assert_eq!(r.matrix, Matrix::identity(f2, 2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn solve_examples() {
        let b = Matrix::from_i64(Q, &[vec![3, 1], vec![-2, 5]]);
        assert_eq!(Matrix::identity(Q, 2).solve(&b).unwrap(), Some(b.clone()));

        let a = Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]);
        let b = Matrix::from_i64(Q, &[vec![1], vec![2]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, Matrix::from_i64(Q, &[vec![1], vec![0]]));
        assert_eq!(a.mul(&x), b);

        let b = Matrix::from_i64(Q, &[vec![1], vec![3]]);
        assert_eq!(a.solve(&b).unwrap(), None);

        let wrong = Matrix::from_i64(Q, &[vec![1]]);
        assert!(matches!(a.solve(&wrong), Err(Error::Dimension(_))));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 3).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(Q, 2, 3).kernel().dim(), 3);
        let k = Matrix::from_i64(Q, &[vec![1, 2]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis(), Matrix::from_i64(Q, &[vec![-2, 1]]).rref().matrix);
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_i64(Q, &[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_i64(Q, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }
}
