//! Dense matrices over an exact field.

use crate::error::{check_dim, Error, Result};
use crate::field::Field;
use crate::subspace::Subspace;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            check_dim(cols, row.len())?;
            data.extend(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            check_dim(rows, col.len())?;
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, f: impl Fn(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F::Elem) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(&self.field, self.rows, self.cols, |i, j| {
            self.field.neg(self.get(i, j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.cols, other.rows)?;
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = f.mul(a, other.get(k, j));
                    let sum = f.add(out.get(i, j), &prod);
                    out.set(i, j, sum);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        check_dim(self.cols, v.len())?;
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| dot(f, &self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect())
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        row_reduce(&self.field, &mut rows, self.cols).len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = row_reduce(&self.field, &mut rows, self.cols);
        let m = Self::from_rows(&self.field, self.cols, rows).expect("widths preserved");
        (m, pivots)
    }

    /// `{v : Mv = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace<F> {
        let f = &self.field;
        let mut rows = self.row_vecs();
        let pivots = row_reduce(f, &mut rows, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[r][free]);
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, vectors).expect("kernel vectors have matching length")
    }

    /// Column space in canonical form.
    pub fn image(&self) -> Subspace<F> {
        Subspace::span(&self.field, self.rows, self.column_vecs()).expect("columns have matching length")
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
                r
            })
            .collect();
        let pivots = row_reduce(f, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let inv_rows = rows.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(f, n, inv_rows).expect("square"))
    }

    /// Solves `self · x = b` for one particular `x`.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        check_dim(self.rows, b.len())?;
        let f = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = row_reduce(f, &mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Applies an entrywise map into another field.
    pub fn map_field<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix {
            field: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub(crate) fn ensure_same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

pub(crate) fn dot<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for (x, y) in a.iter().zip(b) {
        if f.is_zero(x) || f.is_zero(y) {
            continue;
        }
        acc = f.add(&acc, &f.mul(x, y));
    }
    acc
}

/// In-place Gauss-Jordan elimination to reduced row echelon form over the
/// first `ncols` columns. Zero rows are removed. Returns pivot columns, one
/// per remaining row.
pub(crate) fn row_reduce<F: Field>(f: &F, rows: &mut Vec<Vec<F::Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(&rows[r][c]).expect("pivot is nonzero");
        if !f.is_one(&rows[r][c]) {
            for x in rows[r].iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            &Rationals,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        let id = Matrix::identity(&Rationals, 3);
        assert_eq!(id.kernel().dim(), 0);
        let z = Matrix::zeros(&Rationals, 2, 2);
        assert_eq!(z.kernel().dim(), 2);
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        let k = m.kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![q(1, 1), q(-1, 2)]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(&Rationals, 2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        let x = m.solve(&[q(3, 1), q(6, 1)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![q(3, 1), q(6, 1)]);
        assert!(m.solve(&[q(1, 1), q(0, 1)]).unwrap().is_none());
    }

    #[test]
    fn rank_mod_p() {
        let f = PrimeField::new(3).unwrap();
        // rows (1,1) and (2,2) are dependent mod 3
        let m = Matrix::from_rows(&f, 2, vec![vec![1, 1], vec![2, 2]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn mismatched_product_is_rejected() {
        let a = Matrix::zeros(&Rationals, 2, 3);
        let b = Matrix::zeros(&Rationals, 2, 3);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch { .. })));
    }
}
