//! Dense matrices over an exact field: RREF, kernel, solve, inverse.
//!
//! Everything downstream leans on one canonical form: the reduced row echelon
//! form with zero rows removed. It is unique, so equality of row spaces is
//! literal equality of the canonical matrices.

use std::fmt;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows*cols");
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Matrix::new(field.clone(), rows, cols, vec![z; rows * cols])
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zero(field.clone(), n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let nrows = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "row length must equal cols");
            data.extend(r);
        }
        Matrix::new(field, nrows, cols, data)
    }

    /// Convenience constructor from signed integers.
    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        Matrix::new(field, rows, cols, data)
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zero(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(s, a)).collect();
        Matrix::new(self.field.clone(), self.rows, self.cols, data)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let f = &self.field;
        let mut out = Matrix::zero(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.get(k, c));
                    let v = f.add(out.get(r, c), &t);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// `v * M` for a row vector `v`.
    pub fn mul_row(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.rows, "row vector length must equal rows");
        let f = &self.field;
        let mut out = vec![f.zero(); self.cols];
        for (k, a) in v.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for c in 0..self.cols {
                let t = f.mul(a, self.get(k, c));
                out[c] = f.add(&out[c], &t);
            }
        }
        out
    }

    /// `M * v` for a column vector `v`.
    pub fn mul_col(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "column vector length must equal cols");
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        for r in 0..self.rows {
            let mut acc = f.zero();
            for c in 0..self.cols {
                let t = f.mul(self.get(r, c), &v[c]);
                acc = f.add(&acc, &t);
            }
            out[r] = acc;
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack needs equal row counts");
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = self.row(r).to_vec();
            row.extend_from_slice(other.row(r));
            rows.push(row);
        }
        Matrix::from_rows(self.field.clone(), self.cols + other.cols, rows)
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal col counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix::new(self.field.clone(), self.rows + other.rows, self.cols, data)
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn col_slice(&self, lo: usize, hi: usize) -> Self {
        assert!(lo <= hi && hi <= self.cols);
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            rows.push(self.row(r)[lo..hi].to_vec());
        }
        Matrix::from_rows(self.field.clone(), hi - lo, rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        *self == Matrix::identity(self.field.clone(), self.rows)
    }

    fn check_same_shape(&self, other: &Self) {
        assert_eq!(self.field, other.field, "field mismatch");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
    }

    /// Reduced row echelon form with zero rows removed, plus the pivot
    /// columns in strictly increasing order. The result is the unique
    /// canonical representative of the row space.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // find a pivot in column c at or below row r
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let t = f.mul(&factor, m.get(r, j));
                    let v = f.sub(m.get(i, j), &t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rows = pivots.len();
        m.data.truncate(rows * m.cols);
        m.rows = rows;
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis (as RREF rows) of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Self {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            rows.push(v);
        }
        let basis = Matrix::from_rows(f, self.cols, rows);
        basis.rref().0
    }

    /// One solution of `M v = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "rhs length must equal rows");
        let f = &self.field;
        let rhs = Matrix::from_rows(f.clone(), b.len(), vec![b.to_vec()]).transpose();
        let aug = self.hstack(&rhs);
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut v = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = r.get(i, self.cols).clone();
        }
        Some(v)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field.clone(), n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(r.col_slice(n, 2 * n))
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|e| self.field.format_elem(e)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
