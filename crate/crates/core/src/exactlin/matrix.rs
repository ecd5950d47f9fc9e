use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{FieldSpec, Scalar};
use crate::error::{KronError, Result};

/// Dense row-major matrix over an exact field. Zero-row and zero-column
/// matrices are ordinary values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    field: FieldSpec,
}

fn as_rational(x: &Scalar) -> &BigRational {
    match x {
        Scalar::Rational(q) => q,
        Scalar::Mod(_) => unreachable!("modular entry in a rational matrix"),
    }
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(KronError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.contains(x)) {
            return Err(KronError::Parse(format!("entry {bad:?} is not in {field}")));
        }
        Ok(Matrix { rows, cols, data, field })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![field.zero(); rows * cols], field }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_fn(field: FieldSpec, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data, field }
    }

    /// Convenience constructor from small integers (reduced into the field).
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    /// A single column.
    pub fn column_vector(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Matrix { rows: n, cols: 1, data: entries, field }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        assert_eq!(self.field, other.field, "matrix product field mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k * other.cols + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                }
            }
        }
        out
    }

    fn zip_with(&self, other: &Matrix, op: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix shape mismatch");
        assert_eq!(self.field, other.field, "matrix field mismatch");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| op(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data, field: self.field }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.neg(x)).collect(), ..self.clone() }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let f = self.field;
        Matrix { data: self.data.iter().map(|x| f.mul(x, s)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Horizontal concatenation; all blocks must share the row count.
    pub fn hstack(field: FieldSpec, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.set_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.set_block(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.data[i * block.cols + j].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn column(&self, j: usize) -> Matrix {
        self.select_columns(&[j])
    }

    pub fn columns(&self, start: usize, len: usize) -> Matrix {
        self.block(0, start, self.rows, len)
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first `pivot_cols` columns.
    fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        if self.field == FieldSpec::Rationals {
            return self.rref_rational(pivot_cols);
        }
        self.rref_generic(pivot_cols)
    }

    fn rref_generic(&mut self, pivot_cols: usize) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(&self.data[i * cols + c])) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(&self.data[r * cols + c]);
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = f.mul(&self.data[idx], &inv);
            }
            let pivot_row: Vec<Scalar> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..cols {
                    if f.is_zero(&pivot_row[j]) {
                        continue;
                    }
                    let idx = i * cols + j;
                    self.data[idx] = f.sub(&self.data[idx], &f.mul(&factor, &pivot_row[j]));
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Gauss-Jordan over the rationals carried out on integer rows. Rows are
    /// cleared of denominators, each updated row is divided by its content,
    /// and pivot rows are normalised at the end.
    fn rref_rational(&mut self, pivot_cols: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut ints: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let row = &self.data[i * cols..(i + 1) * cols];
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(as_rational(x).denom()));
                row.iter()
                    .map(|x| {
                        let q = as_rational(x);
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !ints[i][c].is_zero()) else {
                continue;
            };
            ints.swap(p, r);
            let piv = ints[r][c].clone();
            let pivot_row = ints[r].clone();
            for (i, row) in ints.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let g = piv.gcd(&row[c]);
                let (mp, mf) = (&piv / &g, &row[c] / &g);
                let mut content = BigInt::zero();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !x.is_zero() {
                        *x *= &mp;
                    }
                    if !y.is_zero() {
                        *x -= &mf * y;
                    }
                    if !content.is_one() && !x.is_zero() {
                        content = content.gcd(x);
                    }
                }
                if !content.is_zero() && !content.is_one() {
                    for x in row.iter_mut() {
                        *x /= &content;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        for (i, row) in ints.into_iter().enumerate() {
            let d = if i < pivots.len() { row[pivots[i]].clone() } else { BigInt::one() };
            for (j, x) in row.into_iter().enumerate() {
                self.data[i * cols + j] = Scalar::Rational(BigRational::new(x, d.clone()));
            }
        }
        pivots
    }

    /// Determinant of a square matrix.
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(KronError::DimensionMismatch(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(&m.data[i * n + c])) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.data[c * n + c].clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv);
            for i in c + 1..n {
                let factor = f.mul(&m.data[i * n + c], &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(&m.data[i * n + j], &f.mul(&factor, &m.data[c * n + j]));
                    m.data[i * n + j] = v;
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per column, in column
    /// echelon normal form.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let f = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(&r[(i, fc)]));
            }
        }
        k.column_echelon()
    }

    /// Particular solution of `self · x = b` with free variables set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != b.rows {
            return Err(KronError::DimensionMismatch(format!(
                "system has {} rows but right-hand side has {}",
                self.rows, b.rows
            )));
        }
        let f = self.field;
        let mut aug = Matrix::hstack(f, self.rows, &[self, b]);
        let pivots = aug.rref_in_place(self.cols);
        let rank = pivots.len();
        for i in rank..self.rows {
            if (0..b.cols).any(|j| !f.is_zero(&aug[(i, self.cols + j)])) {
                return Ok(None);
            }
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, aug[(i, self.cols + j)].clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = self.field;
        let mut aug = Matrix::hstack(f, n, &[self, &Matrix::identity(f, n)]);
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    /// Basis of the column span in column echelon normal form (the transpose
    /// of the reduced row echelon form of the transpose, zero columns dropped).
    pub fn column_echelon(&self) -> Matrix {
        let (r, pivots) = self.transpose().rref();
        r.block(0, 0, pivots.len(), self.rows).transpose()
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Matrix) -> bool {
        let both = Matrix::hstack(self.field, self.rows, &[self, other]);
        both.rank() == self.rank()
    }

    /// Unit vectors completing the (independent) columns of `self` to a basis,
    /// chosen greedily in index order.
    pub fn complement_basis(&self) -> Matrix {
        let f = self.field;
        let n = self.rows;
        let mut current = self.clone();
        let mut rank = current.rank();
        let mut picked = Vec::new();
        for i in 0..n {
            if rank == n {
                break;
            }
            let mut e = Matrix::zeros(f, n, 1);
            e.set(i, 0, f.one());
            let trial = Matrix::hstack(f, n, &[&current, &e]);
            let r = trial.rank();
            if r > rank {
                current = trial;
                rank = r;
                picked.push(i);
            }
        }
        let mut c = Matrix::zeros(f, n, picked.len());
        for (j, &i) in picked.iter().enumerate() {
            c.set(i, j, f.one());
        }
        c
    }

    /// Basis of `{v : self · v ∈ span(w)}`.
    pub fn preimage(&self, w: &Matrix) -> Matrix {
        let f = self.field;
        let sys = Matrix::hstack(f, self.rows, &[self, &w.neg()]);
        let k = sys.kernel_basis();
        k.block(0, 0, self.cols, k.cols()).column_echelon()
    }

    /// Basis of the intersection of the column spans of `self` and `other`.
    pub fn intersect(&self, other: &Matrix) -> Matrix {
        let f = self.field;
        let sys = Matrix::hstack(f, self.rows, &[self, &other.neg()]);
        let k = sys.kernel_basis();
        self.mul(&k.block(0, 0, self.cols, k.cols())).column_echelon()
    }

    /// Row-major entries flattened into a column vector.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(field: FieldSpec, rows: usize, cols: usize, v: &[Scalar]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix { rows, cols, data: v.to_vec(), field }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Nested rows of formatted entries, used by the JSON encoding.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| self.field.format(x)).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}x{}{:?}", self.field, self.rows, self.cols, self.to_string_rows())
    }
}
