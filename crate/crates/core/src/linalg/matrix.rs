use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

use super::field::{FieldTag, Scalar};

/// A dense row-major matrix over a single exact field.
///
/// Zero rows or zero columns are allowed; such matrices are the maps to and
/// from the zero space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldTag,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldTag, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldTag, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking length and field.
    pub fn from_entries(
        field: FieldTag,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch(bad.field(), field));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    /// Convenience constructor for integer matrices; panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(field: FieldTag, rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&v| field.from_i64(v)));
        }
        Matrix {
            rows: rows.len(),
            cols,
            field,
            entries,
        }
    }

    /// A single column built from a vector.
    pub fn column(field: FieldTag, v: &[Scalar]) -> Self {
        Matrix {
            rows: v.len(),
            cols: 1,
            field,
            entries: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        assert_eq!(v.field(), self.field, "field mismatch");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        }
    }

    /// Maps every entry into `field` (rationals reduce mod p).
    pub fn convert(&self, field: FieldTag) -> Result<Matrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| field.convert(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            entries,
            field,
            ..*self
        })
    }

    /// Horizontal concatenation; all blocks need the same row count.
    pub fn hstack(field: FieldTag, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.put_block(0, offset, b);
            offset += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks need the same column count.
    pub fn vstack(field: FieldTag, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.put_block(offset, 0, b);
            offset += b.rows;
        }
        out
    }

    pub fn block_diag(field: FieldTag, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.put_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(row, col)`.
    pub fn put_block(&mut self, row: usize, col: usize, block: &Matrix) {
        assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.entries[(row + r) * self.cols + col + c] = block.get(r, c).clone();
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for r in rows.clone() {
            entries.extend_from_slice(&self.row(r)[cols.clone()]);
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            entries,
        }
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form with its pivot columns.
    ///
    /// Pivoting is deterministic: columns are scanned left to right and the
    /// first row at or below the current one with a nonzero entry is used.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        if let FieldTag::Prime(m) = self.field {
            return self.rref_in_place_mod(u64::from(m.get()));
        }
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| !self.entries[r * cols + col].is_zero())
            else {
                continue;
            };
            self.swap_rows(found, pivot_row);

            let inv = self.entries[pivot_row * cols + col]
                .inv()
                .expect("pivot is nonzero");
            let start = pivot_row * cols;
            // Entries left of `col` in the pivot row are already zero.
            let mut support = Vec::new();
            for c in col..cols {
                let e = &mut self.entries[start + c];
                if !e.is_zero() {
                    *e = &*e * &inv;
                    support.push((c, e.clone()));
                }
            }

            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.entries[r * cols + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for (c, v) in &support {
                    let e = &mut self.entries[r * cols + c];
                    *e = &*e - &(&factor * v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    /// The same elimination on plain residues.
    fn rref_in_place_mod(&mut self, p: u64) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut e: Vec<u64> = self
            .entries
            .iter()
            .map(|s| u64::from(s.residue().expect("prime field entry")))
            .collect();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        let mut support = Vec::with_capacity(cols);
        for col in 0..cols {
            if pivot_row == rows {
                break;
            }
            let Some(found) = (pivot_row..rows).find(|&r| e[r * cols + col] != 0) else {
                continue;
            };
            if found != pivot_row {
                for c in 0..cols {
                    e.swap(found * cols + c, pivot_row * cols + c);
                }
            }
            let inv = inverse_mod(e[pivot_row * cols + col], p);
            let start = pivot_row * cols;
            support.clear();
            for c in col..cols {
                let v = &mut e[start + c];
                if *v != 0 {
                    *v = *v * inv % p;
                    support.push((c, *v));
                }
            }
            for r in 0..rows {
                if r == pivot_row {
                    continue;
                }
                let factor = e[r * cols + col];
                if factor == 0 {
                    continue;
                }
                let row = &mut e[r * cols..(r + 1) * cols];
                for &(c, v) in &support {
                    row[c] = (row[c] + p - factor * v % p) % p;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let field = self.field;
        self.entries = e.into_iter().map(|v| field.from_i64(v as i64)).collect();
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{v : self·v = 0}`.
    ///
    /// The basis is returned in reduced echelon form (as rows of a matrix
    /// whose leading entries are 1 and columns above/below them are clear),
    /// so it depends only on the null space itself.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (reduced, pivots) = self.rref();
        let field = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.get(r, free);
            }
            basis.push(v);
        }
        echelonize_rows(field, self.cols, basis)
    }

    /// One solution of `self·x = b`, free variables set to zero, or `None`
    /// when the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.rows,
                self.cols
            )));
        }
        let augmented = Matrix::hstack(
            self.field,
            self.rows,
            &[self, &Matrix::column(self.field, b)],
        );
        let (reduced, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Solves `self·X = rhs` column by column; `None` if any column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        let mut out = Matrix::zeros(self.field, self.cols, rhs.cols);
        for c in 0..rhs.cols {
            match self.solve(&rhs.column_vec(c))? {
                Some(x) => {
                    for (r, v) in x.into_iter().enumerate() {
                        out.entries[r * rhs.cols + c] = v;
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }
}

/// Reduced echelon form of a list of row vectors, zero rows dropped.
fn inverse_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut exp) = (1, a % p, p - 2);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub fn echelonize_rows(field: FieldTag, width: usize, rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return rows;
    }
    let n = rows.len();
    let m = Matrix::from_entries(field, n, width, rows.into_iter().flatten().collect())
        .expect("rows share the field and width");
    let (reduced, pivots) = m.rref();
    (0..pivots.len()).map(|r| reduced.row(r).to_vec()).collect()
}

impl<'a> Mul<&'a Matrix> for &'a Matrix {
    type Output = Matrix;

    /// Panics if the inner dimensions disagree.
    fn mul(self, rhs: &'a Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let field = self.field;
        let mut out = Matrix::zeros(field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.entries[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs.entries[k * rhs.cols + c];
                    if b.is_zero() {
                        continue;
                    }
                    let e = &mut out.entries[r * rhs.cols + c];
                    *e = &*e + &(a * b);
                }
            }
        }
        out
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Matrix> for &'a Matrix {
            type Output = Matrix;

            fn $method(self, rhs: &'a Matrix) -> Matrix {
                assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
                Matrix {
                    entries: self
                        .entries
                        .iter()
                        .zip(&rhs.entries)
                        .map(|(a, b)| a.$method(b))
                        .collect(),
                    ..self.clone()
                }
            }
        }
    };
}

elementwise!(Add, add);
elementwise!(Sub, sub);

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
