//! Dense exact linear algebra over GF(q).
//!
//! Subspaces are always represented by the nonzero rows of their reduced row
//! echelon form, so equality of subspaces is equality of matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Felt, Field};

/// Row-major dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Output of [`Matrix::rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    /// Reduced row echelon form, same shape as the input.
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Echelon {
    /// The nonzero rows of the echelon form.
    pub fn basis(&self) -> Matrix {
        self.matrix.top_rows(self.rank)
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    /// Builds a matrix from integer encodings, validating every entry.
    pub fn from_values(field: &Field, rows: usize, cols: usize, values: &[u32]) -> Result<Matrix> {
        if values.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} values for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let data = values
            .iter()
            .map(|&v| field.elem(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from rows of integer encodings.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        let flat: Vec<u32> = rows.iter().flatten().copied().collect();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::from_values(field, rows.len(), cols, &flat)
    }

    pub(crate) fn from_felts(field: &Field, rows: usize, cols: usize, data: Vec<Felt>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Stacks row vectors of equal length.
    pub fn from_row_vectors(field: &Field, cols: usize, rows: &[Vec<Felt>]) -> Result<Matrix> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(Matrix::from_felts(field, rows.len(), cols, data))
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Felt {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Felt) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Felt> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn values(&self) -> Vec<u32> {
        self.data.iter().map(|x| x.value()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn top_rows(&self, n: usize) -> Matrix {
        let n = n.min(self.rows);
        Matrix::from_felts(&self.field, n, self.cols, self.data[..n * self.cols].to_vec())
    }

    /// Columns listed in `cols`, in that order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix::from_felts(&self.field, self.rows + other.rows, self.cols, data))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} rows",
                v.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut out = vec![Felt::ZERO; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = f.add(*o, f.mul(a, x));
            }
        }
        Ok(out)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form by Gauss-Jordan elimination, taking the first
    /// nonzero entry of each column as pivot.
    pub fn rref(&self) -> Echelon {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = f.inv(m.get(lead, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(inv, m.get(lead, j));
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m.get(r, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(lead, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon {
            matrix: m,
            rank: lead,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<Felt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let f = self.field.clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Felt::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return Ok(Felt::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv).expect("pivot is nonzero");
            for r in c + 1..n {
                let factor = f.mul(m.get(r, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(c, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis (rows, in rref) of `{u : self * u = 0}`.
    pub fn right_kernel(&self) -> Matrix {
        let ech = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(f, free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            basis.set(i, fc, Felt::ONE);
            for (r, &pc) in ech.pivots.iter().enumerate() {
                basis.set(i, pc, f.neg(ech.matrix.get(r, fc)));
            }
        }
        basis.rref().basis()
    }

    /// Basis (rows, in rref) of `{v : v * self = 0}`.
    pub fn left_kernel(&self) -> Matrix {
        self.transpose().right_kernel()
    }

    /// Canonical basis of the row space.
    pub fn row_space(&self) -> Matrix {
        self.rref().basis()
    }

    pub fn row_space_equal(&self, other: &Matrix) -> Result<bool> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "row spaces in {} and {} columns",
                self.cols, other.cols
            )));
        }
        Ok(self.row_space() == other.row_space())
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &[Felt]) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let ech = self.rref();
        let f = &self.field;
        let mut rest = v.to_vec();
        for (r, &pc) in ech.pivots.iter().enumerate() {
            let a = rest[pc];
            if a.is_zero() {
                continue;
            }
            for (x, &b) in rest.iter_mut().zip(ech.matrix.row(r)) {
                *x = f.sub(*x, f.mul(a, b));
            }
        }
        Ok(rest.iter().all(|x| x.is_zero()))
    }

    /// Canonical basis of the intersection of two row spaces.
    pub fn intersect_row_spaces(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "row spaces in {} and {} columns",
                self.cols, other.cols
            )));
        }
        // U ∩ W is the annihilator of ann(U) + ann(W)
        let both = self.right_kernel().stack(&other.right_kernel())?;
        Ok(both.right_kernel())
    }
}
