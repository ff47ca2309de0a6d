//! Dense matrices over `F_q` with exact Gaussian elimination.

use std::fmt;

use thiserror::Error;

use crate::gf::{Fe, FieldSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("matrices over different fields")]
    FieldMismatch,
}

fn mismatch(expected: impl fmt::Display, found: impl fmt::Display) -> LinalgError {
    LinalgError::DimensionMismatch { expected: expected.to_string(), found: found.to_string() }
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFq {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl MatrixFq {
    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(
        field: &FieldSpec,
        cols: usize,
        rows: impl IntoIterator<Item = Vec<Fe>>,
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::new();
        let mut n = 0;
        for row in rows {
            if row.len() != cols {
                return Err(mismatch(format!("row of length {cols}"), row.len()));
            }
            data.extend(row);
            n += 1;
        }
        Ok(MatrixFq { field: field.clone(), rows: n, cols, data })
    }

    /// Convenience constructor from small integers, reduced into the prime field.
    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(field, cols, rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fe> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(mismatch(format!("{} rows", self.cols), other.rows));
        }
        let k = &self.field;
        let mut out = Self::zeros(k, self.rows, other.cols);
        for r in 0..self.rows {
            for (i, &a) in self.row(r).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(i, c);
                    if !b.is_zero() {
                        let v = k.add(out.get(r, c), k.mul(a, b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Result<Vec<Fe>, LinalgError> {
        if v.len() != self.cols {
            return Err(mismatch(format!("vector of length {}", self.cols), v.len()));
        }
        let k = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(Fe::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b)))
            })
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch(
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        let k = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| k.sub(a, b)).collect();
        Ok(MatrixFq { field: k.clone(), rows: self.rows, cols: self.cols, data })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(mismatch(format!("{} columns", self.cols), other.cols));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatrixFq { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// `row[dst] -= f * row[src]`, starting at column `from`.
    fn eliminate(&mut self, dst: usize, src: usize, f: Fe, from: usize) {
        let k = &self.field;
        let cols = self.cols;
        for c in from..cols {
            let s = self.data[src * cols + c];
            if !s.is_zero() {
                let d = &mut self.data[dst * cols + c];
                *d = k.sub(*d, k.mul(f, s));
            }
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let k = self.field.clone();
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
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r {
                    let f = m.get(i, c);
                    if !f.is_zero() {
                        m.eliminate(i, r, f, c);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let k = self.field.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let f = m.get(i, c);
                if !f.is_zero() {
                    m.eliminate(i, r, k.mul(f, inv), c);
                }
            }
            r += 1;
        }
        r
    }

    /// Basis of the right kernel, one vector per column of the result.
    pub fn nullspace(&self) -> MatrixFq {
        let (r, pivots) = self.rref();
        let k = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(k, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, Fe::ONE);
            for (i, &p) in pivots.iter().enumerate() {
                out.set(p, j, k.neg(r.get(i, f)));
            }
        }
        out
    }

    /// One solution of `self * x = b`; free variables are set to zero.
    pub fn solve(&self, b: &[Fe]) -> Result<Vec<Fe>, LinalgError> {
        if b.len() != self.rows {
            return Err(mismatch(format!("right-hand side of length {}", self.rows), b.len()));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(LinalgError::Inconsistent);
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red.get(i, self.cols);
        }
        Ok(x)
    }
}

impl fmt::Display for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&x| self.field.format_elem(x)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Basis (as columns) of the vectors fixed by every operator.
pub fn fixed_space(field: &FieldSpec, n: usize, operators: &[MatrixFq]) -> Result<MatrixFq, LinalgError> {
    let id = MatrixFq::identity(field, n);
    let mut stacked = MatrixFq::zeros(field, 0, n);
    for m in operators {
        if m.rows() != n || m.cols() != n {
            return Err(mismatch(format!("{n}x{n}"), format!("{}x{}", m.rows(), m.cols())));
        }
        stacked = stacked.vstack(&m.sub(&id)?)?;
    }
    Ok(stacked.nullspace())
}
