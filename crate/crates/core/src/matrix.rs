//! Dense square matrices and vectors over a [`Field`].
//!
//! Indices are 0-based in the Rust API. Text formats and program listings use
//! 1-based names (`x1 .. xn`).

use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::field::Field;

/// A length-`n` vector over one field.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<F: Field> {
    field: F,
    entries: Vec<F::Elem>,
}

impl<F: Field> Vector<F> {
    pub fn new(field: F, entries: Vec<F::Elem>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        Ok(Vector { field, entries })
    }

    pub fn zeros(field: F, n: usize) -> Self {
        assert!(n > 0, "vector length must be at least 1");
        let entries = vec![field.zero(); n];
        Vector { field, entries }
    }

    /// The basis vector `e_j`.
    pub fn unit(field: F, n: usize, j: usize) -> Self {
        let mut v = Self::zeros(field, n);
        v.entries[j] = v.field.one();
        v
    }

    pub fn from_i64(field: F, values: &[i64]) -> Result<Self> {
        let entries = values.iter().map(|&v| field.from_i64(v)).collect();
        Self::new(field, entries)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<F::Elem> {
        self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [F::Elem] {
        &mut self.entries
    }

    pub fn dot(&self, other: &[F::Elem]) -> F::Elem {
        dot(&self.field, &self.entries, other)
    }
}

pub(crate) fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .filter(|(c, _)| !field.is_zero(c))
        .fold(field.zero(), |acc, (c, x)| field.mul_add(&acc, c, x))
}

/// `row += c * other`
pub(crate) fn axpy<F: Field>(field: &F, row: &mut [F::Elem], c: &F::Elem, other: &[F::Elem]) {
    for (r, o) in row.iter_mut().zip(other) {
        if !field.is_zero(o) {
            *r = field.mul_add(r, c, o);
        }
    }
}

/// A dense `n x n` matrix, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    n: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Eq for Matrix<F> {}

impl<F: Field> Hash for Matrix<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.data.hash(state);
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(field: F, n: usize, data: Vec<F::Elem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Matrix { field, n, data })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Self::new(field, n, data)
    }

    /// Builds a matrix from integer literals, reduced into the field.
    pub fn from_i64<R: AsRef<[i64]>>(field: F, rows: &[R]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    pub fn zeros(field: F, n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        let data = vec![field.zero(); n * n];
        Matrix { field, n, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F::Elem) {
        self.data[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        let n = self.n;
        &mut self.data[i * n..(i + 1) * n]
    }

    pub fn set_row(&mut self, i: usize, row: &[F::Elem]) {
        self.row_mut(i).clone_from_slice(row);
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[F::Elem]> {
        self.data.chunks_exact(self.n)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.n;
        let (lo, hi) = (i.min(j), i.max(j));
        let (head, tail) = self.data.split_at_mut(hi * n);
        head[lo * n..(lo + 1) * n].swap_with_slice(&mut tail[..n]);
    }

    /// Row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let data = perm
            .iter()
            .flat_map(|&src| self.row(src).iter().cloned())
            .collect();
        Matrix {
            field: self.field.clone(),
            n: self.n,
            data,
        }
    }

    pub fn diagonal(&self) -> impl Iterator<Item = &F::Elem> {
        (0..self.n).map(move |i| self.get(i, i))
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        self.check_field(&other.field)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub(crate) fn check_field(&self, other: &F) -> Result<()> {
        if self.field != *other {
            return Err(Error::FieldMismatch {
                left: self.field.spec(),
                right: other.spec(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_vector(&self, x: &Vector<F>) -> Result<()> {
        self.check_field(x.field())?;
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        Ok(())
    }
}
