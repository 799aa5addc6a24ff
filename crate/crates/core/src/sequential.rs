//! Parallel and sequential interpretations of a matrix.
//!
//! The parallel image of `X` by `M` is `(M_1.X, ..., M_n.X)`. The sequential
//! image runs the rows as in-place assignments `x_i := M_i.X` for
//! `i = 1..n`, each one reading the values already overwritten by earlier
//! rows. [`Matrix::seq_matrix`] is the matrix whose parallel map equals that
//! sequential map.

use crate::error::Result;
use crate::field::Field;
use crate::matrix::{Matrix, Vector};
use crate::program::{Assignment, StraightLineProgram};

impl<F: Field> Matrix<F> {
    pub fn parallel_apply(&self, x: &Vector<F>) -> Result<Vector<F>> {
        self.check_vector(x)?;
        let entries = self.rows().map(|row| x.dot(row)).collect();
        Vector::new(self.field().clone(), entries)
    }

    /// The program `x_i := M_i.X` for `i = 1..n`.
    pub fn seq_program(&self) -> StraightLineProgram<F> {
        let mut p = StraightLineProgram::new(self.field().clone(), self.n());
        for (i, row) in self.rows().enumerate() {
            p.push_unchecked(Assignment::new(i, row.to_vec()));
        }
        p
    }

    pub fn seq_apply(&self, x: &Vector<F>) -> Result<Vector<F>> {
        self.check_vector(x)?;
        self.seq_program().apply(x)
    }

    pub fn seq_matrix(&self) -> Matrix<F> {
        self.seq_program().symbolic()
    }

    /// All diagonal entries equal one.
    pub fn is_regular(&self) -> bool {
        self.diagonal().all(|d| self.field().is_one(d))
    }

    /// Equal everywhere off the diagonal. Differently-sized matrices are
    /// never similar.
    pub fn is_similar(&self, other: &Self) -> bool {
        self.check_same(other).is_ok()
            && (0..self.n())
                .all(|i| (0..self.n()).all(|j| i == j || self.get(i, j) == other.get(i, j)))
    }

    pub fn with_unit_diagonal(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.n() {
            let one = m.field().one();
            m.set(i, i, one);
        }
        m
    }

    /// Same sequential mapping.
    pub fn seq_equivalent(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.seq_matrix() == other.seq_matrix())
    }
}
