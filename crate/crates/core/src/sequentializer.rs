//! Compiling an arbitrary linear map into an in-place straight-line program.
//!
//! [`sequentialize`] emits at most `2n - 1` assignments. The first `n` are the
//! sequential program of a matrix (the coding matrix); the remaining ones are
//! fix-ups `x_i := x_i + x_j`, recorded as the list `r_1..r_n`.
//!
//! Part 1 walks `i = 1..n` over a working copy `W` of the target, whose rows
//! `i..n` always express the remaining targets in terms of the current state:
//!
//! * pivot `W_ii != 0`: emit `x_i := W_i.X`, then substitute the old `x_i`
//!   (recovered as `W_ii^-1 (x_i - rest)`) into every later row;
//! * dead column (`W_ii = 0` and no later row reads `x_i`): emit `W_i` as is;
//! * otherwise pick the smallest `j > i` with `W_ji != 0`, emit
//!   `x_i := (W_i - W_j).X`, whose pivot `-W_ji` is nonzero, substitute, and
//!   remember `r_i = j`. Part 2 later adds `x_j` back, once `x_j` is final.
//!
//! [`sequentialize_perm`] avoids Part 2 by exchanging rows instead, at the cost
//! of producing a row permutation of the target.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, Matrix};
use crate::program::{Assignment, StraightLineProgram};

/// `(matrix, r-list)` coding of a compiled program. `fixups[i] = Some(j)`
/// means the fix-up `x_i := x_i + x_j` with `j > i`.
#[derive(Debug, Clone, PartialEq)]
pub struct InSituCoding<F: Field> {
    pub matrix: Matrix<F>,
    pub fixups: Vec<Option<usize>>,
}

/// `(matrix, sigma)` coding of the row-exchange method: running the matrix
/// sequentially computes the target with row `i` taken from row `perm[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PermCoding<F: Field> {
    pub matrix: Matrix<F>,
    pub perm: Vec<usize>,
}

impl<F: Field> InSituCoding<F> {
    pub fn validate(&self) -> Result<()> {
        let n = self.matrix.n();
        if self.fixups.len() != n {
            return Err(Error::InvalidCoding(format!(
                "expected {n} fix-up entries, found {}",
                self.fixups.len()
            )));
        }
        for (i, r) in self.fixups.iter().enumerate() {
            if let Some(j) = *r {
                if j <= i || j >= n {
                    return Err(Error::InvalidCoding(format!(
                        "fix-up r_{} = {} must be 0 or in {}..{}",
                        i + 1,
                        j + 1,
                        i + 2,
                        n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Fix-ups as the 1-based list `r_1..r_n` with `0` meaning none.
    pub fn fixups_one_based(&self) -> Vec<usize> {
        self.fixups.iter().map(|r| r.map_or(0, |j| j + 1)).collect()
    }

    pub fn decode(&self) -> Result<StraightLineProgram<F>> {
        self.validate()?;
        let mut program = self.matrix.seq_program();
        let field = self.matrix.field();
        for i in (0..self.matrix.n()).rev() {
            if let Some(j) = self.fixups[i] {
                program.push_unchecked(Assignment::add_into(field, self.matrix.n(), i, j));
            }
        }
        Ok(program)
    }
}

impl<F: Field> PermCoding<F> {
    pub fn validate(&self) -> Result<()> {
        let n = self.matrix.n();
        let mut seen = vec![false; n];
        if self.perm.len() != n {
            return Err(Error::InvalidCoding(format!(
                "expected {n} permutation entries, found {}",
                self.perm.len()
            )));
        }
        for &s in &self.perm {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidCoding(
                    "perm is not a permutation of 1..n".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn decode(&self) -> Result<StraightLineProgram<F>> {
        self.validate()?;
        Ok(self.matrix.seq_program())
    }
}

/// `W_k += c * (e_i - R)` for every `k > i` with `c = scale * W_ki != 0`.
fn substitute<F: Field>(work: &mut Matrix<F>, i: usize, emitted: &[F::Elem], scale: &F::Elem) {
    let field = work.field().clone();
    let mut delta: Vec<F::Elem> = emitted.iter().map(|v| field.neg(v)).collect();
    delta[i] = field.add(&delta[i], &field.one());
    for k in i + 1..work.n() {
        let coeff = work.get(k, i).clone();
        if !field.is_zero(&coeff) {
            let c = field.mul(&coeff, scale);
            axpy(&field, work.row_mut(k), &c, &delta);
        }
    }
}

fn first_reader<F: Field>(work: &Matrix<F>, i: usize) -> Option<usize> {
    (i + 1..work.n()).find(|&k| !work.field().is_zero(work.get(k, i)))
}

/// Compiles `x := M.x` into at most `2n - 1` in-place assignments.
///
/// `symbolic()` of the returned program equals `target`, and the program is
/// `coding.decode()` step for step.
pub fn sequentialize<F: Field>(target: &Matrix<F>) -> (StraightLineProgram<F>, InSituCoding<F>) {
    let field = target.field().clone();
    let n = target.n();
    let mut work = target.clone();
    let mut fixups = vec![None; n];

    for i in 0..n {
        let pivot = work.get(i, i).clone();
        if let Some(inv) = field.inv(&pivot) {
            let row = work.row(i).to_vec();
            substitute(&mut work, i, &row, &inv);
        } else if let Some(j) = first_reader(&work, i) {
            let row: Vec<F::Elem> = work
                .row(i)
                .iter()
                .zip(work.row(j))
                .map(|(a, b)| field.sub(a, b))
                .collect();
            let inv = field.inv(&row[i]).expect("pivot -W_ji is nonzero");
            substitute(&mut work, i, &row, &inv);
            work.set_row(i, &row);
            fixups[i] = Some(j);
        }
    }

    let coding = InSituCoding {
        matrix: work,
        fixups,
    };
    let program = coding.decode().expect("fix-ups are produced in range");
    (program, coding)
}

/// Row-exchange variant: exactly `n` assignments computing the target with
/// its rows permuted. Row `i` of `program.symbolic()` is row `perm[i]` of
/// `target`.
pub fn sequentialize_perm<F: Field>(target: &Matrix<F>) -> (StraightLineProgram<F>, PermCoding<F>) {
    let field = target.field().clone();
    let n = target.n();
    let mut work = target.clone();
    let mut perm: Vec<usize> = (0..n).collect();

    for i in 0..n {
        if field.is_zero(work.get(i, i)) {
            if let Some(j) = first_reader(&work, i) {
                work.swap_rows(i, j);
                perm.swap(i, j);
            }
        }
        if let Some(inv) = field.inv(work.get(i, i)) {
            let row = work.row(i).to_vec();
            substitute(&mut work, i, &row, &inv);
        }
    }

    let program = work.seq_program();
    (program, PermCoding { matrix: work, perm })
}

/// Upper bound on the number of candidates [`preimage_search`] may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchGuard {
    pub max_candidates: u128,
}

impl Default for SearchGuard {
    /// `2^16` candidates: all 4x4 matrices over GF(2).
    fn default() -> Self {
        SearchGuard {
            max_candidates: 1 << 16,
        }
    }
}

impl SearchGuard {
    pub fn unlimited() -> Self {
        SearchGuard {
            max_candidates: u128::MAX,
        }
    }
}

/// Exhaustively looks for `P` with `P.seq_matrix() == target`, over a finite
/// field, in row-major lexicographic order of entries. Returns the first hit.
pub fn preimage_search<F: Field>(
    target: &Matrix<F>,
    guard: SearchGuard,
) -> Result<Option<Matrix<F>>> {
    let field = target.field().clone();
    let order = field.cardinality().ok_or(Error::UnsupportedField {
        required: "a finite field",
        found: field.spec(),
    })?;
    let n = target.n();
    let cells = n * n;
    match (order as u128).checked_pow(cells as u32) {
        Some(total) if total <= guard.max_candidates => {}
        _ => {
            return Err(Error::GuardExceeded(format!(
                "{order}^{cells} candidates exceed the limit of {}",
                guard.max_candidates
            )))
        }
    }

    // odometer over entry residues, last entry fastest
    let mut digits = vec![0u64; cells];
    let mut candidate = Matrix::zeros(field.clone(), n);
    loop {
        if candidate.seq_matrix() == *target {
            return Ok(Some(candidate));
        }
        let mut pos = cells;
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] = (digits[pos] + 1) % order;
            candidate.set(pos / n, pos % n, field.element(digits[pos]));
            if digits[pos] != 0 {
                break;
            }
        }
    }
}
