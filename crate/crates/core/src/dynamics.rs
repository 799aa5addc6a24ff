//! The dynamical system `M -> regularize(M)` on regular GF(2) matrices.
//!
//! `phi` (sequential matrix with the diagonal reset to ones) is a left
//! inverse of `regularize` on regular matrices, so `regularize` permutes the
//! finite set of regular matrices and every orbit is a pure cycle through its
//! start. Orbit detection therefore only compares against the start;
//! [`orbit_checked`] additionally keeps every visited state and reports any
//! other recurrence as an invariant violation.

use std::collections::{BTreeMap, HashSet};

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::Binary;

/// Orbit length of a regular matrix under `regularize`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitReport {
    pub start: Matrix<Binary>,
    pub cycle_length: u64,
    /// Iteration bound that was in force.
    pub max_iter: u64,
}

fn regular_bits(m: &Matrix<Binary>) -> Result<BitMatrix> {
    let bits = BitMatrix::from(m);
    if !bits.is_regular() {
        return Err(Error::NotRegular);
    }
    Ok(bits)
}

pub fn phi(m: &Matrix<Binary>) -> Result<Matrix<Binary>> {
    Ok(regular_bits(m)?.phi().to_matrix())
}

/// Iterates `regularize` until the start recurs.
pub fn orbit(start: &Matrix<Binary>, max_iter: u64) -> Result<OrbitReport> {
    let origin = regular_bits(start)?;
    let mut cur = origin.clone();
    for step in 1..=max_iter {
        cur.regularize_in_place();
        if cur == origin {
            return Ok(OrbitReport {
                start: start.clone(),
                cycle_length: step,
                max_iter,
            });
        }
    }
    Err(Error::IterationLimit(max_iter))
}

/// [`orbit`] that remembers every state and fails if any state other than the
/// start repeats first.
pub fn orbit_checked(start: &Matrix<Binary>, max_iter: u64) -> Result<OrbitReport> {
    let origin = regular_bits(start)?;
    let mut seen = HashSet::new();
    seen.insert(origin.clone());
    let mut cur = origin.clone();
    for step in 1..=max_iter {
        cur.regularize_in_place();
        if cur == origin {
            return Ok(OrbitReport {
                start: start.clone(),
                cycle_length: step,
                max_iter,
            });
        }
        if !seen.insert(cur.clone()) {
            return Err(Error::InvariantViolation(format!(
                "orbit re-entered a non-initial state after {step} steps"
            )));
        }
    }
    Err(Error::IterationLimit(max_iter))
}

/// `[M0, d(M0), ..., d^steps(M0)]`.
pub fn trajectory(start: &Matrix<Binary>, steps: usize) -> Result<Vec<Matrix<Binary>>> {
    let mut cur = regular_bits(start)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(start.clone());
    for _ in 0..steps {
        cur.regularize_in_place();
        out.push(cur.to_matrix());
    }
    Ok(out)
}

/// Cycle structure of `regularize` over all regular `n x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// cycle length -> number of matrices lying on cycles of that length
    pub matrices_by_length: BTreeMap<u64, u64>,
}

impl Census {
    pub fn max_length(&self) -> u64 {
        self.matrices_by_length
            .keys()
            .next_back()
            .copied()
            .unwrap_or(0)
    }

    /// Number of distinct cycles of the given length.
    pub fn cycles(&self, length: u64) -> u64 {
        self.matrices_by_length
            .get(&length)
            .map_or(0, |m| m / length)
    }

    pub fn total(&self) -> u64 {
        self.matrices_by_length.values().sum()
    }
}

/// Largest `n` a census runs for without an explicit override.
pub const DEFAULT_CENSUS_LIMIT: usize = 5;
/// Hard ceiling: `2^30` states, a 128 MiB visited set.
pub const MAX_CENSUS_N: usize = 6;

pub fn census(n: usize, allow_large: bool) -> Result<Census> {
    let limit = if allow_large {
        MAX_CENSUS_N
    } else {
        DEFAULT_CENSUS_LIMIT
    };
    if n == 0 || n > limit {
        return Err(Error::GuardExceeded(format!(
            "census dimension {n} outside 1..={limit}"
        )));
    }
    let cells = BitMatrix::off_diagonal_cells(n);
    let states = 1u64 << cells;
    let mut visited = vec![0u64; (states as usize).div_ceil(64)];
    let mark = |visited: &mut [u64], idx: u64| -> bool {
        let (w, b) = ((idx / 64) as usize, idx % 64);
        let was = visited[w] >> b & 1 == 1;
        visited[w] |= 1 << b;
        was
    };

    let mut matrices_by_length = BTreeMap::new();
    for idx in 0..states {
        if mark(&mut visited, idx) {
            continue;
        }
        let mut cur = BitMatrix::regular_from_index(n, idx);
        let mut length = 1u64;
        loop {
            cur.regularize_in_place();
            let next = cur.off_diagonal_index();
            if next == idx {
                break;
            }
            if mark(&mut visited, next) {
                return Err(Error::InvariantViolation(format!(
                    "orbit of state {idx} entered state {next} which is not its start"
                )));
            }
            length += 1;
        }
        *matrices_by_length.entry(length).or_insert(0) += length;
    }
    Ok(Census {
        n,
        matrices_by_length,
    })
}
