//! Directed graphs as GF(2) adjacency matrices.
//!
//! Arc `(x_u, x_v)` is the entry `A[u][v] = 1`, read as "`x_u` reads `x_v`":
//! the arc `(x_{i+1}, x_i)` becomes the assignment `x_{i+1} := x_i`. A graph
//! is reflexive exactly when its adjacency matrix is regular.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::field::Gf2;
use crate::matrix::Matrix;
use crate::regularizer::regularize;
use crate::sequentializer::{preimage_search, SearchGuard};
use crate::Binary;

#[derive(Debug, Clone, PartialEq)]
pub struct Digraph {
    adjacency: Matrix<Binary>,
}

impl Digraph {
    pub fn new(adjacency: Matrix<Binary>) -> Self {
        Digraph { adjacency }
    }

    /// Graph on `n` vertices with the given 0-based arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut adjacency = Matrix::zeros(Binary::new(), n);
        for &(u, v) in arcs {
            adjacency.set(u, v, Gf2::ONE);
        }
        Digraph { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.n()
    }

    pub fn adjacency(&self) -> &Matrix<Binary> {
        &self.adjacency
    }

    pub fn into_adjacency(self) -> Matrix<Binary> {
        self.adjacency
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u, v).0
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |u| {
            (0..n)
                .filter(move |&v| self.has_arc(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn is_reflexive(&self) -> bool {
        self.adjacency.is_regular()
    }

    /// The graph this one sequentially constructs.
    pub fn constructs(&self) -> Digraph {
        Digraph {
            adjacency: self.adjacency.seq_matrix(),
        }
    }

    /// A sequential constructor of `self`.
    ///
    /// Reflexive graphs always have one: the regular constructor, whose
    /// construction equals `self` once the diagonal is reset to ones. Other
    /// graphs go through an exhaustive search for an exact constructor.
    pub fn constructor_of(&self, guard: SearchGuard) -> Result<Option<Digraph>> {
        if self.is_reflexive() {
            return Ok(Some(Digraph {
                adjacency: regularize(&self.adjacency)?,
            }));
        }
        Ok(preimage_search(&self.adjacency, guard)?.map(Digraph::new))
    }

    /// Both graphs construct the same graph.
    pub fn equivalent(&self, other: &Digraph) -> Result<bool> {
        self.adjacency.seq_equivalent(&other.adjacency)
    }

    fn check_interval(&self, p: usize, q: usize) -> Result<()> {
        if !(p < q && q < self.n()) {
            return Err(Error::Precondition(format!(
                "need p < q <= n, got p={} q={} n={}",
                p + 1,
                q + 1,
                self.n()
            )));
        }
        Ok(())
    }

    /// Rows `p+1..=q` each hold exactly the single arc `(x_r, x_{r-1})`.
    pub fn is_strict_chain(&self, p: usize, q: usize) -> bool {
        p < q
            && q < self.n()
            && (p + 1..=q).all(|r| (0..self.n()).all(|c| self.has_arc(r, c) == (c + 1 == r)))
    }

    /// Rows `p+1..=q` each hold exactly the arcs `(x_r, x_c)` for `p <= c < r`.
    pub fn is_strict_linear_order(&self, p: usize, q: usize) -> bool {
        p < q
            && q < self.n()
            && (p + 1..=q).all(|r| (0..self.n()).all(|c| self.has_arc(r, c) == (p <= c && c < r)))
    }

    /// Replaces the chain arc `(x_{i+1}, x_i)` by `(x_{i+1}, x_j)`, for a
    /// strict chain on `p..=q` with `p <= j <= i < q`. The result is
    /// sequentially equivalent to `self`.
    pub fn chain_rewrite(&self, p: usize, q: usize, i: usize, j: usize) -> Result<Digraph> {
        self.check_interval(p, q)?;
        if !self.is_strict_chain(p, q) {
            return Err(Error::Precondition(format!(
                "rows {}..{} are not a strict chain",
                p + 2,
                q + 1
            )));
        }
        if !(p <= i && i < q && p <= j && j <= i) {
            return Err(Error::Precondition(format!(
                "need p <= j <= i < q, got i={} j={}",
                i + 1,
                j + 1
            )));
        }
        let mut adjacency = self.adjacency.clone();
        adjacency.set(i + 1, i, Gf2::ZERO);
        adjacency.set(i + 1, j, Gf2::ONE);
        Ok(Digraph { adjacency })
    }

    /// Drops every arc of a strict linear order on `p..=q` except
    /// `(x_{p+1}, x_p)`. The result is sequentially equivalent to `self`.
    pub fn linorder_rewrite(&self, p: usize, q: usize) -> Result<Digraph> {
        self.check_interval(p, q)?;
        if !self.is_strict_linear_order(p, q) {
            return Err(Error::Precondition(format!(
                "rows {}..{} are not a strict linear order",
                p + 2,
                q + 1
            )));
        }
        let mut adjacency = self.adjacency.clone();
        for r in p + 2..=q {
            for c in p..r {
                adjacency.set(r, c, Gf2::ZERO);
            }
        }
        Ok(Digraph { adjacency })
    }

    /// DOT rendering: one node line per vertex, then arcs ordered by source
    /// and target.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph {\n");
        for v in 0..self.n() {
            writeln!(out, "  x{};", v + 1).unwrap();
        }
        for (u, v) in self.arcs() {
            writeln!(out, "  x{} -> x{};", u + 1, v + 1).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
