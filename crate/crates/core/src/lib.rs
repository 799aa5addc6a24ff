//! Sequential (in-place) interpretation of matrices over exact fields.
//!
//! A square matrix `M` can be read two ways. Its *parallel* map sends `X` to
//! `(M_1.X, ..., M_n.X)` and needs a second output vector. Its *sequential*
//! map executes the rows as in-place assignments `x_i := M_i.X` in order
//! `i = 1..n`, using no storage beyond `X` itself.
//!
//! This crate provides:
//!
//! * exact fields: GF(2), GF(p), and arbitrary-precision rationals ([`field`]);
//! * the two interpretations and the matrix `M^s` whose parallel map equals
//!   the sequential map of `M` ([`Matrix::seq_matrix`]);
//! * a compiler from any linear map to an in-place program of at most
//!   `2n - 1` assignments, with compact codings ([`sequentializer`]);
//! * regular sequential constructors ([`regularizer`]), the GF(2) dynamics
//!   they induce ([`dynamics`]), and digraph rewrites that preserve
//!   sequential equivalence ([`graph`]).
//!
//! All algorithms are generic over the [`Field`] context; the aliases below
//! name the concrete instantiations.
//!
//! ```
//! use insitu::{Matrix, Rationals};
//!
//! let m = Matrix::from_i64(Rationals::new(), &[[0, 1, 2], [3, 4, 5], [6, 7, 8]]).unwrap();
//! let s = Matrix::from_i64(Rationals::new(), &[[0, 1, 2], [0, 7, 11], [0, 55, 97]]).unwrap();
//! assert_eq!(m.seq_matrix(), s);
//! ```

pub mod bits;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod program;
pub mod regularizer;
mod sequential;
pub mod sequentializer;

use num_rational::BigRational;

pub use bits::BitMatrix;
pub use error::{Error, Result};
pub use field::{ExactScalar, Field, FieldSpec, Gf2, PrimeField, Scalar, ScalarField};
pub use graph::Digraph;
pub use matrix::{Matrix, Vector};
pub use program::{Assignment, StraightLineProgram};
pub use sequentializer::{InSituCoding, PermCoding, SearchGuard};

/// GF(2).
pub type Binary = ScalarField<Gf2>;
/// The rationals, with arbitrary-precision numerators and denominators.
pub type Rationals = ScalarField<BigRational>;

pub type Gf2Matrix = Matrix<Binary>;
pub type GfpMatrix = Matrix<PrimeField>;
pub type RationalMatrix = Matrix<Rationals>;

pub type Gf2Vector = Vector<Binary>;
pub type GfpVector = Vector<PrimeField>;
pub type RationalVector = Vector<Rationals>;

pub type Gf2Program = StraightLineProgram<Binary>;
pub type GfpProgram = StraightLineProgram<PrimeField>;
pub type RationalProgram = StraightLineProgram<Rationals>;
