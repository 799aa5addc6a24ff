//! Regular sequential constructors.
//!
//! Given any target `M`, [`regularize`] builds a matrix `D` with ones on the
//! diagonal such that `D.seq_matrix()` agrees with `M` off the diagonal. It is
//! the sequentializing substitution where every critical pivot is forced to 1
//! instead of being repaired afterwards.

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::{axpy, Matrix, Vector};

/// Output of [`regularize_traced`]: the working matrix after each step.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularizeTrace<F: Field> {
    /// `steps[i]` is the working matrix once row `i` has been fixed.
    pub steps: Vec<Matrix<F>>,
}

impl<F: Field> RegularizeTrace<F> {
    pub fn result(&self) -> &Matrix<F> {
        self.steps.last().expect("at least one step")
    }
}

/// The GF(2) construction, verbatim:
///
/// ```text
/// for i = 1..n:
///     D_ii := 0
///     for k > i with D_ki = 1: D_k := D_k + D_i
///     D_ii := 1
/// ```
pub fn regularize<F: Field>(target: &Matrix<F>) -> Result<Matrix<F>> {
    Ok(regularize_traced(target)?.steps.pop().expect("n >= 1"))
}

/// [`regularize`], keeping every intermediate matrix.
pub fn regularize_traced<F: Field>(target: &Matrix<F>) -> Result<RegularizeTrace<F>> {
    let field = target.field().clone();
    if field.spec() != FieldSpec::Gf2 {
        return Err(Error::UnsupportedField {
            required: "gf2",
            found: field.spec(),
        });
    }
    let n = target.n();
    let mut d = target.clone();
    let mut steps = Vec::with_capacity(n);
    for i in 0..n {
        d.set(i, i, field.zero());
        let row = d.row(i).to_vec();
        for k in i + 1..n {
            if field.is_one(d.get(k, i)) {
                axpy(&field, d.row_mut(k), &field.one(), &row);
            }
        }
        d.set(i, i, field.one());
        steps.push(d.clone());
    }
    Ok(RegularizeTrace { steps })
}

/// Constructor with a prescribed invertible diagonal, over any field.
///
/// Row `i` of the result is the current working row `i` with its diagonal
/// replaced by `units[i]`; later rows then substitute the old `x_i`. With all
/// units equal to one over GF(2) this is exactly [`regularize`].
pub fn regularize_general<F: Field>(target: &Matrix<F>, units: &Vector<F>) -> Result<Matrix<F>> {
    Ok(general(target, units, false)?.steps.pop().expect("n >= 1"))
}

/// [`regularize_general`], keeping every intermediate matrix.
pub fn regularize_general_traced<F: Field>(
    target: &Matrix<F>,
    units: &Vector<F>,
) -> Result<RegularizeTrace<F>> {
    general(target, units, true)
}

fn general<F: Field>(
    target: &Matrix<F>,
    units: &Vector<F>,
    keep: bool,
) -> Result<RegularizeTrace<F>> {
    target.check_vector(units)?;
    let field = target.field().clone();
    let n = target.n();
    let mut inverses = Vec::with_capacity(n);
    for (i, u) in units.entries().iter().enumerate() {
        let inv = field
            .inv(u)
            .ok_or_else(|| Error::Precondition(format!("unit {} is zero", i + 1)))?;
        inverses.push(inv);
    }

    let mut work = target.clone();
    let mut steps = Vec::with_capacity(if keep { n } else { 1 });
    for i in 0..n {
        work.set(i, i, units.entries()[i].clone());
        // delta = e_i - R_i
        let mut delta: Vec<F::Elem> = work.row(i).iter().map(|v| field.neg(v)).collect();
        delta[i] = field.add(&delta[i], &field.one());
        for k in i + 1..n {
            let c = work.get(k, i).clone();
            if !field.is_zero(&c) {
                let scale = field.mul(&c, &inverses[i]);
                axpy(&field, work.row_mut(k), &scale, &delta);
            }
        }
        if keep && i + 1 < n {
            steps.push(work.clone());
        }
    }
    steps.push(work);
    Ok(RegularizeTrace { steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Binary, PrimeField, Rationals};

    fn gf2<R: AsRef<[i64]>>(rows: &[R]) -> Matrix<Binary> {
        Matrix::from_i64(Binary::new(), rows).unwrap()
    }

    #[test]
    fn worked_example_with_intermediates() {
        let m = gf2(&[[0, 1, 1], [1, 1, 0], [1, 0, 1]]);
        let trace = regularize_traced(&m).unwrap();
        assert_eq!(trace.steps[0], gf2(&[[1, 1, 1], [1, 0, 1], [1, 1, 0]]));
        assert_eq!(trace.steps[1], gf2(&[[1, 1, 1], [1, 1, 1], [0, 1, 1]]));
        let dm = trace.result();
        assert_eq!(*dm, gf2(&[[1, 1, 1], [1, 1, 1], [0, 1, 1]]));
        assert_eq!(dm.seq_matrix(), gf2(&[[1, 1, 1], [1, 0, 0], [1, 0, 1]]));
        assert!(dm.seq_matrix().is_similar(&m));
    }

    #[test]
    fn identity_is_fixed() {
        let id = Matrix::identity(Binary::new(), 6);
        assert_eq!(regularize(&id).unwrap(), id);
    }

    #[test]
    fn rejects_other_fields() {
        let m = Matrix::identity(Rationals::new(), 2);
        assert!(matches!(
            regularize(&m),
            Err(Error::UnsupportedField { .. })
        ));
        // GF(2) through the runtime prime field is accepted
        let m = Matrix::from_i64(PrimeField::new(2).unwrap(), &[[0, 1], [1, 0]]).unwrap();
        assert!(regularize(&m).unwrap().is_regular());
    }

    #[test]
    fn general_diagonal_identity() {
        let f = PrimeField::new(5).unwrap();
        let id = Matrix::identity(f, 3);
        let units = Vector::from_i64(f, &[2, 3, 4]).unwrap();
        let d = regularize_general(&id, &units).unwrap();
        assert_eq!(
            d,
            Matrix::from_i64(f, &[[2, 0, 0], [0, 3, 0], [0, 0, 4]]).unwrap()
        );
    }

    #[test]
    fn general_rejects_zero_unit() {
        let f = PrimeField::new(5).unwrap();
        let units = Vector::from_i64(f, &[1, 0, 1]).unwrap();
        assert!(matches!(
            regularize_general(&Matrix::identity(f, 3), &units),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn general_over_rationals() {
        let f = Rationals::new();
        let m = Matrix::from_i64(f, &[[0, 1, 2], [3, 0, 5], [6, 7, 0]]).unwrap();
        let units = Vector::from_i64(f, &[-1, 2, 3]).unwrap();
        let d = regularize_general(&m, &units).unwrap();
        assert_eq!(d.diagonal().cloned().collect::<Vec<_>>(), units.entries());
        assert!(d.seq_matrix().is_similar(&m));
    }

    #[test]
    fn general_matches_regularize_on_all_3x3() {
        let f = Binary::new();
        let ones = Vector::from_i64(f, &[1, 1, 1]).unwrap();
        for bits in 0u32..512 {
            let data = (0..9).map(|b| crate::Gf2(bits >> b & 1 == 1)).collect();
            let m = Matrix::new(f, 3, data).unwrap();
            assert_eq!(
                regularize_general(&m, &ones).unwrap(),
                regularize(&m).unwrap()
            );
            assert_eq!(
                regularize_general_traced(&m, &ones).unwrap(),
                regularize_traced(&m).unwrap()
            );
        }
    }
}
