//! Straight-line programs of in-place linear assignments.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{axpy, dot, Matrix, Vector};

/// One step `x_target := coeffs . X`, evaluated against the current state.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<F: Field> {
    pub target: usize,
    pub coeffs: Vec<F::Elem>,
}

impl<F: Field> Assignment<F> {
    pub fn new(target: usize, coeffs: Vec<F::Elem>) -> Self {
        Assignment { target, coeffs }
    }

    /// `x_target := x_target + x_source`
    pub fn add_into(field: &F, n: usize, target: usize, source: usize) -> Self {
        let mut coeffs = vec![field.zero(); n];
        coeffs[target] = field.one();
        coeffs[source] = field.add(&coeffs[source], &field.one());
        Assignment { target, coeffs }
    }
}

/// An ordered list of assignments over a single length-`n` state vector. No
/// auxiliary storage exists: every step overwrites exactly one component.
#[derive(Debug, Clone, PartialEq)]
pub struct StraightLineProgram<F: Field> {
    field: F,
    n: usize,
    steps: Vec<Assignment<F>>,
}

impl<F: Field> StraightLineProgram<F> {
    pub fn new(field: F, n: usize) -> Self {
        assert!(n > 0, "program dimension must be at least 1");
        StraightLineProgram {
            field,
            n,
            steps: Vec::new(),
        }
    }

    pub fn push(&mut self, step: Assignment<F>) -> Result<()> {
        if step.coeffs.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: step.coeffs.len(),
            });
        }
        if step.target >= self.n {
            return Err(Error::Precondition(format!(
                "assignment target x{} outside x1..x{}",
                step.target + 1,
                self.n
            )));
        }
        self.steps.push(step);
        Ok(())
    }

    pub(crate) fn push_unchecked(&mut self, step: Assignment<F>) {
        debug_assert!(step.coeffs.len() == self.n && step.target < self.n);
        self.steps.push(step);
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Assignment<F>] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Runs the program in place on a copy of `x`: one state vector and one
    /// accumulator.
    pub fn apply(&self, x: &Vector<F>) -> Result<Vector<F>> {
        if *x.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.spec(),
                right: x.field().spec(),
            });
        }
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut state = x.clone();
        for step in &self.steps {
            let acc = dot(&self.field, &step.coeffs, state.entries());
            state.entries_mut()[step.target] = acc;
        }
        Ok(state)
    }

    /// The matrix `C` with `C . X = self.apply(X)` for all `X`.
    ///
    /// Starts from the identity and, for each step `(t, R)`, replaces row `t`
    /// of `C` with `R . C`.
    pub fn symbolic(&self) -> Matrix<F> {
        let field = &self.field;
        let mut c = Matrix::identity(field.clone(), self.n);
        let mut row = vec![field.zero(); self.n];
        for step in &self.steps {
            row.fill(field.zero());
            for (j, coeff) in step.coeffs.iter().enumerate() {
                if !field.is_zero(coeff) {
                    axpy(field, &mut row, coeff, c.row(j));
                }
            }
            c.set_row(step.target, &row);
        }
        c
    }
}

/// Renders the right-hand side `c1*x1 + ... + cn*xn`.
pub fn format_linear<F: Field>(field: &F, coeffs: &[F::Elem]) -> String {
    let mut out = String::new();
    for (j, c) in coeffs.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        let text = field.format_elem(c);
        let (negative, magnitude) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text.as_str()),
        };
        match (out.is_empty(), negative) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if magnitude != "1" {
            out.push_str(magnitude);
            out.push('*');
        }
        out.push_str(&format!("x{}", j + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<F: Field> fmt::Display for StraightLineProgram<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            writeln!(
                f,
                "x{} := {}",
                step.target + 1,
                format_linear(&self.field, &step.coeffs)
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Binary, Rationals};

    fn q() -> Rationals {
        Rationals::new()
    }

    fn program(rows: &[(usize, [i64; 3])]) -> StraightLineProgram<Rationals> {
        let mut p = StraightLineProgram::new(q(), 3);
        for (t, r) in rows {
            p.push(Assignment::new(
                *t,
                r.iter().map(|&v| q().from_i64(v)).collect(),
            ))
            .unwrap();
        }
        p
    }

    #[test]
    fn empty_program_is_identity() {
        let p = StraightLineProgram::new(q(), 3);
        let x = Vector::from_i64(q(), &[4, -1, 7]).unwrap();
        assert_eq!(p.apply(&x).unwrap(), x);
        assert_eq!(p.symbolic(), Matrix::identity(q(), 3));
    }

    #[test]
    fn single_substitution() {
        let mut p = StraightLineProgram::new(q(), 2);
        p.push(Assignment::new(0, vec![q().from_i64(0), q().from_i64(1)]))
            .unwrap();
        assert_eq!(
            p.symbolic(),
            Matrix::from_i64(q(), &[[0, 1], [0, 1]]).unwrap()
        );
    }

    #[test]
    fn four_step_program_computes_target_map() {
        // a := -a - b; b := -a + c; c := -3a + 2c; a := a + b
        let p = program(&[
            (0, [-1, -1, 0]),
            (1, [-1, 0, 1]),
            (2, [-3, 0, 2]),
            (0, [1, 1, 0]),
        ]);
        let expected = Matrix::from_i64(q(), &[[0, 0, 1], [1, 1, 1], [3, 3, 2]]).unwrap();
        assert_eq!(p.symbolic(), expected);
        for j in 0..3 {
            let e = Vector::unit(q(), 3, j);
            let col: Vec<_> = (0..3).map(|i| expected.get(i, j).clone()).collect();
            assert_eq!(p.apply(&e).unwrap().into_entries(), col);
        }
        assert_eq!(
            p.to_string(),
            "x1 := -x1 - x2\nx2 := -x1 + x3\nx3 := -3*x1 + 2*x3\nx1 := x1 + x2\n"
        );
    }

    #[test]
    fn rejects_bad_steps_and_inputs() {
        let mut p = StraightLineProgram::new(q(), 2);
        assert!(matches!(
            p.push(Assignment::new(0, vec![q().zero()])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            p.push(Assignment::new(2, vec![q().zero(); 2])),
            Err(Error::Precondition(_))
        ));
        let x = Vector::from_i64(q(), &[1, 2, 3]).unwrap();
        assert!(matches!(p.apply(&x), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn formatting_rules() {
        let f = q();
        let row: Vec<_> = [0, 0, 0].iter().map(|&v| f.from_i64(v)).collect();
        assert_eq!(format_linear(&f, &row), "0");
        let half = f.parse_elem("-1/2").unwrap();
        assert_eq!(
            format_linear(&f, &[half, f.one(), f.zero()]),
            "-1/2*x1 + x2"
        );
        let b = Binary::new();
        assert_eq!(format_linear(&b, &[b.one(), b.zero(), b.one()]), "x1 + x3");
        let add = Assignment::add_into(&b, 3, 0, 2);
        assert_eq!(add.coeffs, vec![b.one(), b.zero(), b.one()]);
    }
}
