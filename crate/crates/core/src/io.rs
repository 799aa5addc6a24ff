//! Text formats.
//!
//! Matrix file:
//!
//! ```text
//! rational
//! n 3
//! 0 1 2
//! 3 4 5
//! 6 7 8
//! ```
//!
//! Coding files append one line, `fixups: r_1 .. r_n` (1-based, `0` for none)
//! or `perm: s_1 .. s_n` (1-based row images). Blank lines and lines starting
//! with `#` are ignored when reading.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::matrix::{Matrix, Vector};
use crate::sequentializer::{InSituCoding, PermCoding};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }

    /// Next meaningful line as `(1-based line number, trimmed text)`.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        self.inner
            .by_ref()
            .map(|(i, l)| (i + 1, l.trim()))
            .find(|(_, l)| !l.is_empty() && !l.starts_with('#'))
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str)> {
        self.next_line()
            .ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")))
    }
}

/// Reads only the field descriptor of a matrix or coding file.
pub fn peek_field(text: &str) -> Result<FieldSpec> {
    let (line, header) = Lines::new(text).expect("field descriptor")?;
    header
        .parse()
        .map_err(|e: Error| Error::parse(line, e.to_string()))
}

fn read_matrix<F: Field>(lines: &mut Lines<'_>) -> Result<Matrix<F>> {
    let (line, header) = lines.expect("field descriptor")?;
    let spec: FieldSpec = header
        .parse()
        .map_err(|e: Error| Error::parse(line, e.to_string()))?;
    let field = F::from_spec(spec).map_err(|e| Error::parse(line, e.to_string()))?;

    let (line, dim) = lines.expect("dimension line")?;
    let n = match dim.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", d] => d
            .parse::<usize>()
            .map_err(|_| Error::parse(line, format!("bad dimension {d:?}")))?,
        _ => {
            return Err(Error::parse(
                line,
                format!("expected \"n <dimension>\", found {dim:?}"),
            ))
        }
    };
    if n == 0 {
        return Err(Error::parse(line, "dimension must be at least 1"));
    }

    let mut data = Vec::with_capacity(n * n);
    for r in 0..n {
        let (line, row) = lines.expect(&format!("matrix row {}", r + 1))?;
        let words: Vec<&str> = row.split_whitespace().collect();
        if words.len() != n {
            return Err(Error::parse(
                line,
                format!("expected {n} entries, found {}", words.len()),
            ));
        }
        for w in words {
            let v = field
                .parse_elem(w)
                .ok_or_else(|| Error::parse(line, format!("invalid {spec} literal {w:?}")))?;
            data.push(v);
        }
    }
    Matrix::new(field, n, data)
}

fn expect_end(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next_line() {
        Some((line, extra)) => Err(Error::parse(
            line,
            format!("unexpected trailing content {extra:?}"),
        )),
        None => Ok(()),
    }
}

pub fn parse_matrix<F: Field>(text: &str) -> Result<Matrix<F>> {
    let mut lines = Lines::new(text);
    let m = read_matrix(&mut lines)?;
    expect_end(&mut lines)?;
    Ok(m)
}

/// A comma- or whitespace-separated list of scalars.
pub fn parse_vector<F: Field>(field: &F, text: &str) -> Result<Vector<F>> {
    let entries = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| {
            field
                .parse_elem(w)
                .ok_or_else(|| Error::parse(1, format!("invalid {} literal {w:?}", field.spec())))
        })
        .collect::<Result<Vec<_>>>()?;
    Vector::new(field.clone(), entries)
}

pub fn format_vector<F: Field>(v: &Vector<F>) -> String {
    let words: Vec<String> = v
        .entries()
        .iter()
        .map(|e| v.field().format_elem(e))
        .collect();
    words.join(" ")
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.field().spec())?;
        writeln!(f, "n {}", self.n())?;
        for row in self.rows() {
            let words: Vec<String> = row.iter().map(|e| self.field().format_elem(e)).collect();
            writeln!(f, "{}", words.join(" "))?;
        }
        Ok(())
    }
}

/// Either kind of coding file.
#[derive(Debug, Clone, PartialEq)]
pub enum Coding<F: Field> {
    InSitu(InSituCoding<F>),
    Perm(PermCoding<F>),
}

impl<F: Field> Coding<F> {
    pub fn matrix(&self) -> &Matrix<F> {
        match self {
            Coding::InSitu(c) => &c.matrix,
            Coding::Perm(c) => &c.matrix,
        }
    }
}

pub fn parse_coding<F: Field>(text: &str) -> Result<Coding<F>> {
    let mut lines = Lines::new(text);
    let matrix = read_matrix::<F>(&mut lines)?;
    let n = matrix.n();
    let (line, tail) = lines.expect("\"fixups:\" or \"perm:\" line")?;
    let (key, values) = tail.split_once(':').ok_or_else(|| {
        Error::parse(
            line,
            format!("expected \"fixups:\" or \"perm:\", found {tail:?}"),
        )
    })?;
    let values = values
        .split_whitespace()
        .map(|w| {
            w.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("bad index {w:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() != n {
        return Err(Error::parse(
            line,
            format!("expected {n} indices, found {}", values.len()),
        ));
    }
    let coding = match key.trim() {
        "fixups" => {
            let fixups = values.iter().map(|&r| r.checked_sub(1)).collect();
            let c = InSituCoding { matrix, fixups };
            c.validate()
                .map_err(|e| Error::parse(line, e.to_string()))?;
            Coding::InSitu(c)
        }
        "perm" => {
            if values.contains(&0) {
                return Err(Error::parse(line, "permutation entries are 1-based"));
            }
            let c = PermCoding {
                matrix,
                perm: values.iter().map(|s| s - 1).collect(),
            };
            c.validate()
                .map_err(|e| Error::parse(line, e.to_string()))?;
            Coding::Perm(c)
        }
        other => return Err(Error::parse(line, format!("unknown coding kind {other:?}"))),
    };
    expect_end(&mut lines)?;
    Ok(coding)
}

impl<F: Field> fmt::Display for InSituCoding<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)?;
        let r: Vec<String> = self
            .fixups_one_based()
            .iter()
            .map(usize::to_string)
            .collect();
        writeln!(f, "fixups: {}", r.join(" "))
    }
}

impl<F: Field> fmt::Display for PermCoding<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)?;
        let s: Vec<String> = self.perm.iter().map(|s| (s + 1).to_string()).collect();
        writeln!(f, "perm: {}", s.join(" "))
    }
}

impl<F: Field> fmt::Display for Coding<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coding::InSitu(c) => c.fmt(f),
            Coding::Perm(c) => c.fmt(f),
        }
    }
}
