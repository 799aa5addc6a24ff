//! Bit-packed GF(2) matrices. Row addition is a word-wise XOR.

use std::fmt;

use crate::field::{Field, Gf2};
use crate::matrix::Matrix;
use crate::Binary;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "matrix dimension must be at least 1");
        let words = n.div_ceil(WORD);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        let w = &mut self.data[i * self.words + j / WORD];
        let mask = 1u64 << (j % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row[dst] ^= row[src]`
    #[inline]
    fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let w = self.words;
        if w == 1 {
            self.data[dst] ^= self.data[src];
            return;
        }
        let (d, s) = if dst > src {
            let (head, tail) = self.data.split_at_mut(dst * w);
            (&mut tail[..w], &head[src * w..(src + 1) * w])
        } else {
            let (head, tail) = self.data.split_at_mut(src * w);
            (&mut head[dst * w..(dst + 1) * w], &tail[..w])
        };
        for (a, b) in d.iter_mut().zip(s) {
            *a ^= b;
        }
    }

    pub fn is_regular(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    /// The GF(2) regular-constructor step, in place.
    pub fn regularize_in_place(&mut self) {
        for i in 0..self.n {
            self.set(i, i, false);
            for k in i + 1..self.n {
                if self.get(k, i) {
                    self.xor_row(k, i);
                }
            }
            self.set(i, i, true);
        }
    }

    pub fn regularize(&self) -> Self {
        let mut m = self.clone();
        m.regularize_in_place();
        m
    }

    /// Row `i` becomes the XOR of the rows `j` it reads, earlier rows already
    /// replaced.
    pub fn seq_matrix(&self) -> Self {
        let mut c = BitMatrix::identity(self.n);
        let mut acc = vec![0u64; self.words];
        for i in 0..self.n {
            acc.fill(0);
            for j in 0..self.n {
                if self.get(i, j) {
                    for (a, b) in acc.iter_mut().zip(c.row(j)) {
                        *a ^= b;
                    }
                }
            }
            let w = self.words;
            c.data[i * w..(i + 1) * w].copy_from_slice(&acc);
        }
        c
    }

    /// `seq_matrix` with the diagonal forced to one.
    pub fn phi(&self) -> Self {
        let mut m = self.seq_matrix();
        for i in 0..self.n {
            m.set(i, i, true);
        }
        m
    }

    /// Number of off-diagonal cells, `n^2 - n`.
    pub fn off_diagonal_cells(n: usize) -> usize {
        n * n - n
    }

    /// Packs the off-diagonal entries, row-major, into an integer. Requires
    /// `n^2 - n <= 64`.
    pub fn off_diagonal_index(&self) -> u64 {
        assert!(Self::off_diagonal_cells(self.n) <= 64);
        let mut idx = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    idx |= (self.get(i, j) as u64) << bit;
                    bit += 1;
                }
            }
        }
        idx
    }

    /// Inverse of [`off_diagonal_index`](Self::off_diagonal_index), with ones
    /// on the diagonal.
    pub fn regular_from_index(n: usize, idx: u64) -> Self {
        assert!(Self::off_diagonal_cells(n) <= 64);
        let mut m = BitMatrix::identity(n);
        let mut bit = 0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m.set(i, j, idx >> bit & 1 == 1);
                    bit += 1;
                }
            }
        }
        m
    }

    pub fn to_matrix(&self) -> Matrix<Binary> {
        let data = (0..self.n * self.n)
            .map(|c| Gf2(self.get(c / self.n, c % self.n)))
            .collect();
        Matrix::new(Binary::new(), self.n, data).expect("square")
    }
}

impl<F: Field<Elem = Gf2>> From<&Matrix<F>> for BitMatrix {
    fn from(m: &Matrix<F>) -> Self {
        let mut b = BitMatrix::zeros(m.n());
        for (i, row) in m.rows().enumerate() {
            for (j, e) in row.iter().enumerate() {
                b.set(i, j, e.0);
            }
        }
        b
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
