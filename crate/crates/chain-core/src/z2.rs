//! Bit-packed linear algebra over Z/2.
//!
//! The mod-2 ring is the default for both flow-line counts and DGA work, so
//! it gets its own elimination path instead of going through Smith normal
//! form.  Rows are packed into `u64` words; all bases are chosen by
//! left-to-right (lexicographic) pivot order so downstream matrices are
//! reproducible.

use std::fmt;

/// Dense matrix over Z/2, rows packed into 64-bit words.
#[derive(Clone, PartialEq, Eq)]
pub struct Z2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>, // row-major blocks of `words` u64s
}

impl Z2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Z2Matrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build from an integer matrix, reducing entries mod 2.  Preserves the
    /// shape exactly (a dense `Vec<Vec<u8>>` would lose the column count of
    /// a zero-row matrix).
    pub fn from_int(m: &crate::matrix::IntMatrix) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        let dense = m.entries_mod2();
        for (i, row) in dense.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v == 1 {
                    out.set(i, j, true);
                }
            }
        }
        out
    }

    pub fn from_dense(entries: &[Vec<u8>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % 2 == 1);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    fn xor_row_into(&mut self, target: usize, source: usize) {
        let (t, s) = (target * self.words, source * self.words);
        for k in 0..self.words {
            let v = self.data[s + k];
            self.data[t + k] ^= v;
        }
    }

    pub fn mul(&self, other: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in Z/2 product");
        let mut out = Z2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for w in 0..other.words {
                        let v = other.data[k * other.words + w];
                        out.data[i * out.words + w] ^= v;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Z2Matrix) -> Z2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    pub fn transpose(&self) -> Z2Matrix {
        let mut out = Z2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    out.set(j, i, true);
                }
            }
        }
        out
    }

    /// Column `j` as a column vector.
    pub fn column(&self, j: usize) -> Z2Matrix {
        let mut out = Z2Matrix::zeros(self.rows, 1);
        for i in 0..self.rows {
            out.set(i, 0, self.get(i, j));
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Z2Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| self.get(i, c)) else {
                continue;
            };
            if p != r {
                let (a, b) = (p * self.words, r * self.words);
                for k in 0..self.words {
                    self.data.swap(a + k, b + k);
                }
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_row_into(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel, one column per free variable, in
    /// lexicographic (free-column) order.
    pub fn kernel_basis(&self) -> Z2Matrix {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Z2Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            basis.set(fc, k, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, fc) {
                    basis.set(pc, k, true);
                }
            }
        }
        basis
    }

    /// Solve `self · x = rhs` (rhs a column matrix, one system per column).
    /// Returns `None` if any system is inconsistent.
    pub fn solve(&self, rhs: &Z2Matrix) -> Option<Z2Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut aug = self.hcat(rhs);
        let pivots = aug.rref();
        // Any pivot in the rhs block means an inconsistent system.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Z2Matrix::zeros(self.cols, rhs.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }

    /// Indices of columns that enlarge the span when added left to right;
    /// deterministic column-space basis selection.
    pub fn independent_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref()
    }
}

impl fmt::Debug for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Z2Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: String = (0..self.cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        // [1 1; 0 0] has kernel spanned by (1,1).
        let m = Z2Matrix::from_dense(&[vec![1, 1], vec![0, 0]]);
        let k = m.kernel_basis();
        assert_eq!(k.ncols(), 1);
        assert!(m.mul(&k).is_zero());
        assert!(k.get(0, 0) && k.get(1, 0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Z2Matrix::from_dense(&[vec![1, 0], vec![1, 0]]);
        let good = Z2Matrix::from_dense(&[vec![1], vec![1]]);
        let bad = Z2Matrix::from_dense(&[vec![1], vec![0]]);
        let x = m.solve(&good).expect("consistent");
        assert_eq!(m.mul(&x), good);
        assert!(m.solve(&bad).is_none());
    }

    #[test]
    fn rank_and_rref_pivots() {
        let m = Z2Matrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        // kernel is spanned by (1,1,1)
        let k = m.kernel_basis();
        assert_eq!(k.ncols(), 1);
        assert!(m.mul(&k).is_zero());
    }
}
