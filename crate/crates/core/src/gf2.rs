//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed little-endian into `u64` words: column `j` of row `i` is
//! bit `j % 64` of word `i * words_per_row + j / 64`. Padding bits past
//! `cols` are always zero, so whole-word popcounts are exact.

use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn word_count(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A dense binary matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = word_count(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from the support (column indices of the 1s) of each row.
    pub fn from_row_supports<S: AsRef<[usize]>>(cols: usize, supports: &[S]) -> Result<Self> {
        let mut m = Self::zeros(supports.len(), cols);
        for (i, support) in supports.iter().enumerate() {
            for &j in support.as_ref() {
                if j >= cols {
                    return Err(Error::IndexOutOfRange {
                        index: j,
                        limit: cols,
                    });
                }
                m.set(i, j, true);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from rows of 0/1 values. Any nonzero byte counts as 1.
    ///
    /// # Panics
    /// Panics if the rows have different lengths.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of `u64` words per packed row.
    #[inline]
    pub fn words_per_row(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.rows && col < self.cols, "({row}, {col}) out of range");
        (self.data[row * self.stride + col / WORD_BITS] >> (col % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.rows && col < self.cols, "({row}, {col}) out of range");
        let w = &mut self.data[row * self.stride + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    /// The packed words of row `i`.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_weight(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_weight(i)).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        let mut weights = vec![0; self.cols];
        for i in 0..self.rows {
            for j in self.row_support(i) {
                weights[j] += 1;
            }
        }
        weights
    }

    /// Column indices of the 1s in row `i`, ascending.
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &word) in self.row_words(i).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                out.push(k * WORD_BITS + w.trailing_zeros() as usize);
                w &= w - 1;
            }
        }
        out
    }

    /// Row indices of the 1s in column `j`, ascending.
    pub fn col_support(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    /// For every column, the rows it appears in.
    pub fn column_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.cols];
        for i in 0..self.rows {
            for j in self.row_support(i) {
                adj[j].push(i);
            }
        }
        adj
    }

    /// Columns packed as bit vectors over the rows (bit `i` = entry `(i, j)`).
    pub fn packed_columns(&self) -> Vec<Vec<u64>> {
        let words = word_count(self.rows);
        let mut out = vec![vec![0u64; words]; self.cols];
        for i in 0..self.rows {
            for j in self.row_support(i) {
                out[j][i / WORD_BITS] |= 1 << (i % WORD_BITS);
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_support(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// The matrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        self.check_columns(cols)?;
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                if self.get(i, j) {
                    m.set(i, k, true);
                }
            }
        }
        Ok(m)
    }

    /// The matrix formed by the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            m.row_words_mut(k).copy_from_slice(self.row_words(i));
        }
        m
    }

    /// Appends `extra` all-zero columns.
    pub fn pad_columns(&self, extra: usize) -> Self {
        let mut m = Self::zeros(self.rows, self.cols + extra);
        for i in 0..self.rows {
            let src = self.row_words(i);
            m.row_words_mut(i)[..src.len()].copy_from_slice(src);
        }
        m
    }

    pub fn push_row(&mut self, support: &[usize]) -> Result<()> {
        self.check_columns(support)?;
        self.data.extend(std::iter::repeat_n(0, self.stride));
        self.rows += 1;
        for &j in support {
            self.set(self.rows - 1, j, true);
        }
        Ok(())
    }

    fn check_columns(&self, cols: &[usize]) -> Result<()> {
        match cols.iter().find(|&&j| j >= self.cols) {
            Some(&j) => Err(Error::IndexOutOfRange {
                index: j,
                limit: self.cols,
            }),
            None => Ok(()),
        }
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.eliminate(false).len()
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut work = self.clone();
        let pivots = work.eliminate(true);
        (work, pivots)
    }

    /// Gauss-Jordan elimination in place. With `full` set, pivots are also
    /// cleared above, giving the reduced form.
    fn eliminate(&mut self, full: bool) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == self.rows {
                break;
            }
            let word = col / WORD_BITS;
            let mask = 1u64 << (col % WORD_BITS);
            let Some(p) = (next..self.rows).find(|&i| self.data[i * self.stride + word] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(p, next);
            let start = if full { 0 } else { next + 1 };
            for i in start..self.rows {
                if i != next && self.data[i * self.stride + word] & mask != 0 {
                    self.xor_row_into(next, i);
                }
            }
            pivots.push(col);
            next += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.stride {
            let v = self.data[src * self.stride + k];
            self.data[dst * self.stride + k] ^= v;
        }
    }

    /// Whether the selected columns are linearly independent over GF(2).
    /// A repeated index makes the selection dependent.
    pub fn columns_independent(&self, cols: &[usize]) -> Result<bool> {
        self.check_columns(cols)?;
        let words = word_count(self.rows);
        let vectors: Vec<Vec<u64>> = cols
            .iter()
            .map(|&j| {
                let mut v = vec![0u64; words];
                for i in 0..self.rows {
                    if self.get(i, j) {
                        v[i / WORD_BITS] |= 1 << (i % WORD_BITS);
                    }
                }
                v
            })
            .collect();
        Ok(vectors_independent(vectors))
    }

    /// Number of columns of each weight, indexed by weight.
    pub fn column_weight_histogram(&self) -> std::collections::BTreeMap<usize, usize> {
        let mut hist = std::collections::BTreeMap::new();
        for w in self.col_weights() {
            *hist.entry(w).or_insert(0) += 1;
        }
        hist
    }
}

/// Independence test for packed vectors of equal word length.
pub(crate) fn vectors_independent(mut vectors: Vec<Vec<u64>>) -> bool {
    let n = vectors.len();
    for i in 0..n {
        let Some((word, bit)) = lowest_set_bit(&vectors[i]) else {
            return false;
        };
        let (head, tail) = vectors.split_at_mut(i + 1);
        let pivot = &head[i];
        for v in tail {
            if v[word] >> bit & 1 == 1 {
                for (a, b) in v.iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
    }
    true
}

#[inline]
fn lowest_set_bit(v: &[u64]) -> Option<(usize, u32)> {
    v.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, w)| (k, w.trailing_zeros()))
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "." })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
