//! Dense linear algebra over GF(2) with rows packed 64 bits to a word:
//! rank via Gaussian elimination, deterministic nullspace bases, and the two
//! products (matrix·vector, selected-row XOR) the descent criteria reduce to.

use crate::Error;

const WORD: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

/// A fixed-length bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_indices(len: usize, ones: &[usize]) -> Self {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of a machine word (len ≤ 64).
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= WORD);
        debug_assert!(len == WORD || mask < 1 << len);
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = mask;
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        if bit {
            self.words[i / WORD] |= 1 << (i % WORD);
        } else {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }

    /// Inverse of `from_mask` (len ≤ 64).
    pub fn as_mask(&self) -> u64 {
        assert!(self.len <= WORD);
        if self.len == 0 {
            0
        } else {
            self.words[0]
        }
    }

    /// GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }
}

/// A rows×cols matrix over GF(2), each row padded to whole words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols).max(1);
        BitMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.words[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.words[i * self.stride + j / WORD];
        if bit {
            *w |= 1 << (j % WORD);
        } else {
            *w &= !(1 << (j % WORD));
        }
    }

    /// Copy of row `i` as a vector of length `cols`.
    pub fn row(&self, i: usize) -> BitVec {
        assert!(i < self.rows);
        BitVec {
            len: self.cols,
            words: self.words[i * self.stride..(i + 1) * self.stride].to_vec(),
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Matrix · column vector (length cols → length rows).
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            out.set(i, self.row(i).dot(v));
        }
        out
    }

    /// XOR of the rows picked out by `select` (length rows → length cols).
    pub fn combine_rows(&self, select: &BitVec) -> BitVec {
        assert_eq!(select.len(), self.rows);
        let mut out = BitVec::zeros(self.cols);
        for i in select.iter_ones() {
            out.xor_assign(&self.row(i));
        }
        out
    }

    /// Row-reduces `words` in place; returns the pivot columns in the order
    /// encountered (strictly increasing). Full RREF: pivots are the only
    /// nonzero entries of their column.
    fn reduce(&self, words: &mut [u64]) -> Vec<usize> {
        let stride = self.stride;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let (w, b) = (col / WORD, col % WORD);
            let Some(src) = (pivot_row..self.rows).find(|&r| words[r * stride + w] >> b & 1 == 1)
            else {
                continue;
            };
            if src != pivot_row {
                for k in 0..stride {
                    words.swap(pivot_row * stride + k, src * stride + k);
                }
            }
            for r in 0..self.rows {
                if r != pivot_row && words[r * stride + w] >> b & 1 == 1 {
                    for k in 0..stride {
                        words[r * stride + k] ^= words[pivot_row * stride + k];
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut words = self.words.clone();
        self.reduce(&mut words).len()
    }

    /// Basis of {v : M·v = 0}, one vector per free column, in ascending
    /// free-column order; vector k has a 1 in its free column and the RREF
    /// column entries at the pivot columns. Deterministic by construction.
    pub fn column_nullspace_basis(&self) -> Vec<BitVec> {
        let mut words = self.words.clone();
        let pivots = self.reduce(&mut words);
        let is_pivot = {
            let mut flags = vec![false; self.cols];
            for &c in &pivots {
                flags[c] = true;
            }
            flags
        };
        let mut basis = Vec::with_capacity(self.cols - pivots.len());
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if words[r * self.stride + free / WORD] >> (free % WORD) & 1 == 1 {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of {w : wᵀ·M = 0}: the column nullspace of the transpose.
    pub fn row_nullspace_basis(&self) -> Vec<BitVec> {
        self.transpose().column_nullspace_basis()
    }
}

/// Whether `v` lies in the span of `basis` (all vectors the same length).
/// An empty basis spans only the zero vector.
pub fn in_span(basis: &[BitVec], v: &BitVec) -> Result<bool, Error> {
    for b in basis {
        if b.len() != v.len() {
            return Err(Error::LengthMismatch {
                expected: v.len(),
                got: b.len(),
            });
        }
    }
    if basis.is_empty() {
        return Ok(v.is_zero());
    }
    let m = BitMatrix::from_fn(basis.len(), v.len(), |i, j| basis[i].get(j));
    let with_v = BitMatrix::from_fn(basis.len() + 1, v.len(), |i, j| {
        if i < basis.len() {
            basis[i].get(j)
        } else {
            v.get(j)
        }
    });
    Ok(m.rank() == with_v.rank())
}
