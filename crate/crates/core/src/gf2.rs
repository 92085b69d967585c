//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are treated as row vectors. `solve` finds `x` with `x·m = b` and
//! `nullspace_basis` returns the left nullspace, so `r·m = 0` for every
//! returned row. The right kernel is available as [`BitMatrix::kernel`].

use std::fmt;

use crate::error::{Error, Result};

const W: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(W)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % W {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
pub(crate) fn xor_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

#[inline]
pub(crate) fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub(crate) fn dot_words(a: &[u64], b: &[u64]) -> bool {
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc ^= x & y;
    }
    acc.count_ones() & 1 == 1
}

/// A fixed-length vector over GF(2), packed little-endian into `u64` words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    #[must_use]
    pub fn ones(len: usize) -> Self {
        let mut v = Self { len, words: vec![u64::MAX; words_for(len)] };
        v.clear_tail();
        v
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Builds a vector with ones at the given positions. Repeated positions cancel.
    #[must_use]
    pub fn from_indices(len: usize, idx: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in idx {
            v.flip(i);
        }
        v
    }

    #[must_use]
    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters; other characters are ignored.
    #[must_use]
    pub fn from_bitstring(s: &str) -> Self {
        let bits: Vec<bool> = s.chars().filter(|c| *c == '0' || *c == '1').map(|c| c == '1').collect();
        Self::from_bools(&bits)
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = Self { len, words };
        v.clear_tail();
        v
    }

    fn clear_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / W] >> (i % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % W);
        if value {
            self.words[i / W] |= mask;
        } else {
            self.words[i / W] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / W] ^= 1u64 << (i % W);
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        popcount(&self.words)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product over GF(2).
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        dot_words(&self.words, &other.words)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        xor_into(&mut self.words, &other.words);
    }

    #[must_use]
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[must_use]
    pub fn and(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Self { len: self.len, words }
    }

    #[must_use]
    pub fn or(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect();
        Self { len: self.len, words }
    }

    /// Positions of set bits in increasing order.
    #[must_use]
    pub fn ones_indices(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * W + t)
                }
            })
        })
    }

    #[must_use]
    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    /// Restriction to the given positions, in the given order.
    #[must_use]
    pub fn select(&self, idx: &[usize]) -> Self {
        let mut v = Self::zeros(idx.len());
        for (k, &i) in idx.iter().enumerate() {
            if self.get(i) {
                v.set(k, true);
            }
        }
        v
    }

    /// Concatenation `[self | other]`.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut v = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            v.set(i, true);
        }
        for i in other.iter_ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Lowercase hex of the packed words, most significant word first.
    #[must_use]
    pub fn to_hex(&self) -> String {
        if self.words.is_empty() {
            return "0".to_string();
        }
        let mut s = String::with_capacity(self.words.len() * 16);
        for w in self.words.iter().rev() {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        write!(f, ")")
    }
}

/// A dense row-major GF(2) matrix. Each row occupies `stride` words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

/// Output of [`BitMatrix::row_reduce`].
#[derive(Clone, Debug)]
pub struct RowReduction {
    /// Reduced row echelon form, same shape as the input.
    pub rref: BitMatrix,
    /// Pivot column of each of the first `rank` rows of `rref`.
    pub pivots: Vec<usize>,
    /// Invertible `rows × rows` matrix with `transform · m = rref`.
    pub transform: BitMatrix,
}

impl RowReduction {
    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl BitMatrix {
    #[must_use]
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self { rows, cols, stride, data: vec![0; rows * stride] }
    }

    #[must_use]
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from equal-length rows. An empty slice yields a `0 × cols` matrix.
    pub fn from_rows(rows: &[BitVector], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has length {} but expected {cols}", r.len())));
            }
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    /// Builds a matrix from nested 0/1 slices; convenient in tests.
    #[must_use]
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged dense matrix");
            for (j, &b) in r.as_ref().iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix whose row `i` has ones at `supports[i]`.
    #[must_use]
    pub fn from_supports(cols: usize, supports: &[Vec<usize>]) -> Self {
        let mut m = Self::zeros(supports.len(), cols);
        for (i, s) in supports.iter().enumerate() {
            for &j in s {
                m.flip(i, j);
            }
        }
        m
    }

    #[must_use]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[must_use]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[must_use]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    #[must_use]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[must_use]
    pub fn row(&self, i: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = BitVector> + '_ {
        (0..self.rows).map(|i| self.row(i))
    }

    #[must_use]
    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if self.get(i, j) {
                v.set(i, true);
            }
        }
        v
    }

    #[inline]
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.data[i * self.stride + j / W] >> (j % W)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let mask = 1u64 << (j % W);
        let w = &mut self.data[i * self.stride + j / W];
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / W] ^= 1u64 << (j % W);
    }

    pub fn set_row(&mut self, i: usize, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        self.row_words_mut(i).copy_from_slice(v.words());
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row(&mut self, dst: usize, src: usize) {
        debug_assert_ne!(dst, src);
        let s = self.stride;
        if dst < src {
            let (a, b) = self.data.split_at_mut(src * s);
            xor_into(&mut a[dst * s..(dst + 1) * s], &b[..s]);
        } else {
            let (a, b) = self.data.split_at_mut(dst * s);
            xor_into(&mut b[..s], &a[src * s..(src + 1) * s]);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.data.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    #[must_use]
    pub fn row_weight(&self, i: usize) -> usize {
        popcount(self.row_words(i))
    }

    #[must_use]
    pub fn row_support(&self, i: usize) -> Vec<usize> {
        self.row(i).ones_indices()
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn count_ones(&self) -> usize {
        popcount(&self.data)
    }

    pub fn push_row(&mut self, v: &BitVector) {
        assert_eq!(v.len(), self.cols);
        self.data.extend_from_slice(v.words());
        self.rows += 1;
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let ones: Vec<usize> = self.row(i).iter_ones().collect();
            let dst = &mut out.data[i * out.stride..(i + 1) * out.stride];
            for k in ones {
                xor_into(dst, other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `x·self`.
    #[must_use]
    pub fn left_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.rows, "left_mul length mismatch");
        let mut out = BitVector::zeros(self.cols);
        for i in x.iter_ones() {
            xor_into(out.words_mut(), self.row_words(i));
        }
        out
    }

    /// Matrix times column vector, `self·v^T`, returned as a vector of length `rows`.
    #[must_use]
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for i in 0..self.rows {
            if dot_words(self.row_words(i), v.words()) {
                out.set(i, true);
            }
        }
        out
    }

    /// Vertical concatenation `[self; other]`.
    pub fn stack_rows(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Shape(format!("stack_rows with {} and {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, stride: self.stride, data })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn stack_cols(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!("stack_cols with {} and {} rows", self.rows, other.rows)));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.set_row(i, &self.row(i).concat(&other.row(i)));
        }
        Ok(out)
    }

    /// Rows `row_idx` and columns `col_idx`, in the given orders.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self> {
        if let Some(&r) = row_idx.iter().find(|&&r| r >= self.rows) {
            return Err(Error::Shape(format!("row index {r} out of range {}", self.rows)));
        }
        if let Some(&c) = col_idx.iter().find(|&&c| c >= self.cols) {
            return Err(Error::Shape(format!("column index {c} out of range {}", self.cols)));
        }
        let mut out = Self::zeros(row_idx.len(), col_idx.len());
        for (a, &r) in row_idx.iter().enumerate() {
            for (b, &c) in col_idx.iter().enumerate() {
                if self.get(r, c) {
                    out.set(a, b, true);
                }
            }
        }
        Ok(out)
    }

    #[must_use]
    pub fn select_rows(&self, row_idx: &[usize]) -> Self {
        let mut out = Self::zeros(row_idx.len(), self.cols);
        for (a, &r) in row_idx.iter().enumerate() {
            out.row_words_mut(a).copy_from_slice(self.row_words(r));
        }
        out
    }

    #[must_use]
    pub fn select_cols(&self, col_idx: &[usize]) -> Self {
        let all: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&all, col_idx).expect("column index in range")
    }

    /// Kronecker product.
    #[must_use]
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                for k in 0..other.rows {
                    for l in other.row(k).iter_ones() {
                        out.set(i * other.rows + k, j * other.cols + l, true);
                    }
                }
            }
        }
        out
    }

    /// In-place elimination to reduced row echelon form; returns pivot columns.
    /// When `track` is given, the same row operations are applied to it.
    fn eliminate(&mut self, mut track: Option<&mut BitMatrix>) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let wi = c / W;
            let bit = 1u64 << (c % W);
            let Some(p) = (r..self.rows).find(|&i| self.data[i * self.stride + wi] & bit != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            if let Some(t) = track.as_deref_mut() {
                t.swap_rows(r, p);
            }
            for i in 0..self.rows {
                if i != r && self.data[i * self.stride + wi] & bit != 0 {
                    self.xor_row(i, r);
                    if let Some(t) = track.as_deref_mut() {
                        t.xor_row(i, r);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(None).len()
    }

    #[must_use]
    pub fn row_reduce(&self) -> RowReduction {
        let mut rref = self.clone();
        let mut transform = Self::identity(self.rows);
        let pivots = rref.eliminate(Some(&mut transform));
        RowReduction { rref, pivots, transform }
    }

    /// Basis of the left nullspace `{r : r·self = 0}`.
    #[must_use]
    pub fn nullspace_basis(&self) -> Self {
        let red = self.row_reduce();
        let rank = red.rank();
        let idx: Vec<usize> = (rank..self.rows).collect();
        red.transform.select_rows(&idx)
    }

    /// Basis of the right kernel `{v : self·v^T = 0}`, one vector per row.
    #[must_use]
    pub fn kernel(&self) -> Self {
        let mut m = self.clone();
        let pivots = m.eliminate(None);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Some `x` with `x·self = b`, or `None` when `b` is outside the row space.
    #[must_use]
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(b.len(), self.cols, "solve: right-hand side length mismatch");
        Solver::new(self).solve(b)
    }

    /// Whether `v` lies in the row space.
    #[must_use]
    pub fn in_rowspace(&self, v: &BitVector) -> bool {
        Solver::new(self).contains(v)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// A factored matrix for repeated right-hand sides of `x·m = b`.
#[derive(Clone, Debug)]
pub struct Solver {
    rref: BitMatrix,
    pivots: Vec<usize>,
    transform: BitMatrix,
}

impl Solver {
    #[must_use]
    pub fn new(m: &BitMatrix) -> Self {
        let RowReduction { rref, pivots, transform } = m.row_reduce();
        Self { rref, pivots, transform }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `b` against the pivots; returns the residual and the rref-row combination used.
    fn reduce(&self, b: &BitVector) -> (BitVector, BitVector) {
        let mut res = b.clone();
        let mut used = BitVector::zeros(self.pivots.len());
        for (r, &p) in self.pivots.iter().enumerate() {
            if res.get(p) {
                xor_into(res.words_mut(), self.rref.row_words(r));
                used.set(r, true);
            }
        }
        (res, used)
    }

    #[must_use]
    pub fn contains(&self, b: &BitVector) -> bool {
        self.reduce(b).0.is_zero()
    }

    #[must_use]
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        let (res, used) = self.reduce(b);
        if !res.is_zero() {
            return None;
        }
        let mut x = BitVector::zeros(self.transform.rows());
        for r in used.iter_ones() {
            xor_into(x.words_mut(), self.transform.row_words(r));
        }
        Some(x)
    }
}

/// Incrementally maintained row-space basis in echelon form, used for greedy
/// independence tests.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    cols: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    #[must_use]
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    #[must_use]
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    #[must_use]
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut r = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(row);
            }
        }
        r
    }

    #[must_use]
    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &BitVector) -> bool {
        assert_eq!(v.len(), self.cols);
        let r = self.reduce(v);
        let lead = r.iter_ones().next();
        match lead {
            None => false,
            Some(p) => {
                for row in &mut self.rows {
                    if row.get(p) {
                        row.xor_assign(&r);
                    }
                }
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::from_dense(&[[1u8, 1], [1, 1]]).rank(), 1);
        assert_eq!(BitMatrix::zeros(4, 5).rank(), 0);
    }

    #[test]
    fn row_reduce_examples() {
        let id = BitMatrix::identity(3);
        let red = id.row_reduce();
        assert_eq!(red.rref, id);
        assert_eq!(red.pivots, vec![0, 1, 2]);
        assert_eq!(red.transform, id);

        let m = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]);
        let red = m.row_reduce();
        assert_eq!(red.pivots, vec![0, 1]);
        assert_eq!(red.transform.matmul(&m).unwrap(), red.rref);
        assert_eq!(red.rref, BitMatrix::from_dense(&[[1u8, 0, 1], [0, 1, 1]]));

        let z = BitMatrix::zeros(2, 3);
        let red = z.row_reduce();
        assert!(red.pivots.is_empty());
        assert_eq!(red.rref, z);
        assert_eq!(red.transform, BitMatrix::identity(2));
    }

    #[test]
    fn nullspace_examples() {
        let m = BitMatrix::from_dense(&[[1u8, 1], [1, 1]]);
        let n = m.nullspace_basis();
        assert_eq!(n.rows(), 1);
        assert_eq!(n.row(0), BitVector::from_bitstring("11"));

        let cycle = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1], [1, 0, 1]]);
        let n = cycle.nullspace_basis();
        assert_eq!(n.rows(), 1);
        assert_eq!(n.row(0), BitVector::from_bitstring("111"));

        assert_eq!(BitMatrix::identity(4).nullspace_basis().rows(), 0);
    }

    #[test]
    fn solve_examples() {
        let b = BitVector::from_bitstring("1011");
        assert_eq!(BitMatrix::identity(4).solve(&b), Some(b));

        let m = BitMatrix::from_dense(&[[1u8, 1, 0], [0, 1, 1]]);
        let x = m.solve(&BitVector::from_bitstring("101")).unwrap();
        assert_eq!(x, BitVector::from_bitstring("11"));
        assert_eq!(m.left_mul(&x), BitVector::from_bitstring("101"));

        let m = BitMatrix::from_dense(&[[1u8, 1]]);
        assert!(m.solve(&BitVector::from_bitstring("10")).is_none());
    }

    #[test]
    fn shape_helpers() {
        let a = BitMatrix::from_dense(&[[1u8, 0, 1], [0, 1, 1]]);
        assert_eq!(a.matmul(&BitMatrix::identity(3)).unwrap(), a);
        assert!(a.matmul(&a).is_err());
        let e = a.submatrix(&[], &[]).unwrap();
        assert_eq!(e.shape(), (0, 0));
        let s = a.submatrix(&[1, 0], &[2, 0]).unwrap();
        assert_eq!(s, BitMatrix::from_dense(&[[1u8, 0], [1, 1]]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.stack_rows(&a).unwrap().rows(), 4);
        assert_eq!(a.stack_cols(&a).unwrap().cols(), 6);
        assert!(a.stack_cols(&BitMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn kernel_is_right_nullspace() {
        let m = BitMatrix::from_dense(&[[1u8, 1, 0, 0], [0, 1, 1, 0]]);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        for v in k.row_vectors() {
            assert!(m.mul_vec(&v).is_zero());
        }
    }

    #[test]
    fn wide_vectors_cross_word_boundaries() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.weight(), 3);
        assert_eq!(v.ones_indices(), vec![0, 64, 129]);
        assert_eq!(BitVector::ones(130).weight(), 130);
    }

    #[test]
    fn echelon_basis_tracks_span() {
        let mut b = EchelonBasis::new(3);
        assert!(b.insert(&BitVector::from_bitstring("110")));
        assert!(b.insert(&BitVector::from_bitstring("011")));
        assert!(!b.insert(&BitVector::from_bitstring("101")));
        assert_eq!(b.rank(), 2);
    }
}
