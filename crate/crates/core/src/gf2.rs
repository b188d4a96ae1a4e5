//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into `u64` words. Matrices are stored row-major, one
//! [`BitVec`] per row, and act on column vectors: a map `V -> W` is a
//! `dim W x dim V` matrix.
//!
//! Elimination always picks the first nonzero entry as pivot, so every
//! result (ranks, kernel bases, particular solutions) is deterministic.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector from 0/1 entries; any nonzero entry counts as 1.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range (len {})", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// Addition over GF(2).
    pub fn xor_assign(&mut self, other: &BitVec) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Dot product over GF(2).
    pub fn dot(&self, other: &BitVec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones % 2 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let tz = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The entries `start..start + len`.
    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        assert!(start + len <= self.len);
        BitVec::from_indices(len, self.ones().filter(|&i| i >= start && i < start + len).map(|i| i - start))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec(")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, ")")
    }
}

/// A dense matrix over GF(2), stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: (0..n).map(|i| BitVec::unit(n, i)).collect(), cols: n }
    }

    /// Builds a matrix from rows of 0/1 entries.
    ///
    /// # Panics
    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows: rows.iter().map(|r| BitVec::from_bits(r)).collect(), cols }
    }

    pub fn from_row_vecs(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "row length mismatch");
        Self { rows, cols }
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows(), (0..self.rows()).filter(|&r| self.rows[r].get(c)))
    }

    pub fn columns(&self) -> Vec<BitVec> {
        self.transpose().rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.rows(), "dimension mismatch in mul");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix { rows, cols: rhs.cols }
    }

    pub fn add(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows(), self.cols), (rhs.rows(), rhs.cols), "dimension mismatch in add");
        BitMatrix { rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a.xor(b)).collect(), cols: self.cols }
    }

    /// Block matrix `[self | rhs]`.
    pub fn hstack(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows(), rhs.rows(), "row mismatch in hstack");
        BitMatrix {
            rows: self.rows.iter().zip(&rhs.rows).map(|(a, b)| a.concat(b)).collect(),
            cols: self.cols + rhs.cols,
        }
    }

    /// Block matrix `[self ; rhs]`.
    pub fn vstack(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        let mut rows = self.rows.clone();
        rows.extend(rhs.rows.iter().cloned());
        BitMatrix { rows, cols: self.cols }
    }

    /// The submatrix on the given row and column indices, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        let rows = rows
            .iter()
            .map(|&r| {
                BitVec::from_indices(
                    cols.len(),
                    cols.iter().enumerate().filter(|(_, &c)| self.get(r, c)).map(|(j, _)| j),
                )
            })
            .collect();
        BitMatrix { rows, cols: cols.len() }
    }

    /// Row rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut basis = Echelon::new(self.cols);
        self.rows.iter().filter(|r| basis.insert(r)).count()
    }

    /// Dimension of the cokernel, `rows - rank`.
    pub fn cokernel_dim(&self) -> usize {
        self.rows() - self.rank()
    }

    /// Basis of the null space `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let rref = Rref::new(self);
        let vectors = rref
            .free_columns()
            .map(|free| {
                let mut x = BitVec::unit(self.cols, free);
                for (r, &p) in rref.pivots.iter().enumerate() {
                    if rref.rows[r].get(free) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect();
        SubspaceBasis { ambient_dim: self.cols, vectors }
    }

    /// Solves `self * x = b`.
    ///
    /// Returns `Ok(None)` for an inconsistent system. Free coordinates of the
    /// returned solution are zero.
    pub fn solve(&self, b: &BitVec) -> Result<Option<BitVec>> {
        if b.len() != self.rows() {
            return Err(Error::input(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows()
            )));
        }
        let augmented = self.hstack(&BitMatrix::from_columns(self.rows(), std::slice::from_ref(b)));
        let rref = Rref::new(&augmented);
        if rref.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &p) in rref.pivots.iter().enumerate() {
            if rref.rows[r].get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, or `None` if it is singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.rows();
        if n != self.cols {
            return None;
        }
        let rref = Rref::new(&self.hstack(&BitMatrix::identity(n)));
        if n > 0 && rref.pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = rref.rows.iter().map(|r| r.slice(n, n)).collect();
        Some(BitMatrix { rows, cols: n })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {:?}", r)?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form; `pivots[r]` is the pivot column of row `r`.
struct Rref {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    cols: usize,
}

impl Rref {
    fn new(m: &BitMatrix) -> Self {
        let mut rows = m.rows.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        Rref { rows, pivots, cols: m.cols }
    }

    fn free_columns(&self) -> impl Iterator<Item = usize> + '_ {
        let cols = self.cols;
        let mut pivots = self.pivots.iter().peekable();
        (0..cols).filter(move |&c| {
            if pivots.peek() == Some(&&c) {
                pivots.next();
                false
            } else {
                true
            }
        })
    }
}

/// Incremental echelon basis of a subspace of `GF(2)^ambient`.
///
/// Each stored vector has a distinct pivot (its lowest set bit). Vectors may
/// carry a tag that is XOR-ed along during reduction, which records the
/// combination of inserted vectors that produced a remainder.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    by_pivot: Vec<Option<usize>>,
    vectors: Vec<(BitVec, BitVec)>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, by_pivot: vec![None; ambient], vectors: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` (and its `tag`) against the basis.
    pub fn reduce_tagged(&self, v: &mut BitVec, tag: &mut BitVec) {
        while let Some(p) = v.first_one() {
            match self.by_pivot[p] {
                Some(i) => {
                    let (bv, bt) = &self.vectors[i];
                    v.xor_assign(bv);
                    tag.xor_assign(bt);
                }
                None => break,
            }
        }
    }

    pub fn reduce(&self, v: &mut BitVec) {
        while let Some(p) = v.first_one() {
            match self.by_pivot[p] {
                Some(i) => v.xor_assign(&self.vectors[i].0),
                None => break,
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut r = v.clone();
        self.reduce(&mut r);
        r.is_zero()
    }

    /// Inserts `v`; returns whether it was independent of the basis.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        self.insert_tagged(v.clone(), BitVec::zeros(0))
    }

    /// Inserts `v` with a tag; returns whether it was independent.
    pub fn insert_tagged(&mut self, mut v: BitVec, mut tag: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        if !tag.is_empty() {
            self.reduce_tagged(&mut v, &mut tag);
        } else {
            self.reduce(&mut v);
        }
        match v.first_one() {
            Some(p) => {
                self.by_pivot[p] = Some(self.vectors.len());
                self.vectors.push((v, tag));
                true
            }
            None => false,
        }
    }
}

/// A linearly independent family of vectors in `GF(2)^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<BitVec>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// The vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn as_columns(&self) -> BitMatrix {
        BitMatrix::from_columns(self.ambient_dim, &self.vectors)
    }

    /// The combination `sum_i coeffs[i] * vectors[i]`.
    pub fn combine(&self, coeffs: &BitVec) -> BitVec {
        assert_eq!(coeffs.len(), self.dim(), "coefficient length mismatch");
        let mut out = BitVec::zeros(self.ambient_dim);
        for i in coeffs.ones() {
            out.xor_assign(&self.vectors[i]);
        }
        out
    }
}

/// Rank of a map given by the columns `columns` in `GF(2)^ambient`.
pub fn column_rank(ambient: usize, columns: impl IntoIterator<Item = BitVec>) -> usize {
    let mut basis = Echelon::new(ambient);
    columns.into_iter().filter(|c| basis.insert(c)).count()
}

/// Rank of a sparse matrix given by columns of sorted row indices.
///
/// Column reduction by lowest nonzero entry; suited to boundary matrices,
/// which stay sparse under this elimination.
pub fn sparse_column_rank(rows: usize, columns: &[Vec<u32>]) -> usize {
    let mut owner: Vec<Option<usize>> = vec![None; rows];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    for col in columns {
        let mut c = col.clone();
        while let Some(&low) = c.last() {
            match owner[low as usize] {
                Some(k) => c = symmetric_difference(&c, &reduced[k]),
                None => break,
            }
        }
        if let Some(&low) = c.last() {
            owner[low as usize] = Some(reduced.len());
            reduced.push(c);
        }
    }
    reduced.len()
}

fn symmetric_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
