//! Small exact integer matrices.
//!
//! Only the signed simplicial coboundary lives here, so entries stay in
//! `{-1, 0, 1}` and products are bounded by the number of faces of a simplex.

use num_traits::{PrimInt, Signed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: PrimInt + Signed> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![T::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.entries[r * self.cols + c] = value;
    }

    /// Matrix-vector product.
    ///
    /// # Panics
    /// Panics on a dimension mismatch or on overflow.
    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| {
                    let term = a.checked_mul(&b).expect("integer overflow");
                    acc.checked_add(&term).expect("integer overflow")
                })
            })
            .collect()
    }

    pub fn mul(&self, rhs: &IntMatrix<T>) -> IntMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for c in 0..rhs.cols {
            let column: Vec<T> = (0..rhs.rows).map(|r| rhs.get(r, c)).collect();
            for (r, value) in self.mul_vec(&column).into_iter().enumerate() {
                out.set(r, c, value);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}
