//! The kernel/cokernel lemma for a ladder of GF(2) vector spaces.
//!
//! ```text
//!          a        b
//!      A ----> B ----> C ----> 0
//!      |f      |g      |h
//!      v       v       v
//! D -> A' ---> B' ---> C'
//!   λ     a'       b'
//! ```
//!
//! With exact rows and `g` invertible, `ker h` is isomorphic to the cokernel
//! of `[f | λ] : A ⊕ D -> A'`. [`lemma31_check`] verifies the hypotheses and
//! computes both dimensions independently.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};

/// The eight maps of the ladder, each as a `target x source` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub top_a: BitMatrix,
    pub top_b: BitMatrix,
    pub lambda: BitMatrix,
    pub bottom_a: BitMatrix,
    pub bottom_b: BitMatrix,
    pub f: BitMatrix,
    pub g: BitMatrix,
    pub h: BitMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LadderRecord {
    pub ker_h_dim: usize,
    pub coker_fplus_lambda_dim: usize,
    pub commutes: bool,
    pub rows_exact: bool,
}

impl LadderRecord {
    /// The lemma's conclusion, required whenever its hypotheses hold.
    pub fn conclusion_holds(&self) -> bool {
        !(self.commutes && self.rows_exact) || self.ker_h_dim == self.coker_fplus_lambda_dim
    }
}

impl Ladder {
    /// The ladder with every space zero.
    pub fn zero() -> Self {
        let z = BitMatrix::zeros(0, 0);
        Ladder {
            top_a: z.clone(),
            top_b: z.clone(),
            lambda: z.clone(),
            bottom_a: z.clone(),
            bottom_b: z.clone(),
            f: z.clone(),
            g: z.clone(),
            h: z,
        }
    }

    fn check_shapes(&self) -> Result<()> {
        let (a, b) = (self.top_a.cols(), self.top_a.rows());
        let c = self.top_b.rows();
        let a2 = self.lambda.rows();
        let b2 = self.bottom_a.rows();
        let c2 = self.bottom_b.rows();
        let shapes = [
            ("top b", (self.top_b.rows(), self.top_b.cols()), (c, b)),
            ("a'", (self.bottom_a.rows(), self.bottom_a.cols()), (b2, a2)),
            ("b'", (self.bottom_b.rows(), self.bottom_b.cols()), (c2, b2)),
            ("f", (self.f.rows(), self.f.cols()), (a2, a)),
            ("g", (self.g.rows(), self.g.cols()), (b2, b)),
            ("h", (self.h.rows(), self.h.cols()), (c2, c)),
        ];
        for (name, got, want) in shapes {
            if got != want {
                return Err(Error::input(format!("map {name} has shape {got:?}, expected {want:?}")));
            }
        }
        Ok(())
    }
}

/// `ker(out) == im(inc)` for composable `inc: X -> Y`, `out: Y -> Z`.
fn exact_at(inc: &BitMatrix, out: &BitMatrix) -> bool {
    out.mul(inc).is_zero() && inc.rank() + out.rank() == out.cols()
}

pub fn lemma31_check(ladder: &Ladder) -> Result<LadderRecord> {
    ladder.check_shapes()?;
    if ladder.g.inverse().is_none() {
        return Err(Error::input("vertical map g is not invertible"));
    }
    let commutes = ladder.g.mul(&ladder.top_a) == ladder.bottom_a.mul(&ladder.f)
        && ladder.h.mul(&ladder.top_b) == ladder.bottom_b.mul(&ladder.g);
    let top_b = &ladder.top_b;
    let rows_exact = exact_at(&ladder.top_a, top_b)
        && top_b.rank() == top_b.rows()
        && exact_at(&ladder.lambda, &ladder.bottom_a)
        && exact_at(&ladder.bottom_a, &ladder.bottom_b);
    let ker_h_dim = ladder.h.cols() - ladder.h.rank();
    let coker_fplus_lambda_dim = ladder.f.hstack(&ladder.lambda).cokernel_dim();
    Ok(LadderRecord { ker_h_dim, coker_fplus_lambda_dim, commutes, rows_exact })
}

/// Quotient of `GF(2)^n` by the span of `spanning`.
///
/// Returns `(q, s)` with `q` surjective, `ker q = span`, and `q * s = I`.
pub fn quotient_map(n: usize, spanning: &[BitVec]) -> (BitMatrix, BitMatrix) {
    let mut echelon = Echelon::new(n);
    let mut basis = Vec::new();
    for v in spanning {
        let mut r = v.clone();
        echelon.reduce(&mut r);
        if !r.is_zero() {
            echelon.insert(&r);
            basis.push(r);
        }
    }
    let pivots: Vec<usize> = basis.iter().filter_map(BitVec::first_one).collect();
    let complement: Vec<BitVec> = (0..n).filter(|j| !pivots.contains(j)).map(|j| BitVec::unit(n, j)).collect();
    let mut columns = basis.clone();
    columns.extend(complement.iter().cloned());
    let change =
        BitMatrix::from_columns(n, &columns).inverse().expect("echelon basis plus complementary units is a basis");
    let q_rows = change.row_vecs()[basis.len()..].to_vec();
    let q = BitMatrix::from_row_vecs(n, q_rows);
    let s = BitMatrix::from_columns(n, &complement);
    (q, s)
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen::<bool>() {
                m.set(r, c, true);
            }
        }
    }
    m
}

fn random_invertible<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (BitMatrix, BitMatrix) {
    loop {
        let m = random_matrix(rng, n, n);
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// A random ladder with exact rows and commuting squares.
///
/// The bottom row is built first: a random `a'`, then `C'` as the quotient
/// by its image and `λ` spanning its kernel. The top row is pulled back
/// through a random invertible `g`, which makes both squares commute by
/// construction.
pub fn random_ladder<R: Rng + ?Sized>(rng: &mut R) -> Ladder {
    let dim_b = rng.gen_range(0..=6);
    let dim_a2 = rng.gen_range(0..=5);
    let bottom_a = random_matrix(rng, dim_b, dim_a2);
    let (bottom_b, _) = quotient_map(dim_b, &bottom_a.columns());

    let kernel = bottom_a.kernel_basis();
    let mut lambda_cols = kernel.vectors.clone();
    for _ in 0..rng.gen_range(0..=2) {
        let coeffs = BitVec::from_indices(kernel.dim(), (0..kernel.dim()).filter(|_| rng.gen::<bool>()));
        lambda_cols.push(kernel.combine(&coeffs));
    }
    lambda_cols.shuffle(rng);
    let lambda = BitMatrix::from_columns(dim_a2, &lambda_cols);

    let (g, g_inv) = random_invertible(rng, dim_b);
    let dim_a = rng.gen_range(0..=5);
    let f = random_matrix(rng, dim_a2, dim_a);
    let top_a = g_inv.mul(&bottom_a).mul(&f);
    let (top_b, section) = quotient_map(dim_b, &top_a.columns());
    let h = bottom_b.mul(&g).mul(&section);

    Ladder { top_a, top_b, lambda, bottom_a, bottom_b, f, g, h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_ladder() {
        let r = lemma31_check(&Ladder::zero()).unwrap();
        assert_eq!(r, LadderRecord { ker_h_dim: 0, coker_fplus_lambda_dim: 0, commutes: true, rows_exact: true });
    }

    #[test]
    fn identity_ladder() {
        // 0 -> Z2^2 -> Z2^2 -> 0 in both rows; top is A -> B iso, C = 0.
        let id = BitMatrix::identity(2);
        let ladder = Ladder {
            top_a: id.clone(),
            top_b: BitMatrix::zeros(0, 2),
            lambda: BitMatrix::zeros(2, 0),
            bottom_a: id.clone(),
            bottom_b: BitMatrix::zeros(0, 2),
            f: id.clone(),
            g: id,
            h: BitMatrix::zeros(0, 0),
        };
        let r = lemma31_check(&ladder).unwrap();
        assert!(r.commutes && r.rows_exact);
        assert_eq!((r.ker_h_dim, r.coker_fplus_lambda_dim), (0, 0));
    }

    #[test]
    fn singular_g_is_an_input_error() {
        let mut ladder = Ladder::zero();
        ladder.top_a = BitMatrix::zeros(1, 0);
        ladder.top_b = BitMatrix::zeros(0, 1);
        ladder.bottom_a = BitMatrix::zeros(1, 0);
        ladder.bottom_b = BitMatrix::zeros(0, 1);
        ladder.g = BitMatrix::zeros(1, 1);
        ladder.h = BitMatrix::zeros(0, 0);
        assert!(matches!(lemma31_check(&ladder), Err(Error::Input(_))));
    }

    #[test]
    fn shape_mismatch_is_an_input_error() {
        let mut ladder = Ladder::zero();
        ladder.f = BitMatrix::zeros(1, 1);
        assert!(matches!(lemma31_check(&ladder), Err(Error::Input(_))));
    }

    #[test]
    fn broken_exactness_is_flagged() {
        // b' = 0 into a nonzero C' is not exact at B'.
        let id = BitMatrix::identity(1);
        let ladder = Ladder {
            top_a: BitMatrix::zeros(1, 0),
            top_b: id.clone(),
            lambda: BitMatrix::zeros(0, 0),
            bottom_a: BitMatrix::zeros(1, 0),
            bottom_b: BitMatrix::zeros(1, 1),
            f: BitMatrix::zeros(0, 0),
            g: id.clone(),
            h: BitMatrix::zeros(1, 1),
        };
        let r = lemma31_check(&ladder).unwrap();
        assert!(r.commutes);
        assert!(!r.rows_exact);
    }

    #[test]
    fn quotient_map_properties() {
        let span = [BitVec::from_bits(&[1, 1, 0]), BitVec::from_bits(&[0, 1, 1]), BitVec::from_bits(&[1, 0, 1])];
        let (q, s) = quotient_map(3, &span);
        assert_eq!(q.rows(), 1);
        assert_eq!(q.mul(&s), BitMatrix::identity(1));
        for v in &span {
            assert!(q.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn random_ladders_satisfy_the_lemma() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let ladder = random_ladder(&mut rng);
            let r = lemma31_check(&ladder).unwrap();
            assert!(r.commutes && r.rows_exact, "{ladder:?}");
            assert_eq!(r.ker_h_dim, r.coker_fplus_lambda_dim);
        }
    }
}
