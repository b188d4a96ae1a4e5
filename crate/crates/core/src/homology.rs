//! Z/2 chain complexes, (co)homology with explicit representatives, induced
//! maps, and the long exact sequence of a pair.
//!
//! For finite complexes Čech (co)homology, with or without compact
//! supports, agrees with simplicial (co)homology, so everything is computed
//! simplicially.

use std::borrow::Cow;
use std::sync::OnceLock;

use crate::complex::{SimplicialComplex, Subcomplex};
use crate::error::{ensure, Error, Result};
use crate::gf2::{sparse_column_rank, BitMatrix, BitVec, Echelon, SubspaceBasis};
use crate::simmap::SimplicialMap;

/// Boundary operators `∂_d : C_d -> C_{d-1}` over Z/2.
///
/// Stored sparsely, one sorted list of facet indices per simplex; dense
/// matrices and ranks are derived on demand and cached.
#[derive(Debug)]
pub struct ChainComplexZ2 {
    /// `columns[d][j]` lists the rows of `∂_d` hit by the `j`-th `d`-simplex.
    columns: Vec<Vec<Vec<u32>>>,
    dense: Vec<OnceLock<BitMatrix>>,
    ranks: Vec<OnceLock<usize>>,
}

impl Clone for ChainComplexZ2 {
    fn clone(&self) -> Self {
        Self::from_columns(self.columns.clone())
    }
}

impl ChainComplexZ2 {
    fn from_columns(columns: Vec<Vec<Vec<u32>>>) -> Self {
        let dense = (0..columns.len()).map(|_| OnceLock::new()).collect();
        let ranks = (0..columns.len()).map(|_| OnceLock::new()).collect();
        ChainComplexZ2 { columns, dense, ranks }
    }

    fn of_complex(k: &SimplicialComplex) -> Self {
        let mut columns = Vec::new();
        for d in 0..k.f_vector().len() {
            let cols = k
                .simplices(d)
                .iter()
                .map(|s| {
                    let mut rows: Vec<u32> = if d == 0 {
                        Vec::new()
                    } else {
                        s.facets().map(|f| k.index_of(&f).expect("complex is face-closed") as u32).collect()
                    };
                    rows.sort_unstable();
                    rows
                })
                .collect();
            columns.push(cols);
        }
        Self::from_columns(columns)
    }

    /// Keeps only the basis elements flagged in `keep`.
    ///
    /// For a subcomplex this is its chain complex; for the complement of a
    /// subcomplex it is the relative (quotient) complex.
    pub fn restrict(&self, keep: &[Vec<bool>]) -> ChainComplexZ2 {
        let renumber: Vec<Vec<Option<u32>>> = keep
            .iter()
            .map(|flags| {
                let mut next = 0u32;
                flags
                    .iter()
                    .map(|&b| {
                        b.then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut columns: Vec<Vec<Vec<u32>>> = Vec::new();
        for d in 0..self.columns.len().min(keep.len()) {
            let cols = self.columns[d]
                .iter()
                .zip(&keep[d])
                .filter(|(_, &b)| b)
                .map(|(col, _)| col.iter().filter_map(|&r| renumber[d - 1][r as usize]).collect())
                .collect();
            columns.push(cols);
        }
        while columns.last().is_some_and(Vec::is_empty) {
            columns.pop();
        }
        Self::from_columns(columns)
    }

    /// Number of `d`-chains in the basis.
    pub fn chain_dim(&self, d: usize) -> usize {
        self.columns.get(d).map_or(0, Vec::len)
    }

    /// Highest degree with nonzero chains, if any.
    pub fn top_degree(&self) -> Option<usize> {
        self.columns.len().checked_sub(1)
    }

    /// `∂_d` as sorted row lists, one per `d`-chain.
    pub fn sparse_boundary(&self, d: usize) -> &[Vec<u32>] {
        self.columns.get(d).map_or(&[], Vec::as_slice)
    }

    /// `∂_d`, as a `chain_dim(d-1) x chain_dim(d)` matrix.
    pub fn boundary(&self, d: usize) -> Cow<'_, BitMatrix> {
        let rows = if d == 0 { 0 } else { self.chain_dim(d - 1) };
        match self.dense.get(d) {
            Some(cell) => Cow::Borrowed(cell.get_or_init(|| {
                let mut m = BitMatrix::zeros(rows, self.chain_dim(d));
                for (j, col) in self.columns[d].iter().enumerate() {
                    for &r in col {
                        m.set(r as usize, j, true);
                    }
                }
                m
            })),
            None => Cow::Owned(BitMatrix::zeros(rows, self.chain_dim(d))),
        }
    }

    /// `δ_d = ∂_{d+1}^T`, built straight from the sparse columns.
    pub fn coboundary(&self, d: usize) -> BitMatrix {
        let rows = self
            .sparse_boundary(d + 1)
            .iter()
            .map(|col| BitVec::from_indices(self.chain_dim(d), col.iter().map(|&r| r as usize)))
            .collect();
        BitMatrix::from_row_vecs(self.chain_dim(d), rows)
    }

    pub fn boundary_rank(&self, d: usize) -> usize {
        match self.ranks.get(d) {
            Some(cell) if d > 0 => *cell.get_or_init(|| sparse_column_rank(self.chain_dim(d - 1), &self.columns[d])),
            _ => 0,
        }
    }

    pub fn betti(&self, d: usize) -> usize {
        self.chain_dim(d) - self.boundary_rank(d) - self.boundary_rank(d + 1)
    }

    /// `∂_d(z)` for a `d`-chain `z`.
    pub fn apply_boundary(&self, d: usize, z: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(if d == 0 { 0 } else { self.chain_dim(d - 1) });
        for j in z.ones() {
            for &r in &self.columns[d][j] {
                out.flip(r as usize);
            }
        }
        out
    }

    /// `δ_d(g)` for a `d`-cochain `g`.
    pub fn apply_coboundary(&self, d: usize, g: &BitVec) -> BitVec {
        let parities =
            self.sparse_boundary(d + 1).iter().map(|col| col.iter().filter(|&&r| g.get(r as usize)).count() % 2 == 1);
        BitVec::from_bools(&parities.collect::<Vec<_>>())
    }

    /// `∂_{d} ∘ ∂_{d+1} = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.columns.len()).all(|d| {
            self.sparse_boundary(d + 1).iter().all(|col| {
                let z = BitVec::from_indices(self.chain_dim(d), col.iter().map(|&r| r as usize));
                self.apply_boundary(d, &z).is_zero()
            })
        })
    }
}

/// The chain complex of `k`, computed once and cached on the complex.
pub fn chain_complex(k: &SimplicialComplex) -> &ChainComplexZ2 {
    k.chain_cache().get_or_init(|| ChainComplexZ2::of_complex(k))
}

/// The quotient complex `C_*(k) / C_*(l)`.
pub fn relative_chain_complex(k: &SimplicialComplex, l: &Subcomplex) -> Result<ChainComplexZ2> {
    l.check_parent(k)?;
    let keep: Vec<Vec<bool>> = l.members().iter().map(|m| m.iter().map(|&b| !b).collect()).collect();
    Ok(chain_complex(k).restrict(&keep))
}

/// The chain complex of a subcomplex, in the parent's simplex order.
pub fn subcomplex_chain_complex(k: &SimplicialComplex, l: &Subcomplex) -> Result<ChainComplexZ2> {
    l.check_parent(k)?;
    Ok(chain_complex(k).restrict(l.members()))
}

/// Z/2 Betti numbers in degrees `0..=dim k`.
pub fn betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let c = chain_complex(k);
    (0..k.f_vector().len()).map(|d| c.betti(d)).collect()
}

/// Representative cycles whose classes form a basis of `H_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    pub degree: usize,
    pub representatives: SubspaceBasis,
}

/// Representative cocycles whose classes form a basis of `H^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyBasis {
    pub degree: usize,
    pub representatives: SubspaceBasis,
}

/// A matrix of an induced map in chosen (co)homology bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub source_dim: usize,
    pub target_dim: usize,
    pub matrix: BitMatrix,
}

impl InducedMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

#[derive(Clone, Debug)]
enum CycleTest {
    /// `z` is a cycle when `∂_d z = 0`.
    Boundary(Vec<Vec<u32>>, usize),
    /// `g` is a cocycle when it sums to zero over every column of `∂_{d+1}`.
    Coboundary(Vec<Vec<u32>>),
}

impl CycleTest {
    fn passes(&self, v: &BitVec) -> bool {
        match self {
            CycleTest::Boundary(columns, rows) => {
                let mut out = BitVec::zeros(*rows);
                for j in v.ones() {
                    for &r in &columns[j] {
                        out.flip(r as usize);
                    }
                }
                out.is_zero()
            }
            CycleTest::Coboundary(columns) => {
                columns.iter().all(|col| col.iter().filter(|&&r| v.get(r as usize)).count() % 2 == 0)
            }
        }
    }
}

/// `ker / im` at one slot of a (co)chain complex, with canonical
/// representatives.
///
/// Serves both homology (`ker ∂_d / im ∂_{d+1}`) and cohomology
/// (`ker δ_d / im δ_{d-1}`).
#[derive(Clone, Debug)]
pub struct Subquotient {
    degree: usize,
    ambient: usize,
    test: CycleTest,
    basis: SubspaceBasis,
    /// Boundaries tagged zero, then representatives tagged with unit vectors.
    echelon: Option<Echelon>,
}

impl Subquotient {
    fn new(
        degree: usize,
        ambient: usize,
        test: CycleTest,
        dim: usize,
        cycles: impl FnOnce() -> SubspaceBasis,
        image_gens: impl FnOnce() -> Vec<BitVec>,
    ) -> Self {
        if dim == 0 {
            return Subquotient { degree, ambient, test, basis: SubspaceBasis::empty(ambient), echelon: None };
        }
        let image_gens = image_gens();
        let mut span = Echelon::new(ambient);
        for b in &image_gens {
            span.insert(b);
        }
        let reps: Vec<BitVec> = cycles().vectors.into_iter().filter(|z| span.insert(z)).collect();
        debug_assert_eq!(reps.len(), dim);
        let h = reps.len();
        let mut echelon = Echelon::new(ambient);
        for b in image_gens {
            echelon.insert_tagged(b, BitVec::zeros(h));
        }
        for (i, z) in reps.iter().enumerate() {
            echelon.insert_tagged(z.clone(), BitVec::unit(h, i));
        }
        let basis = SubspaceBasis { ambient_dim: ambient, vectors: reps };
        Subquotient { degree, ambient, test, basis, echelon: Some(echelon) }
    }

    /// `H_d` of a chain complex.
    pub fn homology(c: &ChainComplexZ2, d: usize) -> Self {
        let rows = if d == 0 { 0 } else { c.chain_dim(d - 1) };
        let test = CycleTest::Boundary(c.sparse_boundary(d).to_vec(), rows);
        let n = c.chain_dim(d);
        Self::new(
            d,
            n,
            test,
            c.betti(d),
            || c.boundary(d).kernel_basis(),
            || {
                c.sparse_boundary(d + 1)
                    .iter()
                    .map(|col| BitVec::from_indices(n, col.iter().map(|&r| r as usize)))
                    .collect()
            },
        )
    }

    /// `H^d` of a chain complex, via the transposed boundaries.
    pub fn cohomology(c: &ChainComplexZ2, d: usize) -> Self {
        let test = CycleTest::Coboundary(c.sparse_boundary(d + 1).to_vec());
        Self::new(
            d,
            c.chain_dim(d),
            test,
            c.betti(d),
            || c.coboundary(d).kernel_basis(),
            || if d == 0 { Vec::new() } else { c.boundary(d).row_vecs().to_vec() },
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Length of the underlying (co)chain vectors.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn is_cycle(&self, z: &BitVec) -> bool {
        z.len() == self.ambient && self.test.passes(z)
    }

    /// Coordinates of the class of `z` in the representative basis.
    pub fn coordinates(&self, z: &BitVec) -> Result<BitVec> {
        if z.len() != self.ambient {
            return Err(Error::input(format!("vector of length {} in a space of {}-chains", z.len(), self.ambient)));
        }
        ensure(self.test.passes(z), || format!("vector is not a (co)cycle in degree {}", self.degree))?;
        let Some(echelon) = &self.echelon else {
            return Ok(BitVec::zeros(0));
        };
        let mut rest = z.clone();
        let mut tag = BitVec::zeros(self.dim());
        echelon.reduce_tagged(&mut rest, &mut tag);
        ensure(rest.is_zero(), || "cycle escaped the span of boundaries and representatives".into())?;
        Ok(tag)
    }

    pub fn is_zero_class(&self, z: &BitVec) -> Result<bool> {
        Ok(self.coordinates(z)?.is_zero())
    }

    /// A representative of the class with the given coordinates.
    pub fn representative(&self, coords: &BitVec) -> BitVec {
        self.basis.combine(coords)
    }

    /// Matrix of the map on classes induced by `chain_map` (`target x self`).
    pub fn induced(&self, target: &Subquotient, chain_map: &BitMatrix) -> Result<BitMatrix> {
        let columns =
            self.basis.vectors.iter().map(|z| target.coordinates(&chain_map.mul_vec(z))).collect::<Result<Vec<_>>>()?;
        Ok(BitMatrix::from_columns(target.dim(), &columns))
    }
}

pub fn homology_basis(c: &ChainComplexZ2, degree: usize) -> HomologyBasis {
    HomologyBasis { degree, representatives: Subquotient::homology(c, degree).basis }
}

pub fn cohomology_basis(c: &ChainComplexZ2, degree: usize) -> CohomologyBasis {
    CohomologyBasis { degree, representatives: Subquotient::cohomology(c, degree).basis }
}

/// `f_* : H_d(domain) -> H_d(codomain)`.
pub fn induced_on_homology(f: &SimplicialMap, degree: usize) -> Result<InducedMap> {
    let source = Subquotient::homology(chain_complex(f.domain()), degree);
    let target = Subquotient::homology(chain_complex(f.codomain()), degree);
    let matrix = source.induced(&target, &f.chain_map(degree)?)?;
    Ok(InducedMap { source_dim: source.dim(), target_dim: target.dim(), matrix })
}

/// `f^* : H^d(codomain) -> H^d(domain)`.
pub fn induced_on_cohomology(f: &SimplicialMap, degree: usize) -> Result<InducedMap> {
    let source = Subquotient::cohomology(chain_complex(f.codomain()), degree);
    let target = Subquotient::cohomology(chain_complex(f.domain()), degree);
    let matrix = source.induced(&target, &f.chain_map(degree)?.transpose())?;
    Ok(InducedMap { source_dim: source.dim(), target_dim: target.dim(), matrix })
}

/// Sub-identity selecting the listed basis elements: `kept x n`.
pub(crate) fn selection(n: usize, kept: &[usize]) -> BitMatrix {
    BitMatrix::from_row_vecs(n, kept.iter().map(|&i| BitVec::unit(n, i)).collect())
}

/// `ker(out) = im(inc)` at a space of dimension `dim`.
pub(crate) fn exact_at(inc: &BitMatrix, out: &BitMatrix, dim: usize) -> bool {
    inc.rows() == dim && out.cols() == dim && out.mul(inc).is_zero() && inc.rank() + out.rank() == dim
}

/// Checks exactness of `… -> H_d(l) -> H_d(k) -> H_d(k,l) -> H_{d-1}(l) -> …`.
pub fn les_pair_check(k: &SimplicialComplex, l: &Subcomplex) -> Result<bool> {
    l.check_parent(k)?;
    let whole = chain_complex(k);
    let sub = subcomplex_chain_complex(k, l)?;
    let rel = relative_chain_complex(k, l)?;
    let top = k.dim().map_or(0, |d| d + 1);
    let inside = |d: usize| -> Vec<usize> { l.indices(d).collect() };
    let outside = |d: usize| -> Vec<usize> { (0..k.count(d)).filter(|&i| !l.contains(d, i)).collect() };

    let h_sub: Vec<Subquotient> = (0..=top).map(|d| Subquotient::homology(&sub, d)).collect();
    let h_whole: Vec<Subquotient> = (0..=top).map(|d| Subquotient::homology(whole, d)).collect();
    let h_rel: Vec<Subquotient> = (0..=top).map(|d| Subquotient::homology(&rel, d)).collect();

    let mut inclusion = Vec::new();
    let mut projection = Vec::new();
    let mut connecting = Vec::new();
    for d in 0..=top {
        inclusion.push(h_sub[d].induced(&h_whole[d], &selection(k.count(d), &inside(d)).transpose())?);
        projection.push(h_whole[d].induced(&h_rel[d], &selection(k.count(d), &outside(d)))?);
        // ∂ : H_d(k,l) -> H_{d-1}(l): lift, take the boundary in k, restrict to l.
        let m = if d == 0 {
            BitMatrix::zeros(0, h_rel[0].dim())
        } else {
            let lifted = whole.boundary(d).submatrix(&inside(d - 1), &outside(d));
            h_rel[d].induced(&h_sub[d - 1], &lifted)?
        };
        connecting.push(m);
    }
    let mut exact = true;
    for d in 0..=top {
        let from_rel = if d < top { connecting[d + 1].clone() } else { BitMatrix::zeros(h_sub[d].dim(), 0) };
        exact &= exact_at(&from_rel, &inclusion[d], h_sub[d].dim());
        exact &= exact_at(&inclusion[d], &projection[d], h_whole[d].dim());
        exact &= exact_at(&projection[d], &connecting[d], h_rel[d].dim());
    }
    Ok(exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shapes;

    #[test]
    fn boundaries_square_to_zero() {
        for k in [shapes::octahedron(), shapes::torus7(), shapes::rp2_6(), shapes::cross_polytope_boundary(4)] {
            assert!(chain_complex(&k).is_complex());
        }
    }

    #[test]
    fn chain_complex_examples() {
        let pt = crate::complex::SimplicialComplex::from_maximal_simplices("pt", &[vec!["p"]]).unwrap();
        let c = chain_complex(&pt);
        assert_eq!(c.top_degree(), Some(0));
        assert!(c.boundary(1).is_zero());

        let hex = shapes::cycle("hex", "v", 6);
        let d1 = chain_complex(&hex).boundary(1);
        assert_eq!((d1.rows(), d1.cols()), (6, 6));
        assert!(d1.columns().iter().all(|c| c.count_ones() == 2));

        let oct = shapes::octahedron();
        let d2 = chain_complex(&oct).boundary(2);
        assert_eq!((d2.rows(), d2.cols()), (12, 8));
        assert!(d2.columns().iter().all(|c| c.count_ones() == 3));
    }

    #[test]
    fn homology_examples() {
        let hex = shapes::cycle("hex", "v", 6);
        let h1 = homology_basis(chain_complex(&hex), 1);
        assert_eq!(h1.representatives.dim(), 1);
        assert_eq!(h1.representatives.vectors[0].count_ones(), 6);

        assert_eq!(homology_basis(chain_complex(&shapes::octahedron()), 1).representatives.dim(), 0);
        assert_eq!(homology_basis(chain_complex(&shapes::torus7()), 1).representatives.dim(), 2);
    }

    #[test]
    fn cohomology_examples() {
        let pt = crate::complex::SimplicialComplex::from_maximal_simplices("pt", &[vec!["p"]]).unwrap();
        assert_eq!(cohomology_basis(chain_complex(&pt), 0).representatives.dim(), 1);
        let hex = shapes::cycle("hex", "v", 6);
        assert_eq!(cohomology_basis(chain_complex(&hex), 1).representatives.dim(), 1);
        assert_eq!(cohomology_basis(chain_complex(&shapes::octahedron()), 2).representatives.dim(), 1);
    }

    #[test]
    fn representatives_are_cycles_and_independent() {
        let t = shapes::torus7();
        let c = chain_complex(&t);
        for d in 0..=2 {
            let h = Subquotient::homology(c, d);
            for (i, z) in h.representatives().vectors.iter().enumerate() {
                assert!(h.is_cycle(z));
                assert_eq!(h.coordinates(z).unwrap(), BitVec::unit(h.dim(), i));
            }
            let co = Subquotient::cohomology(c, d);
            assert_eq!(co.dim(), h.dim());
        }
    }

    #[test]
    fn coordinates_reject_non_cycles() {
        let hex = shapes::cycle("hex", "v", 6);
        let h = Subquotient::homology(chain_complex(&hex), 1);
        assert!(matches!(h.coordinates(&BitVec::unit(6, 0)), Err(Error::Assertion(_))));
    }

    #[test]
    fn relative_homology_examples() {
        let oct = shapes::octahedron();
        assert_eq!(
            relative_chain_complex(&oct, &Subcomplex::empty(&oct)).unwrap().betti(2),
            chain_complex(&oct).betti(2)
        );
        assert_eq!(relative_chain_complex(&oct, &Subcomplex::full(&oct)).unwrap().top_degree(), None);
        let equator = Subcomplex::from_labels(&oct, &shapes::equator_edges()).unwrap();
        let rel = relative_chain_complex(&oct, &equator).unwrap();
        assert_eq!(rel.betti(2), 2);
    }

    #[test]
    fn les_examples() {
        let oct = shapes::octahedron();
        assert!(les_pair_check(&oct, &Subcomplex::empty(&oct)).unwrap());
        let equator = Subcomplex::from_labels(&oct, &shapes::equator_edges()).unwrap();
        assert!(les_pair_check(&oct, &equator).unwrap());
        let hex = shapes::cycle("hex", "v", 6);
        let antipodes = Subcomplex::from_labels(&hex, &[vec!["v0"], vec!["v3"]]).unwrap();
        assert!(les_pair_check(&hex, &antipodes).unwrap());
        assert!(les_pair_check(&hex, &Subcomplex::full(&hex)).unwrap());
    }

    #[test]
    fn euler_characteristic_matches_betti_numbers() {
        for k in [shapes::octahedron(), shapes::torus7(), shapes::rp2_6(), shapes::cross_polytope_boundary(4)] {
            let chi: i64 = betti_numbers(&k)
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum();
            assert_eq!(chi, k.euler_characteristic());
            assert_eq!(betti_numbers(&k)[0], k.connected_components());
        }
    }
}
