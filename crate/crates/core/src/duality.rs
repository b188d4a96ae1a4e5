//! Fundamental classes, cup and cap products, Poincaré and Alexander
//! duality, the Bockstein `Sq¹`, and the first Stiefel–Whitney class.
//!
//! Products use the Alexander–Whitney front/back faces with respect to the
//! global vertex order.

use serde::Serialize;

use crate::complex::{complementary_complex, Simplex, SimplicialComplex, Subcomplex};
use crate::error::{ensure, Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::homology::{chain_complex, relative_chain_complex, subcomplex_chain_complex, Subquotient};
use crate::intmatrix::IntMatrix;

/// The mod 2 fundamental class: the sum of all top simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalClass {
    pub complex: String,
    pub dim: usize,
    pub chain: BitVec,
}

/// A cocycle representing a class in `H^degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub complex: String,
    pub degree: usize,
    pub cocycle: BitVec,
}

impl CohomologyClass {
    pub fn zero(k: &SimplicialComplex, degree: usize) -> Self {
        CohomologyClass { complex: k.name().to_owned(), degree, cocycle: BitVec::zeros(k.count(degree)) }
    }

    /// The unit class, valued 1 on every vertex.
    pub fn unit(k: &SimplicialComplex) -> Self {
        CohomologyClass {
            complex: k.name().to_owned(),
            degree: 0,
            cocycle: BitVec::from_bools(&vec![true; k.count(0)]),
        }
    }

    /// Wraps a cochain, checking that it is a cocycle of `k`.
    pub fn from_cocycle(k: &SimplicialComplex, degree: usize, cocycle: BitVec) -> Result<Self> {
        let class = CohomologyClass { complex: k.name().to_owned(), degree, cocycle };
        class.check_on(k)?;
        ensure(is_cocycle(k, degree, &class.cocycle), || {
            format!("cochain of degree {degree} on {} is not a cocycle", k.name())
        })?;
        Ok(class)
    }

    pub(crate) fn check_on(&self, k: &SimplicialComplex) -> Result<()> {
        if self.complex != k.name() || self.cocycle.len() != k.count(self.degree) {
            return Err(Error::input(format!(
                "class of degree {} on {} used on {}",
                self.degree,
                self.complex,
                k.name()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &CohomologyClass) -> Result<CohomologyClass> {
        if self.complex != other.complex || self.degree != other.degree {
            return Err(Error::input("adding classes of different complexes or degrees"));
        }
        Ok(CohomologyClass { cocycle: self.cocycle.xor(&other.cocycle), ..self.clone() })
    }

    /// Whether the class (not merely the cochain) vanishes.
    pub fn is_zero_class(&self, k: &SimplicialComplex) -> Result<bool> {
        self.check_on(k)?;
        Subquotient::cohomology(chain_complex(k), self.degree).is_zero_class(&self.cocycle)
    }
}

fn is_cocycle(k: &SimplicialComplex, degree: usize, g: &BitVec) -> bool {
    chain_complex(k).apply_coboundary(degree, g).is_zero()
}

/// `[k]` for a certified closed Z/2 homology `n`-manifold.
pub fn fundamental_class(k: &SimplicialComplex, n: usize) -> Result<FundamentalClass> {
    let cert = k.manifold_certificate(n);
    if !cert.is_closed_z2_homology_n_manifold {
        return Err(Error::Precondition(format!(
            "{} is not a closed Z/2 homology {n}-manifold ({} failing simplices)",
            k.name(),
            cert.failures.len()
        )));
    }
    let chain = BitVec::from_bools(&vec![true; k.count(n)]);
    ensure(chain_complex(k).apply_boundary(n, &chain).is_zero(), || format!("[{}] is not a cycle", k.name()))?;
    Ok(FundamentalClass { complex: k.name().to_owned(), dim: n, chain })
}

/// Cochain-level cup product `x ⌣ y`.
pub fn cup(k: &SimplicialComplex, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
    x.check_on(k)?;
    y.check_on(k)?;
    let (p, q) = (x.degree, y.degree);
    let front_back = |s: &Simplex| -> bool {
        let front = s.sub_face(0..=p);
        let back = s.sub_face(p..=p + q);
        x.cocycle.get(k.index_of(&front).expect("face")) && y.cocycle.get(k.index_of(&back).expect("face"))
    };
    let values: Vec<bool> = k.simplices(p + q).iter().map(front_back).collect();
    Ok(CohomologyClass { complex: k.name().to_owned(), degree: p + q, cocycle: BitVec::from_bools(&values) })
}

/// Cap product `y ⌢ c` of a `q`-cochain with an `n`-chain, an `(n-q)`-chain.
pub fn cap(k: &SimplicialComplex, y: &CohomologyClass, c: &BitVec, n: usize) -> Result<BitVec> {
    y.check_on(k)?;
    let q = y.degree;
    if q > n || c.len() != k.count(n) {
        return Err(Error::input(format!("cannot cap a degree {q} class with an {n}-chain of length {}", c.len())));
    }
    let mut out = BitVec::zeros(k.count(n - q));
    for j in c.ones() {
        let s = k.simplex(n, j);
        if y.cocycle.get(k.index_of(&s.sub_face(n - q..=n)).expect("face")) {
            out.flip(k.index_of(&s.sub_face(0..=n - q)).expect("face"));
        }
    }
    Ok(out)
}

/// Kronecker pairing `⟨x, c⟩`.
pub fn evaluate(x: &CohomologyClass, c: &BitVec) -> Result<bool> {
    if x.cocycle.len() != c.len() {
        return Err(Error::input("pairing a cochain with a chain of a different length"));
    }
    Ok(x.cocycle.dot(c))
}

/// Matrix of `⌢[k] : H^d -> H_{n-d}` in the canonical bases.
pub fn cap_matrix(k: &SimplicialComplex, fc: &FundamentalClass, d: usize) -> Result<BitMatrix> {
    let n = fc.dim;
    let c = chain_complex(k);
    let source = Subquotient::cohomology(c, d);
    let target = Subquotient::homology(c, n - d);
    let columns = source
        .representatives()
        .vectors
        .iter()
        .map(|g| {
            let class = CohomologyClass { complex: k.name().to_owned(), degree: d, cocycle: g.clone() };
            target.coordinates(&cap(k, &class, &fc.chain, n)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BitMatrix::from_columns(target.dim(), &columns))
}

/// Whether `⌢[k]` is invertible in every degree.
pub fn poincare_duality_check(k: &SimplicialComplex, n: usize) -> Result<bool> {
    let fc = fundamental_class(k, n)?;
    for d in 0..=n {
        let m = cap_matrix(k, &fc, d)?;
        if m.rows() != m.cols() || m.inverse().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The class `u` in `H^{n-d}` with `u ⌢ [k] = [h]`, for a `d`-cycle `h`.
pub fn poincare_dual(k: &SimplicialComplex, n: usize, d: usize, h: &BitVec) -> Result<CohomologyClass> {
    if d > n {
        return Err(Error::input(format!("no Poincaré dual for a {d}-cycle in dimension {n}")));
    }
    let fc = fundamental_class(k, n)?;
    let c = chain_complex(k);
    let coords = Subquotient::homology(c, d).coordinates(h)?;
    let m = cap_matrix(k, &fc, n - d)?;
    let solution =
        m.solve(&coords)?.ok_or_else(|| Error::Assertion(format!("duality system on {} is inconsistent", k.name())))?;
    let cocycle = Subquotient::cohomology(c, n - d).representative(&solution);
    Ok(CohomologyClass { complex: k.name().to_owned(), degree: n - d, cocycle })
}

/// Per-degree comparison `dim H^{n-i}(b)` against `dim H_i(k, k - b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexanderRecord {
    pub cohomology_of_b: Vec<usize>,
    pub relative_homology: Vec<usize>,
    pub holds: bool,
}

pub fn alexander_duality_record(k: &SimplicialComplex, n: usize, b: &Subcomplex) -> Result<AlexanderRecord> {
    fundamental_class(k, n)?;
    let sub = subcomplex_chain_complex(k, b)?;
    let (sd, complement) = complementary_complex(k, b)?;
    let rel = relative_chain_complex(&sd.complex, &complement)?;
    let cohomology_of_b: Vec<usize> = (0..=n).map(|i| sub.betti(n - i)).collect();
    let relative_homology: Vec<usize> = (0..=n).map(|i| rel.betti(i)).collect();
    let holds = cohomology_of_b == relative_homology;
    Ok(AlexanderRecord { cohomology_of_b, relative_homology, holds })
}

pub fn alexander_duality_check(k: &SimplicialComplex, n: usize, b: &Subcomplex) -> Result<bool> {
    Ok(alexander_duality_record(k, n, b)?.holds)
}

/// The signed coboundary `δ_p` over the integers, `(δg)(τ) = Σ (-1)^i g(d_i τ)`.
pub fn signed_coboundary(k: &SimplicialComplex, p: usize) -> IntMatrix<i64> {
    let mut m = IntMatrix::zeros(k.count(p + 1), k.count(p));
    for (r, t) in k.simplices(p + 1).iter().enumerate() {
        for (i, face) in t.facets().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m.set(r, k.index_of(&face).expect("face"), sign);
        }
    }
    m
}

/// The Bockstein `Sq¹`: lift to {0,1}, apply the integral coboundary, halve.
pub fn sq1(k: &SimplicialComplex, x: &CohomologyClass) -> Result<CohomologyClass> {
    x.check_on(k)?;
    ensure(is_cocycle(k, x.degree, &x.cocycle), || "Sq¹ of a cochain that is not a cocycle".into())?;
    let lift: Vec<i64> = (0..x.cocycle.len()).map(|i| x.cocycle.get(i) as i64).collect();
    let image = signed_coboundary(k, x.degree).mul_vec(&lift);
    ensure(image.iter().all(|v| v % 2 == 0), || "integral coboundary of a mod 2 cocycle is odd".into())?;
    let halved: Vec<bool> = image.iter().map(|v| (v / 2).rem_euclid(2) == 1).collect();
    let out =
        CohomologyClass { complex: k.name().to_owned(), degree: x.degree + 1, cocycle: BitVec::from_bools(&halved) };
    ensure(is_cocycle(k, out.degree, &out.cocycle), || "Sq¹ produced a non-cocycle".into())?;
    Ok(out)
}

/// The first Wu class `v₁`, which equals `w₁` on a closed manifold.
///
/// Solves `Σ_i c_i ⟨a_i ⌣ x_j, [k]⟩ = ⟨Sq¹ x_j, [k]⟩` over a basis `a_i` of
/// `H¹` and `x_j` of `H^{n-1}`.
pub fn w1(k: &SimplicialComplex, n: usize) -> Result<CohomologyClass> {
    let fc = fundamental_class(k, n)?;
    if n == 0 {
        return Ok(CohomologyClass::zero(k, 1));
    }
    let c = chain_complex(k);
    let h1 = Subquotient::cohomology(c, 1);
    let top = Subquotient::cohomology(c, n - 1);
    let class = |d: usize, v: &BitVec| CohomologyClass { complex: k.name().to_owned(), degree: d, cocycle: v.clone() };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in &top.representatives().vectors {
        let x = class(n - 1, x);
        let row = h1
            .representatives()
            .vectors
            .iter()
            .map(|a| evaluate(&cup(k, &class(1, a), &x)?, &fc.chain))
            .collect::<Result<Vec<bool>>>()?;
        rows.push(BitVec::from_bools(&row));
        rhs.push(evaluate(&sq1(k, &x)?, &fc.chain)?);
    }
    let system = BitMatrix::from_row_vecs(h1.dim(), rows);
    ensure(system.rank() == h1.dim(), || format!("Wu class system on {} is degenerate", k.name()))?;
    let coeffs = system
        .solve(&BitVec::from_bools(&rhs))?
        .ok_or_else(|| Error::Assertion(format!("Wu class system on {} is inconsistent", k.name())))?;
    Ok(class(1, &h1.representative(&coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shapes;
    use crate::homology::{homology_basis, induced_on_cohomology};
    use crate::simmap::SimplicialMap;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn h1_basis(k: &SimplicialComplex, d: usize) -> Vec<CohomologyClass> {
        Subquotient::cohomology(chain_complex(k), d)
            .representatives()
            .vectors
            .iter()
            .map(|v| CohomologyClass::from_cocycle(k, d, v.clone()).unwrap())
            .collect()
    }

    #[test]
    fn fundamental_class_examples() {
        let hex = shapes::cycle("hex", "v", 6);
        assert_eq!(fundamental_class(&hex, 1).unwrap().chain.count_ones(), 6);
        for (k, top) in [(shapes::octahedron(), 8), (shapes::torus7(), 14)] {
            let fc = fundamental_class(&k, 2).unwrap();
            assert_eq!(fc.chain.count_ones(), top);
            let h2 = Subquotient::homology(chain_complex(&k), 2);
            assert_eq!(h2.dim(), 1);
            assert!(!h2.is_zero_class(&fc.chain).unwrap());
        }
        let disk = shapes::disk_two_triangles();
        assert!(matches!(fundamental_class(&disk, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn cup_examples() {
        let t = shapes::torus7();
        let unit = CohomologyClass::unit(&t);
        let gens = h1_basis(&t, 1);
        for a in &gens {
            assert_eq!(cup(&t, a, &unit).unwrap().cocycle, a.cocycle);
        }
        let ab = cup(&t, &gens[0], &gens[1]).unwrap();
        assert!(!ab.is_zero_class(&t).unwrap());
        let hex = shapes::cycle("hex", "v", 6);
        let x = &h1_basis(&hex, 1)[0];
        assert!(cup(&hex, x, x).unwrap().cocycle.is_empty());
    }

    #[test]
    fn cup_is_independent_of_representatives() {
        let t = shapes::torus7();
        let gens = h1_basis(&t, 1);
        let shift = chain_complex(&t).coboundary(0).mul_vec(&BitVec::unit(7, 3));
        let moved = CohomologyClass::from_cocycle(&t, 1, gens[0].cocycle.xor(&shift)).unwrap();
        let before = cup(&t, &gens[0], &gens[1]).unwrap();
        let after = cup(&t, &moved, &gens[1]).unwrap();
        assert!(before.add(&after).unwrap().is_zero_class(&t).unwrap());
    }

    #[test]
    fn cap_examples() {
        let hex = shapes::cycle("hex", "v", 6);
        let fc = fundamental_class(&hex, 1).unwrap();
        assert_eq!(cap(&hex, &CohomologyClass::unit(&hex), &fc.chain, 1).unwrap(), fc.chain);
        let x = &h1_basis(&hex, 1)[0];
        let point = cap(&hex, x, &fc.chain, 1).unwrap();
        assert_eq!(point.count_ones() % 2, 1);
        assert!(!Subquotient::homology(chain_complex(&hex), 0).is_zero_class(&point).unwrap());

        let t = shapes::torus7();
        assert_eq!(cap_matrix(&t, &fundamental_class(&t, 2).unwrap(), 1).unwrap().rank(), 2);
    }

    #[test]
    fn adjunction_on_random_cochains() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [shapes::torus7(), shapes::rp2_6(), shapes::cross_polytope_boundary(4)] {
            let n = k.dim().unwrap();
            for _ in 0..10 {
                let p = rng.gen_range(0..=n);
                let random = |len: usize, rng: &mut ChaCha8Rng| {
                    BitVec::from_indices(len, (0..len).filter(|_| rng.gen::<bool>()))
                };
                let x = CohomologyClass { complex: k.name().into(), degree: p, cocycle: random(k.count(p), &mut rng) };
                let y = CohomologyClass {
                    complex: k.name().into(),
                    degree: n - p,
                    cocycle: random(k.count(n - p), &mut rng),
                };
                let c = random(k.count(n), &mut rng);
                let lhs = evaluate(&cup(&k, &x, &y).unwrap(), &c).unwrap();
                let rhs = evaluate(&x, &cap(&k, &y, &c, n).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn poincare_duality_examples() {
        assert!(poincare_duality_check(&shapes::cycle("hex", "v", 6), 1).unwrap());
        assert!(poincare_duality_check(&shapes::octahedron(), 2).unwrap());
        assert!(poincare_duality_check(&shapes::torus7(), 2).unwrap());
        assert!(poincare_duality_check(&shapes::rp2_6(), 2).unwrap());
    }

    #[test]
    fn poincare_dual_examples() {
        let hex = shapes::cycle("hex", "v", 6);
        let fc = fundamental_class(&hex, 1).unwrap();
        let unit = poincare_dual(&hex, 1, 1, &fc.chain).unwrap();
        assert!(!unit.is_zero_class(&hex).unwrap());
        assert_eq!(unit.degree, 0);
        let vertex = poincare_dual(&hex, 1, 0, &BitVec::unit(6, 2)).unwrap();
        assert_eq!(vertex.degree, 1);
        assert!(!vertex.is_zero_class(&hex).unwrap());
        let zero = poincare_dual(&hex, 1, 0, &BitVec::zeros(6)).unwrap();
        assert!(zero.is_zero_class(&hex).unwrap());
        let back = cap(&hex, &vertex, &fc.chain, 1).unwrap();
        assert!(!Subquotient::homology(chain_complex(&hex), 0).is_zero_class(&back).unwrap());
    }

    #[test]
    fn alexander_duality_examples() {
        let oct = shapes::octahedron();
        let vertex = Subcomplex::from_labels(&oct, &[vec!["p3"]]).unwrap();
        let r = alexander_duality_record(&oct, 2, &vertex).unwrap();
        assert_eq!(r.cohomology_of_b, vec![0, 0, 1]);
        assert!(r.holds);
        let equator = Subcomplex::from_labels(&oct, &shapes::equator_edges()).unwrap();
        let r = alexander_duality_record(&oct, 2, &equator).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.relative_homology[2], 1);
        assert!(alexander_duality_check(&oct, 2, &Subcomplex::empty(&oct)).unwrap());
    }

    #[test]
    fn sq1_examples() {
        let rp2 = shapes::rp2_6();
        assert!(sq1(&rp2, &CohomologyClass::unit(&rp2)).unwrap().cocycle.is_zero());
        let a = &h1_basis(&rp2, 1)[0];
        let sa = sq1(&rp2, a).unwrap();
        assert!(!sa.is_zero_class(&rp2).unwrap());
        assert!(sq1(&rp2, &sa).unwrap().is_zero_class(&rp2).unwrap());
        for k in [shapes::torus7(), shapes::octahedron()] {
            for d in 0..=1 {
                for x in h1_basis(&k, d) {
                    let once = sq1(&k, &x).unwrap();
                    assert!(sq1(&k, &once).unwrap().is_zero_class(&k).unwrap());
                }
            }
        }
    }

    #[test]
    fn sq1_does_not_depend_on_vertex_order() {
        let rp2 = Arc::new(shapes::rp2_6());
        // relabel so that the lexicographic order reverses
        let tops: Vec<Vec<String>> =
            rp2.simplices(2).iter().map(|s| s.vertices().iter().map(|&v| format!("z{}", 6 - v)).collect()).collect();
        let flipped = Arc::new(SimplicialComplex::from_maximal_simplices("rp2_flipped", &tops).unwrap());
        let pairs: Vec<(String, String)> = (0..6).map(|v| (format!("z{}", 6 - v), rp2.label(v).to_owned())).collect();
        let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let iso = SimplicialMap::from_pairs("iso", flipped.clone(), rp2.clone(), &pairs).unwrap();
        let a = &h1_basis(&rp2, 1)[0];
        let pull = |x: &CohomologyClass| CohomologyClass {
            complex: flipped.name().into(),
            degree: x.degree,
            cocycle: iso.chain_map(x.degree).unwrap().transpose().mul_vec(&x.cocycle),
        };
        let lhs = pull(&sq1(&rp2, a).unwrap());
        let rhs = sq1(&flipped, &pull(a)).unwrap();
        assert!(lhs.add(&rhs).unwrap().is_zero_class(&flipped).unwrap());
        assert_eq!(induced_on_cohomology(&iso, 1).unwrap().rank(), 1);
    }

    #[test]
    fn w1_examples() {
        let hex = shapes::cycle("hex", "v", 6);
        assert!(w1(&hex, 1).unwrap().is_zero_class(&hex).unwrap());
        for k in [shapes::torus7(), shapes::octahedron()] {
            assert!(w1(&k, 2).unwrap().is_zero_class(&k).unwrap());
        }
        let s3 = shapes::cross_polytope_boundary(4);
        assert!(w1(&s3, 3).unwrap().is_zero_class(&s3).unwrap());
        let rp2 = shapes::rp2_6();
        assert!(!w1(&rp2, 2).unwrap().is_zero_class(&rp2).unwrap());
        assert_eq!(homology_basis(chain_complex(&rp2), 1).representatives.dim(), 1);
    }
}
