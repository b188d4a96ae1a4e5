//! Component counts of `Y - f(X)` for codimension-one maps: hypothesis
//! checks, the cokernel formula, and an independent combinatorial oracle.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::complex::{complementary_complex, ManifoldCertificate, SimplicialComplex, Subcomplex};
use crate::error::{ensure, Error, Result};
use crate::gf2::BitMatrix;
use crate::homology::{betti_numbers, chain_complex, selection, subcomplex_chain_complex, Subquotient};
use crate::simmap::{SelfIntersectionData, SimplicialMap};

/// Number of components of `|y| - |f_img|`.
///
/// Counts components of the complementary complex without building the
/// subdivision: its vertices are the simplices outside `f_img`, and two of
/// them are joined exactly when one is a face of the other. Since `f_img`
/// is face-closed, every simplex between two outside simplices is outside
/// too, so codimension-one face pairs already generate the relation.
pub fn complement_components_oracle(y: &SimplicialComplex, f_img: &Subcomplex) -> Result<usize> {
    f_img.check_parent(y)?;
    let dims = y.f_vector();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &n| {
            let start = *acc;
            *acc += n;
            Some(start)
        })
        .collect();
    let total: usize = dims.iter().sum();
    let mut uf = UnionFind::new(total);
    for d in 1..dims.len() {
        for (i, s) in y.simplices(d).iter().enumerate() {
            if f_img.contains(d, i) {
                continue;
            }
            for face in s.facets() {
                let j = y.index_of(&face).expect("face-closed");
                if !f_img.contains(d - 1, j) {
                    uf.union(offsets[d] + i, offsets[d - 1] + j);
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..dims.len())
        .flat_map(|d| (0..dims[d]).filter(move |&i| !f_img.contains(d, i)).map(move |i| (d, i)))
        .map(|(d, i)| uf.find(offsets[d] + i))
        .collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

/// The same count, taken on the explicit complementary complex.
pub fn complement_components_subdivided(y: &SimplicialComplex, f_img: &Subcomplex) -> Result<usize> {
    let (sd, complement) = complementary_complex(y, f_img)?;
    Ok(complement.connected_components(&sd.complex))
}

/// A validated codimension-one map between certified closed manifolds,
/// with the data every check shares.
#[derive(Clone, Debug)]
pub struct Codim1Setting<'a> {
    pub f: &'a SimplicialMap,
    /// Dimension of the domain; the codomain has dimension `n + 1`.
    pub n: usize,
    pub self_intersection: SelfIntersectionData,
    pub image: Subcomplex,
    pub h1_codomain: usize,
}

/// Certificates of both complexes, with the dimensions they were tested in.
#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    pub domain_dim: i64,
    pub codomain_dim: i64,
    pub domain: ManifoldCertificate,
    pub codomain: ManifoldCertificate,
}

pub fn certificates(f: &SimplicialMap) -> Certificates {
    let cert = |k: &SimplicialComplex| match k.dim() {
        Some(n) => k.manifold_certificate(n),
        None => ManifoldCertificate { is_closed_z2_homology_n_manifold: false, failures: Vec::new() },
    };
    Certificates {
        domain_dim: f.domain().signed_dim(),
        codomain_dim: f.codomain().signed_dim(),
        domain: cert(f.domain()),
        codomain: cert(f.codomain()),
    }
}

impl<'a> Codim1Setting<'a> {
    pub fn new(f: &'a SimplicialMap) -> Result<Self> {
        Self::with_certificates(f, &certificates(f))
    }

    pub fn with_certificates(f: &'a SimplicialMap, certs: &Certificates) -> Result<Self> {
        f.require_valid()?;
        if !certs.domain.is_closed_z2_homology_n_manifold {
            return Err(Error::Precondition(format!(
                "domain {} is not a closed Z/2 homology manifold",
                f.domain().name()
            )));
        }
        if !certs.codomain.is_closed_z2_homology_n_manifold {
            return Err(Error::Precondition(format!(
                "codomain {} is not a closed Z/2 homology manifold",
                f.codomain().name()
            )));
        }
        if certs.codomain_dim != certs.domain_dim + 1 {
            return Err(Error::Precondition(format!(
                "codimension is {}, not 1",
                certs.codomain_dim - certs.domain_dim
            )));
        }
        let n = certs.domain_dim as usize;
        let self_intersection = f.self_intersection()?;
        let image = f.image_subcomplex()?;
        let h1_codomain = betti_numbers(f.codomain()).get(1).copied().unwrap_or(0);
        Ok(Codim1Setting { f, n, self_intersection, image, h1_codomain })
    }

    pub fn oracle(&self) -> Result<usize> {
        complement_components_oracle(self.f.codomain(), &self.image)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[allow(non_snake_case)]
pub struct Hypotheses {
    pub h1_Y_zero: bool,
    pub A_proper: bool,
    pub Y_minus_fA_connected: bool,
}

impl Hypotheses {
    /// Name of the first failing hypothesis, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            ("h1_Y_zero", self.h1_Y_zero),
            ("A_proper", self.A_proper),
            ("Y_minus_fA_connected", self.Y_minus_fA_connected),
        ]
        .into_iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

/// Formula value against the oracle. The formula fields are `null` when a
/// hypothesis fails, since nothing is claimed outside them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    #[serde(flatten)]
    pub hypotheses: Hypotheses,
    pub coker_dim: Option<usize>,
    pub beta0_formula: Option<usize>,
    pub beta0_oracle: usize,
    pub agreement: Option<bool>,
}

impl SeparationReport {
    pub fn refusal(&self) -> Option<&'static str> {
        self.hypotheses.first_failure()
    }
}

pub fn hypotheses_in(s: &Codim1Setting) -> Result<Hypotheses> {
    let fa_connected = complement_components_oracle(s.f.codomain(), &s.self_intersection.b)? == 1;
    Ok(Hypotheses {
        h1_Y_zero: s.h1_codomain == 0,
        A_proper: !s.self_intersection.a.is_full(),
        Y_minus_fA_connected: fa_connected,
    })
}

pub fn check_hypotheses_thm32(f: &SimplicialMap) -> Result<Hypotheses> {
    hypotheses_in(&Codim1Setting::new(f)?)
}

/// `dim coker (i*, (f|_A)*) : H^{n-1}(X) ⊕ H^{n-1}(f(A)) -> H^{n-1}(A)`.
///
/// For `n = 0` the source and target degrees would be negative, so the
/// cokernel is zero.
pub fn restriction_cokernel_dim(s: &Codim1Setting) -> Result<usize> {
    let Some(q) = s.n.checked_sub(1) else {
        return Ok(0);
    };
    let (dom, cod) = (s.f.domain(), s.f.codomain());
    let (a, b) = (&s.self_intersection.a, &s.self_intersection.b);
    let a_idx: Vec<usize> = a.indices(q).collect();
    let b_idx: Vec<usize> = b.indices(q).collect();
    let h_a = Subquotient::cohomology(&subcomplex_chain_complex(dom, a)?, q);
    let h_x = Subquotient::cohomology(chain_complex(dom), q);
    let h_b = Subquotient::cohomology(&subcomplex_chain_complex(cod, b)?, q);
    let restrict_x = selection(dom.count(q), &a_idx);
    let pull_b = s.f.chain_map(q)?.submatrix(&b_idx, &a_idx).transpose();
    let block: BitMatrix = h_x.induced(&h_a, &restrict_x)?.hstack(&h_b.induced(&h_a, &pull_b)?);
    Ok(block.cokernel_dim())
}

pub fn separation_report_in(s: &Codim1Setting) -> Result<SeparationReport> {
    let hypotheses = hypotheses_in(s)?;
    let beta0_oracle = s.oracle()?;
    if hypotheses.first_failure().is_some() {
        return Ok(SeparationReport {
            hypotheses,
            coker_dim: None,
            beta0_formula: None,
            beta0_oracle,
            agreement: None,
        });
    }
    let coker = restriction_cokernel_dim(s)?;
    let formula = 2 + coker;
    Ok(SeparationReport {
        hypotheses,
        coker_dim: Some(coker),
        beta0_formula: Some(formula),
        beta0_oracle,
        agreement: Some(formula == beta0_oracle),
    })
}

/// The report, whether or not the hypotheses hold.
pub fn separation_report(f: &SimplicialMap) -> Result<SeparationReport> {
    separation_report_in(&Codim1Setting::new(f)?)
}

/// The formula, refusing when a hypothesis fails.
pub fn beta0_formula_thm32(f: &SimplicialMap) -> Result<SeparationReport> {
    let report = separation_report(f)?;
    match report.refusal() {
        Some(h) => Err(Error::refused(h)),
        None => Ok(report),
    }
}

/// Embeddings into a manifold with `H₁ = 0` separate into exactly two parts.
pub fn jordan_brouwer_check(f: &SimplicialMap) -> Result<bool> {
    let s = Codim1Setting::new(f)?;
    if !s.self_intersection.is_embedding {
        return Err(Error::Precondition(format!("{} is not an embedding", f.name())));
    }
    if s.h1_codomain != 0 {
        return Err(Error::Precondition(format!("H₁({}) is nonzero", f.codomain().name())));
    }
    let report = separation_report_in(&s)?;
    Ok(report.beta0_oracle == 2 && report.beta0_formula == Some(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SmallIntersectionRecord {
    #[serde(rename = "dimA")]
    pub dim_a: i64,
    pub applies: bool,
    pub disconnected: bool,
}

pub fn small_self_intersection_in(s: &Codim1Setting) -> Result<SmallIntersectionRecord> {
    if s.h1_codomain != 0 {
        return Err(Error::Precondition(format!("H₁({}) is nonzero", s.f.codomain().name())));
    }
    let dim_a = s.self_intersection.a.signed_dim();
    let applies = dim_a < s.n as i64;
    let disconnected = s.oracle()? >= 2;
    ensure(!applies || disconnected, || format!("{}: dim A < n but the complement is connected", s.f.name()))?;
    Ok(SmallIntersectionRecord { dim_a, applies, disconnected })
}

pub fn prop34_check(f: &SimplicialMap) -> Result<SmallIntersectionRecord> {
    small_self_intersection_in(&Codim1Setting::new(f)?)
}

/// `β₀(Y - f(X)) = 1 + dim H^n(f(X))`, valid whenever `H₁(Y) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ImageHomologyRecord {
    pub beta0_oracle: usize,
    pub dim_hn_image: usize,
    pub holds: bool,
}

pub fn image_homology_identity_in(s: &Codim1Setting) -> Result<ImageHomologyRecord> {
    if s.h1_codomain != 0 {
        return Err(Error::Precondition(format!("H₁({}) is nonzero", s.f.codomain().name())));
    }
    let beta0_oracle = s.oracle()?;
    let dim_hn_image = subcomplex_chain_complex(s.f.codomain(), &s.image)?.betti(s.n);
    Ok(ImageHomologyRecord { beta0_oracle, dim_hn_image, holds: beta0_oracle == 1 + dim_hn_image })
}

pub fn image_homology_identity_check(f: &SimplicialMap) -> Result<ImageHomologyRecord> {
    image_homology_identity_in(&Codim1Setting::new(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::shapes;
    use std::sync::Arc;

    fn map(
        name: &str,
        dom: SimplicialComplex,
        cod: SimplicialComplex,
        prefix: &str,
        targets: &[&str],
    ) -> SimplicialMap {
        let pairs: Vec<(String, &str)> =
            targets.iter().enumerate().map(|(i, t)| (format!("{prefix}{i}"), *t)).collect();
        let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), *b)).collect();
        SimplicialMap::from_pairs(name, Arc::new(dom), Arc::new(cod), &pairs).unwrap()
    }

    fn equator() -> SimplicialMap {
        map("eq", shapes::cycle("sq", "x", 4), shapes::octahedron(), "x", &["p1", "p2", "m1", "m2"])
    }

    fn figure_eight() -> SimplicialMap {
        map("fig8", shapes::cycle("hex", "v", 6), shapes::octahedron(), "v", &["p3", "p1", "p2", "p3", "m1", "m2"])
    }

    #[test]
    fn oracle_examples() {
        let oct = shapes::octahedron();
        assert_eq!(complement_components_oracle(&oct, &Subcomplex::empty(&oct)).unwrap(), 1);
        let eq = Subcomplex::from_labels(&oct, &shapes::equator_edges()).unwrap();
        assert_eq!(complement_components_oracle(&oct, &eq).unwrap(), 2);
        let fig8 = figure_eight().image_subcomplex().unwrap();
        assert_eq!(complement_components_oracle(&oct, &fig8).unwrap(), 3);
        assert_eq!(complement_components_oracle(&oct, &Subcomplex::full(&oct)).unwrap(), 0);
    }

    #[test]
    fn oracle_matches_explicit_complementary_complex() {
        let oct = shapes::octahedron();
        let subs = [
            Subcomplex::empty(&oct),
            Subcomplex::full(&oct),
            Subcomplex::from_labels(&oct, &shapes::equator_edges()).unwrap(),
            figure_eight().image_subcomplex().unwrap(),
            Subcomplex::from_labels(&oct, &[vec!["p1"], vec!["m1"]]).unwrap(),
        ];
        for sub in &subs {
            assert_eq!(
                complement_components_oracle(&oct, sub).unwrap(),
                complement_components_subdivided(&oct, sub).unwrap()
            );
        }
    }

    #[test]
    fn hypotheses_examples() {
        let all = Hypotheses { h1_Y_zero: true, A_proper: true, Y_minus_fA_connected: true };
        assert_eq!(check_hypotheses_thm32(&equator()).unwrap(), all);
        assert_eq!(check_hypotheses_thm32(&figure_eight()).unwrap(), all);
        let torus = map("ess", shapes::cycle("c", "c", 3), shapes::torus7(), "c", &["t0", "t1", "t2"]);
        assert!(!check_hypotheses_thm32(&torus).unwrap().h1_Y_zero);
    }

    #[test]
    fn formula_examples() {
        let r = beta0_formula_thm32(&equator()).unwrap();
        assert_eq!((r.coker_dim, r.beta0_formula, r.beta0_oracle), (Some(0), Some(2), 2));
        let r = beta0_formula_thm32(&figure_eight()).unwrap();
        assert_eq!((r.coker_dim, r.beta0_formula, r.beta0_oracle), (Some(1), Some(3), 3));
        let oct = shapes::octahedron();
        let pairs: Vec<(&str, &str)> = oct.labels().iter().map(|l| (l.as_str(), l.as_str())).collect();
        let cod = Arc::new(shapes::cross_polytope_boundary(4));
        let s2_s3 = SimplicialMap::from_pairs("eq2", Arc::new(oct.clone()), cod, &pairs).unwrap();
        let r = beta0_formula_thm32(&s2_s3).unwrap();
        assert_eq!((r.coker_dim, r.beta0_formula, r.beta0_oracle), (Some(0), Some(2), 2));
    }

    #[test]
    fn formula_refuses_outside_hypotheses() {
        let torus = map("ess", shapes::cycle("c", "c", 3), shapes::torus7(), "c", &["t0", "t1", "t2"]);
        assert_eq!(beta0_formula_thm32(&torus), Err(Error::refused("h1_Y_zero")));
        let r = separation_report(&torus).unwrap();
        assert_eq!(r.beta0_formula, None);
        assert_eq!(r.beta0_oracle, 1);
    }

    #[test]
    fn jordan_brouwer_examples() {
        assert!(jordan_brouwer_check(&equator()).unwrap());
        assert!(jordan_brouwer_check(&equator().subdivide().unwrap()).unwrap());
        assert!(matches!(jordan_brouwer_check(&figure_eight()), Err(Error::Precondition(_))));
    }

    #[test]
    fn small_self_intersection_examples() {
        let r = prop34_check(&figure_eight()).unwrap();
        assert_eq!(r, SmallIntersectionRecord { dim_a: 0, applies: true, disconnected: true });
        let r = prop34_check(&equator()).unwrap();
        assert_eq!(r, SmallIntersectionRecord { dim_a: -1, applies: true, disconnected: true });
        let wrap =
            map("wrap", shapes::cycle("hex", "v", 6), shapes::octahedron(), "v", &["p1", "p2", "p3", "p1", "p2", "p3"]);
        let r = prop34_check(&wrap).unwrap();
        assert_eq!((r.dim_a, r.applies), (1, false));
    }

    #[test]
    fn image_homology_identity_examples() {
        for f in [equator(), figure_eight()] {
            assert!(image_homology_identity_check(&f).unwrap().holds);
        }
    }

    #[test]
    fn codimension_other_than_one_is_a_precondition_failure() {
        let id = SimplicialMap::identity(Arc::new(shapes::octahedron()));
        assert!(matches!(separation_report(&id), Err(Error::Precondition(_))));
    }
}
