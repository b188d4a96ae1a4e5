//! Built-in instances with the values their reports are expected to carry.

pub mod shapes;

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::SimplicialComplex;
use crate::simmap::SimplicialMap;

/// One expected value inside an analysis report, addressed by JSON pointer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectation {
    pub pointer: String,
    pub value: Value,
    pub provenance: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    /// Domain first, then codomain; the two coincide for self-maps.
    pub complexes: Vec<Arc<SimplicialComplex>>,
    pub map: SimplicialMap,
    pub expected: Vec<Expectation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntrySummary {
    pub id: String,
    pub description: String,
    pub domain: String,
    pub codomain: String,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn summary(&self) -> EntrySummary {
        EntrySummary {
            id: self.id.clone(),
            description: self.description.clone(),
            domain: self.map.domain().name().to_owned(),
            codomain: self.map.codomain().name().to_owned(),
            expected: self.expected.clone(),
        }
    }

    /// Pointers whose value in `report` differs from the expected one.
    pub fn mismatches(&self, report: &Value) -> Vec<String> {
        self.expected
            .iter()
            .filter(|e| report.pointer(&e.pointer) != Some(&e.value))
            .map(|e| {
                let got = report.pointer(&e.pointer).map_or("missing".to_owned(), Value::to_string);
                format!("{}: expected {} ({}), got {got}", e.pointer, e.value, e.provenance)
            })
            .collect()
    }
}

fn expect(list: &[(&str, Value, &str)]) -> Vec<Expectation> {
    list.iter()
        .map(|(p, v, why)| Expectation { pointer: (*p).to_owned(), value: v.clone(), provenance: (*why).to_owned() })
        .collect()
}

fn circle_map(
    id: &str,
    description: &str,
    domain: SimplicialComplex,
    prefix: &str,
    codomain: SimplicialComplex,
    targets: &[&str],
    expected: Vec<Expectation>,
) -> CatalogEntry {
    let pairs: Vec<(String, &str)> = targets.iter().enumerate().map(|(i, t)| (format!("{prefix}{i}"), *t)).collect();
    let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), *b)).collect();
    let (domain, codomain) = (Arc::new(domain), Arc::new(codomain));
    let map =
        SimplicialMap::from_pairs(id, domain.clone(), codomain.clone(), &pairs).expect("catalog map is well formed");
    CatalogEntry {
        id: id.to_owned(),
        description: description.to_owned(),
        complexes: vec![domain, codomain],
        map,
        expected,
    }
}

/// Every built-in entry, sorted by id.
pub fn catalog() -> Vec<CatalogEntry> {
    let oracle = "component count of the complement";
    let formula = "cokernel formula";
    let mut entries = vec![
        circle_map(
            "equator_s1_s2",
            "the equator of the octahedron",
            shapes::cycle("circle4", "x", 4),
            "x",
            shapes::octahedron(),
            &["p1", "p2", "m1", "m2"],
            expect(&[
                ("/separation/beta0_formula", json!(2), formula),
                ("/separation/beta0_oracle", json!(2), oracle),
                ("/self_intersection/is_embedding", json!(true), "injective vertex map"),
                ("/obstruction/theta_is_zero", json!(true), "embeddings have no obstruction"),
                ("/obstruction/predicate_thm_final", json!(false), "A is empty, so every μ vanishes"),
                ("/obstruction/refusal", json!("mu_nonzero"), "A is empty, so every μ vanishes"),
                ("/exit_code", json!(0), "hypotheses hold and formula agrees"),
            ]),
        ),
        {
            let oct = Arc::new(shapes::octahedron());
            let cross = Arc::new(shapes::cross_polytope_boundary(4));
            let pairs: Vec<(&str, &str)> = oct.labels().iter().map(|l| (l.as_str(), l.as_str())).collect();
            let map =
                SimplicialMap::from_pairs("equator_s2_s3", oct.clone(), cross.clone(), &pairs).expect("well formed");
            CatalogEntry {
                id: "equator_s2_s3".into(),
                description: "the octahedron as the equator of the 16-cell boundary".into(),
                complexes: vec![oct, cross],
                map,
                expected: expect(&[
                    ("/separation/beta0_formula", json!(2), formula),
                    ("/separation/beta0_oracle", json!(2), oracle),
                    ("/self_intersection/is_embedding", json!(true), "injective vertex map"),
                    ("/obstruction/theta_is_zero", json!(true), "embeddings have no obstruction"),
                    ("/exit_code", json!(0), "hypotheses hold and formula agrees"),
                ]),
            }
        },
        circle_map(
            "figure_eight_s1_s2",
            "a hexagon wrapped onto two triangles of the octahedron meeting at p3",
            shapes::cycle("circle6", "v", 6),
            "v",
            shapes::octahedron(),
            &["p3", "p1", "p2", "p3", "m1", "m2"],
            expect(&[
                ("/separation/coker_dim", json!(1), formula),
                ("/separation/beta0_formula", json!(3), formula),
                ("/separation/beta0_oracle", json!(3), oracle),
                ("/self_intersection/dim_A", json!(0), "v0 and v3 both map to p3"),
                ("/obstruction/exists_nonzero_mu", json!(true), "solution set {00, 11}"),
                ("/obstruction/all_mu_nonzero", json!(false), "solution set {00, 11}"),
                ("/obstruction/dim_Hm_image", json!(2), "wedge of two circles"),
                ("/obstruction/predicate_thm_final", json!(true), "all hypotheses hold"),
                ("/exit_code", json!(0), "hypotheses hold and formula agrees"),
            ]),
        ),
        circle_map(
            "triple_bouquet_s1_s2",
            "a 9-gon wrapped onto three triangles of the hexagonal bipyramid meeting at n",
            shapes::cycle("circle9", "w", 9),
            "w",
            shapes::bipyramid(6),
            &["n", "h1", "h2", "n", "h3", "h4", "n", "h5", "h6"],
            expect(&[
                ("/separation/coker_dim", json!(2), formula),
                ("/separation/beta0_formula", json!(4), formula),
                ("/separation/beta0_oracle", json!(4), oracle),
                ("/obstruction/dim_Hm_image", json!(3), "wedge of three circles"),
                ("/obstruction/predicate_thm_final", json!(true), "all hypotheses hold"),
                ("/exit_code", json!(0), "hypotheses hold and formula agrees"),
            ]),
        ),
        circle_map(
            "double_wrap_s1",
            "a hexagon wrapped twice around a triangle of the octahedron",
            shapes::cycle("circle6", "v", 6),
            "v",
            shapes::octahedron(),
            &["p1", "p2", "p3", "p1", "p2", "p3"],
            expect(&[
                ("/refusal", json!("A_proper"), "every point is a double point"),
                ("/separation/beta0_formula", Value::Null, "refused"),
                ("/separation/beta0_oracle", json!(2), oracle),
                ("/self_intersection/dim_A", json!(1), "A is the whole circle"),
                ("/exit_code", json!(1), "hypothesis refusal"),
            ]),
        ),
        circle_map(
            "essential_circle_t2",
            "a non-separating circle on the 7-vertex torus",
            shapes::cycle("circle3", "c", 3),
            "c",
            shapes::torus7(),
            &["t0", "t1", "t2"],
            expect(&[
                ("/refusal", json!("h1_Y_zero"), "the torus has H₁ of rank 2"),
                ("/separation/beta0_oracle", json!(1), oracle),
                ("/obstruction/Uf_is_zero", json!(false), "the circle is essential"),
                ("/obstruction/theta_is_zero", json!(true), "embeddings have no obstruction"),
                ("/exit_code", json!(1), "hypothesis refusal"),
            ]),
        ),
        {
            let rp2 = Arc::new(shapes::rp2_6());
            let map = SimplicialMap::identity(rp2.clone());
            CatalogEntry {
                id: "rp2_identity".into(),
                description: "the identity of the 6-vertex projective plane, in codimension zero".into(),
                complexes: vec![rp2],
                map,
                expected: expect(&[
                    ("/status", json!("precondition"), "codimension is 0"),
                    ("/separation", Value::Null, "codimension is 0"),
                    ("/obstruction/w1f_is_zero", json!(true), "w₁ + w₁ = 0"),
                    ("/obstruction/beta0_oracle", json!(0), "the image is everything"),
                    ("/obstruction/theta_is_zero", Value::Null, "codimension is 0"),
                    ("/exit_code", json!(1), "precondition failure"),
                ]),
            }
        },
        circle_map(
            "rp2_essential_circle",
            "an orientation-reversing circle in the 6-vertex projective plane",
            shapes::cycle("circle3", "c", 3),
            "c",
            shapes::rp2_6(),
            &["r1", "r2", "r3"],
            expect(&[
                ("/refusal", json!("h1_Y_zero"), "the projective plane has H₁ = Z/2"),
                ("/separation/beta0_oracle", json!(1), oracle),
                ("/obstruction/w1f_is_zero", json!(false), "w₁ restricts nontrivially"),
                ("/obstruction/Uf_is_zero", json!(false), "the circle is essential"),
                ("/obstruction/theta_is_zero", json!(true), "embeddings have no obstruction"),
                ("/exit_code", json!(1), "hypothesis refusal"),
            ]),
        ),
    ];
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    entries
}

pub fn find(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.id == id)
}

/// The closed manifolds of the catalog with their dimension and orientability.
pub fn manifolds() -> Vec<(SimplicialComplex, usize, bool)> {
    vec![
        (shapes::cycle("circle4", "x", 4), 1, true),
        (shapes::octahedron(), 2, true),
        (shapes::bipyramid(6), 2, true),
        (shapes::torus7(), 2, true),
        (shapes::cross_polytope_boundary(4), 3, true),
        (shapes::rp2_6(), 2, false),
    ]
}
