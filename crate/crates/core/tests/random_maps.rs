use std::sync::Arc;

use proptest::prelude::*;

use codim1::analysis::{analyze, subdivided};
use codim1::catalog::shapes;
use codim1::separation::{complement_components_oracle, complement_components_subdivided};
use codim1::{SimplicialComplex, SimplicialMap};

fn circle_map(codomain: &Arc<SimplicialComplex>, targets: &[usize]) -> Option<SimplicialMap> {
    let domain = Arc::new(shapes::cycle("circle", "v", targets.len()));
    let f = SimplicialMap::from_indices("random", domain, codomain.clone(), targets.to_vec()).ok()?;
    f.validate().then_some(f)
}

fn targets(vertices: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..vertices, 3..=9)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn circles_in_the_octahedron(t in targets(6)) {
        let oct = Arc::new(shapes::octahedron());
        let Some(f) = circle_map(&oct, &t) else { return Ok(()) };
        let report = analyze(&f, 0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let image = f.image_subcomplex().unwrap();
        let oracle = complement_components_oracle(f.codomain(), &image).unwrap();
        prop_assert_eq!(oracle, complement_components_subdivided(f.codomain(), &image).unwrap());
        prop_assert_eq!(report.obstruction.beta0_oracle, oracle);
        if let Some(sep) = &report.separation {
            prop_assert!(sep.agreement != Some(false));
        }
        let identity = report.image_homology_identity.expect("the octahedron is simply connected");
        prop_assert!(identity.holds);
    }

    #[test]
    fn circles_in_the_bipyramid_survive_subdivision(t in targets(8)) {
        let bip = Arc::new(shapes::bipyramid(6));
        let Some(f) = circle_map(&bip, &t) else { return Ok(()) };
        let base = analyze(&f, 0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let sd = analyze(&f, 1).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(base.obstruction.beta0_oracle, sd.obstruction.beta0_oracle);
        prop_assert_eq!(base.exit_code, sd.exit_code);
        let g = subdivided(&f, 1).unwrap();
        prop_assert_eq!(g.domain().euler_characteristic(), 0);
    }

    #[test]
    fn circles_on_the_torus_never_break_an_assertion(t in targets(7)) {
        let torus = Arc::new(shapes::torus7());
        let Some(f) = circle_map(&torus, &t) else { return Ok(()) };
        let report = analyze(&f, 0).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(report.refusal.as_deref(), Some("h1_Y_zero"));
        prop_assert!(report.obstruction.theta_pushforward_zero == Some(true));
    }
}
