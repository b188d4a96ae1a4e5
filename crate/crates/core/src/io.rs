//! JSON file formats for complexes and maps.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simmap::SimplicialMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    pub maximal_simplices: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub name: String,
    pub domain: String,
    pub codomain: String,
    pub vertex_map: BTreeMap<String, String>,
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::input(format!("malformed {what} file: {e}")))
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

/// Maximal simplices with sorted labels, in sorted order.
pub fn complex_file(k: &SimplicialComplex) -> ComplexFile {
    let mut maximal: Vec<Vec<String>> = k
        .maximal_simplices()
        .iter()
        .map(|&(d, i)| {
            let mut labels = k.simplex_labels(k.simplex(d, i));
            labels.sort();
            labels
        })
        .collect();
    maximal.sort();
    ComplexFile { name: k.name().to_owned(), maximal_simplices: maximal }
}

pub fn complex_to_json(k: &SimplicialComplex) -> String {
    to_pretty(&complex_file(k))
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex> {
    let file: ComplexFile = parse(text, "complex")?;
    let mut seen = BTreeSet::new();
    for s in &file.maximal_simplices {
        let mut sorted = s.clone();
        sorted.sort();
        if !seen.insert(sorted) {
            return Err(Error::input(format!("complex {} lists the simplex {s:?} twice", file.name)));
        }
    }
    SimplicialComplex::from_maximal_simplices(&file.name, &file.maximal_simplices)
}

pub fn map_file(f: &SimplicialMap) -> MapFile {
    MapFile {
        name: f.name().to_owned(),
        domain: f.domain().name().to_owned(),
        codomain: f.codomain().name().to_owned(),
        vertex_map: f.assignment(),
    }
}

pub fn map_to_json(f: &SimplicialMap) -> String {
    to_pretty(&map_file(f))
}

/// Parses and validates a map whose complexes are looked up by name.
pub fn map_from_json(text: &str, complexes: &[Arc<SimplicialComplex>]) -> Result<SimplicialMap> {
    let file: MapFile = parse(text, "map")?;
    let lookup = |name: &str| {
        complexes
            .iter()
            .find(|k| k.name() == name)
            .cloned()
            .ok_or_else(|| Error::input(format!("map {} refers to unknown complex {name}", file.name)))
    };
    let f = SimplicialMap::new(&file.name, lookup(&file.domain)?, lookup(&file.codomain)?, &file.vertex_map)?;
    f.require_valid()?;
    Ok(f)
}

/// Checks that complex names are distinct, since maps refer to them by name.
pub fn distinct_names(complexes: &[Arc<SimplicialComplex>]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for k in complexes {
        if !seen.insert(k.name()) {
            return Err(Error::input(format!("two complexes are named {}", k.name())));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, shapes};

    #[test]
    fn complexes_round_trip() {
        for k in
            [shapes::torus7(), shapes::rp2_6(), shapes::cross_polytope_boundary(4), SimplicialComplex::empty("nothing")]
        {
            let text = complex_to_json(&k);
            let back = complex_from_json(&text).unwrap();
            assert_eq!(complex_to_json(&back), text);
            assert_eq!(back.f_vector(), k.f_vector());
        }
    }

    #[test]
    fn maps_round_trip() {
        for e in catalog() {
            let text = map_to_json(&e.map);
            let back = map_from_json(&text, &e.complexes).unwrap();
            assert_eq!(back.vertex_map(), e.map.vertex_map());
            assert_eq!(map_to_json(&back), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let bad = [
            "{",
            r#"{"name": "k"}"#,
            r#"{"name": "k", "maximal_simplices": [["a", "a"]]}"#,
            r#"{"name": "k", "maximal_simplices": [["a", "b"], ["b", "a"]]}"#,
            r#"{"name": "k", "maximal_simplices": [], "extra": 1}"#,
        ];
        for text in bad {
            assert!(matches!(complex_from_json(text), Err(Error::Input(_))), "{text}");
        }
        let k = Arc::new(shapes::cycle("c", "v", 3));
        let square = Arc::new(shapes::cycle("sq", "x", 4));
        let ks = vec![k, square];
        let missing = r#"{"name": "f", "domain": "c", "codomain": "nope", "vertex_map": {}}"#;
        assert!(matches!(map_from_json(missing, &ks), Err(Error::Input(_))));
        let partial = r#"{"name": "f", "domain": "c", "codomain": "sq", "vertex_map": {"v0": "x0"}}"#;
        assert!(matches!(map_from_json(partial, &ks), Err(Error::Input(_))));
        let invalid =
            r#"{"name": "f", "domain": "c", "codomain": "sq", "vertex_map": {"v0": "x0", "v1": "x1", "v2": "x2"}}"#;
        assert!(matches!(map_from_json(invalid, &ks), Err(Error::Input(_))));
    }
}
