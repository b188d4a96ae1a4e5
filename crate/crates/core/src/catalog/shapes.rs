//! Small triangulations used by the catalog and the tests.

use crate::complex::SimplicialComplex;

fn build(name: &str, tops: Vec<Vec<String>>) -> SimplicialComplex {
    SimplicialComplex::from_maximal_simplices(name, &tops).expect("built-in triangulation is valid")
}

/// The `n`-cycle on vertices `{prefix}0 .. {prefix}{n-1}`.
pub fn cycle(name: &str, prefix: &str, n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a simplicial circle needs at least three vertices");
    let edges = (0..n).map(|i| vec![format!("{prefix}{i}"), format!("{prefix}{}", (i + 1) % n)]).collect();
    build(name, edges)
}

/// Boundary of the `d`-dimensional cross-polytope, a `(d-1)`-sphere on the
/// vertices `p1, m1, …, pd, md`.
pub fn cross_polytope_boundary(d: usize) -> SimplicialComplex {
    let tops = (0u32..1 << d)
        .map(|signs| (0..d).map(|i| format!("{}{}", if signs >> i & 1 == 0 { "p" } else { "m" }, i + 1)).collect())
        .collect();
    build(&format!("cross{d}"), tops)
}

/// The octahedron, with poles `p3` and `m3` and equator `p1 p2 m1 m2`.
pub fn octahedron() -> SimplicialComplex {
    cross_polytope_boundary(3).renamed("octahedron")
}

/// The square `p1 p2 m1 m2` around the octahedron's waist.
pub fn equator_edges() -> Vec<Vec<&'static str>> {
    vec![vec!["p1", "p2"], vec!["p2", "m1"], vec!["m1", "m2"], vec!["m2", "p1"]]
}

/// Suspension of a `k`-gon: poles `n`, `s` over the cycle `h1 … hk`.
pub fn bipyramid(k: usize) -> SimplicialComplex {
    let mut tops = Vec::new();
    for i in 1..=k {
        let j = i % k + 1;
        for pole in ["n", "s"] {
            tops.push(vec![pole.to_owned(), format!("h{i}"), format!("h{j}")]);
        }
    }
    build(&format!("bipyramid{k}"), tops)
}

/// The 7-vertex torus on `t0 … t6`.
pub fn torus7() -> SimplicialComplex {
    let tops = (0..7)
        .flat_map(|i| [[i, i + 1, i + 3], [i, i + 2, i + 3]])
        .map(|t| t.iter().map(|v| format!("t{}", v % 7)).collect())
        .collect();
    build("torus7", tops)
}

/// The 6-vertex projective plane on `r1 … r6`.
pub fn rp2_6() -> SimplicialComplex {
    const TRIANGLES: [[u8; 3]; 10] =
        [[1, 2, 4], [1, 2, 6], [1, 3, 5], [1, 3, 6], [1, 4, 5], [2, 3, 4], [2, 3, 5], [2, 5, 6], [3, 4, 6], [4, 5, 6]];
    let tops = TRIANGLES.iter().map(|t| t.iter().map(|v| format!("r{v}")).collect()).collect();
    build("rp2_6", tops)
}

/// Two triangles `abc`, `bcd` sharing the edge `bc`.
pub fn disk_two_triangles() -> SimplicialComplex {
    build("disk", vec![vec!["a".into(), "b".into(), "c".into()], vec!["b".into(), "c".into(), "d".into()]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::betti_numbers;

    #[test]
    fn shapes_have_the_expected_homology() {
        assert_eq!(betti_numbers(&cycle("c", "v", 6)), vec![1, 1]);
        assert_eq!(betti_numbers(&octahedron()), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&cross_polytope_boundary(4)), vec![1, 0, 0, 1]);
        assert_eq!(betti_numbers(&bipyramid(6)), vec![1, 0, 1]);
        assert_eq!(betti_numbers(&torus7()), vec![1, 2, 1]);
        assert_eq!(betti_numbers(&rp2_6()), vec![1, 1, 1]);
        assert_eq!(torus7().f_vector(), vec![7, 21, 14]);
        assert_eq!(rp2_6().euler_characteristic(), 1);
    }

    #[test]
    fn closed_shapes_are_certified() {
        for (k, n) in
            [(octahedron(), 2), (torus7(), 2), (rp2_6(), 2), (cross_polytope_boundary(4), 3), (bipyramid(6), 2)]
        {
            assert!(k.manifold_certificate(n).is_closed_z2_homology_n_manifold, "{}", k.name());
        }
    }
}
