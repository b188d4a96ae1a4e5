//! The invariant suite behind `codim1 selftest`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::analyze;
use crate::catalog::{manifolds, CatalogEntry};
use crate::complex::{SimplicialComplex, Subcomplex};
use crate::diagram::{lemma31_check, random_ladder, random_matrix};
use crate::duality::{alexander_duality_check, cap, cup, evaluate, poincare_duality_check, sq1, w1, CohomologyClass};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::homology::{betti_numbers, chain_complex, les_pair_check, Subquotient};
use crate::io::{complex_from_json, complex_to_json, map_from_json, map_to_json};
use crate::separation::{certificates, jordan_brouwer_check};
use crate::simmap::{is_pointwise_injective, SimplicialMap};

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestOutcome {
    pub lines: Vec<String>,
    pub first_failure: Option<String>,
}

impl SelftestOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.first_failure.is_some() {
            2
        } else {
            0
        }
    }

    pub fn output(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

struct Runner {
    lines: Vec<String>,
    first_failure: Option<String>,
}

impl Runner {
    fn check(&mut self, name: &str, outcome: Result<()>) {
        match outcome {
            Ok(()) => self.lines.push(format!("ok   {name}")),
            Err(e) => {
                self.lines.push(format!("FAIL {name}: {e}"));
                self.first_failure.get_or_insert_with(|| name.to_owned());
            }
        }
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::assertion(msg()))
    }
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> BitVec {
    BitVec::from_indices(len, (0..len).filter(|_| rng.gen::<bool>()))
}

fn gf2_suite(rng: &mut ChaCha8Rng) -> Result<()> {
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
        let m = random_matrix(rng, r, c);
        let kernel = m.kernel_basis();
        require(m.rank() + kernel.dim() == c, || "rank + nullity ≠ columns".into())?;
        require(kernel.vectors.iter().all(|v| m.mul_vec(v).is_zero()), || "kernel vector not killed".into())?;
        require(m.rank() == m.transpose().rank(), || "row rank ≠ column rank".into())?;
        let x = random_bits(rng, c);
        let b = m.mul_vec(&x);
        let y = m.solve(&b)?.ok_or_else(|| Error::assertion("consistent system reported unsolvable"))?;
        require(m.mul_vec(&y) == b, || "solve returned a non-solution".into())?;
    }
    Ok(())
}

fn complexes(entries: &[CatalogEntry]) -> Vec<Arc<SimplicialComplex>> {
    let mut out: Vec<Arc<SimplicialComplex>> = Vec::new();
    for k in entries.iter().flat_map(|e| e.complexes.iter()) {
        if !out.iter().any(|o| o.name() == k.name()) {
            out.push(k.clone());
        }
    }
    out.sort_by(|a, b| a.name().cmp(b.name()));
    out
}

fn complex_suite(k: &SimplicialComplex) -> Result<()> {
    let betti = betti_numbers(k);
    let chi: i64 = betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    require(chi == k.euler_characteristic(), || format!("alternating Betti sum {chi} ≠ χ"))?;
    let sd = k.barycentric_subdivide().complex;
    require(betti_numbers(&sd) == betti, || "Betti numbers change under subdivision".into())?;
    require(chain_complex(k).is_complex(), || "∂∂ ≠ 0".into())?;
    let text = complex_to_json(k);
    require(complex_to_json(&complex_from_json(&text)?) == text, || "file round trip is not exact".into())
}

fn commutes_with_boundary(f: &SimplicialMap) -> Result<()> {
    let top = f.domain().dim().unwrap_or(0);
    for d in 1..=top {
        let lhs = chain_complex(f.codomain()).boundary(d).mul(&f.chain_map(d)?);
        let rhs = f.chain_map(d - 1)?.mul(&chain_complex(f.domain()).boundary(d));
        require(lhs == rhs, || format!("∂f ≠ f∂ in degree {d}"))?;
    }
    Ok(())
}

/// `p_i <-> m_i`, when that is an automorphism of `k`.
fn antipode(k: &Arc<SimplicialComplex>) -> SimplicialMap {
    let swap = |l: &str| match l.strip_prefix('p') {
        Some(rest) => format!("m{rest}"),
        None => l.strip_prefix('m').map_or(l.to_owned(), |rest| format!("p{rest}")),
    };
    let vertex_map: Option<Vec<usize>> = k.labels().iter().map(|l| k.vertex_index(&swap(l))).collect();
    vertex_map
        .and_then(|vm| SimplicialMap::from_indices("antipode", k.clone(), k.clone(), vm).ok())
        .filter(SimplicialMap::validate)
        .unwrap_or_else(|| SimplicialMap::identity(k.clone()))
}

fn simmap_suite(e: &CatalogEntry) -> Result<()> {
    let f = &e.map;
    f.require_valid()?;
    commutes_with_boundary(f)?;
    let g = antipode(f.codomain_arc());
    let gf = f.then(&g)?;
    commutes_with_boundary(&gf)?;
    let top = f.domain().dim().unwrap_or(0);
    for d in 0..=top {
        require(gf.chain_map(d)? == g.chain_map(d)?.mul(&f.chain_map(d)?), || {
            format!("functoriality fails in degree {d}")
        })?;
    }
    let si = f.self_intersection()?;
    require(si.a.is_empty() == is_pointwise_injective(f)?, || "A = ∅ disagrees with pointwise injectivity".into())?;
    let text = map_to_json(f);
    require(map_to_json(&map_from_json(&text, &e.complexes)?) == text, || "map file round trip is not exact".into())?;
    les_pair_check(f.domain(), &si.a)?
        .then_some(())
        .ok_or_else(|| Error::assertion("long exact sequence of (X, A)"))?;
    let image = f.image_subcomplex()?;
    les_pair_check(f.codomain(), &image)?
        .then_some(())
        .ok_or_else(|| Error::assertion("long exact sequence of (Y, f(X))"))
}

fn alexander_suite(e: &CatalogEntry) -> Result<()> {
    let f = &e.map;
    let certs = certificates(f);
    if !certs.codomain.is_closed_z2_homology_n_manifold {
        return Ok(());
    }
    let n = certs.codomain_dim as usize;
    let y = f.codomain();
    let si = f.self_intersection()?;
    for b in [f.image_subcomplex()?, si.b, Subcomplex::empty(y)] {
        require(alexander_duality_check(y, n, &b)?, || "dimensions differ".into())?;
    }
    Ok(())
}

fn classes(k: &SimplicialComplex, d: usize) -> Vec<CohomologyClass> {
    Subquotient::cohomology(chain_complex(k), d)
        .representatives()
        .vectors
        .iter()
        .map(|v| CohomologyClass { complex: k.name().to_owned(), degree: d, cocycle: v.clone() })
        .collect()
}

fn duality_suite(rng: &mut ChaCha8Rng) -> Result<()> {
    let list = manifolds();
    for (k, n, orientable) in &list {
        require(k.manifold_certificate(*n).is_closed_z2_homology_n_manifold, || {
            format!("{} is not certified", k.name())
        })?;
        require(poincare_duality_check(k, *n)?, || format!("cap with [{}] is not invertible", k.name()))?;
        require(w1(k, *n)?.is_zero_class(k)? == *orientable, || format!("w₁({}) misjudges orientability", k.name()))?;
        for d in 0..*n {
            for x in classes(k, d) {
                let s = sq1(k, &x)?;
                require(sq1(k, &s)?.is_zero_class(k)?, || format!("Sq¹Sq¹ ≠ 0 on {}", k.name()))?;
            }
        }
    }
    let rp2 = crate::catalog::shapes::rp2_6();
    let gens = classes(&rp2, 1);
    require(gens.len() == 1 && !sq1(&rp2, &gens[0])?.is_zero_class(&rp2)?, || "Sq¹ vanishes on H¹(RP²)".into())?;
    for _ in 0..60 {
        let (k, n, _) = &list[rng.gen_range(0..list.len())];
        let p = rng.gen_range(0..=*n);
        let x = CohomologyClass { complex: k.name().into(), degree: p, cocycle: random_bits(rng, k.count(p)) };
        let y = CohomologyClass { complex: k.name().into(), degree: n - p, cocycle: random_bits(rng, k.count(n - p)) };
        let c = random_bits(rng, k.count(*n));
        let lhs = evaluate(&cup(k, &x, &y)?, &c)?;
        let rhs = evaluate(&x, &cap(k, &y, &c, *n)?)?;
        require(lhs == rhs, || format!("⟨x⌣y, c⟩ ≠ ⟨x, y⌢c⟩ on {}", k.name()))?;
    }
    Ok(())
}

fn ladder_suite(rng: &mut ChaCha8Rng) -> Result<()> {
    for i in 0..200 {
        let r = lemma31_check(&random_ladder(rng))?;
        require(r.commutes && r.rows_exact, || format!("ladder {i} is not a valid input"))?;
        require(r.ker_h_dim == r.coker_fplus_lambda_dim, || format!("ladder {i}: dim ker h ≠ dim coker (f, λ)"))?;
    }
    Ok(())
}

fn analysis_suite(e: &CatalogEntry) -> Result<()> {
    let base = analyze(&e.map, 0)?;
    let bad = e.mismatches(&base.to_value());
    require(bad.is_empty(), || bad.join("; "))?;
    let sd = analyze(&e.map, 1)?;
    require(sd.obstruction.beta0_oracle == base.obstruction.beta0_oracle, || {
        "oracle changes under subdivision".into()
    })?;
    require(
        sd.separation.as_ref().map(|s| (s.beta0_formula, s.refusal()))
            == base.separation.as_ref().map(|s| (s.beta0_formula, s.refusal())),
        || "formula changes under subdivision".into(),
    )?;
    require(sd.exit_code == base.exit_code, || "exit code changes under subdivision".into())?;
    if let Some(si) = base.self_intersection {
        if si.is_embedding && base.refusal.as_deref() != Some("h1_Y_zero") {
            require(jordan_brouwer_check(&e.map)?, || "an embedding does not separate into two parts".into())?;
        }
    }
    Ok(())
}

/// Runs every property on `entries`; randomized suites draw from `seed`.
pub fn run_selftest(entries: &[CatalogEntry], seed: u64) -> SelftestOutcome {
    let mut run = Runner { lines: vec![format!("selftest seed {seed}")], first_failure: None };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run.check("gf2.rank_kernel_solve", gf2_suite(&mut rng));
    for k in complexes(entries) {
        run.check(&format!("complex.{}", k.name()), complex_suite(&k));
    }
    for e in entries {
        run.check(&format!("simmap.{}", e.id), simmap_suite(e));
    }
    for e in entries {
        run.check(&format!("alexander.{}", e.id), alexander_suite(e));
    }
    run.check("duality.poincare_w1_sq1_adjunction", duality_suite(&mut rng));
    run.check("diagram.ladders", ladder_suite(&mut rng));
    for e in entries {
        run.check(&format!("analysis.{}", e.id), analysis_suite(e));
    }
    let summary = match &run.first_failure {
        None => format!("selftest passed: {} properties", run.lines.len() - 1),
        Some(name) => format!("selftest failed: first failure {name}"),
    };
    run.lines.push(summary);
    SelftestOutcome { lines: run.lines, first_failure: run.first_failure }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use serde_json::json;

    #[test]
    fn pristine_catalog_passes() {
        let out = run_selftest(&catalog(), DEFAULT_SEED);
        assert_eq!(out.exit_code(), 0, "{}", out.output());
        assert_eq!(out, run_selftest(&catalog(), DEFAULT_SEED));
    }

    #[test]
    fn corrupted_expectation_fails() {
        let mut entries = catalog();
        let e = entries.iter_mut().find(|e| e.id == "figure_eight_s1_s2").unwrap();
        e.expected.iter_mut().find(|x| x.pointer == "/separation/beta0_oracle").unwrap().value = json!(4);
        let out = run_selftest(&entries, DEFAULT_SEED);
        assert_eq!(out.exit_code(), 2);
        assert_eq!(out.first_failure.as_deref(), Some("analysis.figure_eight_s1_s2"));
    }
}
