use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use codim1::analysis::{analyze, subdivided};
use codim1::catalog::{catalog, find, shapes, CatalogEntry};
use codim1::complex::Subcomplex;
use codim1::diagram::{lemma31_check, random_ladder};
use codim1::duality::{alexander_duality_check, cap, cup, evaluate, poincare_duality_check, sq1, w1, CohomologyClass};
use codim1::gf2::BitVec;
use codim1::homology::{chain_complex, Subquotient};
use codim1::obstruction::{mu_solve, theta, theta_pushforward_check};
use codim1::selftest::{run_selftest, DEFAULT_SEED};
use codim1::separation::{
    image_homology_identity_check, jordan_brouwer_check, prop34_check, separation_report, Codim1Setting,
};
use codim1::Result;

type Outcome = Result<std::result::Result<String, String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn verdict(ok: bool, detail: String) -> std::result::Result<String, String> {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(start: Instant, limit: Duration, detail: String) -> std::result::Result<String, String> {
    let elapsed = start.elapsed();
    verdict(elapsed < limit, format!("{detail}; {:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn codim_one(entries: &[CatalogEntry]) -> Vec<&CatalogEntry> {
    entries.iter().filter(|e| Codim1Setting::new(&e.map).is_ok()).collect()
}

fn jordan_brouwer() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    for id in ["equator_s1_s2", "equator_s2_s3"] {
        let e = find(id).expect("catalog entry");
        for k in 0..=2 {
            let f = subdivided(&e.map, k)?;
            let r = separation_report(&f)?;
            if !jordan_brouwer_check(&f)? || r.beta0_formula != Some(2) || r.beta0_oracle != 2 {
                return Ok(Err(format!(
                    "{id} after {k} subdivisions: formula {:?}, oracle {}",
                    r.beta0_formula, r.beta0_oracle
                )));
            }
            counts.push(r.beta0_oracle);
        }
    }
    Ok(within(start, Duration::from_secs(5), format!("formula = oracle = 2 on {} instances", counts.len())))
}

fn formula_matches_oracle() -> Outcome {
    let start = Instant::now();
    let entries = catalog();
    let mut checked = Vec::new();
    for e in codim_one(&entries) {
        for k in 0..=1 {
            let r = separation_report(&subdivided(&e.map, k)?)?;
            if r.refusal().is_some() {
                continue;
            }
            if r.beta0_formula != Some(r.beta0_oracle) {
                return Ok(Err(format!("{} (Sd^{k}): formula {:?}, oracle {}", e.id, r.beta0_formula, r.beta0_oracle)));
            }
            checked.push(format!("{}:{}", e.id, r.beta0_oracle));
        }
    }
    let fig8 = separation_report(&find("figure_eight_s1_s2").unwrap().map)?.beta0_formula;
    let triple = separation_report(&find("triple_bouquet_s1_s2").unwrap().map)?.beta0_formula;
    if fig8 != Some(3) || triple != Some(4) {
        return Ok(Err(format!("figure_eight {fig8:?}, triple_bouquet {triple:?}")));
    }
    Ok(within(
        start,
        Duration::from_secs(30),
        format!("{} agreements, figure_eight 3, triple_bouquet 4", checked.len()),
    ))
}

fn image_homology_identity() -> Outcome {
    let entries = catalog();
    let mut n = 0;
    for e in codim_one(&entries) {
        if Codim1Setting::new(&e.map)?.h1_codomain != 0 {
            continue;
        }
        let r = image_homology_identity_check(&e.map)?;
        if !r.holds {
            return Ok(Err(format!("{}: β₀ {} vs dim H^n(f(X)) {}", e.id, r.beta0_oracle, r.dim_hn_image)));
        }
        n += 1;
    }
    Ok(verdict(n >= 5, format!("β₀ = 1 + dim H^n(f(X)) on {n} instances")))
}

fn small_self_intersection() -> Outcome {
    let entries = catalog();
    let mut applied = 0;
    for e in codim_one(&entries) {
        if Codim1Setting::new(&e.map)?.h1_codomain != 0 {
            continue;
        }
        let r = prop34_check(&e.map)?;
        if r.applies {
            applied += 1;
            if !r.disconnected {
                return Ok(Err(format!("{}: dim A {} but complement connected", e.id, r.dim_a)));
            }
        }
    }
    Ok(verdict(applied >= 3, format!("oracle ≥ 2 on all {applied} instances with dim A < n")))
}

fn ladders() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let total = 200;
    let mut agree = 0;
    for _ in 0..total {
        let r = lemma31_check(&random_ladder(&mut rng))?;
        if r.commutes && r.rows_exact && r.ker_h_dim == r.coker_fplus_lambda_dim {
            agree += 1;
        }
    }
    Ok(within(start, Duration::from_secs(5), format!("{agree}/{total} ladders with dim ker h = dim coker (f, λ)"))
        .and_then(|d| verdict(agree == total, d)))
}

fn duality() -> Outcome {
    let spheres_and_surfaces = [
        (shapes::cycle("circle6", "v", 6), 1),
        (shapes::octahedron(), 2),
        (shapes::torus7(), 2),
        (shapes::cross_polytope_boundary(4), 3),
        (shapes::rp2_6(), 2),
    ];
    for (k, n) in &spheres_and_surfaces {
        if !poincare_duality_check(k, *n)? {
            return Ok(Err(format!("cap with [{}] is not invertible", k.name())));
        }
    }

    let oct = shapes::octahedron();
    let cross = shapes::cross_polytope_boundary(4);
    let torus = shapes::torus7();
    let rp2 = shapes::rp2_6();
    let pairs = [
        (&oct, 2, Subcomplex::from_labels(&oct, &shapes::equator_edges())?),
        (&oct, 2, Subcomplex::from_labels(&oct, &[vec!["p3"]])?),
        (&oct, 2, Subcomplex::from_labels(&oct, &[vec!["p1", "p2", "p3"], vec!["p1", "m2"]])?),
        (&oct, 2, Subcomplex::empty(&oct)),
        (&cross, 3, Subcomplex::from_labels(&cross, &[vec!["p1", "p2", "p3"], vec!["m1", "m2", "m3"]])?),
        (&torus, 2, Subcomplex::from_labels(&torus, &[vec!["t0", "t1"], vec!["t1", "t2"], vec!["t0", "t2"]])?),
        (&rp2, 2, Subcomplex::from_labels(&rp2, &[vec!["r1", "r2"], vec!["r2", "r3"], vec!["r1", "r3"]])?),
    ];
    for (k, n, b) in &pairs {
        if !alexander_duality_check(k, *n, b)? {
            return Ok(Err(format!("Alexander duality fails on a subcomplex of {}", k.name())));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let triples = 60;
    for _ in 0..triples {
        let (k, n) = &spheres_and_surfaces[rng.gen_range(0..spheres_and_surfaces.len())];
        let p = rng.gen_range(0..=*n);
        let mut random = |len: usize| BitVec::from_indices(len, (0..len).filter(|_| rng.gen::<bool>()));
        let x = CohomologyClass { complex: k.name().into(), degree: p, cocycle: random(k.count(p)) };
        let y = CohomologyClass { complex: k.name().into(), degree: n - p, cocycle: random(k.count(n - p)) };
        let c = random(k.count(*n));
        if evaluate(&cup(k, &x, &y)?, &c)? != evaluate(&x, &cap(k, &y, &c, *n)?)? {
            return Ok(Err(format!("adjunction fails on {}", k.name())));
        }
    }
    Ok(Ok(format!(
        "Poincaré on {} complexes, Alexander on {} pairs, adjunction on {triples} triples",
        spheres_and_surfaces.len(),
        pairs.len()
    )))
}

fn obstruction_pipeline() -> Outcome {
    let entries = catalog();
    let maps = codim_one(&entries);
    let mut embeddings = 0;
    for e in &maps {
        let setting = Codim1Setting::new(&e.map)?;
        let t = theta(&e.map)?;
        if setting.self_intersection.is_embedding {
            embeddings += 1;
            if !Subquotient::homology(chain_complex(e.map.domain()), setting.n - 1).is_zero_class(&t)? {
                return Ok(Err(format!("{}: θ ≠ 0 on an embedding", e.id)));
            }
        }
        if !theta_pushforward_check(&e.map)? {
            return Ok(Err(format!("{}: f_*θ ≠ 0", e.id)));
        }
        mu_solve(&e.map)?;
    }
    for (k, n, orientable) in codim1::catalog::manifolds() {
        if w1(&k, n)?.is_zero_class(&k)? != orientable {
            return Ok(Err(format!("w₁({}) misjudges orientability", k.name())));
        }
    }
    let rp2 = shapes::rp2_6();
    let gens = Subquotient::cohomology(chain_complex(&rp2), 1).representatives().vectors.clone();
    let a = CohomologyClass { complex: rp2.name().into(), degree: 1, cocycle: gens[0].clone() };
    if gens.len() != 1 || sq1(&rp2, &a)?.is_zero_class(&rp2)? {
        return Ok(Err("Sq¹ vanishes on the generator of H¹(RP²)".into()));
    }
    Ok(Ok(format!("{embeddings} embeddings with θ = 0, {} maps with f_*θ = 0 and μ solvable", maps.len())))
}

fn final_theorem() -> Outcome {
    let mut seen = Vec::new();
    for (id, count) in [("figure_eight_s1_s2", 3), ("triple_bouquet_s1_s2", 4)] {
        let r = analyze(&find(id).unwrap().map, 0)?.obstruction;
        if r.predicate_thm_final != Some(true) || r.beta0_oracle != count {
            return Ok(Err(format!("{id}: predicate {:?}, oracle {}", r.predicate_thm_final, r.beta0_oracle)));
        }
        seen.push(format!("{id} {count}"));
    }
    let control = analyze(&find("equator_s1_s2").unwrap().map, 0)?.obstruction;
    let ok = control.refusal.as_deref() == Some("mu_nonzero") && control.beta0_oracle == 2;
    Ok(verdict(
        ok,
        format!(
            "{}; embedding control refused at {} with oracle {}",
            seen.join(", "),
            control.refusal.as_deref().unwrap_or("nothing"),
            control.beta0_oracle
        ),
    ))
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let first = run_selftest(&catalog(), DEFAULT_SEED);
    let second = run_selftest(&catalog(), DEFAULT_SEED);
    if first.exit_code() != 0 {
        return Ok(Err(format!("selftest failed at {:?}", first.first_failure)));
    }
    let same = first.output() == second.output();
    Ok(within(start, Duration::from_secs(120), format!("two selftest runs, identical output: {same}"))
        .and_then(|d| verdict(same, d)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("Jordan-Brouwer separation into two components", jordan_brouwer),
        ("cokernel formula equals oracle", formula_matches_oracle),
        ("component count from top homology of the image", image_homology_identity),
        ("small self-intersection disconnects", small_self_intersection),
        ("ladder lemma on random diagrams", ladders),
        ("Poincaré, Alexander and cup/cap adjunction", duality),
        ("obstruction pipeline", obstruction_pipeline),
        ("at least three components", final_theorem),
        ("selftest determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let line = match check() {
            Ok(Ok(detail)) => format!("PASS criterion {}: {name} ({detail})", i + 1),
            Ok(Err(detail)) => format!("FAIL criterion {}: {name} ({detail})", i + 1),
            Err(e) => format!("FAIL criterion {}: {name} (error: {e})", i + 1),
        };
        failed += usize::from(line.starts_with("FAIL"));
        println!("{line}");
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
