//! The codimension-one embedding obstruction: `U_f`, `w₁(f)`, `θ(f)`, the
//! self-intersection class `μ`, and the Mayer–Vietoris sequence of the
//! pushout `f(M) = M ∪_A B`.

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::duality::{cap, fundamental_class, poincare_dual, w1, CohomologyClass};
use crate::error::{ensure, Error, Result};
use crate::gf2::{BitMatrix, BitVec, SubspaceBasis};
use crate::homology::{chain_complex, exact_at, selection, subcomplex_chain_complex, Subquotient};
use crate::separation::{complement_components_oracle, Codim1Setting};
use crate::simmap::SimplicialMap;

/// `f^*` on cochains of degree `d`.
fn pull_back(f: &SimplicialMap, x: &CohomologyClass) -> Result<CohomologyClass> {
    x.check_on(f.codomain())?;
    let cocycle = f.chain_map(x.degree)?.transpose().mul_vec(&x.cocycle);
    Ok(CohomologyClass { complex: f.domain().name().to_owned(), degree: x.degree, cocycle })
}

fn manifold_dims(f: &SimplicialMap) -> Result<(usize, usize)> {
    let m = f.domain().dim().ok_or_else(|| Error::precondition("empty domain"))?;
    let n = f.codomain().dim().ok_or_else(|| Error::precondition("empty codomain"))?;
    if n < m {
        return Err(Error::precondition(format!("codomain dimension {n} is below domain dimension {m}")));
    }
    Ok((m, n))
}

/// `U_f`, the Poincaré dual of `f_*[M]` in the codomain.
pub fn dual_class_uf(f: &SimplicialMap) -> Result<CohomologyClass> {
    let (m, n) = manifold_dims(f)?;
    let fc = fundamental_class(f.domain(), m)?;
    let pushed = f.chain_map(m)?.mul_vec(&fc.chain);
    ensure(chain_complex(f.codomain()).apply_boundary(m, &pushed).is_zero(), || "f_*[M] is not a cycle".into())?;
    poincare_dual(f.codomain(), n, m, &pushed)
}

/// `w₁(f) = f^* w₁(N) + w₁(M)`.
pub fn w1_of_map(f: &SimplicialMap) -> Result<CohomologyClass> {
    let (m, n) = manifold_dims(f)?;
    let wn = w1(f.codomain(), n)?;
    let wm = w1(f.domain(), m)?;
    pull_back(f, &wn)?.add(&wm)
}

/// `θ(f) = (f^* U_f + w₁(f)) ⌢ [M]`, as an `(m-1)`-cycle of the domain.
pub fn theta(f: &SimplicialMap) -> Result<BitVec> {
    let (m, n) = manifold_dims(f)?;
    if n != m + 1 {
        return Err(Error::precondition(format!("codimension is {}, not 1", n - m)));
    }
    let uf = dual_class_uf(f)?;
    let class = pull_back(f, &uf)?.add(&w1_of_map(f)?)?;
    theta_from(f.domain(), m, &class)
}

fn theta_from(k: &SimplicialComplex, m: usize, class: &CohomologyClass) -> Result<BitVec> {
    if m == 0 {
        return Ok(BitVec::zeros(0));
    }
    let fc = fundamental_class(k, m)?;
    cap(k, class, &fc.chain, m)
}

fn is_zero_homology(k: &SimplicialComplex, d: usize, z: &BitVec) -> Result<bool> {
    Subquotient::homology(chain_complex(k), d).is_zero_class(z)
}

/// Whether `f_* θ(f)` vanishes in `H_{m-1}(N)`.
pub fn theta_pushforward_check(f: &SimplicialMap) -> Result<bool> {
    let (m, _) = manifold_dims(f)?;
    let t = theta(f)?;
    if m == 0 {
        return Ok(true);
    }
    pushforward_is_zero(f, m, &t)
}

fn pushforward_is_zero(f: &SimplicialMap, m: usize, theta: &BitVec) -> Result<bool> {
    let pushed = f.chain_map(m - 1)?.mul_vec(theta);
    is_zero_homology(f.codomain(), m - 1, &pushed)
}

/// All `μ ∈ H_{m-1}(A)` with `j_* μ = θ(f)` and `(f|_A)_* μ = 0`, in the
/// coordinates of the canonical basis of `H_{m-1}(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuSolutions {
    pub particular: Vec<u8>,
    pub kernel: Vec<Vec<u8>>,
}

impl MuSolutions {
    pub fn dim_h_a(&self) -> usize {
        self.particular.len()
    }

    pub fn exists_nonzero(&self) -> bool {
        self.particular.contains(&1) || !self.kernel.is_empty()
    }

    /// No solution is zero, which happens exactly when the particular
    /// solution is nonzero modulo the kernel.
    pub fn all_nonzero(&self) -> bool {
        let mut basis = crate::gf2::Echelon::new(self.dim_h_a());
        for v in &self.kernel {
            basis.insert(&BitVec::from_bits(v));
        }
        !basis.contains(&BitVec::from_bits(&self.particular))
    }

    /// Every solution, for small solution spaces.
    pub fn enumerate(&self) -> Vec<Vec<u8>> {
        let p = BitVec::from_bits(&self.particular);
        let kernel = SubspaceBasis {
            ambient_dim: self.dim_h_a(),
            vectors: self.kernel.iter().map(|v| BitVec::from_bits(v)).collect(),
        };
        let mut out: Vec<Vec<u8>> = (0u64..1 << kernel.dim())
            .map(|mask| {
                let coeffs = BitVec::from_indices(kernel.dim(), (0..kernel.dim()).filter(|i| mask >> i & 1 == 1));
                p.xor(&kernel.combine(&coeffs)).to_bits()
            })
            .collect();
        out.sort();
        out
    }
}

fn mu_solve_in(s: &Codim1Setting, theta: &BitVec) -> Result<MuSolutions> {
    let m = s.n;
    let q = m - 1;
    let (dom, cod) = (s.f.domain(), s.f.codomain());
    let (a, b) = (&s.self_intersection.a, &s.self_intersection.b);
    let a_idx: Vec<usize> = a.indices(q).collect();
    let b_idx: Vec<usize> = b.indices(q).collect();
    let h_a = Subquotient::homology(&subcomplex_chain_complex(dom, a)?, q);
    let h_m = Subquotient::homology(chain_complex(dom), q);
    let h_b = Subquotient::homology(&subcomplex_chain_complex(cod, b)?, q);
    let j = h_a.induced(&h_m, &selection(dom.count(q), &a_idx).transpose())?;
    let fa = h_a.induced(&h_b, &s.f.chain_map(q)?.submatrix(&b_idx, &a_idx))?;
    let system = j.vstack(&fa);
    let rhs = h_m.coordinates(theta)?.concat(&BitVec::zeros(h_b.dim()));
    let particular = system
        .solve(&rhs)?
        .ok_or_else(|| Error::assertion(format!("{}: no μ satisfies j_* μ = θ(f), (f|_A)_* μ = 0", s.f.name())))?;
    Ok(MuSolutions {
        particular: particular.to_bits(),
        kernel: system.kernel_basis().vectors.iter().map(BitVec::to_bits).collect(),
    })
}

pub fn mu_solve(f: &SimplicialMap) -> Result<MuSolutions> {
    let s = Codim1Setting::new(f)?;
    let t = theta(f)?;
    if s.n == 0 {
        return Ok(MuSolutions { particular: Vec::new(), kernel: Vec::new() });
    }
    mu_solve_in(&s, &t)
}

/// Whether `dim A < m - 1` forces `θ(f) = 0`; vacuously true otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LowDimIntersectionRecord {
    pub applies: bool,
    pub holds: bool,
}

fn low_dim_intersection_in(s: &Codim1Setting, theta_zero: bool) -> Result<LowDimIntersectionRecord> {
    let applies = s.self_intersection.a.signed_dim() < s.n as i64 - 1;
    ensure(!applies || theta_zero, || format!("{}: dim A < m-1 but θ(f) ≠ 0", s.f.name()))?;
    Ok(LowDimIntersectionRecord { applies, holds: true })
}

pub fn cor317_check(f: &SimplicialMap) -> Result<bool> {
    let s = Codim1Setting::new(f)?;
    if s.n == 0 {
        return Ok(true);
    }
    let t = theta(f)?;
    Ok(low_dim_intersection_in(&s, is_zero_homology(f.domain(), s.n - 1, &t)?)?.holds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MvRecord {
    pub exact: bool,
    pub fbar_surjective: bool,
    pub ker_alpha_dim: usize,
}

/// `H_m(A) → H_m(B) ⊕ H_m(M) → H_m(f(M)) → H_{m-1}(A) → H_{m-1}(B) ⊕ H_{m-1}(M)`.
///
/// The connecting map lifts the part of a cycle of `f(M)` outside `B` to
/// `M - A`, where `f` is a bijection on simplices, and takes its boundary.
fn mv_in(s: &Codim1Setting) -> Result<MvRecord> {
    let m = s.n;
    let f = s.f;
    let (dom, cod) = (f.domain(), f.codomain());
    let (a, b, img) = (&s.self_intersection.a, &s.self_intersection.b, &s.image);
    let a_cx = subcomplex_chain_complex(dom, a)?;
    let b_cx = subcomplex_chain_complex(cod, b)?;
    let img_cx = subcomplex_chain_complex(cod, img)?;
    let idx = |sub: &crate::complex::Subcomplex, d: usize| -> Vec<usize> { sub.indices(d).collect() };
    // positions of B inside f(M)
    let b_in_img = |d: usize| -> Vec<usize> {
        let img_idx = idx(img, d);
        idx(b, d).iter().map(|i| img_idx.binary_search(i).expect("B lies in f(M)")).collect()
    };

    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    let mut fbar = Vec::new();
    let mut spaces = Vec::new();
    for q in [m, m - 1] {
        let h_a = Subquotient::homology(&a_cx, q);
        let h_b = Subquotient::homology(&b_cx, q);
        let h_m = Subquotient::homology(chain_complex(dom), q);
        let h_img = Subquotient::homology(&img_cx, q);
        let chain = f.chain_map(q)?;
        let fa = h_a.induced(&h_b, &chain.submatrix(&idx(b, q), &idx(a, q)))?;
        let i = h_a.induced(&h_m, &selection(dom.count(q), &idx(a, q)).transpose())?;
        alpha.push(fa.vstack(&i));
        let jb = h_b.induced(&h_img, &selection(img_cx.chain_dim(q), &b_in_img(q)).transpose())?;
        let all: Vec<usize> = (0..dom.count(q)).collect();
        let fb = h_m.induced(&h_img, &chain.submatrix(&idx(img, q), &all))?;
        beta.push(jb.hstack(&fb));
        fbar.push(fb);
        spaces.push((h_a, h_b, h_m, h_img));
    }

    // lift C_m(f(M)) -> C_m(M) on simplices outside B, then ∂ and restrict to A
    let img_m = idx(img, m);
    let mut lift = BitMatrix::zeros(dom.count(m), img_m.len());
    for (j, sigma) in dom.simplices(m).iter().enumerate() {
        if a.contains(m, j) {
            continue;
        }
        let image = f.image_simplex(sigma);
        ensure(image.dim() == m, || "f collapses a simplex outside A".into())?;
        let pos = img_m.binary_search(&cod.index_of(&image).expect("valid")).expect("in image");
        ensure(!b.contains(m, img_m[pos]), || "a simplex outside A lands in B".into())?;
        lift.set(j, pos, true);
    }
    let boundary = chain_complex(dom).boundary(m).mul(&lift);
    let outside_a: Vec<usize> = (0..dom.count(m - 1)).filter(|&i| !a.contains(m - 1, i)).collect();
    let (h_a_low, _, _, _) = &spaces[1];
    let (_, _, _, h_img_top) = &spaces[0];
    for z in &h_img_top.representatives().vectors {
        let leak = boundary.submatrix(&outside_a, &(0..boundary.cols()).collect::<Vec<_>>()).mul_vec(z);
        ensure(leak.is_zero(), || "connecting map leaves A".into())?;
    }
    let delta =
        h_img_top.induced(h_a_low, &boundary.submatrix(&idx(a, m - 1), &(0..boundary.cols()).collect::<Vec<_>>()))?;

    let dim_mid = spaces[0].1.dim() + spaces[0].2.dim();
    let exact = exact_at(&alpha[0], &beta[0], dim_mid)
        && exact_at(&beta[0], &delta, h_img_top.dim())
        && exact_at(&delta, &alpha[1], h_a_low.dim());
    ensure(exact, || format!("{}: Mayer–Vietoris sequence is not exact", f.name()))?;
    let fbar_surjective = fbar[0].rank() == h_img_top.dim();
    let ker_alpha_dim = h_a_low.dim() - alpha[1].rank();
    Ok(MvRecord { exact, fbar_surjective, ker_alpha_dim })
}

pub fn mv_sequence_check(f: &SimplicialMap) -> Result<MvRecord> {
    mv_in(&Codim1Setting::new(f)?)
}

/// The full obstruction-side verdict for one map.
///
/// Fields that only make sense in codimension one are `null` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    #[serde(rename = "Uf_is_zero")]
    pub uf_is_zero: Option<bool>,
    pub w1f_is_zero: Option<bool>,
    pub theta_is_zero: Option<bool>,
    pub theta_pushforward_zero: Option<bool>,
    pub mu_solutions: Option<MuSolutions>,
    pub exists_nonzero_mu: Option<bool>,
    pub all_mu_nonzero: Option<bool>,
    pub low_dim_self_intersection: Option<LowDimIntersectionRecord>,
    pub mv_sequence: Option<MvRecord>,
    pub predicate_thm_final: Option<bool>,
    /// First failing hypothesis of the final theorem, if any.
    pub refusal: Option<String>,
    pub beta0_oracle: usize,
    #[serde(rename = "dim_Hm_image")]
    pub dim_hm_image: Option<usize>,
    pub beta0_identity_holds: Option<bool>,
}

/// Everything computable outside codimension one: `w₁(f)` and the oracle.
pub fn partial_obstruction_report(f: &SimplicialMap, reason: &str) -> Result<ObstructionReport> {
    let w1f = w1_of_map(f).ok().map(|c| c.is_zero_class(f.domain())).transpose()?;
    let beta0_oracle = complement_components_oracle(f.codomain(), &f.image_subcomplex()?)?;
    Ok(ObstructionReport {
        uf_is_zero: None,
        w1f_is_zero: w1f,
        theta_is_zero: None,
        theta_pushforward_zero: None,
        mu_solutions: None,
        exists_nonzero_mu: None,
        all_mu_nonzero: None,
        low_dim_self_intersection: None,
        mv_sequence: None,
        predicate_thm_final: None,
        refusal: Some(reason.to_owned()),
        beta0_oracle,
        dim_hm_image: None,
        beta0_identity_holds: None,
    })
}

pub fn obstruction_report_in(s: &Codim1Setting) -> Result<ObstructionReport> {
    let f = s.f;
    let m = s.n;
    let dom = f.domain();
    let uf = dual_class_uf(f)?;
    let w1f = w1_of_map(f)?;
    let class = pull_back(f, &uf)?.add(&w1f)?;
    let theta = theta_from(dom, m, &class)?;
    let (theta_zero, pushforward_zero, mu, low_dim_self_intersection) = if m == 0 {
        (true, true, None, None)
    } else {
        let theta_zero = is_zero_homology(dom, m - 1, &theta)?;
        let pushforward_zero = pushforward_is_zero(f, m, &theta)?;
        ensure(pushforward_zero, || format!("{}: f_* θ(f) ≠ 0", f.name()))?;
        let mu = mu_solve_in(s, &theta)?;
        (theta_zero, pushforward_zero, Some(mu), Some(low_dim_intersection_in(s, theta_zero)?))
    };
    if s.self_intersection.is_embedding {
        ensure(theta_zero, || format!("{}: θ(f) ≠ 0 for an embedding", f.name()))?;
    }
    let mv = if m == 0 { None } else { Some(mv_in(s)?) };
    let exists_nonzero_mu = mu.as_ref().map(MuSolutions::exists_nonzero);
    if let (Some(mv), Some(true)) = (mv, exists_nonzero_mu) {
        ensure(!theta_zero || !mv.fbar_surjective, || {
            format!("{}: f̄_* is onto although θ(f) = 0 and μ ≠ 0", f.name())
        })?;
    }

    let beta0_oracle = s.oracle()?;
    let w1f_is_zero = w1f.is_zero_class(dom)?;
    let a_proper = !s.self_intersection.a.is_full();
    let dim_hm_image = subcomplex_chain_complex(f.codomain(), &s.image)?.betti(m);
    let h1_zero = s.h1_codomain == 0;
    let refusal = [
        ("h1_N_zero", h1_zero),
        ("A_proper", a_proper),
        ("mu_nonzero", exists_nonzero_mu == Some(true)),
        ("w1f_zero", w1f_is_zero),
    ]
    .into_iter()
    .find(|(_, ok)| !ok)
    .map(|(name, _)| name.to_owned());
    let predicate = refusal.is_none();
    let identity = h1_zero.then_some(beta0_oracle == dim_hm_image + 1);
    if predicate {
        ensure(beta0_oracle >= 3, || {
            format!("{}: all hypotheses hold but N - f(M) has {beta0_oracle} components", f.name())
        })?;
        ensure(identity == Some(true), || format!("{}: β₀ ≠ dim H_m(f(M)) + 1", f.name()))?;
    }
    Ok(ObstructionReport {
        uf_is_zero: Some(uf.is_zero_class(f.codomain())?),
        w1f_is_zero: Some(w1f_is_zero),
        theta_is_zero: Some(theta_zero),
        theta_pushforward_zero: Some(pushforward_zero),
        all_mu_nonzero: mu.as_ref().map(MuSolutions::all_nonzero),
        mu_solutions: mu,
        exists_nonzero_mu,
        low_dim_self_intersection,
        mv_sequence: mv,
        predicate_thm_final: Some(predicate),
        refusal,
        beta0_oracle,
        dim_hm_image: Some(dim_hm_image),
        beta0_identity_holds: identity,
    })
}

pub fn final_theorem_check(f: &SimplicialMap) -> Result<ObstructionReport> {
    obstruction_report_in(&Codim1Setting::new(f)?)
}
