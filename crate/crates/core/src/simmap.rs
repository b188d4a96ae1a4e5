//! Simplicial maps, their chain maps, images and self-intersection sets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use crate::complex::{Simplex, SimplicialComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// A vertex assignment between two complexes.
///
/// Validity (every simplex lands on a simplex) is not enforced at
/// construction; [`SimplicialMap::validate`] reports it and every operation
/// that needs it checks it.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    name: String,
    domain: Arc<SimplicialComplex>,
    codomain: Arc<SimplicialComplex>,
    vertex_map: Vec<usize>,
    valid: OnceLock<bool>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.vertex_map == other.vertex_map
            && *self.domain == *other.domain
            && *self.codomain == *other.codomain
    }
}

impl Eq for SimplicialMap {}

/// The closed self-intersection set `A` and its image `B = f(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfIntersectionData {
    pub a: Subcomplex,
    pub b: Subcomplex,
    pub is_embedding: bool,
}

impl SimplicialMap {
    /// A map given by a label assignment, which must cover every domain vertex.
    pub fn new<S: AsRef<str> + Ord>(
        name: &str,
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        assignment: &BTreeMap<S, S>,
    ) -> Result<Self> {
        let mut vertex_map = vec![None; domain.labels().len()];
        for (from, to) in assignment {
            let (from, to) = (from.as_ref(), to.as_ref());
            let v = domain
                .vertex_index(from)
                .ok_or_else(|| Error::input(format!("map {name}: {from} is not a vertex of {}", domain.name())))?;
            let w = codomain
                .vertex_index(to)
                .ok_or_else(|| Error::input(format!("map {name}: {to} is not a vertex of {}", codomain.name())))?;
            vertex_map[v] = Some(w);
        }
        let vertex_map = vertex_map
            .into_iter()
            .enumerate()
            .map(|(v, w)| w.ok_or_else(|| Error::input(format!("map {name}: vertex {} has no image", domain.label(v)))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(name, domain, codomain, vertex_map)
    }

    /// A map from `(source label, target label)` pairs.
    pub fn from_pairs(
        name: &str,
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let assignment: BTreeMap<&str, &str> = pairs.iter().copied().collect();
        if assignment.len() != pairs.len() {
            return Err(Error::input(format!("map {name} assigns some vertex twice")));
        }
        Self::new(name, domain, codomain, &assignment)
    }

    pub fn from_indices(
        name: &str,
        domain: Arc<SimplicialComplex>,
        codomain: Arc<SimplicialComplex>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != domain.labels().len() || vertex_map.iter().any(|&w| w >= codomain.labels().len()) {
            return Err(Error::input(format!("map {name}: vertex assignment does not fit its complexes")));
        }
        Ok(SimplicialMap { name: name.to_owned(), domain, codomain, vertex_map, valid: OnceLock::new() })
    }

    pub fn identity(k: Arc<SimplicialComplex>) -> Self {
        let n = k.labels().len();
        let name = format!("id_{}", k.name());
        Self::from_indices(&name, k.clone(), k, (0..n).collect()).expect("identity fits")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &SimplicialComplex {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<SimplicialComplex> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<SimplicialComplex> {
        &self.codomain
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// The assignment as labels, in domain label order.
    pub fn assignment(&self) -> BTreeMap<String, String> {
        self.vertex_map
            .iter()
            .enumerate()
            .map(|(v, &w)| (self.domain.label(v).to_owned(), self.codomain.label(w).to_owned()))
            .collect()
    }

    /// The vertex set `f(s)`, sorted and deduplicated.
    pub fn image_simplex(&self, s: &Simplex) -> Simplex {
        let mut vs: Vec<usize> = s.vertices().iter().map(|&v| self.vertex_map[v]).collect();
        vs.sort_unstable();
        vs.dedup();
        Simplex::new(vs).expect("nonempty image")
    }

    /// Whether every domain simplex maps onto a codomain simplex.
    pub fn validate(&self) -> bool {
        *self.valid.get_or_init(|| {
            self.domain
                .maximal_simplices()
                .iter()
                .all(|&(d, i)| self.codomain.contains(&self.image_simplex(self.domain.simplex(d, i))))
        })
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        if self.validate() {
            Ok(())
        } else {
            Err(Error::input(format!(
                "map {} sends a simplex of {} outside {}",
                self.name,
                self.domain.name(),
                self.codomain.name()
            )))
        }
    }

    pub fn is_injective_on_vertices(&self) -> bool {
        let distinct: HashSet<usize> = self.vertex_map.iter().copied().collect();
        distinct.len() == self.vertex_map.len()
    }

    /// The face closure of all image simplices.
    pub fn image_subcomplex(&self) -> Result<Subcomplex> {
        self.image_of(&Subcomplex::full(&self.domain))
    }

    /// The image of a subcomplex of the domain.
    pub fn image_of(&self, sub: &Subcomplex) -> Result<Subcomplex> {
        self.require_valid()?;
        sub.check_parent(&self.domain)?;
        let generators = (0..self.domain.f_vector().len())
            .flat_map(|d| sub.indices(d).map(move |i| (d, i)))
            .map(|(d, i)| self.image_simplex(self.domain.simplex(d, i)));
        Subcomplex::closure_of(&self.codomain, generators)
    }

    /// The degree-`d` chain map over Z/2; degenerate images go to zero.
    pub fn chain_map(&self, d: usize) -> Result<BitMatrix> {
        self.require_valid()?;
        let mut m = BitMatrix::zeros(self.codomain.count(d), self.domain.count(d));
        for (j, s) in self.domain.simplices(d).iter().enumerate() {
            let image = self.image_simplex(s);
            if image.dim() == d {
                m.set(self.codomain.index_of(&image).expect("valid map"), j, true);
            }
        }
        Ok(m)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap> {
        if *self.codomain != *next.domain {
            return Err(Error::input(format!("cannot compose {} with {}: complexes differ", self.name, next.name)));
        }
        let vertex_map = self.vertex_map.iter().map(|&w| next.vertex_map[w]).collect();
        Self::from_indices(
            &format!("{}∘{}", next.name, self.name),
            self.domain.clone(),
            next.codomain.clone(),
            vertex_map,
        )
    }

    /// The induced map `Sd(domain) -> Sd(codomain)` sending the barycenter of
    /// `s` to the barycenter of `f(s)`.
    pub fn subdivide(&self) -> Result<SimplicialMap> {
        self.require_valid()?;
        let sd_dom = self.domain.barycentric_subdivide();
        let sd_cod = self.codomain.barycentric_subdivide();
        let vertex_map = sd_dom
            .carrier
            .iter()
            .map(|&(d, i)| {
                let image = self.image_simplex(self.domain.simplex(d, i));
                let j = self.codomain.index_of(&image).expect("valid map");
                sd_cod.barycenter(image.dim(), j)
            })
            .collect();
        Self::from_indices(
            &format!("Sd({})", self.name),
            Arc::new(sd_dom.complex),
            Arc::new(sd_cod.complex),
            vertex_map,
        )
    }

    /// The closed self-intersection subcomplex and its image.
    ///
    /// A simplex is a generator of `A` when `f` collapses it, when another
    /// simplex has the same image with `f` injective on both, or when its
    /// image lies in the image of a collapsed simplex.
    pub fn self_intersection(&self) -> Result<SelfIntersectionData> {
        self.require_valid()?;
        let dom = &*self.domain;
        let mut by_image: HashMap<Simplex, Vec<(usize, usize)>> = HashMap::new();
        let mut collapsed_faces: HashSet<Simplex> = HashSet::new();
        let mut generators: Vec<(usize, usize)> = Vec::new();
        let mut images: Vec<Vec<Simplex>> = Vec::new();
        for d in 0..dom.f_vector().len() {
            let mut row = Vec::with_capacity(dom.count(d));
            for (i, s) in dom.simplices(d).iter().enumerate() {
                let image = self.image_simplex(s);
                if image.dim() < d {
                    generators.push((d, i));
                    for face in all_faces(&image) {
                        collapsed_faces.insert(face);
                    }
                } else {
                    by_image.entry(image.clone()).or_default().push((d, i));
                }
                row.push(image);
            }
            images.push(row);
        }
        for group in by_image.values().filter(|g| g.len() > 1) {
            generators.extend(group.iter().copied());
        }
        for (d, row) in images.iter().enumerate() {
            for (i, image) in row.iter().enumerate() {
                if collapsed_faces.contains(image) {
                    generators.push((d, i));
                }
            }
        }
        let a = Subcomplex::closure_of(dom, generators.into_iter().map(|(d, i)| dom.simplex(d, i).clone()))?;
        let b = self.image_of(&a)?;
        let is_embedding = a.is_empty();
        Ok(SelfIntersectionData { a, b, is_embedding })
    }
}

/// Every nonempty face of `s`, including `s`.
fn all_faces(s: &Simplex) -> impl Iterator<Item = Simplex> + '_ {
    let k = s.vertices().len();
    (1u32..1 << k)
        .map(move |mask| Simplex::from_sorted((0..k).filter(|i| mask >> i & 1 == 1).map(|i| s.vertices()[i]).collect()))
}

/// Pointwise injectivity by exhaustive comparison: `f` is injective on
/// `|domain|` iff it is injective on each simplex and distinct open
/// simplices have distinct images.
pub fn is_pointwise_injective(f: &SimplicialMap) -> Result<bool> {
    f.require_valid()?;
    let dom = f.domain();
    let all: Vec<&Simplex> = (0..dom.f_vector().len()).flat_map(|d| dom.simplices(d).iter()).collect();
    let images: Vec<Simplex> = all.iter().map(|s| f.image_simplex(s)).collect();
    for (x, s) in all.iter().enumerate() {
        if images[x].dim() < s.dim() {
            return Ok(false);
        }
        if images[x + 1..].contains(&images[x]) {
            return Ok(false);
        }
    }
    Ok(true)
}
