//! Finite abstract simplicial complexes with string vertex labels.
//!
//! Labels are totally ordered lexicographically and vertices are indexed in
//! that order, so a simplex stored as a sorted list of vertex indices is also
//! sorted by label. Every simplex list is kept in lexicographic order; this
//! fixes the ordering of chain bases everywhere downstream.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{self, ChainComplexZ2};

/// A simplex as a strictly increasing list of vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts and checks the vertices for duplicates.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("repeated vertex in simplex"));
        }
        if vertices.is_empty() {
            return Err(Error::input("empty simplex"));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The codimension-1 faces, where face `i` omits vertex `i`.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..if n > 1 { n } else { 0 }).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Simplex(v)
        })
    }

    /// The face spanned by positions `range` of the vertex list.
    pub fn sub_face(&self, range: std::ops::RangeInclusive<usize>) -> Simplex {
        Simplex(self.0[range].to_vec())
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Default)]
struct Caches {
    chain: OnceLock<ChainComplexZ2>,
    maximal: OnceLock<Vec<(usize, usize)>>,
    vertex_star: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for Caches {
    fn clone(&self) -> Self {
        Caches::default()
    }
}

/// A finite simplicial complex, closed under taking faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    name: String,
    labels: Vec<String>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    caches: Caches,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels == other.labels && self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex({:?}, f = {:?})", self.name, self.f_vector())
    }
}

impl SimplicialComplex {
    /// The face closure of the given simplices, named `name`.
    pub fn from_maximal_simplices<S: AsRef<str>>(name: &str, maximal: &[Vec<S>]) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for s in maximal {
            let distinct: HashSet<&str> = s.iter().map(AsRef::as_ref).collect();
            if distinct.len() != s.len() {
                return Err(Error::input(format!(
                    "simplex {:?} of {name} repeats a vertex",
                    s.iter().map(AsRef::as_ref).collect::<Vec<_>>()
                )));
            }
            if s.is_empty() {
                return Err(Error::input(format!("{name} lists an empty simplex")));
            }
            labels.extend(distinct);
        }
        let labels: Vec<String> = labels.into_iter().map(str::to_owned).collect();
        let lookup: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let tops = maximal
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s.iter().map(|l| lookup[l.as_ref()]).collect();
                v.sort_unstable();
                v
            })
            .collect::<Vec<_>>();
        Ok(Self::from_index_simplices(name, labels, tops))
    }

    /// Builds the face closure of `generators`, given as sorted index lists
    /// into `labels`. `labels` must be sorted and every label must be used.
    pub(crate) fn from_index_simplices(
        name: &str,
        labels: Vec<String>,
        generators: impl IntoIterator<Item = Vec<usize>>,
    ) -> Self {
        debug_assert!(labels.windows(2).all(|w| w[0] < w[1]));
        let mut by_dim: Vec<HashSet<Vec<usize>>> = Vec::new();
        for top in generators {
            let k = top.len();
            if k == 0 {
                continue;
            }
            if by_dim.len() < k {
                by_dim.resize_with(k, HashSet::new);
            }
            if by_dim[k - 1].contains(&top) {
                continue;
            }
            for mask in 1u32..(1 << k) {
                let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| top[i]).collect();
                by_dim[face.len() - 1].insert(face);
            }
        }
        let simplices: Vec<Vec<Simplex>> = by_dim
            .into_iter()
            .map(|set| {
                let mut v: Vec<Simplex> = set.into_iter().map(Simplex).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index =
            simplices.iter().map(|list| list.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
        SimplicialComplex { name: name.to_owned(), labels, simplices, index, caches: Caches::default() }
    }

    pub fn empty(name: &str) -> Self {
        Self::from_index_simplices(name, Vec::new(), std::iter::empty())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// A copy under a different name.
    pub fn renamed(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.name = name.to_owned();
        out
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &str {
        &self.labels[vertex]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// Dimension with the convention `dim ∅ = -1`.
    pub fn signed_dim(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, Vec::len)
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, d: usize, i: usize) -> &Simplex {
        &self.simplices[d][i]
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Looks up a simplex by its vertex labels, in any order.
    pub fn find(&self, labels: &[&str]) -> Option<(usize, usize)> {
        let vertices = labels.iter().map(|l| self.vertex_index(l)).collect::<Option<Vec<_>>>()?;
        let s = Simplex::new(vertices).ok()?;
        self.index_of(&s).map(|i| (s.dim(), i))
    }

    pub fn simplex_labels(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.labels[v].clone()).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    pub(crate) fn chain_cache(&self) -> &OnceLock<ChainComplexZ2> {
        &self.caches.chain
    }

    /// Simplices that are not a face of any other, as `(dim, index)`.
    pub fn maximal_simplices(&self) -> &[(usize, usize)] {
        self.caches.maximal.get_or_init(|| {
            let mut has_cofacet: Vec<Vec<bool>> = self.simplices.iter().map(|l| vec![false; l.len()]).collect();
            for d in 1..self.simplices.len() {
                for s in &self.simplices[d] {
                    for face in s.facets() {
                        has_cofacet[d - 1][self.index[d - 1][&face]] = true;
                    }
                }
            }
            has_cofacet
                .iter()
                .enumerate()
                .flat_map(|(d, flags)| flags.iter().enumerate().filter(|(_, &c)| !c).map(move |(i, _)| (d, i)))
                .collect()
        })
    }

    /// For each vertex, the positions in [`Self::maximal_simplices`] of the
    /// maximal simplices containing it.
    fn vertex_star(&self) -> &[Vec<usize>] {
        self.caches.vertex_star.get_or_init(|| {
            let mut star = vec![Vec::new(); self.labels.len()];
            for (pos, &(d, i)) in self.maximal_simplices().iter().enumerate() {
                for &v in self.simplices[d][i].vertices() {
                    star[v].push(pos);
                }
            }
            star
        })
    }

    /// Number of `(d+1)`-simplices having each `d`-simplex as a face.
    pub fn cofacet_counts(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; self.count(d)];
        for s in self.simplices(d + 1) {
            for face in s.facets() {
                counts[self.index[d][&face]] += 1;
            }
        }
        counts
    }

    /// Complex spanned by the given simplices of `self`, keeping only the
    /// labels that are used.
    pub(crate) fn induced(&self, name: &str, generators: impl IntoIterator<Item = Simplex>) -> Self {
        let generators: Vec<Simplex> = generators.into_iter().collect();
        let used: BTreeSet<usize> = generators.iter().flat_map(|s| s.vertices().iter().copied()).collect();
        let renumber: HashMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = used.iter().map(|&v| self.labels[v].clone()).collect();
        let tops =
            generators.into_iter().map(|s| s.vertices().iter().map(|v| renumber[v]).collect()).collect::<Vec<_>>();
        Self::from_index_simplices(name, labels, tops)
    }

    /// The link `{t : t ∩ s = ∅, t ∪ s ∈ self}`.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::input(format!("{s:?} is not a simplex of {}", self.name)));
        }
        let star = &self.vertex_star()[s.vertices()[0]];
        let maximal = self.maximal_simplices();
        let generators = star.iter().filter_map(|&pos| {
            let (d, i) = maximal[pos];
            let m = &self.simplices[d][i];
            if !s.is_face_of(m) {
                return None;
            }
            let rest: Vec<usize> =
                m.vertices().iter().copied().filter(|v| s.vertices().binary_search(v).is_err()).collect();
            (!rest.is_empty()).then(|| Simplex::from_sorted(rest))
        });
        Ok(self.induced(&format!("lk({})", self.simplex_labels(s).join(",")), generators))
    }

    /// Number of connected components (0 for the empty complex).
    pub fn connected_components(&self) -> usize {
        let mut uf = UnionFind::new(self.labels.len());
        for e in self.simplices(1) {
            uf.union(e.vertices()[0], e.vertices()[1]);
        }
        let roots: HashSet<usize> = (0..self.labels.len()).map(|v| uf.find(v)).collect();
        roots.len()
    }

    /// The barycentric subdivision.
    pub fn barycentric_subdivide(&self) -> Subdivision {
        let mut barycenters: Vec<(String, (usize, usize))> = Vec::with_capacity(self.total_simplices());
        for (d, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                barycenters.push((barycenter_label(&self.simplex_labels(s)), (d, i)));
            }
        }
        barycenters.sort_unstable();
        let mut vertex_of: Vec<Vec<usize>> = self.simplices.iter().map(|l| vec![0; l.len()]).collect();
        for (new, (_, (d, i))) in barycenters.iter().enumerate() {
            vertex_of[*d][*i] = new;
        }
        let mut chains = Vec::new();
        for &(d, i) in self.maximal_simplices() {
            let top = &self.simplices[d][i];
            for_each_permutation(top.vertices(), |order| {
                let mut chain: Vec<usize> = (1..=order.len())
                    .map(|k| {
                        let mut face = order[..k].to_vec();
                        face.sort_unstable();
                        vertex_of[k - 1][self.index[k - 1][&Simplex(face)]]
                    })
                    .collect();
                chain.sort_unstable();
                chains.push(chain);
            });
        }
        let (labels, carrier): (Vec<String>, Vec<(usize, usize)>) = barycenters.into_iter().unzip();
        let complex = Self::from_index_simplices(&format!("Sd({})", self.name), labels, chains);
        Subdivision { complex, carrier, vertex_of }
    }

    /// Combinatorial manifold test over Z/2.
    ///
    /// Requires purity in dimension `n`, exactly two cofacets on every
    /// `(n-1)`-simplex, and that the link of every simplex `s` has the Z/2
    /// homology of a sphere of dimension `n - dim s - 1`.
    pub fn manifold_certificate(&self, n: usize) -> ManifoldCertificate {
        let mut failures: BTreeSet<(usize, usize)> = BTreeSet::new();
        for &(d, i) in self.maximal_simplices() {
            if d != n {
                failures.insert((d, i));
            }
        }
        if n >= 1 {
            for (i, &c) in self.cofacet_counts(n - 1).iter().enumerate() {
                if c != 2 {
                    failures.insert((n - 1, i));
                }
            }
        }
        for (d, list) in self.simplices.iter().enumerate() {
            for (i, s) in list.iter().enumerate() {
                let sphere_dim = n as i64 - d as i64 - 1;
                let ok = sphere_dim >= -1 && is_z2_homology_sphere(&self.link(s).expect("simplex of self"), sphere_dim);
                if !ok {
                    failures.insert((d, i));
                }
            }
        }
        let failures: Vec<Vec<String>> =
            failures.into_iter().map(|(d, i)| self.simplex_labels(&self.simplices[d][i])).collect();
        ManifoldCertificate { is_closed_z2_homology_n_manifold: !self.is_empty() && failures.is_empty(), failures }
    }
}

/// Canonical label of the barycenter of a simplex with the given sorted labels.
pub fn barycenter_label(labels: &[String]) -> String {
    format!("⟨{}⟩", labels.join("."))
}

fn for_each_permutation(items: &[usize], mut visit: impl FnMut(&[usize])) {
    fn go(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if rest.is_empty() {
            visit(prefix);
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            go(prefix, rest, visit);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    go(&mut Vec::with_capacity(items.len()), &mut items.to_vec(), &mut visit);
}

fn is_z2_homology_sphere(k: &SimplicialComplex, dim: i64) -> bool {
    if dim < 0 {
        return k.is_empty();
    }
    if k.is_empty() {
        return false;
    }
    let betti = homology::betti_numbers(k);
    let dim = dim as usize;
    let expected = |d: usize| match (d, dim) {
        (0, 0) => 2,
        (0, _) => 1,
        (d, s) if d == s => 1,
        _ => 0,
    };
    betti.len() > dim && betti.iter().enumerate().all(|(d, &b)| b == expected(d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ManifoldCertificate {
    pub is_closed_z2_homology_n_manifold: bool,
    pub failures: Vec<Vec<String>>,
}

/// A barycentric subdivision together with the carrier of each new vertex.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// `carrier[v]` is the `(dim, index)` of the original simplex whose
    /// barycenter is vertex `v`.
    pub carrier: Vec<(usize, usize)>,
    vertex_of: Vec<Vec<usize>>,
}

impl Subdivision {
    /// The new vertex at the barycenter of original simplex `(d, i)`.
    pub fn barycenter(&self, d: usize, i: usize) -> usize {
        self.vertex_of[d][i]
    }

    /// The subdivision of a subcomplex of the original complex.
    pub fn subdivide_subcomplex(&self, original: &SimplicialComplex, sub: &Subcomplex) -> Result<Subcomplex> {
        sub.check_parent(original)?;
        Ok(self.full_subcomplex(|(d, i)| sub.contains(d, i)))
    }

    /// Full subcomplex spanned by the barycenters whose carriers satisfy `keep`.
    fn full_subcomplex(&self, keep: impl Fn((usize, usize)) -> bool) -> Subcomplex {
        let k = &self.complex;
        let keep_vertex: Vec<bool> = self.carrier.iter().map(|&c| keep(c)).collect();
        let members = (0..k.simplices.len())
            .map(|d| k.simplices(d).iter().map(|s| s.vertices().iter().all(|&v| keep_vertex[v])).collect())
            .collect();
        Subcomplex { members }
    }
}

/// The full subcomplex of `Sd(k)` on barycenters of simplices outside `f`.
///
/// Its body is a deformation retract of `|k| - |f|`.
pub fn complementary_complex(k: &SimplicialComplex, f: &Subcomplex) -> Result<(Subdivision, Subcomplex)> {
    f.check_parent(k)?;
    let sd = k.barycentric_subdivide();
    let complement = sd.full_subcomplex(|(d, i)| !f.contains(d, i));
    Ok((sd, complement))
}

/// A face-closed set of simplices of a parent complex.
///
/// Membership is stored per dimension in the parent's simplex order; the
/// parent itself is passed to the methods that need it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    members: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(parent: &SimplicialComplex) -> Self {
        Subcomplex { members: parent.simplices.iter().map(|l| vec![false; l.len()]).collect() }
    }

    pub fn full(parent: &SimplicialComplex) -> Self {
        Subcomplex { members: parent.simplices.iter().map(|l| vec![true; l.len()]).collect() }
    }

    /// Face closure of `generators`, which must all be simplices of `parent`.
    pub fn closure_of(parent: &SimplicialComplex, generators: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut sub = Self::empty(parent);
        for s in generators {
            if !parent.contains(&s) {
                return Err(Error::input(format!("{s:?} is not a simplex of {}", parent.name)));
            }
            sub.add_with_faces(parent, &s);
        }
        Ok(sub)
    }

    /// Face closure of simplices given by vertex labels.
    pub fn from_labels<S: AsRef<str>>(parent: &SimplicialComplex, simplices: &[Vec<S>]) -> Result<Self> {
        let generators = simplices
            .iter()
            .map(|s| {
                let vertices = s
                    .iter()
                    .map(|l| {
                        parent
                            .vertex_index(l.as_ref())
                            .ok_or_else(|| Error::input(format!("vertex {} is not in {}", l.as_ref(), parent.name)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Simplex::new(vertices)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::closure_of(parent, generators)
    }

    /// Takes a membership mask as is, rejecting it unless it is face-closed.
    pub fn from_mask(parent: &SimplicialComplex, members: Vec<Vec<bool>>) -> Result<Self> {
        let sub = Subcomplex { members };
        sub.check_parent(parent)?;
        for d in 1..sub.members.len() {
            for (i, s) in parent.simplices[d].iter().enumerate() {
                if sub.members[d][i] && s.facets().any(|f| !sub.members[d - 1][parent.index[d - 1][&f]]) {
                    return Err(Error::input(format!("not a subcomplex: a face of {s:?} is missing")));
                }
            }
        }
        Ok(sub)
    }

    fn add_with_faces(&mut self, parent: &SimplicialComplex, s: &Simplex) {
        let k = s.vertices().len();
        for mask in 1u32..(1 << k) {
            let face: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| s.vertices()[i]).collect();
            let d = face.len() - 1;
            let i = parent.index[d][&Simplex(face)];
            self.members[d][i] = true;
        }
    }

    pub(crate) fn check_parent(&self, parent: &SimplicialComplex) -> Result<()> {
        let shape_ok = self.members.len() == parent.simplices.len()
            && self.members.iter().zip(&parent.simplices).all(|(m, p)| m.len() == p.len());
        if shape_ok {
            Ok(())
        } else {
            Err(Error::input(format!("subcomplex does not belong to {}", parent.name)))
        }
    }

    pub fn contains(&self, d: usize, i: usize) -> bool {
        self.members.get(d).is_some_and(|m| m[i])
    }

    pub fn contains_simplex(&self, parent: &SimplicialComplex, s: &Simplex) -> bool {
        parent.index_of(s).is_some_and(|i| self.contains(s.dim(), i))
    }

    pub fn is_empty(&self) -> bool {
        self.members.iter().all(|m| m.iter().all(|&b| !b))
    }

    pub fn is_full(&self) -> bool {
        self.members.iter().all(|m| m.iter().all(|&b| b))
    }

    pub fn count(&self, d: usize) -> usize {
        self.members.get(d).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }

    /// Dimension with `dim ∅ = -1`.
    pub fn signed_dim(&self) -> i64 {
        (0..self.members.len()).rev().find(|&d| self.count(d) > 0).map_or(-1, |d| d as i64)
    }

    /// Member simplices of dimension `d`, as parent indices.
    pub fn indices(&self, d: usize) -> impl Iterator<Item = usize> + '_ {
        self.members.get(d).into_iter().flat_map(|m| m.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub fn members(&self) -> &[Vec<bool>] {
        &self.members
    }

    /// The subcomplex as a complex in its own right, over the parent's labels.
    pub fn to_complex(&self, parent: &SimplicialComplex, name: &str) -> SimplicialComplex {
        let generators = (0..self.members.len())
            .flat_map(|d| self.indices(d).map(move |i| (d, i)))
            .map(|(d, i)| parent.simplices[d][i].clone())
            .collect::<Vec<_>>();
        parent.induced(name, generators)
    }

    pub fn connected_components(&self, parent: &SimplicialComplex) -> usize {
        let mut uf = UnionFind::new(parent.labels.len());
        for i in self.indices(1) {
            let e = parent.simplices[1][i].vertices();
            uf.union(e[0], e[1]);
        }
        let roots: HashSet<usize> = self.indices(0).map(|i| uf.find(parent.simplices[0][i].vertices()[0])).collect();
        roots.len()
    }
}
