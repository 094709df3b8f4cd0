//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] stores every nonempty face explicitly, keyed by its
//! sorted vertex list. The empty face is implicit: it belongs to every
//! nonempty complex, and the empty complex has no faces at all.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// A face given by its strictly increasing vertex list.
///
/// The empty vertex list is the empty face, of dimension −1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from arbitrary vertices; duplicates are merged.
    pub fn new<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Simplex(v)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn with_vertex(&self, v: Vertex) -> Simplex {
        let mut s = self.clone();
        if let Err(pos) = s.0.binary_search(&v) {
            s.0.insert(pos, v);
        }
        s
    }

    pub fn without_vertex(&self, v: Vertex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|&w| w != v).collect())
    }

    /// All nonempty subsets, including the simplex itself.
    pub fn nonempty_subfaces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 64, "simplex too large to enumerate its faces");
        (1u64..(1u64 << n)).map(move |mask| Simplex((0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect()))
    }

    pub(crate) fn shifted(&self, offset: Vertex) -> Simplex {
        Simplex(self.0.iter().map(|v| v + offset).collect())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl From<Vec<Vertex>> for Simplex {
    fn from(v: Vec<Vertex>) -> Self {
        Simplex::new(v)
    }
}

impl<const N: usize> From<[Vertex; N]> for Simplex {
    fn from(v: [Vertex; N]) -> Self {
        Simplex::new(v)
    }
}

/// Face counts `(f_0, f_1, …, f_d)` by dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Reduced Euler characteristic `Σ (−1)^k f_k − 1`.
    pub fn reduced_euler(&self) -> i64 {
        let mut chi = -1i64;
        for (k, &f) in self.0.iter().enumerate() {
            if k % 2 == 0 {
                chi += f as i64;
            } else {
                chi -= f as i64;
            }
        }
        chi
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A finite simplicial complex with explicitly stored nonempty faces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    faces: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// The complex with no faces.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of a list of faces. Redundant (non-maximal) entries are absorbed.
    pub fn from_facets<I, S>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<Simplex>,
    {
        let mut faces = BTreeSet::new();
        let mut seen = HashSet::new();
        for facet in facets {
            let facet: Simplex = facet.into();
            if facet.is_empty() {
                return Err(Error::EmptyFacet);
            }
            if !seen.insert(facet.clone()) || faces.contains(&facet) {
                continue;
            }
            faces.extend(facet.nonempty_subfaces());
        }
        Ok(SimplicialComplex { faces })
    }

    /// Wraps a face set the caller guarantees to be downward closed.
    pub(crate) fn from_closed_faces(faces: BTreeSet<Simplex>) -> Self {
        debug_assert!(faces.iter().all(|f| !f.is_empty()));
        SimplicialComplex { faces }
    }

    /// The full simplex on the given vertices.
    pub fn simplex<I: IntoIterator<Item = Vertex>>(vertices: I) -> Self {
        let s = Simplex::new(vertices);
        if s.is_empty() {
            return Self::empty();
        }
        SimplicialComplex { faces: s.nonempty_subfaces().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.faces.iter()
    }

    /// Membership test; the empty face belongs to every nonempty complex.
    pub fn contains(&self, face: &Simplex) -> bool {
        if face.is_empty() {
            !self.faces.is_empty()
        } else {
            self.faces.contains(face)
        }
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.faces.iter().filter(|f| f.len() == 1).map(|f| f.0[0]).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.faces.iter().filter(|f| f.len() == 1).count()
    }

    /// Dimension; −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn f_vector(&self) -> FVector {
        let mut counts = vec![0usize; (self.dim() + 1) as usize];
        for f in &self.faces {
            counts[f.dim() as usize] += 1;
        }
        FVector(counts)
    }

    /// Inclusion-maximal faces in lexicographic order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut covered: HashSet<Simplex> = HashSet::new();
        for f in self.faces.iter().filter(|f| f.len() >= 2) {
            for &v in f.vertices() {
                covered.insert(f.without_vertex(v));
            }
        }
        self.faces.iter().filter(|f| !covered.contains(*f)).cloned().collect()
    }

    /// Faces of dimension exactly `k`, in lexicographic order.
    pub fn faces_of_dim(&self, k: isize) -> Vec<&Simplex> {
        self.faces.iter().filter(|f| f.dim() == k).collect()
    }

    /// The induced subcomplex `K[X]`. Vertices of `X` outside `V(K)` are ignored.
    pub fn induced<I: IntoIterator<Item = Vertex>>(&self, subset: I) -> SimplicialComplex {
        let x: BTreeSet<Vertex> = subset.into_iter().collect();
        let faces = self.faces.iter().filter(|f| f.vertices().iter().all(|v| x.contains(v))).cloned().collect();
        SimplicialComplex { faces }
    }

    /// All faces of dimension at most `k`.
    pub fn skeleton(&self, k: usize) -> SimplicialComplex {
        let faces = self.faces.iter().filter(|f| f.dim() <= k as isize).cloned().collect();
        SimplicialComplex { faces }
    }

    /// The join `K * L`, with the vertices of `L` shifted by `max V(K) + 1`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.vertices().last().map_or(0, |m| m + 1);
        let shifted: Vec<Simplex> = other.faces.iter().map(|f| f.shifted(offset)).collect();
        let mut faces: BTreeSet<Simplex> = self.faces.iter().cloned().collect();
        faces.extend(shifted.iter().cloned());
        for s in &self.faces {
            for t in &shifted {
                faces.insert(s.union(t));
            }
        }
        SimplicialComplex { faces }
    }

    /// Applies an injective relabeling of the vertices.
    pub fn relabel<F: Fn(Vertex) -> Vertex>(&self, map: F) -> SimplicialComplex {
        let faces = self.faces.iter().map(|f| Simplex::new(f.vertices().iter().map(|&v| map(v)))).collect();
        SimplicialComplex { faces }
    }

    /// Faces that contain `face`, in lexicographic order.
    pub fn cofaces<'a>(&'a self, face: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.faces.iter().filter(move |f| face.is_subset(f))
    }

    /// Face counts keyed by dimension, convenient for sparse reporting.
    pub fn dimension_histogram(&self) -> BTreeMap<isize, usize> {
        let mut h = BTreeMap::new();
        for f in &self.faces {
            *h.entry(f.dim()).or_insert(0) += 1;
        }
        h
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets = self.facets();
        f.write_str("[")?;
        for (i, s) in facets.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// Dense local numbering of a vertex set, used by the bitmask engines.
#[derive(Clone, Debug)]
pub(crate) struct VertexIndex {
    labels: Vec<Vertex>,
}

pub(crate) type Mask = u128;

pub(crate) const MAX_MASK_VERTICES: usize = 128;

impl VertexIndex {
    pub fn new(labels: Vec<Vertex>) -> Result<Self> {
        if labels.len() > MAX_MASK_VERTICES {
            return Err(Error::TooManyVertices { found: labels.len(), max: MAX_MASK_VERTICES });
        }
        Ok(VertexIndex { labels })
    }

    pub fn of(complex: &SimplicialComplex) -> Result<Self> {
        Self::new(complex.vertices())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn mask(&self, s: &Simplex) -> Option<Mask> {
        let mut m = 0;
        for v in s.vertices() {
            let i = self.labels.binary_search(v).ok()?;
            m |= 1 << i;
        }
        Some(m)
    }

    pub fn simplex(&self, mask: Mask) -> Simplex {
        Simplex((0..self.labels.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.labels[i]).collect())
    }
}
