//! Convex representations of complexes and the linear embeddings they induce.
//!
//! A [`Representation`] assigns a polytope `C_σ` to each face `σ` of `L` such
//! that a collection of the polytopes meets exactly when the corresponding
//! faces share a vertex. Choosing a point `p(v)` in the common part of the
//! polytopes of faces containing `v` then places `L` linearly in `Q^d`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{feasible_point, is_affinely_independent, RationalPoint, VPolytope};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub complex: SimplicialComplex,
    pub dim: usize,
    pub polytopes: BTreeMap<Simplex, VPolytope>,
}

impl Representation {
    /// Checks that polytopes are indexed by exactly the nonempty faces of the
    /// complex and live in the ambient dimension.
    pub fn new(complex: SimplicialComplex, dim: usize, polytopes: BTreeMap<Simplex, VPolytope>) -> Result<Self> {
        let faces: Vec<&Simplex> = complex.faces().filter(|f| !f.is_empty()).collect();
        if faces.len() != polytopes.len() || faces.iter().any(|f| !polytopes.contains_key(*f)) {
            return Err(Error::InvalidRepresentation("polytopes must be indexed by the faces of the complex".into()));
        }
        if let Some(p) = polytopes.values().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        Ok(Representation { complex, dim, polytopes })
    }
}

/// Checks that the intersection pattern of `polys` is the complex on
/// `0..polys.len()` described by `is_face` with maximal faces `facets`.
///
/// Every facet must have a common point and every minimal non-face an empty
/// intersection; monotonicity of intersection covers all other collections.
pub(crate) fn intersection_pattern_matches(
    polys: &[&VPolytope],
    is_face: &dyn Fn(&[usize]) -> bool,
    facets: &[Vec<usize>],
) -> bool {
    let meets = |members: &[usize]| {
        let sel: Vec<&VPolytope> = members.iter().map(|&i| polys[i]).collect();
        feasible_point(&sel).is_some()
    };
    if !facets.iter().all(|f| meets(f)) {
        return false;
    }
    let n = polys.len();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(face) = stack.pop() {
        let start = face.last().map_or(0, |&l| l + 1);
        for j in start..n {
            let mut next = face.clone();
            next.push(j);
            if is_face(&next) {
                stack.push(next);
                continue;
            }
            let minimal = (0..face.len()).all(|skip| {
                let sub: Vec<usize> = next.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                is_face(&sub)
            });
            if minimal && meets(&next) {
                return false;
            }
        }
    }
    true
}

/// The faces of `L` as nerve members: a collection is a face of the nerve iff
/// its members share a vertex.
fn nerve_check(r: &Representation) -> bool {
    let faces: Vec<&Simplex> = r.polytopes.keys().collect();
    let polys: Vec<&VPolytope> = r.polytopes.values().collect();
    let is_face = |members: &[usize]| {
        let mut it = members.iter();
        let Some(&first) = it.next() else { return true };
        let mut common = faces[first].clone();
        for &m in it {
            common = common.intersection(faces[m]);
            if common.is_empty() {
                return false;
            }
        }
        true
    };
    let stars: Vec<Vec<usize>> = r
        .complex
        .vertices()
        .into_iter()
        .map(|v| (0..faces.len()).filter(|&i| faces[i].contains_vertex(v)).collect())
        .collect();
    intersection_pattern_matches(&polys, &is_face, &stars)
}

/// Whether the polytopes of `R` intersect exactly as the faces of its complex do.
pub fn verify_representation(r: &Representation) -> bool {
    let consistent = r.polytopes.len() == r.complex.faces().filter(|f| !f.is_empty()).count()
        && r.complex.faces().filter(|f| !f.is_empty()).all(|f| r.polytopes.contains_key(f))
        && r.polytopes.values().all(|p| p.dim() == r.dim);
    consistent && nerve_check(r)
}

/// Whether `polytopes` (one per vertex of `K`) has nerve exactly `K`.
pub fn verify_nerve_representation(k: &SimplicialComplex, polytopes: &BTreeMap<Vertex, VPolytope>) -> bool {
    let vertices = k.vertices();
    if vertices.len() != polytopes.len() || vertices.iter().any(|v| !polytopes.contains_key(v)) {
        return false;
    }
    let mut dims = polytopes.values().map(VPolytope::dim);
    let d = dims.next();
    if dims.any(|x| Some(x) != d) {
        return false;
    }
    let polys: Vec<&VPolytope> = vertices.iter().map(|v| &polytopes[v]).collect();
    let is_face =
        |members: &[usize]| k.contains(&Simplex::new(members.iter().map(|&i| vertices[i]).collect::<Vec<_>>()));
    let facets: Vec<Vec<usize>> =
        k.facets().iter().map(|f| f.vertices().iter().map(|v| vertices.binary_search(v).unwrap()).collect()).collect();
    intersection_pattern_matches(&polys, &is_face, &facets)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEmbedding {
    pub points: BTreeMap<Vertex, RationalPoint>,
}

impl LinearEmbedding {
    pub fn image(&self, s: &Simplex) -> Option<Vec<RationalPoint>> {
        s.vertices().iter().map(|v| self.points.get(v).cloned()).collect()
    }
}

/// The first violation in face order: an affinely dependent face `(σ, σ)` or
/// a pair of disjoint faces with meeting images.
pub fn embedding_violation(l: &SimplicialComplex, e: &LinearEmbedding) -> Option<(Simplex, Simplex)> {
    let faces: Vec<&Simplex> = l.faces().filter(|f| !f.is_empty()).collect();
    let mut hulls = Vec::with_capacity(faces.len());
    for f in &faces {
        let Some(pts) = e.image(f) else { return Some(((*f).clone(), (*f).clone())) };
        if pts.iter().any(|p| p.dim() != pts[0].dim()) || !is_affinely_independent(&pts) {
            return Some(((*f).clone(), (*f).clone()));
        }
        hulls.push(VPolytope::new(pts).expect("nonempty face"));
    }
    if let Some(d) = hulls.first().map(VPolytope::dim) {
        if let Some(h) = hulls.iter().zip(&faces).find(|(h, _)| h.dim() != d) {
            return Some(((*h.1).clone(), (*h.1).clone()));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..faces.len())
        .flat_map(|i| (i + 1..faces.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| faces[i].is_disjoint(faces[j]))
        .collect();
    pairs
        .par_iter()
        .find_first(|&&(i, j)| feasible_point(&[&hulls[i], &hulls[j]]).is_some())
        .map(|&(i, j)| (faces[i].clone(), faces[j].clone()))
}

/// Whether `E` places every vertex of `L`, keeps each face affinely
/// independent, and keeps images of disjoint faces apart.
pub fn verify_embedding(l: &SimplicialComplex, e: &LinearEmbedding) -> bool {
    l.vertices().iter().all(|v| e.points.contains_key(v)) && embedding_violation(l, e).is_none()
}

/// Places each vertex in the common part of the polytopes of faces containing it.
pub fn extract_embedding(r: &Representation) -> Result<LinearEmbedding> {
    if !verify_representation(r) {
        return Err(Error::InvalidRepresentation("the polytopes do not realize the face intersections".into()));
    }
    let mut points = BTreeMap::new();
    for v in r.complex.vertices() {
        let star: Vec<&VPolytope> = r.polytopes.iter().filter(|(f, _)| f.contains_vertex(v)).map(|(_, p)| p).collect();
        let p = feasible_point(&star).ok_or_else(|| {
            Error::InvalidRepresentation(format!("polytopes of faces containing vertex {v} do not meet"))
        })?;
        points.insert(v, p);
    }
    let e = LinearEmbedding { points };
    match embedding_violation(&r.complex, &e) {
        None => Ok(e),
        Some((a, b)) => Err(Error::EmbeddingViolation(a, b)),
    }
}
