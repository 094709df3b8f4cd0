//! Named witness complexes and set families.
//!
//! Constructors that carry a claim about their output check it on the spot
//! and fail with [`Error::SelfCheck`] rather than return an unverified object.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::collapse::{cols, is_d_collapsible, Decision, SearchOptions};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::geometry::is_1_representable;
use crate::homology::{betti, ldim, LerayOptions};
use crate::nerve::SetFamily;

/// An 8-vertex triangulation of the dunce hat: a triangle whose three edges
/// are identified as `a a a⁻¹`. The boundary circle runs through 1, 2, 3.
const DUNCE_HAT: [[Vertex; 3]; 17] = [
    [1, 2, 4],
    [1, 2, 6],
    [1, 2, 8],
    [1, 3, 5],
    [1, 3, 6],
    [1, 3, 7],
    [1, 4, 8],
    [1, 5, 7],
    [2, 3, 4],
    [2, 3, 5],
    [2, 3, 7],
    [2, 5, 8],
    [2, 6, 7],
    [3, 4, 6],
    [4, 6, 8],
    [5, 7, 8],
    [6, 7, 8],
];

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::SelfCheck(what.into()))
    }
}

/// The dunce hat, checked to be 2-dimensional and acyclic with every edge in
/// at least two triangles, `cols = 3` and Leray number 2.
pub fn dunce_hat() -> Result<SimplicialComplex> {
    let k = SimplicialComplex::from_facets(DUNCE_HAT)?;
    check(k.dim() == 2 && k.num_vertices() == 8, "dunce hat must be a 2-complex on 8 vertices")?;
    check(betti(&k).is_zero(), "dunce hat must be acyclic")?;
    let edges_ok = k.faces_of_dim(1).iter().all(|e| k.cofaces(e).filter(|t| t.dim() == 2).count() >= 2);
    check(edges_ok, "every edge of the dunce hat must lie in two triangles")?;
    check(cols(&k)? == 3, "dunce hat must have cols = 3")?;
    check(ldim(&k, &LerayOptions::default())?.ldim == 2, "dunce hat must have Leray number 2")?;
    Ok(k)
}

/// All nonempty subsets of `{1, …, m+1}` with at most `k + 1` elements,
/// ordered by size and then lexicographically.
pub fn simplex_skeleton_family(m: usize, k: usize) -> Result<SetFamily> {
    if k > m {
        return Err(Error::InvalidParameter(format!("skeleton dimension {k} exceeds simplex dimension {m}")));
    }
    let simplex = SimplicialComplex::simplex(1..=(m as Vertex + 1));
    let mut faces: Vec<&Simplex> = simplex.faces().filter(|f| !f.is_empty() && f.len() <= k + 1).collect();
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    SetFamily::new(faces.iter().map(|f| f.vertices().to_vec()))
}

/// The face family of the `(d−1)`-skeleton of the `2d`-simplex: sets of size
/// at most `d`, so its nerve is `d`-collapsible.
pub fn theorem_a_instance(d: usize) -> Result<SetFamily> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    simplex_skeleton_family(2 * d, d - 1)
}

/// The join of `d` dunce hats, relabelled onto `1..=8d`.
pub fn theorem_b_instance(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be at least 1".into()));
    }
    let hat = dunce_hat()?;
    let mut k = hat.clone();
    for _ in 1..d {
        k = k.join(&hat);
    }
    let vertices = k.vertices();
    Ok(k.relabel(|v| vertices.binary_search(&v).unwrap() as Vertex + 1))
}

/// The claw with every edge subdivided once: centre 0 and legs 0–1–2,
/// 0–3–4, 0–5–6. Checked to be 1-collapsible but not a nerve of intervals.
pub fn spider_tree() -> Result<SimplicialComplex> {
    let k = SimplicialComplex::from_facets([[0, 1], [1, 2], [0, 3], [3, 4], [0, 5], [5, 6]])?;
    let collapsible = matches!(is_d_collapsible(&k, 1, &SearchOptions::default())?, Decision::Collapsible(_));
    check(collapsible, "spider must be 1-collapsible")?;
    check(!is_1_representable(&k)?, "spider must not be 1-representable")?;
    Ok(k)
}

/// The seven lines of the Fano plane on points 1..=7.
pub fn fano_plane() -> SetFamily {
    SetFamily::new([[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]]).unwrap()
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Stated in the literature this crate follows.
    Literature,
    /// Obtained by an independent computation.
    Derived,
    /// Immediate from the construction.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub value: i64,
    pub basis: Basis,
}

#[derive(Clone, Debug)]
pub enum InstanceData {
    Complex(SimplicialComplex),
    Family(SetFamily),
}

/// A generated object with the invariant values it is expected to have.
/// Expectations are claims to be checked, never inputs to a computation.
#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub name: String,
    pub data: InstanceData,
    pub expected: BTreeMap<String, Expected>,
}

fn expect(pairs: &[(&str, i64, Basis)]) -> BTreeMap<String, Expected> {
    pairs.iter().map(|&(k, value, basis)| (k.to_string(), Expected { value, basis })).collect()
}

/// The catalogue of desk-scale instances with their expected invariants.
pub fn catalog() -> Result<Vec<NamedInstance>> {
    use Basis::*;
    let complex = |name: &str, k: SimplicialComplex, e: &[(&str, i64, Basis)]| NamedInstance {
        name: name.into(),
        data: InstanceData::Complex(k),
        expected: expect(e),
    };
    let family = |name: &str, f: SetFamily, e: &[(&str, i64, Basis)]| NamedInstance {
        name: name.into(),
        data: InstanceData::Family(f),
        expected: expect(e),
    };
    Ok(vec![
        complex(
            "dunce-hat",
            dunce_hat()?,
            &[
                ("f0", 8, Trivial),
                ("betti_total", 0, Derived),
                ("cols", 3, Literature),
                ("ldim", 2, Literature),
                ("cdim", 3, Literature),
            ],
        ),
        complex("theorem-b-1", theorem_b_instance(1)?, &[("ldim", 2, Literature), ("cols", 3, Literature)]),
        complex(
            "theorem-b-2",
            theorem_b_instance(2)?,
            &[("f0", 16, Trivial), ("cols", 6, Literature), ("ldim", 4, Literature)],
        ),
        complex("spider", spider_tree()?, &[("f0", 7, Trivial), ("f1", 6, Trivial), ("cdim", 1, Derived)]),
        family("theorem-a-1", theorem_a_instance(1)?, &[("sets", 3, Trivial), ("nerve_f0", 3, Derived)]),
        family("theorem-a-2", theorem_a_instance(2)?, &[("sets", 15, Trivial), ("nerve_f0", 15, Trivial)]),
        family("skeleton-6-2", simplex_skeleton_family(6, 2)?, &[("sets", 63, Derived)]),
        family("fano", fano_plane(), &[("sets", 7, Trivial)]),
    ])
}
