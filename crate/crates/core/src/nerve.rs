//! Nerves of set families and the minimal-exclusion-sequence collapse schedule.
//!
//! For a family `F = (S_1, …, S_n)` of sets of positive integers, the nerve has
//! vertex `k` for `S_k` and a face for every subfamily with a common element.
//! Family members are ordered by index; "the smallest set" below always means
//! the member with the smallest index.
//!
//! For an intersecting subfamily `G` with `i = min ∩G`, the minimal exclusion
//! sequence `mes(G) = (G_1, …, G_{i−1})` assigns to every `j < i` a member of
//! `G` avoiding `j`: the earliest previous entry that avoids `j` if there is
//! one ("old at j"), otherwise the smallest member of `G` avoiding `j` ("new
//! at j"). `M(G)` is the set of distinct entries. Collapsing the faces `M` of
//! `{M(G)}` in order of decreasing `i`, then lexicographically by `mes`, each
//! into the face `T(M)`, is a `d`-collapse of the nerve whenever every set has
//! at most `d` elements.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::collapse::{CollapseSchedule, CollapseStep, FaceQuery};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub const MAX_FAMILY_SIZE: usize = 128;

type FamilyMask = u128;

/// An indexed family `(S_1, …, S_n)` of nonempty sets of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    sets: Vec<BTreeSet<u32>>,
    containing: BTreeMap<u32, FamilyMask>,
}

impl SetFamily {
    pub fn new<I, S>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = u32>,
    {
        let sets: Vec<BTreeSet<u32>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        if sets.len() > MAX_FAMILY_SIZE {
            return Err(Error::InvalidParameter(format!(
                "families are limited to {MAX_FAMILY_SIZE} sets, got {}",
                sets.len()
            )));
        }
        let mut containing: BTreeMap<u32, FamilyMask> = BTreeMap::new();
        for (k, s) in sets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySet(k + 1));
            }
            if s.contains(&0) {
                return Err(Error::InvalidParameter(format!("set {} contains 0; elements must be positive", k + 1)));
            }
            for &e in s {
                *containing.entry(e).or_insert(0) |= 1 << k;
            }
        }
        Ok(SetFamily { sets, containing })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The set `S_k` (1-based, as in the nerve's vertex labels).
    pub fn set(&self, k: Vertex) -> Option<&BTreeSet<u32>> {
        self.sets.get((k as usize).checked_sub(1)?)
    }

    pub fn sets(&self) -> &[BTreeSet<u32>] {
        &self.sets
    }

    pub fn max_set_size(&self) -> usize {
        self.sets.iter().map(BTreeSet::len).max().unwrap_or(0)
    }

    fn mask_of(&self, g: &Simplex) -> Result<FamilyMask> {
        let mut m = 0;
        for &k in g.vertices() {
            if k == 0 || k as usize > self.sets.len() {
                return Err(Error::IndexOutOfRange(k as usize));
            }
            m |= 1 << (k - 1);
        }
        Ok(m)
    }

    fn simplex_of(mask: FamilyMask) -> Simplex {
        Simplex::new((0..128).filter(|i| mask >> i & 1 == 1).map(|i| i as Vertex + 1))
    }

    /// `min ∩G` for a nonempty subfamily, `None` if the intersection is empty.
    fn min_common(&self, g: FamilyMask) -> Option<u32> {
        self.containing.iter().find(|(_, &m)| g & !m == 0).map(|(&e, _)| e)
    }

    fn intersects(&self, g: FamilyMask) -> bool {
        g != 0 && self.min_common(g).is_some()
    }

    fn smallest_avoiding(&self, g: FamilyMask, j: u32) -> Option<usize> {
        let with_j = self.containing.get(&j).copied().unwrap_or(0);
        let avoid = g & !with_j;
        (avoid != 0).then(|| avoid.trailing_zeros() as usize)
    }

    fn avoids(&self, k: usize, j: u32) -> bool {
        !self.sets[k].contains(&j)
    }
}

/// `mes(G)` together with its old/new flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesRecord {
    pub subject: Simplex,
    /// `i = min ∩G`.
    pub min_element: u32,
    /// `G_1, …, G_{i−1}` as family indices.
    pub sequence: Vec<Vertex>,
    /// `new_at[j − 1]` is true when `G_j` is new at `j`.
    pub new_at: Vec<bool>,
}

impl MesRecord {
    /// The distinct entries of the sequence, i.e. `M(G)`.
    pub fn family(&self) -> Simplex {
        Simplex::new(self.sequence.iter().copied())
    }
}

fn mes_of_mask(family: &SetFamily, g: FamilyMask, i: u32) -> (Vec<usize>, Vec<bool>) {
    let mut seq: Vec<usize> = Vec::with_capacity(i as usize - 1);
    let mut new_at = Vec::with_capacity(i as usize - 1);
    for j in 1..i {
        match seq.iter().find(|&&k| family.avoids(k, j)) {
            Some(&k) => {
                seq.push(k);
                new_at.push(false);
            }
            None => {
                let k = family.smallest_avoiding(g, j).expect("j is not a common element of G");
                seq.push(k);
                new_at.push(true);
            }
        }
    }
    (seq, new_at)
}

fn m_of_mask(family: &SetFamily, g: FamilyMask) -> Option<FamilyMask> {
    let i = family.min_common(g)?;
    let (seq, _) = mes_of_mask(family, g, i);
    Some(seq.iter().fold(0, |m, &k| m | 1 << k))
}

/// The minimal exclusion sequence of an intersecting subfamily `G`.
pub fn mes(family: &SetFamily, g: &Simplex) -> Result<MesRecord> {
    let mask = family.mask_of(g)?;
    let i = if mask == 0 { None } else { family.min_common(mask) };
    let i = i.ok_or_else(|| Error::NotIntersecting(g.vertices().iter().map(|&v| v as usize).collect()))?;
    let (seq, new_at) = mes_of_mask(family, mask, i);
    Ok(MesRecord {
        subject: g.clone(),
        min_element: i,
        sequence: seq.into_iter().map(|k| k as Vertex + 1).collect(),
        new_at,
    })
}

/// `M(G)`: the distinct sets occurring in `mes(G)`.
pub fn m_of(family: &SetFamily, g: &Simplex) -> Result<Simplex> {
    Ok(mes(family, g)?.family())
}

/// The sequence data of a member `M` of `{M(G)}`; `M = ∅` stands for `i = 1`.
fn exclusion_record(family: &SetFamily, m: FamilyMask) -> Option<(u32, Vec<usize>, Vec<bool>)> {
    if m == 0 {
        return family.containing.contains_key(&1).then(|| (1, Vec::new(), Vec::new()));
    }
    let i = family.min_common(m)?;
    let (seq, new_at) = mes_of_mask(family, m, i);
    (seq.iter().fold(0, |acc, &k| acc | 1 << k) == m).then_some((i, seq, new_at))
}

fn t_of_mask(family: &SetFamily, m: FamilyMask, i: u32, seq: &[usize], new_at: &[bool]) -> FamilyMask {
    let with_i = family.containing.get(&i).copied().unwrap_or(0);
    let mut t = m;
    for f in 0..family.len() {
        if with_i >> f & 1 == 0 {
            continue;
        }
        let ok = (1..i).all(|j| {
            let pos = (j - 1) as usize;
            !(new_at[pos] && family.avoids(f, j)) || f > seq[pos]
        });
        if ok {
            t |= 1 << f;
        }
    }
    t
}

/// `T(M) = M ∪ {F : i ∈ F and F > G_j for all j ∉ F with G_j new at j}`.
pub fn t_of(family: &SetFamily, m: &Simplex) -> Result<Simplex> {
    let mask = family.mask_of(m)?;
    let not_member = || Error::NotExclusionFamily(m.vertices().iter().map(|&v| v as usize).collect());
    let (i, seq, new_at) = exclusion_record(family, mask).ok_or_else(not_member)?;
    let t = t_of_mask(family, mask, i, &seq, &new_at);
    debug_assert!(mask & !t == 0);
    debug_assert!(family.intersects(t));
    debug_assert_eq!(m_of_mask(family, t), Some(mask));
    Ok(SetFamily::simplex_of(t))
}

/// The nerve: vertex `k` for `S_k`, a face for every intersecting subfamily.
pub fn nerve(family: &SetFamily) -> SimplicialComplex {
    let mut faces = BTreeSet::new();
    let mut seen: HashSet<FamilyMask> = HashSet::new();
    for &with_e in family.containing.values() {
        if !seen.insert(with_e) {
            continue;
        }
        faces.extend(SetFamily::simplex_of(with_e).nonempty_subfaces());
    }
    SimplicialComplex::from_closed_faces(faces)
}

/// The nerve as an implicit complex: faces are tested, never stored.
impl FaceQuery for SetFamily {
    fn query_vertices(&self) -> Vec<Vertex> {
        (1..=self.sets.len() as Vertex).collect()
    }

    fn has_face(&self, face: &Simplex) -> bool {
        match self.mask_of(face) {
            Ok(m) => self.intersects(m),
            Err(_) => false,
        }
    }

    /// Inclusion–exclusion over element sets `E` with a common superset in the family.
    fn face_count(&self) -> u128 {
        let mut element_sets: HashSet<Vec<u32>> = HashSet::new();
        for s in &self.sets {
            let s = Simplex::new(s.iter().copied());
            for e in s.nonempty_subfaces() {
                element_sets.insert(e.vertices().to_vec());
            }
        }
        let mut total = BigInt::zero();
        for e in element_sets {
            let common = e.iter().fold(FamilyMask::MAX, |m, x| m & self.containing[x]);
            let term = (BigInt::one() << common.count_ones()) - 1;
            if e.len() % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total.to_u128().expect("face count fits in u128")
    }
}

/// One member `M` of `{M(G)}` with its sequence and target face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesEntry {
    pub family: Simplex,
    pub record: MesRecord,
    pub target: Simplex,
}

/// The members of `{M(G)}` in collapse order, and the schedule they define.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MesSchedule {
    pub entries: Vec<MesEntry>,
    pub schedule: CollapseSchedule,
}

/// How the members of `{M(G)}` are enumerated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Enumeration {
    /// Compute `M(G)` for every face `G` of the nerve.
    AllFaces,
    /// Keep the intersecting subfamilies `M` with `|M| ≤ d` and `M(M) = M`.
    #[default]
    Fixpoints,
}

/// Enumerates `{M(G)}` as masks.
fn exclusion_families(family: &SetFamily, how: Enumeration) -> Vec<FamilyMask> {
    let mut out: BTreeSet<FamilyMask> = BTreeSet::new();
    match how {
        Enumeration::AllFaces => {
            for g in nerve(family).faces() {
                let mask = family.mask_of(g).unwrap();
                out.insert(m_of_mask(family, mask).unwrap());
            }
        }
        Enumeration::Fixpoints => {
            if family.containing.contains_key(&1) {
                out.insert(0);
            }
            let d = family.max_set_size();
            let mut seen: HashSet<FamilyMask> = HashSet::new();
            for &with_e in family.containing.values() {
                if !seen.insert(with_e) {
                    continue;
                }
                let members: Vec<usize> = (0..128).filter(|k| with_e >> k & 1 == 1).collect();
                small_subsets(&members, d, &mut |m| {
                    if exclusion_record(family, m).is_some() {
                        out.insert(m);
                    }
                });
            }
        }
    }
    out.into_iter().collect()
}

fn small_subsets(items: &[usize], max: usize, f: &mut impl FnMut(FamilyMask)) {
    fn go(items: &[usize], start: usize, left: usize, acc: FamilyMask, f: &mut impl FnMut(FamilyMask)) {
        if acc != 0 {
            f(acc);
        }
        if left == 0 {
            return;
        }
        for i in start..items.len() {
            go(items, i + 1, left - 1, acc | 1 << items[i], f);
        }
    }
    go(items, 0, max, 0, f);
}

/// The collapse schedule of the nerve built from minimal exclusion sequences.
///
/// `d` defaults to the largest set size and may not be smaller than it.
pub fn mes_collapse_schedule(family: &SetFamily, d: Option<usize>) -> Result<MesSchedule> {
    mes_collapse_schedule_with(family, d, Enumeration::default())
}

pub fn mes_collapse_schedule_with(family: &SetFamily, d: Option<usize>, how: Enumeration) -> Result<MesSchedule> {
    let max = family.max_set_size();
    let d = d.unwrap_or(max);
    if d < max {
        return Err(Error::InvalidParameter(format!("d = {d} is below the largest set size {max}")));
    }
    let mut entries: Vec<(u32, Vec<usize>, MesEntry)> = exclusion_families(family, how)
        .into_iter()
        .map(|m| {
            let (i, seq, new_at) = exclusion_record(family, m).expect("enumerated members are fixpoints");
            let target = SetFamily::simplex_of(t_of_mask(family, m, i, &seq, &new_at));
            let record = MesRecord {
                subject: SetFamily::simplex_of(m),
                min_element: i,
                sequence: seq.iter().map(|&k| k as Vertex + 1).collect(),
                new_at,
            };
            (i, seq, MesEntry { family: SetFamily::simplex_of(m), record, target })
        })
        .collect();
    entries.sort_by(|a, b| (Reverse(a.0), &a.1).cmp(&(Reverse(b.0), &b.1)));
    let entries: Vec<MesEntry> = entries.into_iter().map(|(_, _, e)| e).collect();
    let steps = entries.iter().map(|e| CollapseStep::new(e.family.clone(), e.target.clone())).collect();
    Ok(MesSchedule { entries, schedule: CollapseSchedule { d, steps } })
}

/// True when any two sets share at most one element.
pub fn is_almost_disjoint(family: &SetFamily) -> bool {
    let sets = family.sets();
    (0..sets.len()).all(|a| (a + 1..sets.len()).all(|b| sets[a].intersection(&sets[b]).count() <= 1))
}
