//! Reduced rational homology, Leray numbers and the join Künneth identity.
//!
//! Reduced Betti numbers use the augmented chain complex, so `β̃_0` is the
//! number of components minus one. The empty complex has all `β̃_k = 0` for
//! `k ≥ 0`; only [`kunneth_check`] looks at dimension −1.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::{rank_bareiss, reduce_fraction_free, SparseMatrix};

pub const DEFAULT_MAX_SWEEP_VERTICES: usize = 20;
const HARD_MAX_SWEEP_VERTICES: usize = 63;

/// An oriented cell: a sorted vertex set with signed boundary.
pub(crate) trait Cell: Ord + Clone {
    /// Codimension-one faces with their incidence signs `(−1)^position`.
    fn boundary(&self) -> Vec<(Self, i64)>;
}

impl Cell for Simplex {
    fn boundary(&self) -> Vec<(Self, i64)> {
        self.vertices()
            .iter()
            .enumerate()
            .map(|(i, &v)| (self.without_vertex(v), if i % 2 == 0 { 1 } else { -1 }))
            .collect()
    }
}

impl Cell for u64 {
    fn boundary(&self) -> Vec<(Self, i64)> {
        let mut out = Vec::with_capacity(self.count_ones() as usize);
        let mut rest = *self;
        let mut pos = 0;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= !bit;
            out.push((self & !bit, if pos % 2 == 0 { 1 } else { -1 }));
            pos += 1;
        }
        out
    }
}

fn boundary_matrix<F: Cell>(faces: &[F], lower: &[F]) -> SparseMatrix {
    let columns = faces
        .iter()
        .map(|f| {
            let mut col: Vec<(usize, i64)> = f
                .boundary()
                .into_iter()
                .map(|(g, s)| (lower.binary_search(&g).expect("complex is downward closed"), s))
                .collect();
            col.sort_unstable();
            col
        })
        .collect();
    SparseMatrix { rows: lower.len(), columns }
}

/// Visits `(k, β̃_k)` for `k` from the top dimension down to `from`, stopping
/// early when `visit` returns `false`. `faces[k]` holds the sorted `k`-faces.
///
/// Ranks are computed top-down so that the pivot rows of `∂_{k+1}` clear the
/// corresponding columns of `∂_k`.
pub(crate) fn reduced_betti_top_down<F: Cell>(
    faces: &[Vec<F>],
    from: usize,
    mut visit: impl FnMut(usize, usize) -> bool,
) {
    let Some(top) = faces.iter().rposition(|f| !f.is_empty()) else { return };
    let mut rank_above = 0usize;
    let mut cleared: Option<Vec<bool>> = None;
    for k in (from..=top).rev() {
        let (rank_here, pivots) = if k == 0 {
            (usize::from(!faces[0].is_empty()), None)
        } else {
            let m = boundary_matrix(&faces[k], &faces[k - 1]);
            match reduce_fraction_free(&m, cleared.as_deref()) {
                Some(r) => (r.rank, Some(r.pivot_rows)),
                None => (rank_bareiss(&m), None),
            }
        };
        let beta = faces[k].len() - rank_here - rank_above;
        if !visit(k, beta) {
            return;
        }
        rank_above = rank_here;
        cleared = pivots;
    }
}

/// Reduced Betti numbers over the rationals; zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiTable(pub BTreeMap<usize, usize>);

impl BettiTable {
    pub fn get(&self, k: usize) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// The largest `k` with `β̃_k ≠ 0`.
    pub fn top_nonzero(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// `Σ (−1)^k β̃_k`, which equals the reduced Euler characteristic.
    pub fn alternating_sum(&self) -> i64 {
        self.0.iter().map(|(&k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }
}

fn faces_by_dim(complex: &SimplicialComplex) -> Vec<Vec<Simplex>> {
    let mut out: Vec<Vec<Simplex>> = vec![Vec::new(); (complex.dim() + 1) as usize];
    for f in complex.faces() {
        out[f.dim() as usize].push(f.clone());
    }
    out
}

pub fn betti(complex: &SimplicialComplex) -> BettiTable {
    let mut table = BTreeMap::new();
    reduced_betti_top_down(&faces_by_dim(complex), 0, |k, b| {
        if b > 0 {
            table.insert(k, b);
        }
        true
    });
    BettiTable(table)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayWitness {
    #[serde(rename = "X")]
    pub subset: Vec<Vertex>,
    pub k: usize,
}

/// `ldim(K)` with a witness `X` such that `β̃_{ldim−1}(K[X]) ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayReport {
    pub ldim: usize,
    pub witness: Option<LerayWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LerayOptions {
    /// Refuse full sweeps over more vertices than this.
    pub max_vertices: usize,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

impl Default for LerayOptions {
    fn default() -> Self {
        LerayOptions { max_vertices: DEFAULT_MAX_SWEEP_VERTICES, jobs: None }
    }
}

/// The Leray number, by sweeping every induced subcomplex.
///
/// Subsets are ranked by size, then lexicographically; the witness is the
/// first subset in that order attaining the maximum.
pub fn ldim(complex: &SimplicialComplex, options: &LerayOptions) -> Result<LerayReport> {
    let n = complex.num_vertices();
    let max = options.max_vertices.min(HARD_MAX_SWEEP_VERTICES);
    if n > max {
        return Err(Error::TooManyVertices { found: n, max });
    }
    let mut order: Vec<u64> = (1..(1u64 << n)).collect();
    order.sort_by_key(|&m| (m.count_ones(), Reverse(m.reverse_bits())));
    sweep(complex, &order, options)
}

/// The largest `k + 1` with `β̃_k(K[X]) ≠ 0` over the supplied subsets only.
pub fn ldim_over_subsets(
    complex: &SimplicialComplex,
    subsets: &[Vec<Vertex>],
    options: &LerayOptions,
) -> Result<LerayReport> {
    let vertices = complex.vertices();
    if vertices.len() > HARD_MAX_SWEEP_VERTICES {
        return Err(Error::TooManyVertices { found: vertices.len(), max: HARD_MAX_SWEEP_VERTICES });
    }
    let order: Vec<u64> = subsets
        .iter()
        .map(|x| x.iter().filter_map(|v| vertices.binary_search(v).ok()).fold(0u64, |m, i| m | 1 << i))
        .collect();
    sweep(complex, &order, options)
}

fn sweep(complex: &SimplicialComplex, order: &[u64], options: &LerayOptions) -> Result<LerayReport> {
    let vertices = complex.vertices();
    let index = |v: &Vertex| vertices.binary_search(v).unwrap();
    let mut faces: Vec<Vec<u64>> = vec![Vec::new(); (complex.dim() + 1) as usize];
    for f in complex.faces() {
        faces[f.dim() as usize].push(f.vertices().iter().fold(0u64, |m, v| m | 1 << index(v)));
    }
    for layer in &mut faces {
        layer.sort_unstable();
    }

    let best = AtomicUsize::new(0);
    let evaluate = |(pos, &x): (usize, &u64)| -> Option<(usize, usize)> {
        let threshold = best.load(Ordering::Relaxed).saturating_sub(1);
        let induced: Vec<Vec<u64>> =
            faces.iter().map(|layer| layer.iter().copied().filter(|f| f & !x == 0).collect::<Vec<u64>>()).collect();
        let top = induced.iter().rposition(|l| !l.is_empty())?;
        if top < threshold {
            return None;
        }
        let mut found = None;
        reduced_betti_top_down(&induced, threshold, |k, b| {
            if b > 0 {
                found = Some(k);
                false
            } else {
                true
            }
        });
        let k = found?;
        best.fetch_max(k + 1, Ordering::Relaxed);
        Some((pos, k))
    };

    let hits: Vec<(usize, usize)> = match options.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            pool.install(|| order.par_iter().enumerate().filter_map(evaluate).collect())
        }
        None => order.par_iter().enumerate().filter_map(evaluate).collect(),
    };

    let Some(top_k) = hits.iter().map(|&(_, k)| k).max() else {
        return Ok(LerayReport { ldim: 0, witness: None });
    };
    let pos = hits.iter().filter(|&&(_, k)| k == top_k).map(|&(p, _)| p).min().unwrap();
    let x = order[pos];
    let subset = (0..vertices.len()).filter(|i| x >> i & 1 == 1).map(|i| vertices[i]).collect();
    Ok(LerayReport { ldim: top_k + 1, witness: Some(LerayWitness { subset, k: top_k }) })
}

/// Both sides of `β̃_k(K*L) = Σ_{i+j=k−1} β̃_i(K)·β̃_j(L)`, indexed from `k = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KunnethCheck {
    pub join: BTreeMap<isize, usize>,
    pub predicted: BTreeMap<isize, usize>,
}

impl KunnethCheck {
    pub fn holds(&self) -> bool {
        self.join == self.predicted
    }
}

/// Reduced Betti numbers including `β̃_{−1}`, which is 1 exactly for the empty complex.
fn extended_betti(complex: &SimplicialComplex) -> BTreeMap<isize, usize> {
    if complex.is_empty() {
        return BTreeMap::from([(-1, 1)]);
    }
    betti(complex).0.into_iter().map(|(k, b)| (k as isize, b)).collect()
}

pub fn kunneth_check(k: &SimplicialComplex, l: &SimplicialComplex) -> KunnethCheck {
    let join = extended_betti(&k.join(l));
    let (bk, bl) = (extended_betti(k), extended_betti(l));
    let mut predicted = BTreeMap::new();
    for (&i, &a) in &bk {
        for (&j, &b) in &bl {
            *predicted.entry(i + j + 1).or_insert(0) += a * b;
        }
    }
    KunnethCheck { join, predicted }
}

/// The three Leray numbers of `ldim(K*L) = ldim(K) + ldim(L)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayJoinCheck {
    pub join: usize,
    pub left: usize,
    pub right: usize,
}

impl LerayJoinCheck {
    pub fn holds(&self) -> bool {
        self.join == self.left + self.right
    }
}

pub fn ldim_join_check(k: &SimplicialComplex, l: &SimplicialComplex, options: &LerayOptions) -> Result<LerayJoinCheck> {
    if k.is_empty() || l.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let joined = k.join(l);
    Ok(LerayJoinCheck {
        join: ldim(&joined, options)?.ldim,
        left: ldim(k, options)?.ldim,
        right: ldim(l, options)?.ldim,
    })
}
