#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use dimgap::geometry::{rational, Rational, RationalPoint};
use dimgap::nerve::SetFamily;
use dimgap::{Simplex, SimplicialComplex, Vertex};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn mask_vertices(m: u32) -> Vec<Vertex> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

pub fn complex_from_masks(facets: &[u32]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|&m| mask_vertices(m))).unwrap()
}

/// Every nonempty subset of every facet, by brute force.
pub fn brute_faces(facets: &[u32]) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for &f in facets {
        let mut s = f;
        while s != 0 {
            out.insert(s);
            s = (s - 1) & f;
        }
    }
    out
}

fn rank_q(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Reduced Betti numbers `β̃_0 … β̃_top` by dense rational elimination on the
/// augmented chain complex of the brute-force face set.
pub fn betti_oracle(facets: &[u32]) -> Vec<usize> {
    let faces = brute_faces(facets);
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones()).max().unwrap() as usize;
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    by_size[0].push(0);
    for &f in &faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let rank = |k: usize| -> usize {
        // boundary from size-k faces to size-(k−1) faces
        if k == 0 || k > top {
            return 0;
        }
        let lower = &by_size[k - 1];
        let m: Vec<Vec<Rational>> = lower
            .iter()
            .map(|&g| {
                by_size[k]
                    .iter()
                    .map(|&f| {
                        if f & g == g {
                            let removed = f & !g;
                            let pos = (f & (removed - 1)).count_ones();
                            rational(if pos % 2 == 0 { 1 } else { -1 })
                        } else {
                            rational(0)
                        }
                    })
                    .collect()
            })
            .collect();
        rank_q(m)
    };
    (1..=top).map(|k| by_size[k].len() - rank(k) - rank(k + 1)).collect()
}

pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: u32, max_facets: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let count = rng.gen_range(1..=max_facets);
    let facets: Vec<u32> = (0..count).map(|_| rng.gen_range(1..(1u32 << n))).collect();
    complex_from_masks(&facets)
}

pub fn random_family(rng: &mut ChaCha8Rng, max_sets: usize, universe: u32, max_size: usize) -> SetFamily {
    let n = rng.gen_range(1..=max_sets);
    let sets: Vec<Vec<u32>> = (0..n)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let mut s = BTreeSet::new();
            while s.len() < size {
                s.insert(rng.gen_range(1..=universe));
            }
            s.into_iter().collect()
        })
        .collect();
    SetFamily::new(sets).unwrap()
}

/// Random family whose distinct members share at most one element.
pub fn random_almost_disjoint(rng: &mut ChaCha8Rng, max_sets: usize, universe: u32) -> SetFamily {
    let target = rng.gen_range(2..=max_sets);
    let mut sets: Vec<BTreeSet<u32>> = Vec::new();
    let mut attempts = 0;
    while sets.len() < target && attempts < 1000 {
        attempts += 1;
        let size = rng.gen_range(1..=4);
        let mut s = BTreeSet::new();
        while s.len() < size {
            s.insert(rng.gen_range(1..=universe));
        }
        if sets.iter().all(|t| t.intersection(&s).count() <= 1) {
            sets.push(s);
        }
    }
    SetFamily::new(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap()
}

/// Faces of the nerve by testing every subfamily.
pub fn brute_nerve(family: &SetFamily) -> BTreeSet<Simplex> {
    let n = family.len();
    let mut out = BTreeSet::new();
    for m in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| m >> i & 1 == 1).collect();
        let mut common: BTreeSet<u32> = family.sets()[idx[0]].clone();
        for &i in &idx[1..] {
            common = common.intersection(&family.sets()[i]).copied().collect();
        }
        if !common.is_empty() {
            out.insert(Simplex::new(idx.iter().map(|&i| i as Vertex + 1).collect::<Vec<_>>()));
        }
    }
    out
}

/// The nerve of random integer intervals, with the intervals.
pub fn random_interval_nerve(rng: &mut ChaCha8Rng, n: usize) -> (SimplicialComplex, BTreeMap<Vertex, (i64, i64)>) {
    let intervals: BTreeMap<Vertex, (i64, i64)> = (0..n as Vertex)
        .map(|v| {
            let a = rng.gen_range(0..12);
            (v, (a, a + rng.gen_range(0..5)))
        })
        .collect();
    let mut facets = Vec::new();
    for x in 0..20 {
        let at: Vec<Vertex> = intervals.iter().filter(|(_, &(a, b))| a <= x && x <= b).map(|(&v, _)| v).collect();
        if !at.is_empty() {
            facets.push(at);
        }
    }
    (SimplicialComplex::from_facets(facets).unwrap(), intervals)
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize, range: i64, denom: i64) -> RationalPoint {
    RationalPoint(
        (0..dim)
            .map(|_| Rational::new(rng.gen_range(-range..=range).into(), rng.gen_range(1..=denom).into()))
            .collect(),
    )
}

/// Facet lists on at most `n` vertices as bitmasks.
pub fn facet_masks(n: u32, max_facets: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..(1u32 << n), 1..=max_facets)
}
