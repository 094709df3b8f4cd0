//! Recognition of complexes that are nerves of intervals on a line.
//!
//! `K` is such a nerve iff it is the clique complex of its 1-skeleton and the
//! maximal cliques of that graph can be ordered so that the cliques holding
//! any given vertex are consecutive. Position `i` of the ordering then gives
//! each vertex the interval spanned by the positions of its cliques.

use std::collections::{BTreeMap, HashSet};

use super::{rational, representation::verify_nerve_representation, VPolytope};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_INTERVAL_VERTICES: usize = 10;

fn maximal_cliques(adj: &[u32]) -> Vec<u32> {
    fn bron_kerbosch(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let mut out = Vec::new();
    let all = if adj.is_empty() { 0 } else { u32::MAX >> (32 - adj.len()) };
    bron_kerbosch(adj, 0, all, 0, &mut out);
    out.sort_unstable();
    out
}

/// Orders the cliques so that every vertex occurs in a contiguous run.
fn consecutive_order(cliques: &[u32]) -> Option<Vec<usize>> {
    fn extend(
        cliques: &[u32],
        order: &mut Vec<usize>,
        placed: u64,
        closed: u32,
        dead: &mut HashSet<(u64, usize)>,
    ) -> bool {
        if order.len() == cliques.len() {
            return true;
        }
        let last = order.last().copied();
        if let Some(l) = last {
            if dead.contains(&(placed, l)) {
                return false;
            }
        }
        for c in 0..cliques.len() {
            if placed >> c & 1 == 1 || cliques[c] & closed != 0 {
                continue;
            }
            let open = last.map_or(0, |l| cliques[l]);
            order.push(c);
            if extend(cliques, order, placed | 1 << c, closed | (open & !cliques[c]), dead) {
                return true;
            }
            order.pop();
        }
        if let Some(l) = last {
            dead.insert((placed, l));
        }
        false
    }
    let mut order = Vec::with_capacity(cliques.len());
    extend(cliques, &mut order, 0, 0, &mut HashSet::new()).then_some(order)
}

/// An interval per vertex whose nerve is exactly `K`, or `None` when no
/// family of intervals has nerve `K`. The result is re-verified exactly.
pub fn one_representation(k: &SimplicialComplex, max_vertices: usize) -> Result<Option<BTreeMap<Vertex, VPolytope>>> {
    let vertices = k.vertices();
    if vertices.is_empty() {
        return Ok(Some(BTreeMap::new()));
    }
    let bound = max_vertices.min(32);
    if vertices.len() > bound {
        return Err(Error::TooManyVertices { found: vertices.len(), max: bound });
    }
    let at = |v: &Vertex| vertices.binary_search(v).unwrap();
    let mut adj = vec![0u32; vertices.len()];
    for e in k.faces_of_dim(1) {
        let (a, b) = (at(&e.vertices()[0]), at(&e.vertices()[1]));
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
    }
    let cliques = maximal_cliques(&adj);
    let as_simplex = |m: u32| {
        Simplex::new((0..vertices.len()).filter(|&i| m >> i & 1 == 1).map(|i| vertices[i]).collect::<Vec<_>>())
    };
    if cliques.iter().any(|&c| !k.contains(&as_simplex(c))) || cliques.len() > 64 {
        return Ok(None);
    }
    let Some(order) = consecutive_order(&cliques) else { return Ok(None) };
    let mut span: BTreeMap<Vertex, (i64, i64)> = BTreeMap::new();
    for (pos, &c) in order.iter().enumerate() {
        for v in as_simplex(cliques[c]).vertices() {
            let e = span.entry(*v).or_insert((pos as i64, pos as i64));
            e.1 = pos as i64;
        }
    }
    let intervals: BTreeMap<Vertex, VPolytope> =
        span.into_iter().map(|(v, (a, b))| (v, VPolytope::interval(rational(a), rational(b)))).collect();
    assert!(verify_nerve_representation(k, &intervals), "emitted intervals must have nerve K");
    Ok(Some(intervals))
}

/// Whether `K` is the nerve of a family of intervals in `Q^1`.
pub fn is_1_representable(k: &SimplicialComplex) -> Result<bool> {
    Ok(one_representation(k, DEFAULT_MAX_INTERVAL_VERTICES)?.is_some())
}
