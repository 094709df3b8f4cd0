//! Exact integer rank computations.
//!
//! Boundary matrices are reduced column by column without fractions: a column
//! `c` is combined with the pivot column `p` sharing its lowest nonzero row as
//! `p_low·c − c_low·p`, then divided by the gcd of its entries. Entries are
//! `i64` with checked arithmetic; on overflow the caller falls back to dense
//! Bareiss elimination over big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// A sparse integer column: `(row, value)` pairs sorted by row, no zero values.
pub type SparseColumn = Vec<(usize, i64)>;

#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseColumn>,
}

/// Result of a fraction-free reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub rank: usize,
    /// `pivot_rows[r]` is true when some reduced column has its lowest entry in row `r`.
    pub pivot_rows: Vec<bool>,
}

fn combine(a: i64, c: &SparseColumn, b: i64, p: &SparseColumn) -> Option<SparseColumn> {
    // a·c − b·p
    let mut out = Vec::with_capacity(c.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < c.len() || j < p.len() {
        let (row, v) = match (c.get(i), p.get(j)) {
            (Some(&(rc, vc)), Some(&(rp, vp))) if rc == rp => {
                i += 1;
                j += 1;
                (rc, a.checked_mul(vc)?.checked_sub(b.checked_mul(vp)?)?)
            }
            (Some(&(rc, vc)), Some(&(rp, _))) if rc < rp => {
                i += 1;
                (rc, a.checked_mul(vc)?)
            }
            (Some(&(rc, vc)), None) => {
                i += 1;
                (rc, a.checked_mul(vc)?)
            }
            (_, Some(&(rp, vp))) => {
                j += 1;
                (rp, b.checked_mul(vp)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((row, v));
        }
    }
    let g = out.iter().fold(0i64, |g, &(_, v)| g.gcd(&v));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Some(out)
}

/// Fraction-free column reduction. Columns flagged in `skip` are treated as
/// known to reduce to zero. Returns `None` if an entry overflows `i64`.
pub fn reduce_fraction_free(m: &SparseMatrix, skip: Option<&[bool]>) -> Option<Reduction> {
    let mut pivots: Vec<Option<SparseColumn>> = vec![None; m.rows];
    let mut rank = 0;
    for (idx, col) in m.columns.iter().enumerate() {
        if skip.is_some_and(|s| s[idx]) {
            continue;
        }
        let mut c = col.clone();
        while let Some(&(low, b)) = c.last() {
            match &pivots[low] {
                None => {
                    pivots[low] = Some(c);
                    rank += 1;
                    break;
                }
                Some(p) => {
                    let a = p.last().unwrap().1;
                    c = combine(a, &c, b, p)?;
                }
            }
        }
    }
    Some(Reduction { rank, pivot_rows: pivots.iter().map(Option::is_some).collect() })
}

/// Rank by Bareiss elimination over big integers.
pub fn rank_bareiss(m: &SparseMatrix) -> usize {
    let rows = m.rows;
    let cols = m.columns.len();
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] = BigInt::from(v);
        }
    }
    rank_bareiss_dense(a)
}

pub fn rank_bareiss_dense(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank, trying the sparse `i64` path first.
pub fn rank(m: &SparseMatrix) -> usize {
    match reduce_fraction_free(m, None) {
        Some(r) => r.rank,
        None => rank_bareiss(m),
    }
}
