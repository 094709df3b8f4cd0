//! Exact linear feasibility: phase one of the simplex method over the
//! rationals, with Bland's rule so that it always terminates.

use num_traits::{One, Signed, Zero};

use super::{combination, common_dim, is_convex_weights, Rational, RationalPoint, VPolytope};

/// A point `x ≥ 0` with `A x = b`, or `None` when the system is infeasible.
pub fn solve_nonnegative(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    let width = n + m + 1;
    let rhs = n + m;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        row.extend(a[i].iter().map(|v| if flip { -v } else { v.clone() }));
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(row);
    }
    // Reduced costs of "minimize the sum of artificials".
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[rhs] -= &row[rhs];
    }
    t.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..rhs).find(|&j| t[m][j].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    let lhs = &t[i][rhs] * &t[l][enter];
                    let rhs_v = &t[l][rhs] * &t[i][enter];
                    lhs < rhs_v || (lhs == rhs_v && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        // Phase one is bounded below by zero, so a leaving row always exists.
        let r = leave.expect("phase-one objective is bounded");
        let inv = t[r][enter].recip();
        for x in t[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        basis[r] = enter;
    }

    if !t[m][rhs].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][rhs].clone();
        }
    }
    Some(x)
}

/// Convex weights expressing `x` over `points`, if `x` lies in their hull.
pub fn convex_coefficients(points: &[RationalPoint], x: &RationalPoint) -> Option<Vec<Rational>> {
    if points.is_empty() || points.iter().any(|p| p.dim() != x.dim()) {
        return None;
    }
    let dim = x.dim();
    let mut a = vec![Vec::with_capacity(points.len()); dim + 1];
    for p in points {
        for (row, c) in a.iter_mut().zip(&p.0) {
            row.push(c.clone());
        }
        a[dim].push(Rational::one());
    }
    let mut b = x.0.clone();
    b.push(Rational::one());
    let w = solve_nonnegative(&a, &b)?;
    debug_assert!(is_convex_weights(&w) && combination(points, &w) == *x);
    Some(w)
}

/// A rational point in the common intersection of the polytopes, or `None`
/// when the intersection is empty. Returned points are re-checked against
/// the solver's convex weights for every polytope.
pub fn feasible_point(polytopes: &[&VPolytope]) -> Option<RationalPoint> {
    let first = polytopes.first()?;
    let dim = common_dim(polytopes.iter().flat_map(|p| p.generators()), None).ok()??;
    let offsets: Vec<usize> = polytopes
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.generators().len();
            Some(o)
        })
        .collect();
    let n: usize = polytopes.iter().map(|p| p.generators().len()).sum();
    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    for (i, p) in polytopes.iter().enumerate() {
        let mut row = vec![Rational::zero(); n];
        for j in 0..p.generators().len() {
            row[offsets[i] + j] = Rational::one();
        }
        a.push(row);
        b.push(Rational::one());
    }
    for (i, p) in polytopes.iter().enumerate().skip(1) {
        for k in 0..dim {
            let mut row = vec![Rational::zero(); n];
            for (j, g) in first.generators().iter().enumerate() {
                row[j] += &g.0[k];
            }
            for (j, g) in p.generators().iter().enumerate() {
                row[offsets[i] + j] -= &g.0[k];
            }
            a.push(row);
            b.push(Rational::zero());
        }
    }
    let lambda = solve_nonnegative(&a, &b)?;
    let x = combination(first.generators(), &lambda[..first.generators().len()]);
    for (i, p) in polytopes.iter().enumerate() {
        let w = &lambda[offsets[i]..offsets[i] + p.generators().len()];
        assert!(
            is_convex_weights(w) && combination(p.generators(), w) == x,
            "feasibility solution failed re-verification"
        );
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::super::{ratio, rational};
    use super::*;

    fn seg(a: i64, b: i64) -> VPolytope {
        VPolytope::interval(rational(a), rational(b))
    }

    fn square(x0: i64, y0: i64, side: i64) -> VPolytope {
        VPolytope::new(vec![
            RationalPoint::from_ints(&[x0, y0]),
            RationalPoint::from_ints(&[x0 + side, y0]),
            RationalPoint::from_ints(&[x0, y0 + side]),
            RationalPoint::from_ints(&[x0 + side, y0 + side]),
        ])
        .unwrap()
    }

    #[test]
    fn touching_intervals_meet_at_their_endpoint() {
        assert_eq!(feasible_point(&[&seg(0, 1), &seg(1, 2)]), Some(RationalPoint::from_ints(&[1])));
    }

    #[test]
    fn disjoint_segments_are_empty() {
        assert_eq!(feasible_point(&[&seg(0, 1), &seg(2, 3)]), None);
        let s1 = VPolytope::new(vec![RationalPoint::from_ints(&[0, 0]), RationalPoint::from_ints(&[1, 0])]).unwrap();
        let s2 = VPolytope::new(vec![RationalPoint::from_ints(&[0, 1]), RationalPoint::from_ints(&[1, 1])]).unwrap();
        assert_eq!(feasible_point(&[&s1, &s2]), None);
    }

    #[test]
    fn overlapping_squares_share_a_point() {
        let (a, b, c) = (square(0, 0, 4), square(2, 1, 4), square(1, 2, 4));
        let x = feasible_point(&[&a, &b, &c]).unwrap();
        for p in [&a, &b, &c] {
            assert!(p.contains(&x));
        }
        assert!(feasible_point(&[&a, &square(5, 5, 1)]).is_none());
    }

    #[test]
    fn convex_weights_of_midpoint() {
        let pts = vec![RationalPoint::from_ints(&[0]), RationalPoint::from_ints(&[2])];
        let w = convex_coefficients(&pts, &RationalPoint::from_ints(&[1])).unwrap();
        assert_eq!(w, vec![ratio(1, 2), ratio(1, 2)]);
        assert!(convex_coefficients(&pts, &RationalPoint::from_ints(&[3])).is_none());
    }

    #[test]
    fn negative_right_hand_sides() {
        // x0 - x1 = -1, x0 + x1 = 3  →  x = (1, 2)
        let a = vec![vec![rational(1), rational(-1)], vec![rational(1), rational(1)]];
        let b = vec![rational(-1), rational(3)];
        assert_eq!(solve_nonnegative(&a, &b), Some(vec![rational(1), rational(2)]));
        // x0 = -1 has no nonnegative solution
        assert_eq!(solve_nonnegative(&[vec![rational(1)]], &[rational(-1)]), None);
    }
}
