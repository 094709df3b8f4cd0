//! Affine dependences, Radon partitions, and the two-set variant in which a
//! point common to `conv(A)` and `conv(B)` but outside `conv(A ∩ B)` yields
//! disjoint affinely independent `A′ ⊆ A`, `B′ ⊆ B` with meeting hulls.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    combination, common_dim, convex_coefficients, is_affinely_independent, is_convex_weights, lifted_matrix,
    row_reduce, Rational, RationalPoint,
};
use crate::error::{Error, Result};

/// Affine dependence of the subset `support` with full support, or `None` if independent.
fn null_vector(points: &[&RationalPoint]) -> Option<Vec<Rational>> {
    let mut m = lifted_matrix(points);
    let pivots = row_reduce(&mut m);
    let free = (0..points.len()).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); points.len()];
    v[free] = Rational::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -&m[r][free];
    }
    Some(v)
}

/// Scales to coprime integers with a positive first nonzero entry.
fn normalize(v: &mut [Rational]) {
    let lcm = v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = ints.iter().find(|c| !c.is_zero()).map_or(BigInt::one(), |c| c.signum());
    let scale = g * sign;
    for (slot, c) in v.iter_mut().zip(ints) {
        *slot = Rational::from_integer(c / &scale);
    }
}

/// A nonzero `c` with `Σ c_p p = 0` and `Σ c_p = 0` whose support is
/// inclusion-minimal, or `None` when the points are affinely independent.
///
/// Coefficients are coprime integers, first nonzero entry positive.
pub fn affine_dependence(points: &[RationalPoint]) -> Result<Option<Vec<Rational>>> {
    common_dim(points, None)?;
    if is_affinely_independent(points) {
        return Ok(None);
    }
    let mut support: Vec<usize> = (0..points.len()).collect();
    let mut i = 0;
    while i < support.len() {
        let trial: Vec<RationalPoint> =
            support.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &s)| points[s].clone()).collect();
        if !is_affinely_independent(&trial) {
            support.remove(i);
        } else {
            i += 1;
        }
    }
    let refs: Vec<&RationalPoint> = support.iter().map(|&s| &points[s]).collect();
    let local = null_vector(&refs).expect("support is dependent");
    let mut c = vec![Rational::zero(); points.len()];
    for (k, &s) in support.iter().enumerate() {
        c[s] = local[k].clone();
    }
    normalize(&mut c);
    Ok(Some(c))
}

/// Disjoint affinely independent parts with a common point in their hulls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadonWitness {
    pub part_a: Vec<RationalPoint>,
    pub part_b: Vec<RationalPoint>,
    /// Positions of the parts in the input list, so repeated points stay apart.
    pub indices_a: Vec<usize>,
    pub indices_b: Vec<usize>,
    pub common_point: RationalPoint,
    #[serde(with = "super::rational_serde::vec")]
    pub coeffs_a: Vec<Rational>,
    #[serde(with = "super::rational_serde::vec")]
    pub coeffs_b: Vec<Rational>,
}

impl RadonWitness {
    /// Recomputes every claim of the witness exactly.
    pub fn verify(&self) -> bool {
        !self.part_a.is_empty()
            && !self.part_b.is_empty()
            && self.indices_a.len() == self.part_a.len()
            && self.indices_b.len() == self.part_b.len()
            && self.indices_a.iter().all(|i| !self.indices_b.contains(i))
            && is_affinely_independent(&self.part_a)
            && is_affinely_independent(&self.part_b)
            && is_convex_weights(&self.coeffs_a)
            && is_convex_weights(&self.coeffs_b)
            && combination(&self.part_a, &self.coeffs_a) == self.common_point
            && combination(&self.part_b, &self.coeffs_b) == self.common_point
    }
}

/// Radon partition of an affinely dependent point set, split by the signs of
/// a minimal affine dependence.
pub fn radon(points: &[RationalPoint]) -> Result<RadonWitness> {
    let c = affine_dependence(points)?.ok_or(Error::AffinelyIndependent)?;
    let s: Rational = c.iter().filter(|x| x.is_positive()).sum();
    let mut w = RadonWitness {
        part_a: Vec::new(),
        part_b: Vec::new(),
        indices_a: Vec::new(),
        indices_b: Vec::new(),
        common_point: RationalPoint::origin(points[0].dim()),
        coeffs_a: Vec::new(),
        coeffs_b: Vec::new(),
    };
    for (i, (p, ci)) in points.iter().zip(&c).enumerate() {
        if ci.is_positive() {
            w.part_a.push(p.clone());
            w.indices_a.push(i);
            w.coeffs_a.push(ci / &s);
        } else if ci.is_negative() {
            w.part_b.push(p.clone());
            w.indices_b.push(i);
            w.coeffs_b.push(-ci / &s);
        }
    }
    w.common_point = combination(&w.part_a, &w.coeffs_a);
    debug_assert!(w.verify());
    Ok(w)
}

/// Shrinks the support of a convex combination until it is affinely
/// independent, keeping the represented point fixed.
pub fn caratheodory_reduce(
    points: &[RationalPoint],
    coeffs: &[Rational],
) -> Result<(Vec<RationalPoint>, Vec<Rational>)> {
    if points.len() != coeffs.len() {
        return Err(Error::InvalidParameter("points and coefficients differ in length".into()));
    }
    if !is_convex_weights(coeffs) {
        return Err(Error::InvalidParameter("coefficients are not convex weights".into()));
    }
    let (mut pts, mut lam): (Vec<RationalPoint>, Vec<Rational>) =
        points.iter().cloned().zip(coeffs.iter().cloned()).filter(|(_, c)| !c.is_zero()).unzip();
    while let Some(mut dep) = affine_dependence(&pts)? {
        if !dep.iter().any(|c| c.is_positive()) {
            for c in dep.iter_mut() {
                *c = -c.clone();
            }
        }
        let t = lam
            .iter()
            .zip(&dep)
            .filter(|(_, c)| c.is_positive())
            .map(|(l, c)| l / c)
            .min()
            .expect("dependence has a positive entry");
        for (l, c) in lam.iter_mut().zip(&dep) {
            *l -= &t * c;
        }
        let keep: Vec<bool> = lam.iter().map(|l| !l.is_zero()).collect();
        pts = pts.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(p, _)| p).collect();
        lam.retain(|l| !l.is_zero());
    }
    Ok((pts, lam))
}

/// The intermediate objects of the constructive two-set Radon argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadonTrace {
    /// `A ∪ B`, sorted; `alpha` and `beta` are indexed by it (zero outside `A` resp. `B`).
    pub points: Vec<RationalPoint>,
    #[serde(with = "super::rational_serde::vec")]
    pub alpha: Vec<Rational>,
    #[serde(with = "super::rational_serde::vec")]
    pub beta: Vec<Rational>,
    /// Common points with `α_p > β_p`.
    pub k_plus: Vec<RationalPoint>,
    pub k_minus: Vec<RationalPoint>,
    /// `A₀ = A ∖ K⁻` with weights `α_p − β_p`.
    pub a0: Vec<RationalPoint>,
    #[serde(with = "super::rational_serde::vec")]
    pub a0_weights: Vec<Rational>,
    /// `B₀ = B ∖ K⁺` with weights `β_p − α_p`.
    pub b0: Vec<RationalPoint>,
    #[serde(with = "super::rational_serde::vec")]
    pub b0_weights: Vec<Rational>,
    #[serde(with = "super::rational_serde")]
    pub s: Rational,
    pub y: RationalPoint,
}

impl RadonTrace {
    /// `Σ_{A₀}(α_p − β_p)p = Σ_{B₀}(β_p − α_p)p`, recomputed.
    pub fn identity_holds(&self) -> bool {
        combination(&self.a0, &self.a0_weights) == combination(&self.b0, &self.b0_weights)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedRadon {
    pub witness: RadonWitness,
    pub trace: RadonTrace,
}

fn canonical(mut v: Vec<RationalPoint>) -> Vec<RationalPoint> {
    v.sort();
    v.dedup();
    v
}

/// For `x ∈ conv(A) ∩ conv(B)` with `x ∉ conv(A ∩ B)`, disjoint affinely
/// independent `A′ ⊆ A`, `B′ ⊆ B` whose hulls meet.
pub fn generalized_radon(a: &[RationalPoint], b: &[RationalPoint], x: &RationalPoint) -> Result<GeneralizedRadon> {
    let dim = x.dim();
    common_dim(a.iter().chain(b), Some(dim))?;
    let a = canonical(a.to_vec());
    let b = canonical(b.to_vec());
    let alpha_a = convex_coefficients(&a, x).ok_or(Error::NotInHullA)?;
    let beta_b = convex_coefficients(&b, x).ok_or(Error::NotInHullB)?;
    let common: Vec<RationalPoint> = a.iter().filter(|p| b.binary_search(p).is_ok()).cloned().collect();
    if convex_coefficients(&common, x).is_some() {
        return Err(Error::InCommonHull);
    }

    let points = canonical(a.iter().chain(&b).cloned().collect());
    let weight = |set: &[RationalPoint], w: &[Rational], p: &RationalPoint| {
        set.binary_search(p).map_or(Rational::zero(), |i| w[i].clone())
    };
    let alpha: Vec<Rational> = points.iter().map(|p| weight(&a, &alpha_a, p)).collect();
    let beta: Vec<Rational> = points.iter().map(|p| weight(&b, &beta_b, p)).collect();
    let at = |p: &RationalPoint| points.binary_search(p).unwrap();

    let (k_plus, k_minus): (Vec<RationalPoint>, Vec<RationalPoint>) =
        common.iter().cloned().partition(|p| alpha[at(p)] > beta[at(p)]);
    let a0: Vec<RationalPoint> = a.iter().filter(|p| k_minus.binary_search(p).is_err()).cloned().collect();
    let b0: Vec<RationalPoint> = b.iter().filter(|p| k_plus.binary_search(p).is_err()).cloned().collect();
    let a0_weights: Vec<Rational> = a0.iter().map(|p| &alpha[at(p)] - &beta[at(p)]).collect();
    let b0_weights: Vec<Rational> = b0.iter().map(|p| &beta[at(p)] - &alpha[at(p)]).collect();
    let s: Rational = a0_weights.iter().sum();
    assert!(!s.is_zero(), "x outside conv(A ∩ B) forces a nonzero weight on A ∖ B");
    assert_eq!(s, b0_weights.iter().sum::<Rational>());

    let a_conv: Vec<Rational> = a0_weights.iter().map(|w| w / &s).collect();
    let b_conv: Vec<Rational> = b0_weights.iter().map(|w| w / &s).collect();
    let y = combination(&a0, &a_conv);
    let trace = RadonTrace {
        points,
        alpha,
        beta,
        k_plus,
        k_minus,
        a0: a0.clone(),
        a0_weights,
        b0: b0.clone(),
        b0_weights,
        s,
        y: y.clone(),
    };
    assert!(trace.identity_holds(), "rearranged difference of the two combinations must balance");

    let (part_a, coeffs_a) = caratheodory_reduce(&a0, &a_conv)?;
    let (part_b, coeffs_b) = caratheodory_reduce(&b0, &b_conv)?;
    let position = |p: &RationalPoint| trace.points.binary_search(p).unwrap();
    let indices_a = part_a.iter().map(position).collect();
    let indices_b = part_b.iter().map(position).collect();
    let witness = RadonWitness { part_a, part_b, indices_a, indices_b, common_point: y, coeffs_a, coeffs_b };
    debug_assert!(witness.verify());
    Ok(GeneralizedRadon { witness, trace })
}
