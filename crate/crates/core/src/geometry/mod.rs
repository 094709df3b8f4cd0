//! Exact rational convex geometry.
//!
//! Convex sets are V-polytopes, the convex hulls of finitely many rational
//! points, so every intersection question becomes a finite linear feasibility
//! problem solved exactly by [`lp`]. Nothing in this module uses floating point.

pub mod interval;
pub mod lp;
pub mod radon;
pub mod representation;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use interval::{is_1_representable, one_representation};
pub use lp::{convex_coefficients, feasible_point};
pub use radon::{
    affine_dependence, caratheodory_reduce, generalized_radon, radon, GeneralizedRadon, RadonTrace, RadonWitness,
};
pub use representation::{
    extract_embedding, verify_embedding, verify_nerve_representation, verify_representation, LinearEmbedding,
    Representation,
};

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse { line: 0, msg: format!("not a rational number: {s:?}") })
}

/// A point of `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| rational(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        RationalPoint(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Parses comma- or whitespace-separated rationals such as `"1/2, -3"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(RationalPoint)
    }

    pub(crate) fn add_scaled(&mut self, scale: &Rational, other: &RationalPoint) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += scale * b;
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map(RationalPoint)
            .map_err(serde::de::Error::custom)
    }
}

/// Serde adapters writing rationals as `"p/q"` strings.
pub(crate) mod rational_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        r.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        parse_rational(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
            v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
        }
    }
}

/// `Σ c_i p_i`.
pub fn combination(points: &[RationalPoint], coeffs: &[Rational]) -> RationalPoint {
    let dim = points.first().map_or(0, RationalPoint::dim);
    let mut out = RationalPoint::origin(dim);
    for (p, c) in points.iter().zip(coeffs) {
        out.add_scaled(c, p);
    }
    out
}

/// Nonnegative coefficients summing to one.
pub fn is_convex_weights(coeffs: &[Rational]) -> bool {
    coeffs.iter().all(|c| *c >= Rational::zero()) && coeffs.iter().sum::<Rational>() == Rational::one()
}

/// Checks that all points share one dimension and returns it.
pub fn common_dim<'a, I: IntoIterator<Item = &'a RationalPoint>>(
    points: I,
    expected: Option<usize>,
) -> Result<Option<usize>> {
    let mut dim = expected;
    for p in points {
        match dim {
            None => dim = Some(p.dim()),
            Some(d) if d != p.dim() => return Err(Error::DimensionMismatch { expected: d, found: p.dim() }),
            _ => {}
        }
    }
    Ok(dim)
}

/// The convex hull of finitely many rational points. Generators are kept
/// sorted with duplicates removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<RationalPoint>", into = "Vec<RationalPoint>")]
pub struct VPolytope {
    generators: Vec<RationalPoint>,
}

impl VPolytope {
    pub fn new(mut generators: Vec<RationalPoint>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("a polytope needs at least one generator".into()));
        }
        common_dim(&generators, None)?;
        generators.sort();
        generators.dedup();
        Ok(VPolytope { generators })
    }

    pub fn point(p: RationalPoint) -> Self {
        VPolytope { generators: vec![p] }
    }

    /// The segment `[a, b]` in `Q^1`.
    pub fn interval(a: Rational, b: Rational) -> Self {
        VPolytope::new(vec![RationalPoint(vec![a]), RationalPoint(vec![b])]).unwrap()
    }

    pub fn generators(&self) -> &[RationalPoint] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn contains(&self, x: &RationalPoint) -> bool {
        convex_coefficients(&self.generators, x).is_some()
    }
}

impl TryFrom<Vec<RationalPoint>> for VPolytope {
    type Error = Error;

    fn try_from(v: Vec<RationalPoint>) -> Result<Self> {
        VPolytope::new(v)
    }
}

impl From<VPolytope> for Vec<RationalPoint> {
    fn from(p: VPolytope) -> Self {
        p.generators
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Columns are the lifted points `(p, 1)`; returns the matrix with `d + 1` rows.
pub(crate) fn lifted_matrix(points: &[&RationalPoint]) -> Vec<Vec<Rational>> {
    let dim = points.first().map_or(0, |p| p.dim());
    let mut m = vec![Vec::with_capacity(points.len()); dim + 1];
    for p in points {
        for (k, c) in p.0.iter().enumerate() {
            m[k].push(c.clone());
        }
        m[dim].push(Rational::one());
    }
    m
}

pub fn is_affinely_independent(points: &[RationalPoint]) -> bool {
    let refs: Vec<&RationalPoint> = points.iter().collect();
    let mut m = lifted_matrix(&refs);
    row_reduce(&mut m).len() == points.len()
}
