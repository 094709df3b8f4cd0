//! Text formats.
//!
//! * `.scx`: one facet per line as space-separated vertex numbers.
//! * `.fam`: one set per line as space-separated positive integers; the k-th
//!   set line is set `k`.
//! * `.clps`: a header `d <int>`, then one step per line as `σ | τ` with `-`
//!   standing for the empty face.
//! * `.vpt`: JSON `{"dim": 2, "polytopes": {"1 2": [["0", "1/2"], …]}}` whose
//!   keys name faces by their vertex lists.
//!
//! In the line formats `#` starts a comment and blank lines are skipped.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::collapse::{CollapseSchedule, CollapseStep};
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::geometry::{RationalPoint, Representation, VPolytope};
use crate::nerve::SetFamily;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<Vertex>> {
    s.split_whitespace()
        .map(|t| t.parse::<Vertex>().map_err(|_| Error::Parse { line, msg: format!("not a vertex number: {t:?}") }))
        .collect()
}

/// A face written as vertex numbers, or `-` for the empty face.
pub fn parse_face(line: usize, s: &str) -> Result<Simplex> {
    let s = s.trim();
    if s == "-" {
        return Ok(Simplex::empty());
    }
    if s.is_empty() {
        return Err(Error::Parse { line, msg: "missing face (write `-` for the empty face)".into() });
    }
    parse_numbers(line, s).map(Simplex::new)
}

pub fn format_face(s: &Simplex) -> String {
    if s.is_empty() {
        "-".into()
    } else {
        s.vertices().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

pub fn parse_scx(text: &str) -> Result<SimplicialComplex> {
    let facets = content_lines(text).map(|(n, l)| parse_numbers(n, l)).collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_facets(facets)
}

pub fn write_scx(k: &SimplicialComplex) -> String {
    k.facets().iter().map(|f| format_face(f) + "\n").collect()
}

pub fn parse_fam(text: &str) -> Result<SetFamily> {
    let mut sets = Vec::new();
    for (n, l) in content_lines(text) {
        let set = parse_numbers(n, l)?;
        if set.contains(&0) {
            return Err(Error::Parse { line: n, msg: "set elements must be positive".into() });
        }
        sets.push(set);
    }
    SetFamily::new(sets)
}

pub fn write_fam(f: &SetFamily) -> String {
    f.sets().iter().map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n").collect()
}

pub fn parse_clps(text: &str) -> Result<CollapseSchedule> {
    let mut lines = content_lines(text);
    let (n, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing `d <int>` header".into() })?;
    let d = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["d", v] => v.parse::<usize>().map_err(|_| Error::Parse { line: n, msg: format!("bad d value {v:?}") })?,
        _ => return Err(Error::Parse { line: n, msg: "expected header `d <int>`".into() }),
    };
    let mut schedule = CollapseSchedule::new(d);
    for (n, l) in lines {
        let (sigma, tau) = l
            .split_once('|')
            .ok_or_else(|| Error::Parse { line: n, msg: "expected `free face | maximal face`".into() })?;
        schedule.steps.push(CollapseStep::new(parse_face(n, sigma)?, parse_face(n, tau)?));
    }
    Ok(schedule)
}

pub fn write_clps(s: &CollapseSchedule) -> String {
    let mut out = format!("d {}\n", s.d);
    for step in &s.steps {
        let _ = writeln!(out, "{} | {}", format_face(&step.free_face), format_face(&step.maximal_face));
    }
    out
}

/// Contents of a `.vpt` file. Generator lists are kept as written.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VptFile {
    pub dim: usize,
    pub polytopes: BTreeMap<String, Vec<RationalPoint>>,
}

impl VptFile {
    pub fn parse(text: &str) -> Result<Self> {
        let v: VptFile = serde_json::from_str(text)?;
        for pts in v.polytopes.values() {
            if let Some(p) = pts.iter().find(|p| p.dim() != v.dim) {
                return Err(Error::DimensionMismatch { expected: v.dim, found: p.dim() });
            }
        }
        Ok(v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("vpt data serializes")
    }

    /// The point list of a file holding a single entry.
    pub fn point_set(&self) -> Result<Vec<RationalPoint>> {
        match self.polytopes.values().collect::<Vec<_>>().as_slice() {
            [pts] => Ok((*pts).clone()),
            _ => Err(Error::InvalidParameter("a point-set file must hold exactly one entry".into())),
        }
    }

    pub fn to_representation(&self, complex: SimplicialComplex) -> Result<Representation> {
        let mut polytopes = BTreeMap::new();
        for (key, pts) in &self.polytopes {
            let face = parse_face(0, key)?;
            if polytopes.insert(face.clone(), VPolytope::new(pts.clone())?).is_some() {
                return Err(Error::InvalidRepresentation(format!("face {face} is listed twice")));
            }
        }
        Representation::new(complex, self.dim, polytopes)
    }

    pub fn from_representation(r: &Representation) -> Self {
        VptFile {
            dim: r.dim,
            polytopes: r.polytopes.iter().map(|(f, p)| (format_face(f), p.generators().to_vec())).collect(),
        }
    }

    /// One polytope per vertex, keyed by the vertex number.
    pub fn from_vertex_polytopes(dim: usize, polys: &BTreeMap<Vertex, VPolytope>) -> Self {
        VptFile { dim, polytopes: polys.iter().map(|(v, p)| (v.to_string(), p.generators().to_vec())).collect() }
    }
}

pub fn read_scx(path: impl AsRef<Path>) -> Result<SimplicialComplex> {
    parse_scx(&fs::read_to_string(path)?)
}

pub fn read_fam(path: impl AsRef<Path>) -> Result<SetFamily> {
    parse_fam(&fs::read_to_string(path)?)
}

pub fn read_clps(path: impl AsRef<Path>) -> Result<CollapseSchedule> {
    parse_clps(&fs::read_to_string(path)?)
}

pub fn read_vpt(path: impl AsRef<Path>) -> Result<VptFile> {
    VptFile::parse(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scx_round_trip_with_comments() {
        let k = parse_scx("# two triangles\n1 2 3\n\n2 3 4  # shared edge\n").unwrap();
        assert_eq!(k.facets().len(), 2);
        assert_eq!(parse_scx(&write_scx(&k)).unwrap(), k);
        assert!(parse_scx("").unwrap().is_empty());
        assert!(matches!(parse_scx("1 2\n3 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn fam_rejects_zero_and_empty() {
        let f = parse_fam("1 2\n2 3\n").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(write_fam(&f), "1 2\n2 3\n");
        assert!(parse_fam("0 1\n").is_err());
    }

    #[test]
    fn clps_round_trip() {
        let text = "d 1\n- | 1\n2 | 2 3\n";
        let s = parse_clps(text).unwrap();
        assert_eq!(s.d, 1);
        assert_eq!(s.steps[0].free_face, Simplex::empty());
        assert_eq!(write_clps(&s), text);
        assert!(parse_clps("1 | 1 2\n").is_err());
        assert!(parse_clps("d 1\n1 1 2\n").is_err());
        assert!(parse_clps("d 1\n | 1 2\n").is_err());
    }

    #[test]
    fn vpt_round_trip() {
        let text = r#"{"dim": 1, "polytopes": {"1": [["0"]], "1 2": [["0"], ["1/2"]], "2": [["1/2"]]}}"#;
        let v = VptFile::parse(text).unwrap();
        let l = SimplicialComplex::from_facets([[1, 2]]).unwrap();
        let r = v.to_representation(l).unwrap();
        assert_eq!(VptFile::from_representation(&r), v);
        assert_eq!(VptFile::parse(&v.to_json()).unwrap(), v);
        assert!(VptFile::parse(r#"{"dim": 2, "polytopes": {"1": [["0"]]}}"#).is_err());
        assert!(v.point_set().is_err());
    }
}
