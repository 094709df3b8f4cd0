//! Elementary d-collapses and d-collapsibility.
//!
//! An elementary d-collapse removes the interval `{η : σ ⊆ η ⊆ τ}` where
//! `dim σ ≤ d − 1` and `τ` is the only inclusion-maximal face containing `σ`.
//! The empty face is an admissible `σ` (it has dimension −1), so a single
//! simplex is 0-collapsible.
//!
//! The search routines work on the antichain of facets encoded as vertex
//! bitmasks: a collapse of `(σ, τ)` replaces `τ` by those `τ ∖ {v}`, `v ∈ σ`,
//! that are not already covered by another facet.

use std::cmp::Reverse;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::complex::{Mask, Simplex, SimplicialComplex, Vertex, VertexIndex};
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub free_face: Simplex,
    pub maximal_face: Simplex,
}

impl CollapseStep {
    pub fn new(free_face: impl Into<Simplex>, maximal_face: impl Into<Simplex>) -> Self {
        CollapseStep { free_face: free_face.into(), maximal_face: maximal_face.into() }
    }
}

/// An ordered list of elementary `d`-collapses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseSchedule {
    pub d: usize,
    pub steps: Vec<CollapseStep>,
}

impl CollapseSchedule {
    pub fn new(d: usize) -> Self {
        CollapseSchedule { d, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// The inclusion-maximal faces of `complex` that contain `face`.
pub fn maximal_cofaces(complex: &SimplicialComplex, face: &Simplex) -> Vec<Simplex> {
    complex.facets().into_iter().filter(|f| face.is_subset(f)).collect()
}

/// Returns the unique maximal coface of `face` when `face` is a `d`-collapsible face.
pub fn is_d_collapsible_face(complex: &SimplicialComplex, face: &Simplex, d: usize) -> Result<Option<Simplex>> {
    if !face.is_empty() && !complex.contains(face) {
        return Err(Error::FaceNotInComplex(face.clone()));
    }
    if face.dim() > d as isize - 1 {
        return Ok(None);
    }
    let mut cofaces = maximal_cofaces(complex, face);
    Ok(if cofaces.len() == 1 { cofaces.pop() } else { None })
}

/// Removes `{η : σ ⊆ η ⊆ τ}` where `τ` is the unique maximal face containing `σ`.
pub fn elementary_collapse(complex: &SimplicialComplex, face: &Simplex) -> Result<SimplicialComplex> {
    if !face.is_empty() && !complex.contains(face) {
        return Err(Error::FaceNotInComplex(face.clone()));
    }
    let cofaces = maximal_cofaces(complex, face);
    if cofaces.len() != 1 {
        return Err(Error::NotFree { face: face.clone(), count: cofaces.len() });
    }
    let tau = &cofaces[0];
    let faces = complex.faces().filter(|eta| !(face.is_subset(eta) && eta.is_subset(tau))).cloned().collect();
    Ok(SimplicialComplex::from_closed_faces(faces))
}

/// `cols(K)`: the least `d` such that `K` has a `d`-collapsible face.
pub fn cols(complex: &SimplicialComplex) -> Result<usize> {
    if complex.is_empty() {
        return Err(Error::EmptyComplex);
    }
    let state = FacetState::new(complex)?;
    Ok(state.cols())
}

/// Repeatedly collapses the lexicographically smallest `d`-collapsible face.
///
/// Returns the schedule applied and the residual complex; an empty residual
/// certifies `d`-collapsibility.
pub fn greedy_d_collapse(complex: &SimplicialComplex, d: usize) -> Result<(CollapseSchedule, SimplicialComplex)> {
    let mut state = FacetState::new(complex)?;
    let mut schedule = CollapseSchedule::new(d);
    loop {
        let best =
            state.free_faces(d).into_iter().map(|(s, t)| (state.index.simplex(s), s, t)).min_by(|a, b| a.0.cmp(&b.0));
        let Some((sigma, s, t)) = best else { break };
        schedule.steps.push(CollapseStep { free_face: sigma, maximal_face: state.index.simplex(t) });
        state.collapse(s, t);
    }
    Ok((schedule, state.to_complex()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of expanded states before giving up.
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Collapsible(CollapseSchedule),
    NotCollapsible,
    /// The node budget ran out before the search finished.
    Undecided {
        expanded: u64,
    },
}

impl Decision {
    pub fn is_collapsible(&self) -> bool {
        matches!(self, Decision::Collapsible(_))
    }
}

/// Exact d-collapsibility by depth-first search with memoization of dead states.
pub fn is_d_collapsible(complex: &SimplicialComplex, d: usize, options: &SearchOptions) -> Result<Decision> {
    let root = FacetState::new(complex)?;
    Ok(search(root, d, options.node_budget))
}

fn search(root: FacetState, d: usize, budget: u64) -> Decision {
    struct Frame {
        facets: Vec<Mask>,
        moves: Vec<(Mask, Mask)>,
        next: usize,
    }

    let index = root.index.clone();
    let mut dead: HashSet<Vec<Mask>> = HashSet::new();
    let mut expanded = 0u64;
    let mut stack: Vec<Frame> = Vec::new();

    let expand = |facets: Vec<Mask>| -> Frame {
        let state = FacetState { index: index.clone(), facets };
        let mut moves = state.free_faces(d);
        moves.sort_by_key(|&(s, t)| (s.count_ones(), Reverse(s.reverse_bits()), Reverse(t.reverse_bits())));
        Frame { facets: state.facets, moves, next: 0 }
    };

    if root.facets.is_empty() {
        return Decision::Collapsible(CollapseSchedule::new(d));
    }
    expanded += 1;
    stack.push(expand(root.facets.clone()));

    while let Some(frame) = stack.last_mut() {
        if frame.next == frame.moves.len() {
            let done = stack.pop().unwrap();
            dead.insert(done.facets);
            continue;
        }
        let (s, t) = frame.moves[frame.next];
        frame.next += 1;
        let mut child = FacetState { index: index.clone(), facets: frame.facets.clone() };
        child.collapse(s, t);
        if child.facets.is_empty() {
            let mut schedule = CollapseSchedule::new(d);
            for f in &stack {
                let (s, t) = f.moves[f.next - 1];
                schedule.steps.push(CollapseStep { free_face: index.simplex(s), maximal_face: index.simplex(t) });
            }
            return Decision::Collapsible(schedule);
        }
        if dead.contains(&child.facets) {
            continue;
        }
        if expanded >= budget {
            return Decision::Undecided { expanded };
        }
        expanded += 1;
        stack.push(expand(child.facets));
    }
    Decision::NotCollapsible
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cdim {
    Exact {
        value: usize,
        witness: CollapseSchedule,
    },
    /// Some level was undecided; `cdim` lies in `[lower, upper]`.
    Bounds {
        lower: usize,
        upper: usize,
        witness: CollapseSchedule,
    },
}

impl Cdim {
    pub fn lower(&self) -> usize {
        match self {
            Cdim::Exact { value, .. } => *value,
            Cdim::Bounds { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> usize {
        match self {
            Cdim::Exact { value, .. } => *value,
            Cdim::Bounds { upper, .. } => *upper,
        }
    }

    pub fn witness(&self) -> &CollapseSchedule {
        match self {
            Cdim::Exact { witness, .. } | Cdim::Bounds { witness, .. } => witness,
        }
    }
}

/// `cdim(K)`, searching `d = cols(K), …, dim K + 1`. The empty complex has `cdim = 0`.
pub fn cdim(complex: &SimplicialComplex, options: &SearchOptions) -> Result<Cdim> {
    if complex.is_empty() {
        return Ok(Cdim::Exact { value: 0, witness: CollapseSchedule::new(0) });
    }
    let top = (complex.dim() + 1) as usize;
    let mut lower = cols(complex)?;
    let mut undecided = false;
    let first = lower;
    for d in first..top {
        match is_d_collapsible(complex, d, options)? {
            Decision::Collapsible(witness) => {
                return Ok(if undecided {
                    Cdim::Bounds { lower, upper: d, witness }
                } else {
                    Cdim::Exact { value: d, witness }
                });
            }
            Decision::NotCollapsible if !undecided => lower = d + 1,
            Decision::NotCollapsible => {}
            Decision::Undecided { .. } => undecided = true,
        }
    }
    // Every facet is a (dim K + 1)-collapsible face, so greedy always empties K here.
    let (witness, residual) = greedy_d_collapse(complex, top)?;
    debug_assert!(residual.is_empty());
    Ok(if undecided { Cdim::Bounds { lower, upper: top, witness } } else { Cdim::Exact { value: top, witness } })
}

/// Read access to a (possibly implicit) simplicial complex.
pub trait FaceQuery {
    fn query_vertices(&self) -> Vec<Vertex>;
    /// Membership of a nonempty face.
    fn has_face(&self, face: &Simplex) -> bool;
    fn face_count(&self) -> u128;
}

impl FaceQuery for SimplicialComplex {
    fn query_vertices(&self) -> Vec<Vertex> {
        self.vertices()
    }

    fn has_face(&self, face: &Simplex) -> bool {
        self.contains(face)
    }

    fn face_count(&self) -> u128 {
        self.num_faces() as u128
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepFailure {
    FreeFaceNotInMaximal,
    DimensionTooLarge,
    FaceMissing,
    NotUniqueMaximal,
    NotEmptyAtEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScheduleVerdict {
    Valid,
    /// `step` is the index of the first failing step, or `steps.len()` when
    /// every step was legal but faces remain.
    Invalid {
        step: usize,
        reason: StepFailure,
    },
}

impl ScheduleVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ScheduleVerdict::Valid)
    }
}

/// Replays a schedule against `complex`, checking every elementary collapse.
///
/// The current complex is never materialized: a face is present when the
/// original complex has it and no earlier interval removed it. Because each
/// legal step removes an interval whose top face is present, the removed
/// intervals are disjoint and emptiness at the end is a face count.
pub fn verify_schedule<Q: FaceQuery + ?Sized>(complex: &Q, schedule: &CollapseSchedule) -> ScheduleVerdict {
    let vertices = {
        let mut v = complex.query_vertices();
        v.sort_unstable();
        v
    };
    let index = match VertexIndex::new(vertices.clone()) {
        Ok(i) => i,
        Err(_) => return verify_schedule_slow(complex, schedule),
    };
    let all: Mask = if index.len() == 128 { Mask::MAX } else { (1 << index.len()) - 1 };
    let mut removed: Vec<(Mask, Mask)> = Vec::new();
    let mut removed_count: u128 = 0;

    let present = |m: Mask, removed: &[(Mask, Mask)]| -> bool {
        complex.has_face(&index.simplex(m)) && !removed.iter().any(|&(s, t)| s & !m == 0 && m & !t == 0)
    };

    let fail = |step, reason| ScheduleVerdict::Invalid { step, reason };
    for (i, step) in schedule.steps.iter().enumerate() {
        if !step.free_face.is_subset(&step.maximal_face) {
            return fail(i, StepFailure::FreeFaceNotInMaximal);
        }
        if step.free_face.len() > schedule.d {
            return fail(i, StepFailure::DimensionTooLarge);
        }
        let (Some(s), Some(t)) = (index.mask(&step.free_face), index.mask(&step.maximal_face)) else {
            return fail(i, StepFailure::FaceMissing);
        };
        if t == 0 || !present(t, &removed) {
            return fail(i, StepFailure::FaceMissing);
        }
        let mut outside = all & !t;
        while outside != 0 {
            let bit = outside & outside.wrapping_neg();
            outside &= !bit;
            if present(s | bit, &removed) {
                return fail(i, StepFailure::NotUniqueMaximal);
            }
        }
        let span = (t & !s).count_ones();
        removed_count += (1u128 << span) - u128::from(s == 0);
        removed.push((s, t));
    }
    if removed_count != complex.face_count() {
        return fail(schedule.steps.len(), StepFailure::NotEmptyAtEnd);
    }
    ScheduleVerdict::Valid
}

fn verify_schedule_slow<Q: FaceQuery + ?Sized>(complex: &Q, schedule: &CollapseSchedule) -> ScheduleVerdict {
    let vertices = complex.query_vertices();
    let mut removed: Vec<(Simplex, Simplex)> = Vec::new();
    let mut removed_count: u128 = 0;
    let present = |f: &Simplex, removed: &[(Simplex, Simplex)]| {
        complex.has_face(f) && !removed.iter().any(|(s, t)| s.is_subset(f) && f.is_subset(t))
    };
    let fail = |step, reason| ScheduleVerdict::Invalid { step, reason };
    for (i, step) in schedule.steps.iter().enumerate() {
        let (s, t) = (&step.free_face, &step.maximal_face);
        if !s.is_subset(t) {
            return fail(i, StepFailure::FreeFaceNotInMaximal);
        }
        if s.len() > schedule.d {
            return fail(i, StepFailure::DimensionTooLarge);
        }
        if t.is_empty() || !present(t, &removed) {
            return fail(i, StepFailure::FaceMissing);
        }
        for &v in &vertices {
            if !t.contains_vertex(v) && present(&s.with_vertex(v), &removed) {
                return fail(i, StepFailure::NotUniqueMaximal);
            }
        }
        removed_count += (1u128 << (t.len() - s.len())) - u128::from(s.is_empty());
        removed.push((s.clone(), t.clone()));
    }
    if removed_count != complex.face_count() {
        return fail(schedule.steps.len(), StepFailure::NotEmptyAtEnd);
    }
    ScheduleVerdict::Valid
}

/// Facet antichain of a complex over a dense vertex numbering.
#[derive(Clone, Debug)]
struct FacetState {
    index: VertexIndex,
    facets: Vec<Mask>,
}

impl FacetState {
    fn new(complex: &SimplicialComplex) -> Result<Self> {
        let index = VertexIndex::of(complex)?;
        let mut facets: Vec<Mask> = complex.facets().iter().map(|f| index.mask(f).unwrap()).collect();
        facets.sort_unstable();
        Ok(FacetState { index, facets })
    }

    fn to_complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.facets.iter().map(|&m| self.index.simplex(m))).expect("facets are nonempty")
    }

    /// Subsets of `tau` with at most `max_size` vertices lying in no other facet,
    /// visited in order of increasing size.
    fn free_subsets_of(&self, tau: Mask, max_size: usize, mut visit: impl FnMut(Mask) -> bool) {
        let others: Vec<Mask> = self.facets.iter().filter(|&&f| f != tau).map(|&f| f & tau).collect();
        let bits: Vec<Mask> = (0..128).map(|i| 1 << i).filter(|b| tau & b != 0).collect();
        let max_size = max_size.min(bits.len());
        for size in 0..=max_size {
            let mut chosen = Vec::with_capacity(size);
            let mut stop = false;
            combinations(&bits, size, 0, 0, &mut chosen, &mut |sigma| {
                if stop {
                    return;
                }
                if others.iter().all(|&o| sigma & !o != 0) {
                    stop = visit(sigma);
                }
            });
            if stop {
                return;
            }
        }
    }

    /// All `(σ, τ)` with `|σ| ≤ d` and `τ` the unique facet containing `σ`.
    fn free_faces(&self, d: usize) -> Vec<(Mask, Mask)> {
        let mut out = Vec::new();
        for &tau in &self.facets {
            self.free_subsets_of(tau, d, |sigma| {
                out.push((sigma, tau));
                false
            });
        }
        out
    }

    fn cols(&self) -> usize {
        let mut best = usize::MAX;
        for &tau in &self.facets {
            let limit = best.saturating_sub(1).min(tau.count_ones() as usize);
            self.free_subsets_of(tau, limit, |sigma| {
                best = best.min(sigma.count_ones() as usize);
                true
            });
        }
        best
    }

    fn collapse(&mut self, sigma: Mask, tau: Mask) {
        let pos = self.facets.binary_search(&tau).expect("tau is a facet");
        self.facets.remove(pos);
        let mut rest = sigma;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            rest &= !bit;
            let cand = tau & !bit;
            if cand != 0 && self.facets.iter().all(|&f| cand & !f != 0) {
                if let Err(p) = self.facets.binary_search(&cand) {
                    self.facets.insert(p, cand);
                }
            }
        }
    }
}

fn combinations(bits: &[Mask], k: usize, start: usize, acc: Mask, chosen: &mut Vec<Mask>, f: &mut impl FnMut(Mask)) {
    if chosen.len() == k {
        f(acc);
        return;
    }
    let need = k - chosen.len();
    if bits.len() < start + need {
        return;
    }
    for i in start..=bits.len() - need {
        chosen.push(bits[i]);
        combinations(bits, k, i + 1, acc | bits[i], chosen, f);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(facets: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        k(&[&[1, 2, 3]])
    }

    fn triangle_boundary() -> SimplicialComplex {
        k(&[&[1, 2], &[2, 3], &[1, 3]])
    }

    #[test]
    fn collapsible_face_examples() {
        assert_eq!(is_d_collapsible_face(&triangle(), &Simplex::from([1]), 1).unwrap(), Some(Simplex::from([1, 2, 3])));
        assert_eq!(is_d_collapsible_face(&triangle_boundary(), &Simplex::from([1]), 1).unwrap(), None);
        assert_eq!(
            is_d_collapsible_face(&triangle_boundary(), &Simplex::from([1, 2]), 2).unwrap(),
            Some(Simplex::from([1, 2]))
        );
        // dimension bound
        assert_eq!(is_d_collapsible_face(&triangle(), &Simplex::from([1, 2]), 1).unwrap(), None);
        assert!(is_d_collapsible_face(&triangle(), &Simplex::from([4]), 1).is_err());
    }

    #[test]
    fn elementary_collapse_examples() {
        let r = elementary_collapse(&triangle(), &Simplex::from([1])).unwrap();
        assert_eq!(r, k(&[&[2, 3]]));
        let r = elementary_collapse(&triangle(), &Simplex::empty()).unwrap();
        assert!(r.is_empty());
        let e = elementary_collapse(&triangle_boundary(), &Simplex::from([1]));
        assert!(matches!(e, Err(Error::NotFree { count: 2, .. })));
    }

    #[test]
    fn cols_examples() {
        assert_eq!(cols(&SimplicialComplex::simplex(0..5)).unwrap(), 0);
        assert_eq!(cols(&triangle_boundary()).unwrap(), 2);
        assert!(matches!(cols(&SimplicialComplex::empty()), Err(Error::EmptyComplex)));
        // a path has a free leaf vertex
        assert_eq!(cols(&k(&[&[1, 2], &[2, 3]])).unwrap(), 1);
    }

    #[test]
    fn greedy_examples() {
        let (s, r) = greedy_d_collapse(&SimplicialComplex::simplex(1..4), 0).unwrap();
        assert!(r.is_empty());
        assert_eq!(s.steps, vec![CollapseStep::new(Simplex::empty(), [1, 2, 3])]);

        let (s, r) = greedy_d_collapse(&triangle_boundary(), 1).unwrap();
        assert!(s.is_empty());
        assert_eq!(r, triangle_boundary());

        let path = k(&[&[1, 2], &[2, 3], &[3, 4]]);
        let (s, r) = greedy_d_collapse(&path, 1).unwrap();
        assert!(r.is_empty());
        assert!(verify_schedule(&path, &s).is_valid());
    }

    #[test]
    fn exhaustive_examples() {
        let opts = SearchOptions::default();
        assert_eq!(is_d_collapsible(&triangle_boundary(), 1, &opts).unwrap(), Decision::NotCollapsible);
        let Decision::Collapsible(w) = is_d_collapsible(&triangle_boundary(), 2, &opts).unwrap() else {
            panic!("boundary of a triangle is 2-collapsible");
        };
        assert!(verify_schedule(&triangle_boundary(), &w).is_valid());
        assert!(is_d_collapsible(&SimplicialComplex::empty(), 0, &opts).unwrap().is_collapsible());
    }

    #[test]
    fn tiny_budget_is_undecided() {
        let opts = SearchOptions { node_budget: 1 };
        let c = k(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5]]);
        // the search needs more than one expansion before reaching a leaf
        assert!(matches!(is_d_collapsible(&c, 1, &opts).unwrap(), Decision::Undecided { .. }));
    }

    #[test]
    fn cdim_examples() {
        let opts = SearchOptions::default();
        let c = cdim(&SimplicialComplex::simplex(0..4), &opts).unwrap();
        assert_eq!(c.lower(), 0);
        let c = cdim(&triangle_boundary(), &opts).unwrap();
        assert!(matches!(c, Cdim::Exact { value: 2, .. }));
        assert!(verify_schedule(&triangle_boundary(), c.witness()).is_valid());
        assert_eq!(cdim(&SimplicialComplex::empty(), &opts).unwrap().lower(), 0);
    }

    #[test]
    fn verify_reports_first_failure() {
        let path = k(&[&[1, 2], &[2, 3]]);
        let good = CollapseSchedule {
            d: 1,
            steps: vec![CollapseStep::new([1], [1, 2]), CollapseStep::new(Simplex::empty(), [2, 3])],
        };
        assert!(verify_schedule(&path, &good).is_valid());

        let swapped = CollapseSchedule { d: 1, steps: good.steps.iter().rev().cloned().collect() };
        assert_eq!(
            verify_schedule(&path, &swapped),
            ScheduleVerdict::Invalid { step: 0, reason: StepFailure::NotUniqueMaximal }
        );

        let short = CollapseSchedule { d: 1, steps: vec![good.steps[0].clone()] };
        assert_eq!(
            verify_schedule(&path, &short),
            ScheduleVerdict::Invalid { step: 1, reason: StepFailure::NotEmptyAtEnd }
        );

        let too_big = CollapseSchedule { d: 1, steps: vec![CollapseStep::new([1, 2], [1, 2])] };
        assert_eq!(
            verify_schedule(&path, &too_big),
            ScheduleVerdict::Invalid { step: 0, reason: StepFailure::DimensionTooLarge }
        );

        let twice = CollapseSchedule {
            d: 2,
            steps: vec![CollapseStep::new([1, 2], [1, 2]), CollapseStep::new([1, 2], [1, 2])],
        };
        assert_eq!(
            verify_schedule(&path, &twice),
            ScheduleVerdict::Invalid { step: 1, reason: StepFailure::FaceMissing }
        );
    }
}
