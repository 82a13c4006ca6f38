//! Vertex-avoiding directed reachability through boundary subcomplexes of the
//! standard cube, and the spatiality check built on it.
//!
//! A subcomplex `A ⊆ ∂□[n]` is accepted when `|A|` carries a coordinatewise
//! nondecreasing path from `0…0` to `1…1` meeting no other vertex of the
//! cube. The search works with itineraries: the sequence of open cells such a
//! path visits. A monotone path visits each open cell during one time
//! interval, because every coordinate is `0` on an initial segment of time
//! and `1` on a final one. Reading a word in `{0,1,*}^n` as the vector of
//! coordinate statuses, the visited cells therefore form a strictly
//! increasing chain for the order `0 < * < 1` taken coordinatewise, and two
//! consecutive cells are always face-related (the later one lies in the
//! closure of the earlier one or conversely).
//!
//! Conversely, pick one point in each open cell of such a chain and join
//! `0…0`, the points and `1…1` by straight segments. Two consecutive points
//! lie in face-related cells, so the segment between them stays in the
//! closure of the larger cell, hence in `|A|`. The interior of a nonconstant
//! straight monotone segment in `[0,1]^n` contains no vertex: a coordinate
//! that moves takes values strictly between its endpoint values there, hence
//! in `(0,1)`. So only the chosen points could be vertices, and they lie in
//! cells of dimension at least one. The existence of the points is a
//! [`FeasibilitySystem`] of strict and non-strict linear inequalities solved
//! exactly by Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::fm::System;
use crate::pcs::{agreement_subcomplex, BoundarySubcomplex, CellId, PcsError, PrecubicalSet, Word};
use crate::rational::{frac, Q};

pub const MIN_BN_DIM: usize = 2;
pub const MAX_BN_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpatialError {
    #[error("dimension {0} outside the supported range {MIN_BN_DIM}..={MAX_BN_DIM}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Pcs(#[from] PcsError),
}

/// A sequence of distinct open cells (words with at least one `*`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itinerary {
    pub n: usize,
    pub cells: Vec<Word>,
}

fn rank(s: u8) -> u8 {
    match s {
        b'0' => 0,
        b'*' => 1,
        _ => 2,
    }
}

/// Coordinatewise `a ≤ b` for the order `0 < * < 1`.
fn status_le(a: &Word, b: &Word) -> bool {
    a.as_bytes().iter().zip(b.as_bytes()).all(|(x, y)| rank(*x) <= rank(*y))
}

fn face_related(a: &Word, b: &Word) -> bool {
    a.is_face_of(b) || b.is_face_of(a)
}

fn may_start(w: &Word) -> bool {
    w.as_bytes().iter().all(|&s| s != b'1')
}

fn may_end(w: &Word) -> bool {
    w.as_bytes().iter().all(|&s| s != b'0')
}

impl Itinerary {
    /// Every coordinate's status sequence matches `0* F* 1*`.
    pub fn has_monotone_status(&self) -> bool {
        self.cells.windows(2).all(|w| status_le(&w[0], &w[1]))
    }

    /// Distinct cells of positive dimension, face-related neighbours, first
    /// cell adjacent to `0…0` and last cell adjacent to `1…1`.
    pub fn is_well_formed(&self) -> bool {
        let distinct = self.cells.iter().collect::<BTreeSet<_>>().len() == self.cells.len();
        distinct
            && !self.cells.is_empty()
            && self.cells.iter().all(|w| w.len() == self.n && w.dim() >= 1)
            && self.cells.windows(2).all(|w| face_related(&w[0], &w[1]))
            && may_start(&self.cells[0])
            && may_end(self.cells.last().unwrap())
    }
}

/// The linear system whose solutions are the points, one per itinerary cell,
/// of a PL path following the itinerary.
///
/// Fixed coordinates are constants. Every free coordinate is a variable
/// constrained to the open interval `(0,1)`, and consecutive points,
/// including the endpoints `0…0` and `1…1`, are ordered coordinatewise.
#[derive(Debug, Clone)]
pub struct FeasibilitySystem {
    itinerary: Itinerary,
    system: System,
    // per cell, per coordinate: variable index for free coordinates
    slots: Vec<Vec<Option<usize>>>,
}

enum Term {
    Const(Q),
    Var(usize),
}

impl FeasibilitySystem {
    pub fn new(itinerary: &Itinerary) -> Self {
        let n = itinerary.n;
        let mut slots = Vec::with_capacity(itinerary.cells.len());
        let mut nvars = 0;
        for w in &itinerary.cells {
            let row: Vec<Option<usize>> = w
                .as_bytes()
                .iter()
                .map(|&s| {
                    (s == b'*').then(|| {
                        nvars += 1;
                        nvars - 1
                    })
                })
                .collect();
            slots.push(row);
        }
        let mut system = System::new(nvars);
        for row in &slots {
            for v in row.iter().flatten() {
                system.lt(&[(*v, -Q::one())], Q::zero());
                system.lt(&[(*v, Q::one())], Q::one());
            }
        }
        let term = |k: usize, i: usize| -> Term {
            if k == 0 {
                return Term::Const(Q::zero());
            }
            if k == itinerary.cells.len() + 1 {
                return Term::Const(Q::one());
            }
            match slots[k - 1][i] {
                Some(v) => Term::Var(v),
                None => Term::Const(if itinerary.cells[k - 1].as_bytes()[i] == b'1' {
                    Q::one()
                } else {
                    Q::zero()
                }),
            }
        };
        for k in 1..=itinerary.cells.len() + 1 {
            for i in 0..n {
                // earlier ≤ later
                match (term(k - 1, i), term(k, i)) {
                    (Term::Const(a), Term::Const(b)) => system.le(&[], b - a),
                    (Term::Var(u), Term::Const(b)) => system.le(&[(u, Q::one())], b),
                    (Term::Const(a), Term::Var(v)) => system.le(&[(v, -Q::one())], -a),
                    (Term::Var(u), Term::Var(v)) => system.le(&[(u, Q::one()), (v, -Q::one())], Q::zero()),
                }
            }
        }
        FeasibilitySystem {
            itinerary: itinerary.clone(),
            system,
            slots,
        }
    }

    pub fn itinerary(&self) -> &Itinerary {
        &self.itinerary
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    /// Points of the itinerary cells from a variable assignment.
    fn points(&self, vars: &[Q]) -> Vec<Vec<Q>> {
        self.itinerary
            .cells
            .iter()
            .zip(&self.slots)
            .map(|(w, row)| {
                w.as_bytes()
                    .iter()
                    .zip(row)
                    .map(|(&s, v)| match (s, v) {
                        (_, Some(v)) => vars[*v].clone(),
                        (b'1', None) => Q::one(),
                        _ => Q::zero(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Inverse of [`FeasibilitySystem::points`]; `None` if a fixed
    /// coordinate disagrees with the word.
    fn vars(&self, points: &[Vec<Q>]) -> Option<Vec<Q>> {
        if points.len() != self.slots.len() {
            return None;
        }
        let mut vars = vec![Q::zero(); self.system.nvars()];
        for ((w, row), p) in self.itinerary.cells.iter().zip(&self.slots).zip(points) {
            if p.len() != w.len() {
                return None;
            }
            for ((&s, v), x) in w.as_bytes().iter().zip(row).zip(p) {
                match v {
                    Some(v) => vars[*v] = x.clone(),
                    None if (s == b'1') != x.is_one() || (s == b'0') != x.is_zero() => return None,
                    None => {}
                }
            }
        }
        Some(vars)
    }

    /// One point per itinerary cell, or `None` if infeasible.
    pub fn solve(&self) -> Option<Vec<Vec<Q>>> {
        self.system.solve().map(|v| self.points(&v))
    }

    /// Do `points` (one per cell) satisfy every constraint exactly?
    pub fn check(&self, points: &[Vec<Q>]) -> bool {
        self.vars(points).is_some_and(|v| self.system.holds(&v))
    }
}

/// A vertex-avoiding path through `A`: the itinerary and the breakpoints of
/// the PL path, endpoints `0…0` and `1…1` included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnWitness {
    pub itinerary: Itinerary,
    pub path: Vec<Vec<Q>>,
}

/// The open cell containing `x ∈ [0,1]^n`.
pub fn cell_of(x: &[Q]) -> Word {
    let s: String = x
        .iter()
        .map(|c| {
            if c.is_zero() {
                '0'
            } else if c.is_one() {
                '1'
            } else {
                '*'
            }
        })
        .collect();
    s.parse().expect("word")
}

/// Independent check of a PL path given by its breakpoints: starts at
/// `0…0`, ends at `1…1`, is coordinatewise nondecreasing, every breakpoint
/// and every open segment lies in `|A|`, and no intermediate breakpoint is a
/// vertex of the cube.
pub fn check_pl_path(a: &BoundarySubcomplex, path: &[Vec<Q>]) -> bool {
    let n = a.n();
    if path.len() < 2 || path.iter().any(|p| p.len() != n) {
        return false;
    }
    let in_cube = |p: &Vec<Q>| p.iter().all(crate::rational::in_unit_interval);
    if !path.iter().all(in_cube) {
        return false;
    }
    if path[0].iter().any(|c| !c.is_zero()) || path.last().unwrap().iter().any(|c| !c.is_one()) {
        return false;
    }
    for p in &path[1..path.len() - 1] {
        let w = cell_of(p);
        if w.dim() == 0 || !a.contains(&w) {
            return false;
        }
    }
    for s in path.windows(2) {
        if s[0].iter().zip(&s[1]).any(|(x, y)| x > y) {
            return false;
        }
        if s[0] == s[1] {
            continue;
        }
        let mid: Vec<Q> = s[0].iter().zip(&s[1]).map(|(x, y)| (x + y) * frac(1, 2)).collect();
        if !a.contains(&cell_of(&mid)) {
            return false;
        }
    }
    true
}

/// Search options for [`in_bn_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BnSearch {
    /// Skip itineraries whose status pattern is not `0* F* 1*` before
    /// solving. Turning this off leaves monotonicity to the solver.
    pub status_filter: bool,
    pub exec: Exec,
}

impl Default for BnSearch {
    fn default() -> Self {
        BnSearch {
            status_filter: true,
            exec: Exec::default(),
        }
    }
}

/// Is `A` in `B_n`? Returns a witness when it is.
pub fn in_bn(a: &BoundarySubcomplex) -> Result<Option<BnWitness>, SpatialError> {
    in_bn_with(a, BnSearch::default())
}

pub fn in_bn_with(a: &BoundarySubcomplex, search: BnSearch) -> Result<Option<BnWitness>, SpatialError> {
    let n = a.n();
    if !(MIN_BN_DIM..=MAX_BN_DIM).contains(&n) {
        return Err(SpatialError::UnsupportedDimension(n));
    }
    let cells: Vec<Word> = a.cells().iter().filter(|w| w.dim() >= 1).cloned().collect();
    let starts: Vec<Word> = cells.iter().filter(|w| may_start(w)).cloned().collect();
    let max_len = if search.status_filter {
        (2 * n - 1).min(cells.len())
    } else {
        cells.len()
    };
    for len in 1..=max_len {
        let found = search.exec.find_first(&starts, |first| {
            let mut prefix = vec![first.clone()];
            extend(n, &cells, len, search.status_filter, &mut prefix)
        });
        if let Some(w) = found {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn extend(n: usize, cells: &[Word], len: usize, status_filter: bool, prefix: &mut Vec<Word>) -> Option<BnWitness> {
    let itinerary = Itinerary {
        n,
        cells: prefix.clone(),
    };
    if !status_filter {
        // prefixes of feasible itineraries are feasible once the end
        // constraint is dropped; check the prefix with a free tail
        if !prefix_feasible(&itinerary) {
            return None;
        }
    }
    if prefix.len() == len {
        if !may_end(prefix.last().unwrap()) {
            return None;
        }
        let sys = FeasibilitySystem::new(&itinerary);
        let points = sys.solve()?;
        let mut path = vec![vec![Q::zero(); n]];
        path.extend(points);
        path.push(vec![Q::one(); n]);
        return Some(BnWitness { itinerary, path });
    }
    let last = prefix.last().unwrap().clone();
    for w in cells {
        if prefix.contains(w) || !face_related(&last, w) {
            continue;
        }
        if status_filter && !status_le(&last, w) {
            continue;
        }
        prefix.push(w.clone());
        let r = extend(n, cells, len, status_filter, prefix);
        prefix.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Feasibility of the constraints that only involve the prefix cells and the
/// start point.
fn prefix_feasible(itinerary: &Itinerary) -> bool {
    let n = itinerary.n;
    let mut sys = System::new(itinerary.cells.len() * n);
    let var = |k: usize, i: usize| k * n + i;
    for (k, w) in itinerary.cells.iter().enumerate() {
        for (i, &s) in w.as_bytes().iter().enumerate() {
            let v = var(k, i);
            match s {
                b'*' => {
                    sys.lt(&[(v, -Q::one())], Q::zero());
                    sys.lt(&[(v, Q::one())], Q::one());
                }
                b'0' => {
                    sys.le(&[(v, Q::one())], Q::zero());
                    sys.le(&[(v, -Q::one())], Q::zero());
                }
                _ => {
                    sys.le(&[(v, Q::one())], Q::one());
                    sys.le(&[(v, -Q::one())], -Q::one());
                }
            }
            if k > 0 {
                sys.le(&[(var(k - 1, i), Q::one()), (v, -Q::one())], Q::zero());
            }
        }
    }
    sys.solve().is_some()
}

/// Two distinct `n`-cubes agreeing on a subcomplex in `B_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialWitness {
    pub x: CellId,
    pub y: CellId,
    pub n: usize,
    pub agreement: BoundarySubcomplex,
    pub path: BnWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpatialReport {
    pub max_dim: usize,
    pub pairs_checked: usize,
    /// Sorted by `(n, x, y)`; empty iff the set is spatial.
    pub witnesses: Vec<SpatialWitness>,
}

impl SpatialReport {
    pub fn is_spatial(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn is_spatial(k: &PrecubicalSet) -> Result<SpatialReport, SpatialError> {
    is_spatial_with(k, Exec::default())
}

/// Check every unordered pair of distinct `n`-cubes, `n ≥ 3`, for an
/// agreement subcomplex in `B_n`.
pub fn is_spatial_with(k: &PrecubicalSet, exec: Exec) -> Result<SpatialReport, SpatialError> {
    let max_dim = k.max_dim().unwrap_or(0);
    if max_dim > MAX_BN_DIM {
        return Err(SpatialError::UnsupportedDimension(max_dim));
    }
    let mut pairs = Vec::new();
    for n in 3..=max_dim {
        let cubes = k.cells_of_dim(n);
        for (i, x) in cubes.iter().enumerate() {
            for y in &cubes[i + 1..] {
                pairs.push((n, (*x).clone(), (*y).clone()));
            }
        }
    }
    let search = BnSearch {
        status_filter: true,
        exec: Exec::Sequential,
    };
    let results = exec.map(&pairs, |(n, x, y)| -> Result<Option<SpatialWitness>, SpatialError> {
        let agreement = agreement_subcomplex(k, x, y)?;
        Ok(in_bn_with(&agreement, search)?.map(|path| SpatialWitness {
            x: x.clone(),
            y: y.clone(),
            n: *n,
            agreement,
            path,
        }))
    });
    let mut witnesses = Vec::new();
    for r in results {
        if let Some(w) = r? {
            witnesses.push(w);
        }
    }
    Ok(SpatialReport {
        max_dim,
        pairs_checked: pairs.len(),
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{boundary_cube, pushout, standard_cube};
    use crate::rational::q;
    use std::collections::BTreeMap;

    fn sub(gens: &[&str]) -> BoundarySubcomplex {
        BoundarySubcomplex::new(3, gens.iter().map(|g| g.parse().unwrap())).unwrap()
    }

    #[test]
    fn full_boundary_is_in_b3() {
        let w = in_bn(&BoundarySubcomplex::full(3).unwrap()).unwrap().unwrap();
        assert!(check_pl_path(&BoundarySubcomplex::full(3).unwrap(), &w.path));
        assert!(FeasibilitySystem::new(&w.itinerary).check(&w.path[1..w.path.len() - 1]));
    }

    #[test]
    fn opposite_squares_are_not() {
        assert!(in_bn(&sub(&["0**", "1**"])).unwrap().is_none());
    }

    #[test]
    fn staircase_is() {
        let a = sub(&["**0", "1**"]);
        let w = in_bn(&a).unwrap().unwrap();
        assert!(check_pl_path(&a, &w.path));
        let chain = vec![vec![q(0), q(0), q(0)], vec![q(1), frac(1, 2), q(0)], vec![q(1), q(1), q(1)]];
        assert!(check_pl_path(&a, &chain));
        // through the vertex 100 instead
        let bad = vec![vec![q(0), q(0), q(0)], vec![q(1), q(0), q(0)], vec![q(1), q(1), q(1)]];
        assert!(!check_pl_path(&a, &bad));
    }

    #[test]
    fn squares_never_avoid_vertices() {
        assert!(in_bn(&BoundarySubcomplex::full(2).unwrap()).unwrap().is_none());
        assert!(matches!(
            in_bn(&BoundarySubcomplex::full(5).unwrap()),
            Err(SpatialError::UnsupportedDimension(5))
        ));
    }

    #[test]
    fn four_cube_boundary() {
        let a = BoundarySubcomplex::full(4).unwrap();
        let w = in_bn(&a).unwrap().unwrap();
        assert!(check_pl_path(&a, &w.path));
    }

    #[test]
    fn straight_segments_miss_vertices() {
        // interior points of monotone segments between rational points of the
        // cube are never vertices, checked on a grid of segments
        let vals = [q(0), frac(1, 3), frac(1, 2), q(1)];
        let pts: Vec<Vec<Q>> = vals
            .iter()
            .flat_map(|a| vals.iter().map(move |b| vec![a.clone(), b.clone()]))
            .collect();
        for p in &pts {
            for r in &pts {
                if p == r || p.iter().zip(r).any(|(x, y)| x > y) {
                    continue;
                }
                for k in 1..8 {
                    let lam = frac(k, 8);
                    let x: Vec<Q> = p.iter().zip(r).map(|(a, b)| a + (b - a) * &lam).collect();
                    assert!(cell_of(&x).dim() >= 1, "{x:?}");
                }
            }
        }
    }

    #[test]
    fn spatial_examples() {
        assert!(is_spatial(&standard_cube(3).unwrap()).unwrap().is_spatial());
        assert!(is_spatial(&boundary_cube(3).unwrap()).unwrap().is_spatial());
        assert!(is_spatial(&standard_cube(2).unwrap()).unwrap().is_spatial());

        let c = standard_cube(3).unwrap();
        let a: BTreeSet<CellId> = boundary_cube(3).unwrap().ids().cloned().collect();
        let f: BTreeMap<CellId, CellId> = a.iter().map(|x| (x.clone(), x.clone())).collect();
        let k = pushout(&c, &a, &f, &c).unwrap().set;
        let report = is_spatial(&k).unwrap();
        assert!(!report.is_spatial());
        assert_eq!(report.witnesses.len(), 1);
        let w = &report.witnesses[0];
        assert_eq!(w.agreement, BoundarySubcomplex::full(3).unwrap());
        assert_eq!((w.x.as_str(), w.y.as_str(), w.n), ("1:***", "2:***", 3));

        assert!(matches!(
            is_spatial(&standard_cube(5).unwrap()),
            Err(SpatialError::UnsupportedDimension(5))
        ));
    }
}
