//! Tame directed paths as exact piecewise-linear data.
//!
//! A [`TameDPath`] is a Moore concatenation of [`Leg`]s. Each leg lives in one
//! cube of the precubical set and runs from a corner `a` to a corner `b > a`
//! along a coordinatewise nondecreasing PL track. Time is Moore time: the
//! path is defined on `[0, ℓ]` where `ℓ` is the sum of the leg durations.
//!
//! Canonical form (used for equality):
//! - collinear consecutive track points are merged within each leg;
//! - a stop sitting at a junction belongs to the earlier leg, so no leg other
//!   than the first starts with a flat piece.
//!
//! The arc-length profile of a path is a [`Reparam`]; [`naturalize`] removes
//! stops and runs every piece at unit L1 speed; [`phi`] and [`psi`] are the two
//! sides of the factorization `path ↔ (profile, natural path)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exec::Exec;
use crate::pcs::{CellId, Corner, PcsError, PrecubicalSet, Word};
use crate::rational::{format_q, in_unit_interval, Q};
use crate::reparam::{Reparam, ReparamError};

/// Skeleton lengths above this are rejected by [`enumerate_skeletons`].
pub const DEFAULT_MAX_SKELETON_LENGTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid path: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<PathViolation>),
    #[error("time {0} outside [0, {1}]")]
    OutOfRange(String, String),
    #[error("duration mismatch: reparametrization lands in [0, {0}] but the path has duration {1}")]
    LengthMismatch(String, String),
    #[error("paths do not compose: {0} ends at {1}, next path starts at {2}")]
    JunctionMismatch(&'static str, CellId, CellId),
    #[error("skeleton length {n} exceeds the bound {max}")]
    BoundExceeded { n: usize, max: usize },
    #[error("expected {expected} durations, got {found}")]
    DurationCount { expected: usize, found: usize },
    #[error("path is not natural")]
    NotNatural,
    #[error(transparent)]
    Pcs(#[from] PcsError),
    #[error(transparent)]
    Reparam(#[from] ReparamError),
}

/// One breakpoint of a leg track: local time and cube coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TrackPoint {
    pub t: Q,
    pub x: Vec<Q>,
}

impl TrackPoint {
    pub fn new(t: Q, x: Vec<Q>) -> Self {
        TrackPoint { t, x }
    }
}

/// An in-cube vertex-to-vertex piece of a tame path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg {
    pub cube: CellId,
    pub from: Corner,
    pub to: Corner,
    pub track: Vec<TrackPoint>,
}

fn corner_coords(c: &Corner) -> Vec<Q> {
    c.bits().iter().map(|&b| if b { Q::one() } else { Q::zero() }).collect()
}

fn l1(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(Q::zero(), |s, d| s + d)
}

fn track_collinear(a: &TrackPoint, b: &TrackPoint, c: &TrackPoint) -> bool {
    let (d1, d2) = (&b.t - &a.t, &c.t - &b.t);
    a.x.iter()
        .zip(&b.x)
        .zip(&c.x)
        .all(|((xa, xb), xc)| (xb - xa) * &d2 == (xc - xb) * &d1)
}

fn merge_track(track: &mut Vec<TrackPoint>) {
    let mut out: Vec<TrackPoint> = Vec::with_capacity(track.len());
    for p in track.drain(..) {
        while out.len() >= 2 && track_collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    *track = out;
}

impl Leg {
    /// Straight segment from `from` to `to` over `duration`.
    pub fn straight(cube: CellId, from: Corner, to: Corner, duration: Q) -> Leg {
        let track = vec![
            TrackPoint::new(Q::zero(), corner_coords(&from)),
            TrackPoint::new(duration, corner_coords(&to)),
        ];
        Leg { cube, from, to, track }
    }

    pub fn dim(&self) -> usize {
        self.from.len()
    }

    pub fn duration(&self) -> &Q {
        &self.track.last().expect("nonempty track").t
    }

    /// Total L1 arc length, `|b - a|_1`.
    pub fn length(&self) -> usize {
        self.from.l1_distance(&self.to)
    }

    /// Position in cube coordinates at local time `s ∈ [0, duration]`.
    pub fn position(&self, s: &Q) -> Vec<Q> {
        let i = self.track.partition_point(|p| p.t <= *s);
        if i == self.track.len() {
            return self.track[i - 1].x.clone();
        }
        let (p0, p1) = (&self.track[i - 1], &self.track[i]);
        let lambda = (s - &p0.t) / (&p1.t - &p0.t);
        p0.x.iter().zip(&p1.x).map(|(a, b)| a + (b - a) * &lambda).collect()
    }

    /// Arc length covered by local time `s`.
    pub fn arc_length(&self, s: &Q) -> Q {
        l1(&self.track[0].x, &self.position(s))
    }

    fn local_violations(&self, index: usize) -> Vec<PathViolation> {
        let mut out = Vec::new();
        let mut bad = |kind: LegViolation| out.push(PathViolation::Leg { index, kind });
        let n = self.from.len();
        if self.to.len() != n {
            bad(LegViolation::CornerLength);
            return out;
        }
        if n == 0 || !self.from.le(&self.to) || self.from == self.to {
            bad(LegViolation::CornersNotIncreasing);
        }
        if self.track.len() < 2 {
            bad(LegViolation::ShortTrack);
            return out;
        }
        if !self.track[0].t.is_zero() || self.track.windows(2).any(|w| w[0].t >= w[1].t) {
            bad(LegViolation::TimesNotIncreasing);
        }
        if self.track.iter().any(|p| p.x.len() != n) {
            bad(LegViolation::CoordinateCount);
            return out;
        }
        if self.track.iter().any(|p| !p.x.iter().all(in_unit_interval)) {
            bad(LegViolation::OutsideCube);
        }
        if self
            .track
            .windows(2)
            .any(|w| w[0].x.iter().zip(&w[1].x).any(|(a, b)| a > b))
        {
            bad(LegViolation::NotMonotone);
        }
        if self.track[0].x != corner_coords(&self.from) || self.track.last().unwrap().x != corner_coords(&self.to) {
            bad(LegViolation::Endpoints);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegViolation {
    UnknownCube,
    CubeDimension,
    CornerLength,
    CornersNotIncreasing,
    ShortTrack,
    TimesNotIncreasing,
    CoordinateCount,
    OutsideCube,
    NotMonotone,
    Endpoints,
}

impl fmt::Display for LegViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LegViolation::UnknownCube => "cube does not exist",
            LegViolation::CubeDimension => "corner length differs from the cube dimension",
            LegViolation::CornerLength => "from and to corners have different lengths",
            LegViolation::CornersNotIncreasing => "corners must satisfy from < to",
            LegViolation::ShortTrack => "track needs at least two points",
            LegViolation::TimesNotIncreasing => "track times must start at 0 and increase strictly",
            LegViolation::CoordinateCount => "track point has the wrong number of coordinates",
            LegViolation::OutsideCube => "track point leaves [0,1]^n",
            LegViolation::NotMonotone => "track decreases along some axis",
            LegViolation::Endpoints => "track does not run from the from-corner to the to-corner",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    Empty,
    Leg { index: usize, kind: LegViolation },
    Junction { index: usize, end: CellId, start: CellId },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::Empty => f.write_str("path has no legs"),
            PathViolation::Leg { index, kind } => write!(f, "leg {index}: {kind}"),
            PathViolation::Junction { index, end, start } => {
                write!(f, "junction {index}: leg ends at {end} but the next leg starts at {start}")
            }
        }
    }
}

/// A nonconstant tame d-path, stored leg by leg.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TameDPath {
    legs: Vec<Leg>,
}

impl TameDPath {
    /// Check the leg-local invariants and canonicalize. Junctions need the
    /// precubical set and are checked by [`validate_path`].
    pub fn new(legs: Vec<Leg>) -> Result<Self, PathError> {
        let raw = TameDPath { legs };
        let violations = raw.local_violations();
        if !violations.is_empty() {
            return Err(PathError::Invalid(violations));
        }
        Ok(raw.canonical())
    }

    /// Wrap legs without any checks or canonicalization.
    pub fn from_raw(legs: Vec<Leg>) -> Self {
        TameDPath { legs }
    }

    /// Like [`TameDPath::new`] but also checks the legs against `k`.
    pub fn new_in(k: &PrecubicalSet, legs: Vec<Leg>) -> Result<Self, PathError> {
        let raw = TameDPath { legs };
        let violations = validate_path(k, &raw);
        if !violations.is_empty() {
            return Err(PathError::Invalid(violations));
        }
        Ok(raw.canonical())
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn into_legs(self) -> Vec<Leg> {
        self.legs
    }

    pub fn duration(&self) -> Q {
        self.legs.iter().fold(Q::zero(), |s, l| s + l.duration())
    }

    /// Total L1 arc length: the sum of `|b - a|_1` over the legs.
    pub fn total_length(&self) -> usize {
        self.legs.iter().map(Leg::length).sum()
    }

    pub fn source(&self, k: &PrecubicalSet) -> Result<CellId, PcsError> {
        let l = &self.legs[0];
        k.vertex_of(&l.cube, &l.from)
    }

    pub fn target(&self, k: &PrecubicalSet) -> Result<CellId, PcsError> {
        let l = self.legs.last().expect("nonempty");
        k.vertex_of(&l.cube, &l.to)
    }

    /// The legs with their tracks forgotten.
    pub fn skeleton(&self) -> Skeleton {
        self.legs
            .iter()
            .map(|l| SkeletonStep {
                cube: l.cube.clone(),
                from: l.from.clone(),
                to: l.to.clone(),
            })
            .collect()
    }

    /// Does any leg stop?
    pub fn is_regular(&self) -> bool {
        self.legs
            .iter()
            .all(|l| l.track.windows(2).all(|w| w[0].x != w[1].x))
    }

    fn local_violations(&self) -> Vec<PathViolation> {
        if self.legs.is_empty() {
            return vec![PathViolation::Empty];
        }
        self.legs
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.local_violations(i))
            .collect()
    }

    /// Canonical form; assumes leg-local validity.
    pub fn canonical(mut self) -> Self {
        for leg in &mut self.legs {
            merge_track(&mut leg.track);
        }
        for k in 1..self.legs.len() {
            let track = &self.legs[k].track;
            if track[0].x != track[1].x {
                continue;
            }
            let stop = track[1].t.clone();
            let leg = &mut self.legs[k];
            leg.track.remove(0);
            for p in &mut leg.track {
                p.t -= &stop;
            }
            let prev = &mut self.legs[k - 1];
            let end = TrackPoint::new(prev.duration() + stop, corner_coords(&prev.to));
            prev.track.push(end);
            merge_track(&mut prev.track);
        }
        self
    }

    /// Leg index and local time for global time `t`; junction times resolve
    /// to the end of the earlier leg.
    fn locate(&self, t: &Q) -> Result<(usize, Q), PathError> {
        if t.is_negative() {
            return Err(PathError::OutOfRange(format_q(t), format_q(&self.duration())));
        }
        let mut start = Q::zero();
        for (i, leg) in self.legs.iter().enumerate() {
            let end = &start + leg.duration();
            if *t <= end {
                return Ok((i, t - start));
            }
            start = end;
        }
        Err(PathError::OutOfRange(format_q(t), format_q(&start)))
    }

    /// Global start time of every leg, followed by the total duration.
    fn leg_starts(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.legs.len() + 1);
        let mut acc = Q::zero();
        out.push(acc.clone());
        for leg in &self.legs {
            acc += leg.duration();
            out.push(acc.clone());
        }
        out
    }
}

/// Empty iff every leg and junction invariant holds in `k`.
pub fn validate_path(k: &PrecubicalSet, path: &TameDPath) -> Vec<PathViolation> {
    let mut out = path.local_violations();
    for (index, leg) in path.legs.iter().enumerate() {
        match k.dim(&leg.cube) {
            Err(_) => out.push(PathViolation::Leg {
                index,
                kind: LegViolation::UnknownCube,
            }),
            Ok(d) if d != leg.from.len() || d != leg.to.len() => out.push(PathViolation::Leg {
                index,
                kind: LegViolation::CubeDimension,
            }),
            Ok(_) => {}
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (index, w) in path.legs.windows(2).enumerate() {
        let end = k.vertex_of(&w[0].cube, &w[0].to);
        let start = k.vertex_of(&w[1].cube, &w[1].from);
        match (end, start) {
            (Ok(e), Ok(s)) if e == s => {}
            (Ok(end), Ok(start)) => out.push(PathViolation::Junction { index, end, start }),
            _ => out.push(PathViolation::Leg {
                index,
                kind: LegViolation::UnknownCube,
            }),
        }
    }
    out
}

/// A point of the geometric realization: its carrier cell and the interior
/// coordinates inside it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub carrier: CellId,
    pub coords: Vec<Q>,
}

impl Point {
    pub fn vertex(id: CellId) -> Self {
        Point {
            carrier: id,
            coords: Vec::new(),
        }
    }

    /// Canonical point for coordinates `x ∈ [0,1]^n` of the cube `cube`.
    pub fn from_cube(k: &PrecubicalSet, cube: &CellId, x: &[Q]) -> Result<Point, PcsError> {
        let word: String = x
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
        let word: Word = word.parse()?;
        let carrier = k.face_at(cube, &word)?;
        let coords = x.iter().filter(|c| !c.is_zero() && !c.is_one()).cloned().collect();
        Ok(Point { carrier, coords })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)?;
        if !self.coords.is_empty() {
            let cs: Vec<String> = self.coords.iter().map(format_q).collect();
            write!(f, "@{}", cs.join(","))?;
        }
        Ok(())
    }
}

/// Position at global time `t`, canonicalized to its minimal carrier.
pub fn eval(k: &PrecubicalSet, path: &TameDPath, t: &Q) -> Result<Point, PathError> {
    let (i, s) = path.locate(t)?;
    let leg = &path.legs[i];
    Ok(Point::from_cube(k, &leg.cube, &leg.position(&s))?)
}

/// L1 arc length of `path` restricted to `[0, t]`.
pub fn arc_length(path: &TameDPath, t: &Q) -> Result<Q, PathError> {
    let (i, s) = path.locate(t)?;
    let before: usize = path.legs[..i].iter().map(Leg::length).sum();
    Ok(Q::from_integer(before.into()) + path.legs[i].arc_length(&s))
}

/// The arc-length profile `t ↦ arc_length(path, t)`, a morphism
/// `[0, ℓ] → [0, n]`.
pub fn profile(path: &TameDPath) -> Reparam {
    let mut points: Vec<(Q, Q)> = vec![(Q::zero(), Q::zero())];
    let mut t0 = Q::zero();
    let mut arc = Q::zero();
    for leg in &path.legs {
        for w in leg.track.windows(2) {
            arc += l1(&w[0].x, &w[1].x);
            points.push((&t0 + &w[1].t, arc.clone()));
        }
        t0 += leg.duration();
    }
    Reparam::new(points).expect("profile of a nonconstant tame path")
}

/// Moore composition: concatenate, durations add.
pub fn moore_compose(k: &PrecubicalSet, first: &TameDPath, second: &TameDPath) -> Result<TameDPath, PathError> {
    let end = first.target(k)?;
    let start = second.source(k)?;
    if end != start {
        return Err(PathError::JunctionMismatch("first path", end, start));
    }
    let mut legs = first.legs.clone();
    legs.extend(second.legs.iter().cloned());
    Ok(TameDPath { legs }.canonical())
}

/// Moore composition rescaled linearly to duration 1.
pub fn normalized_compose(k: &PrecubicalSet, first: &TameDPath, second: &TameDPath) -> Result<TameDPath, PathError> {
    let joined = moore_compose(k, first, second)?;
    let scale = Reparam::linear(&Q::one(), &joined.duration())?;
    reparametrize(&joined, &scale)
}

/// The composite `path ∘ φ` for `φ ∈ M(ℓ, duration(path))`.
///
/// Leg boundaries move to the largest preimage of the old boundary times, so
/// a flat piece of `φ` over a junction stays with the earlier leg.
pub fn reparametrize(path: &TameDPath, phi: &Reparam) -> Result<TameDPath, PathError> {
    let starts = path.leg_starts();
    let total = starts.last().unwrap();
    if phi.dst_len() != total {
        return Err(PathError::LengthMismatch(format_q(phi.dst_len()), format_q(total)));
    }
    let mut global: BTreeSet<Q> = BTreeSet::new();
    for (leg, s0) in path.legs.iter().zip(&starts) {
        global.extend(leg.track.iter().map(|p| s0 + &p.t));
    }
    let times = phi.refine_times(global.iter());

    let nlegs = path.legs.len();
    let mut bounds = Vec::with_capacity(nlegs + 1);
    bounds.push(Q::zero());
    for s in &starts[1..nlegs] {
        bounds.push(phi.preimage(s).expect("boundary inside the range").1);
    }
    bounds.push(phi.src_len().clone());

    let mut legs = Vec::with_capacity(nlegs);
    for (i, leg) in path.legs.iter().enumerate() {
        let (lo, hi) = (&bounds[i], &bounds[i + 1]);
        let mut local: Vec<&Q> = vec![lo];
        local.extend(times.iter().filter(|t| *t > lo && *t < hi));
        local.push(hi);
        let track = local
            .into_iter()
            .map(|t| {
                let s = phi.eval(t).expect("in range") - &starts[i];
                TrackPoint::new(t - lo, leg.position(&s))
            })
            .collect();
        legs.push(Leg {
            cube: leg.cube.clone(),
            from: leg.from.clone(),
            to: leg.to.clone(),
            track,
        });
    }
    Ok(TameDPath { legs }.canonical())
}

/// A tame path whose arc-length profile is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NaturalPath(TameDPath);

impl NaturalPath {
    pub fn new(path: TameDPath) -> Result<Self, PathError> {
        if is_natural(&path) {
            Ok(NaturalPath(path))
        } else {
            Err(PathError::NotNatural)
        }
    }

    pub fn path(&self) -> &TameDPath {
        &self.0
    }

    pub fn into_path(self) -> TameDPath {
        self.0
    }

    pub fn length(&self) -> usize {
        self.0.total_length()
    }
}

pub fn is_natural(path: &TameDPath) -> bool {
    let n = Q::from_integer(path.total_length().into());
    path.duration() == n && Reparam::identity(&n).is_ok_and(|id| profile(path) == id)
}

/// Delete every stop and run each remaining piece at unit L1 speed.
pub fn naturalize(path: &TameDPath) -> NaturalPath {
    let legs = path
        .legs
        .iter()
        .map(|leg| {
            let mut track = vec![TrackPoint::new(Q::zero(), leg.track[0].x.clone())];
            for w in leg.track.windows(2) {
                let d = l1(&w[0].x, &w[1].x);
                if d.is_positive() {
                    let t = &track.last().unwrap().t + d;
                    track.push(TrackPoint::new(t, w[1].x.clone()));
                }
            }
            Leg { track, ..leg.clone() }
        })
        .collect();
    NaturalPath(TameDPath { legs }.canonical())
}

/// `γ ↦ (profile(γ), naturalize(γ))`.
pub fn psi(path: &TameDPath) -> (Reparam, NaturalPath) {
    (profile(path), naturalize(path))
}

/// `(φ, ν) ↦ ν ∘ φ`.
pub fn phi(reparam: &Reparam, natural: &NaturalPath) -> Result<TameDPath, PathError> {
    reparametrize(&natural.0, reparam)
}

/// One step of a skeleton: a leg without its track.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkeletonStep {
    pub cube: CellId,
    pub from: Corner,
    pub to: Corner,
}

pub type Skeleton = Vec<SkeletonStep>;

/// Cube chains from `alpha` to `beta` of total dimension `n`: sequences of
/// cubes, each crossed from its bottom corner to its top corner, whose
/// dimensions add up to `n`. Sorted lexicographically by `(cube, from, to)`.
pub fn enumerate_skeletons(
    k: &PrecubicalSet,
    alpha: &CellId,
    beta: &CellId,
    n: usize,
) -> Result<Vec<Skeleton>, PathError> {
    enumerate_skeletons_with(k, alpha, beta, n, DEFAULT_MAX_SKELETON_LENGTH, Exec::default())
}

pub fn enumerate_skeletons_with(
    k: &PrecubicalSet,
    alpha: &CellId,
    beta: &CellId,
    n: usize,
    max_length: usize,
    exec: Exec,
) -> Result<Vec<Skeleton>, PathError> {
    if n > max_length {
        return Err(PathError::BoundExceeded { n, max: max_length });
    }
    for v in [alpha, beta] {
        let d = k.dim(v)?;
        if d != 0 {
            return Err(PcsError::DimensionMismatch {
                cell: v.clone(),
                expected: 0,
                found: d,
            }
            .into());
        }
    }
    // outgoing cubes by bottom vertex: (step, dim, top vertex)
    let mut out_edges: BTreeMap<CellId, Vec<(SkeletonStep, usize, CellId)>> = BTreeMap::new();
    for (id, cell) in k.cells() {
        if cell.dim == 0 {
            continue;
        }
        let (bottom, top) = (Corner::zeros(cell.dim), Corner::ones(cell.dim));
        let src = k.vertex_of(id, &bottom)?;
        let dst = k.vertex_of(id, &top)?;
        let step = SkeletonStep {
            cube: id.clone(),
            from: bottom,
            to: top,
        };
        out_edges.entry(src).or_default().push((step, cell.dim, dst));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let empty = Vec::new();
    let first: Vec<&(SkeletonStep, usize, CellId)> = out_edges
        .get(alpha)
        .unwrap_or(&empty)
        .iter()
        .filter(|e| e.1 <= n)
        .collect();
    let branches = exec.map(&first, |(step, d, v)| {
        let mut found = Vec::new();
        let mut prefix = vec![step.clone()];
        chains_from(&out_edges, v, beta, n - d, &mut prefix, &mut found);
        found
    });
    let mut all: Vec<Skeleton> = branches.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

fn chains_from(
    out_edges: &BTreeMap<CellId, Vec<(SkeletonStep, usize, CellId)>>,
    at: &CellId,
    beta: &CellId,
    remaining: usize,
    prefix: &mut Skeleton,
    found: &mut Vec<Skeleton>,
) {
    if remaining == 0 {
        if at == beta {
            found.push(prefix.clone());
        }
        return;
    }
    let Some(edges) = out_edges.get(at) else {
        return;
    };
    for (step, d, v) in edges {
        if *d <= remaining {
            prefix.push(step.clone());
            chains_from(out_edges, v, beta, remaining - d, prefix, found);
            prefix.pop();
        }
    }
}

/// The path running each skeleton step along a straight segment.
pub fn straight_path(k: &PrecubicalSet, skeleton: &[SkeletonStep], durations: &[Q]) -> Result<TameDPath, PathError> {
    if skeleton.len() != durations.len() {
        return Err(PathError::DurationCount {
            expected: skeleton.len(),
            found: durations.len(),
        });
    }
    let legs = skeleton
        .iter()
        .zip(durations)
        .map(|(s, d)| Leg::straight(s.cube.clone(), s.from.clone(), s.to.clone(), d.clone()))
        .collect();
    TameDPath::new_in(k, legs)
}
