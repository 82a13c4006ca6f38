//! The taxicab metric inside cubes and chain upper bounds for the induced
//! pseudometric on the realization.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::dpath::{arc_length, Leg, PathError, Point, TameDPath};
use crate::exec::Exec;
use crate::pcs::{CellId, PcsError, PrecubicalSet, Word};
use crate::rational::{format_q, in_open_unit_interval, Q};

pub const DEFAULT_GRID: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid point {0}: {1}")]
    InvalidPoint(String, String),
    #[error("no chain of at most {0} hops joins the points")]
    Unreachable(usize),
    #[error("{0} must be positive")]
    NonPositive(&'static str),
    #[error("times {0} and {1} do not lie in one leg in increasing order")]
    NotInOneLeg(String, String),
    #[error(transparent)]
    Pcs(#[from] PcsError),
    #[error(transparent)]
    Path(#[from] PathError),
}

pub fn d1_cube(x: &[Q], y: &[Q]) -> Result<Q, MetricError> {
    if x.len() != y.len() {
        return Err(MetricError::DimensionMismatch(x.len(), y.len()));
    }
    Ok(x.iter().zip(y).fold(Q::zero(), |s, (a, b)| s + (a - b).abs()))
}

/// An upper bound for the distance between two points together with the
/// chain of same-cube hops realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEstimate {
    pub value: Q,
    pub chain: Vec<(Point, Point)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSearch {
    pub max_hops: Option<usize>,
    /// Waypoint coordinates are the rationals in `(0,1)` with denominator at
    /// most `grid`.
    pub grid: usize,
    pub exec: Exec,
}

impl Default for ChainSearch {
    fn default() -> Self {
        ChainSearch {
            max_hops: None,
            grid: DEFAULT_GRID,
            exec: Exec::default(),
        }
    }
}

fn grid_values(g: usize) -> Vec<Q> {
    let mut vals = BTreeSet::new();
    for d in 2..=g as i64 {
        for n in 1..d {
            vals.insert(crate::rational::frac(n, d));
        }
    }
    vals.into_iter().collect()
}

fn check_point(k: &PrecubicalSet, p: &Point) -> Result<(), MetricError> {
    let dim = k.dim(&p.carrier)?;
    if p.coords.len() != dim {
        return Err(MetricError::InvalidPoint(
            p.to_string(),
            format!("carrier has dimension {dim}, got {} coordinates", p.coords.len()),
        ));
    }
    if let Some(c) = p.coords.iter().find(|c| !in_open_unit_interval(c)) {
        return Err(MetricError::InvalidPoint(
            p.to_string(),
            format!("coordinate {} is not in (0,1)", format_q(c)),
        ));
    }
    Ok(())
}

fn fill(w: &Word, coords: &[Q]) -> Vec<Q> {
    let mut it = coords.iter();
    w.as_bytes()
        .iter()
        .map(|&s| match s {
            b'*' => it.next().expect("coordinate").clone(),
            b'1' => Q::from_integer(1.into()),
            _ => Q::zero(),
        })
        .collect()
}

pub fn d1_upper(k: &PrecubicalSet, p: &Point, q: &Point) -> Result<ChainEstimate, MetricError> {
    d1_upper_with(k, p, q, ChainSearch::default())
}

/// Shortest chain of at most `max_hops` same-cube hops (default: the number
/// of cells) whose intermediate points are vertices or grid points of cells
/// shared by two cube occurrences. Hops are measured by the taxicab metric
/// in the cube carrying them.
pub fn d1_upper_with(k: &PrecubicalSet, p: &Point, q: &Point, search: ChainSearch) -> Result<ChainEstimate, MetricError> {
    check_point(k, p)?;
    check_point(k, q)?;
    let max_hops = search.max_hops.unwrap_or(k.len());
    if max_hops == 0 {
        return Err(MetricError::NonPositive("max_hops"));
    }
    if search.grid == 0 {
        return Err(MetricError::NonPositive("grid"));
    }
    if p == q {
        return Ok(ChainEstimate {
            value: Q::zero(),
            chain: Vec::new(),
        });
    }

    let occurrences = k.occurrences()?;
    let non_maximal: BTreeSet<&CellId> = k.cells().flat_map(|(_, c)| c.faces.iter().flatten()).collect();
    let maximal_occ = |e: &CellId| -> Vec<(CellId, Word)> {
        occurrences
            .get(e)
            .map(|v| v.iter().filter(|(c, _)| !non_maximal.contains(c)).cloned().collect())
            .unwrap_or_default()
    };

    let mut nodes: Vec<Point> = vec![p.clone(), q.clone()];
    let grid = grid_values(search.grid);
    for (id, cell) in k.cells() {
        if maximal_occ(id).len() < 2 {
            continue;
        }
        let mut tuples: Vec<Vec<Q>> = vec![Vec::new()];
        for _ in 0..cell.dim {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    grid.iter().map(move |g| {
                        let mut t = t.clone();
                        t.push(g.clone());
                        t
                    })
                })
                .collect();
        }
        for coords in tuples {
            let pt = Point {
                carrier: id.clone(),
                coords,
            };
            if pt != *p && pt != *q {
                nodes.push(pt);
            }
        }
    }

    // node positions inside each maximal cube
    let mut members: BTreeMap<CellId, Vec<(usize, Vec<Q>)>> = BTreeMap::new();
    for (i, pt) in nodes.iter().enumerate() {
        for (c, w) in maximal_occ(&pt.carrier) {
            members.entry(c).or_default().push((i, fill(&w, &pt.coords)));
        }
    }
    let cubes: Vec<_> = members.into_iter().collect();

    // hop-bounded Bellman–Ford; ties keep the earlier predecessor
    let mut dist: Vec<Option<Q>> = vec![None; nodes.len()];
    let mut pred: Vec<Option<usize>> = vec![None; nodes.len()];
    dist[0] = Some(Q::zero());
    for _ in 0..max_hops {
        let snapshot = dist.clone();
        let proposals = search.exec.map(&cubes, |(_, ms)| {
            let mut best: BTreeMap<usize, (Q, usize)> = BTreeMap::new();
            for (u, xu) in ms {
                let Some(du) = &snapshot[*u] else { continue };
                for (v, xv) in ms {
                    if u == v {
                        continue;
                    }
                    let cand = du + d1_cube(xu, xv).expect("same cube");
                    match best.get(v) {
                        Some((b, _)) if *b <= cand => {}
                        _ => {
                            best.insert(*v, (cand, *u));
                        }
                    }
                }
            }
            best
        });
        let mut changed = false;
        for prop in proposals {
            for (v, (d, u)) in prop {
                if dist[v].as_ref().is_none_or(|cur| d < *cur) {
                    dist[v] = Some(d);
                    pred[v] = Some(u);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let value = dist[1].clone().ok_or(MetricError::Unreachable(max_hops))?;
    let mut chain = Vec::new();
    let mut at = 1;
    while let Some(u) = pred[at] {
        chain.push((nodes[u].clone(), nodes[at].clone()));
        at = u;
        if at == 0 {
            break;
        }
    }
    chain.reverse();
    Ok(ChainEstimate { value, chain })
}

/// Within one leg, the arc length between `s ≤ t` equals the taxicab
/// distance between the two positions.
pub fn arclength_consistency(path: &TameDPath, s: &Q, t: &Q) -> Result<bool, MetricError> {
    let mut start = Q::zero();
    let mut leg: Option<(&Leg, Q)> = None;
    for l in path.legs() {
        let end = &start + l.duration();
        if *s >= start && s <= t && *t <= end {
            leg = Some((l, start.clone()));
            break;
        }
        start = end;
    }
    let (leg, start) = leg.ok_or_else(|| MetricError::NotInOneLeg(format_q(s), format_q(t)))?;
    let arc = arc_length(path, t)? - arc_length(path, s)?;
    let d = d1_cube(&leg.position(&(s - &start)), &leg.position(&(t - &start)))?;
    Ok(arc == d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcs::{pushout, standard_cube};
    use crate::rational::{frac, q};

    #[test]
    fn d1_examples() {
        assert_eq!(d1_cube(&[q(0), q(0)], &[q(1), q(1)]).unwrap(), q(2));
        let x = [frac(1, 3), frac(2, 5)];
        assert_eq!(d1_cube(&x, &x).unwrap(), q(0));
        assert!(d1_cube(&[q(0)], &[q(0), q(1)]).is_err());
    }

    fn two_squares() -> PrecubicalSet {
        let s = standard_cube(2).unwrap();
        let a: BTreeSet<CellId> = ["1*", "10", "11"].map(CellId::from).into();
        let f = BTreeMap::from([
            ("1*".into(), "0*".into()),
            ("10".into(), "00".into()),
            ("11".into(), "01".into()),
        ]);
        pushout(&s, &a, &f, &s).unwrap().set
    }

    #[test]
    fn single_cube_is_exact() {
        let k = standard_cube(2).unwrap();
        let p = Point {
            carrier: "**".into(),
            coords: vec![frac(1, 3), frac(1, 4)],
        };
        let r = Point {
            carrier: "**".into(),
            coords: vec![frac(3, 4), frac(1, 2)],
        };
        let est = d1_upper(&k, &p, &r).unwrap();
        assert_eq!(est.value, frac(5, 12) + frac(1, 4));
        assert_eq!(est.chain.len(), 1);
    }

    #[test]
    fn centers_of_glued_squares() {
        let k = two_squares();
        let c1 = Point {
            carrier: "1:**".into(),
            coords: vec![frac(1, 2), frac(1, 2)],
        };
        let c2 = Point {
            carrier: "2:**".into(),
            coords: vec![frac(1, 2), frac(1, 2)],
        };
        for g in [2, 3, 8] {
            let search = ChainSearch {
                grid: g,
                ..ChainSearch::default()
            };
            let est = d1_upper_with(&k, &c1, &c2, search).unwrap();
            assert_eq!(est.value, q(1), "grid {g}");
            assert_eq!(est.chain.len(), 2);
            assert_eq!(est.chain[0].1, est.chain[1].0);
        }
        let v = Point::vertex("2:00".into());
        assert_eq!(d1_upper(&k, &v, &v).unwrap().value, q(0));
    }

    #[test]
    fn rejects_bad_points() {
        let k = standard_cube(2).unwrap();
        let bad = Point {
            carrier: "**".into(),
            coords: vec![q(1), frac(1, 2)],
        };
        let v = Point::vertex("00".into());
        assert!(matches!(d1_upper(&k, &bad, &v), Err(MetricError::InvalidPoint(..))));
        let short = Point {
            carrier: "**".into(),
            coords: vec![frac(1, 2)],
        };
        assert!(d1_upper(&k, &short, &v).is_err());
        assert!(d1_upper(&k, &Point::vertex("zz".into()), &v).is_err());
    }
}
