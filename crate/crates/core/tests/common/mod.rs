//! Random complexes, paths and reparametrizations, plus oracles that do not
//! go through the library's own evaluation code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tamepath::pcs::{pushout, standard_cube, Word};
use tamepath::rational::{frac, q, Q};
use tamepath::{CellId, Corner, Leg, PrecubicalSet, Reparam, TameDPath, TrackPoint};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational in `[0, 1]` with denominator at most `den`.
pub fn unit_q(rng: &mut impl Rng, den: i64) -> Q {
    let d = rng.gen_range(1..=den);
    frac(rng.gen_range(0..=d), d)
}

/// Random positive rational in `(0, max]`.
pub fn pos_q(rng: &mut impl Rng, max: i64, den: i64) -> Q {
    let d = rng.gen_range(1..=den);
    frac(rng.gen_range(1..=max * d), d)
}

fn renumber(k: &PrecubicalSet) -> PrecubicalSet {
    let names: BTreeMap<CellId, CellId> = k
        .ids()
        .enumerate()
        .map(|(i, id)| (id.clone(), CellId::new(format!("c{i}"))))
        .collect();
    k.relabel(|id| names[id].clone())
}

/// A precubical set built by gluing standard cubes of dimension ≤ `max_dim`
/// along faces, with at most `max_cells` cells.
pub fn random_complex(rng: &mut impl Rng, max_cells: usize, max_dim: usize) -> PrecubicalSet {
    let first = rng.gen_range(1..=max_dim);
    let mut k = renumber(&standard_cube(first).unwrap());
    for _ in 0..12 {
        let d = rng.gen_range(1..=max_dim);
        let cube = standard_cube(d).unwrap();
        let words: Vec<Word> = Word::all(d).into_iter().filter(Word::is_proper).collect();
        let w = &words[rng.gen_range(0..words.len())];
        let targets: Vec<CellId> = k.cells_of_dim(w.dim()).into_iter().cloned().collect();
        if targets.is_empty() {
            continue;
        }
        let e = &targets[rng.gen_range(0..targets.len())];
        // the face w of the new cube, sent onto e
        let mut a = BTreeSet::new();
        let mut f = BTreeMap::new();
        let free = w.free_positions();
        for u in w.closure() {
            let proj: String = free.iter().map(|&p| u.as_bytes()[p] as char).collect();
            let proj: Word = if proj.is_empty() { "()".parse().unwrap() } else { proj.parse().unwrap() };
            a.insert(u.cell_id());
            f.insert(u.cell_id(), k.face_at(e, &proj).unwrap());
        }
        let glued = pushout(&cube, &a, &f, &k).unwrap().set;
        if glued.len() > max_cells {
            break;
        }
        k = renumber(&glued);
    }
    k
}

/// Corners `(cube, a)` at each vertex with room to move up.
pub fn exits(k: &PrecubicalSet) -> BTreeMap<CellId, Vec<(CellId, Corner)>> {
    let mut out: BTreeMap<CellId, Vec<(CellId, Corner)>> = BTreeMap::new();
    for (id, cell) in k.cells() {
        if cell.dim == 0 {
            continue;
        }
        for a in Corner::all(cell.dim) {
            if a != Corner::ones(cell.dim) {
                out.entry(k.vertex_of(id, &a).unwrap()).or_default().push((id.clone(), a));
            }
        }
    }
    out
}

/// A random monotone track from `a` to `b`, possibly with stops.
pub fn random_track(rng: &mut impl Rng, a: &Corner, b: &Corner) -> Vec<TrackPoint> {
    let n = a.len();
    let m = rng.gen_range(0..=3);
    let mut cols: Vec<Vec<Q>> = Vec::with_capacity(n);
    for i in 0..n {
        let (lo, hi) = (a.bits()[i], b.bits()[i]);
        let mut col: Vec<Q> = if lo == hi {
            vec![if lo { q(1) } else { q(0) }; m]
        } else {
            (0..m).map(|_| unit_q(rng, 6)).collect()
        };
        col.sort();
        cols.push(col);
    }
    let start: Vec<Q> = a.bits().iter().map(|&x| if x { q(1) } else { q(0) }).collect();
    let end: Vec<Q> = b.bits().iter().map(|&x| if x { q(1) } else { q(0) }).collect();
    let mut xs = vec![start];
    for j in 0..m {
        xs.push(cols.iter().map(|col| col[j].clone()).collect());
        if rng.gen_bool(0.2) {
            xs.push(xs.last().unwrap().clone());
        }
    }
    xs.push(end);
    if rng.gen_bool(0.15) {
        xs.insert(0, xs[0].clone());
    }
    let mut t = Q::zero();
    let mut track = Vec::with_capacity(xs.len());
    for (j, x) in xs.into_iter().enumerate() {
        if j > 0 {
            t += pos_q(rng, 2, 4);
        }
        track.push(TrackPoint::new(t.clone(), x));
    }
    track
}

/// A random tame path in `k` with up to `max_legs` legs, or `None` if `k`
/// has no cube of positive dimension.
pub fn random_path(rng: &mut impl Rng, k: &PrecubicalSet, max_legs: usize) -> Option<TameDPath> {
    let ex = exits(k);
    if ex.is_empty() {
        return None;
    }
    let starts: Vec<&CellId> = ex.keys().collect();
    let mut at = starts[rng.gen_range(0..starts.len())].clone();
    let nlegs = rng.gen_range(1..=max_legs);
    let mut legs = Vec::new();
    for _ in 0..nlegs {
        let Some(opts) = ex.get(&at) else { break };
        let (cube, a) = opts[rng.gen_range(0..opts.len())].clone();
        // b > a: raise a random nonempty subset of the zero coordinates
        let zeros: Vec<usize> = (0..a.len()).filter(|&i| !a.bits()[i]).collect();
        let mut bits = a.bits().to_vec();
        let mut raised = false;
        for &i in &zeros {
            if rng.gen_bool(0.5) {
                bits[i] = true;
                raised = true;
            }
        }
        if !raised {
            bits[zeros[rng.gen_range(0..zeros.len())]] = true;
        }
        let b = Corner::new(bits);
        let track = random_track(rng, &a, &b);
        at = k.vertex_of(&cube, &b).unwrap();
        legs.push(Leg { cube, from: a, to: b, track });
    }
    Some(TameDPath::new_in(k, legs).unwrap())
}

/// A random morphism `[0, src] → [0, dst]` with a random `src` when none is
/// given; flats appear with positive probability.
pub fn random_reparam(rng: &mut impl Rng, src: Option<Q>, dst: &Q) -> Reparam {
    let src = src.unwrap_or_else(|| pos_q(rng, 4, 5));
    let m = rng.gen_range(0..=4);
    let mut ts: BTreeSet<Q> = BTreeSet::new();
    for _ in 0..m {
        let t = &src * unit_q(rng, 7);
        if t.is_positive() && t < src {
            ts.insert(t);
        }
    }
    let mut vs: Vec<Q> = (0..ts.len()).map(|_| dst * unit_q(rng, 7)).collect();
    vs.sort();
    if !vs.is_empty() && rng.gen_bool(0.3) {
        let i = rng.gen_range(0..vs.len());
        vs[i] = if i == 0 { Q::zero() } else { vs[i - 1].clone() };
    }
    let mut pts = vec![(Q::zero(), Q::zero())];
    pts.extend(ts.into_iter().zip(vs));
    pts.push((src, dst.clone()));
    Reparam::new(pts).unwrap()
}

/// Random complex plus random path; retries until the complex has a path.
pub fn random_instance(rng: &mut impl Rng) -> (PrecubicalSet, TameDPath) {
    loop {
        let k = random_complex(rng, 50, 3);
        if let Some(p) = random_path(rng, &k, 4) {
            return (k, p);
        }
    }
}

// ---- oracles ----

/// Global position as `(leg index, cube coordinates)` by direct linear
/// interpolation. Junction times resolve to the end of the earlier leg.
pub fn oracle_position(path: &TameDPath, t: &Q) -> (usize, Vec<Q>) {
    let mut start = Q::zero();
    for (i, leg) in path.legs().iter().enumerate() {
        let end = &start + &leg.track.last().unwrap().t;
        if *t <= end || i + 1 == path.legs().len() {
            let s = t - &start;
            for w in leg.track.windows(2) {
                if s >= w[0].t && s <= w[1].t {
                    let lam = (&s - &w[0].t) / (&w[1].t - &w[0].t);
                    let x = w[0].x.iter().zip(&w[1].x).map(|(a, b)| a + (b - a) * &lam).collect();
                    return (i, x);
                }
            }
        }
        start = end;
    }
    unreachable!("time outside the path")
}

/// Σ over segments of Σ_i |Δx_i|, for the whole path.
pub fn oracle_total_length(path: &TameDPath) -> Q {
    let mut total = Q::zero();
    for leg in path.legs() {
        for w in leg.track.windows(2) {
            for (a, b) in w[0].x.iter().zip(&w[1].x) {
                total += (b - a).abs();
            }
        }
    }
    total
}

/// Arc length up to `t` by summing segment lengths, independent of the
/// library's arc-length code.
pub fn oracle_arc_length(path: &TameDPath, t: &Q) -> Q {
    let mut acc = Q::zero();
    let mut start = Q::zero();
    for leg in path.legs() {
        for w in leg.track.windows(2) {
            let (t0, t1) = (&start + &w[0].t, &start + &w[1].t);
            let seg: Q = w[0].x.iter().zip(&w[1].x).map(|(a, b)| (b - a).abs()).fold(Q::zero(), |s, d| s + d);
            if *t >= t1 {
                acc += seg;
            } else if *t > t0 {
                acc += seg * (t - &t0) / (&t1 - &t0);
            }
        }
        start += &leg.track.last().unwrap().t;
    }
    acc
}

pub fn oracle_eval_reparam(r: &Reparam, t: &Q) -> Q {
    for w in r.breakpoints().windows(2) {
        if *t >= w[0].0 && *t <= w[1].0 {
            return &w[0].1 + (&w[1].1 - &w[0].1) * (t - &w[0].0) / (&w[1].0 - &w[0].0);
        }
    }
    unreachable!("time outside the domain")
}

/// Sample times: every `1/den` fraction of `len`.
pub fn samples(len: &Q, den: i64) -> Vec<Q> {
    (0..=den).map(|i| len * frac(i, den)).collect()
}

/// Positions of two paths agree as points of the realization at the sampled
/// times (compared through the library's canonical points).
pub fn same_positions(k: &PrecubicalSet, a: &TameDPath, b: &TameDPath, times: &[Q]) -> bool {
    times.iter().all(|t| {
        let (ia, xa) = oracle_position(a, t);
        let (ib, xb) = oracle_position(b, t);
        let pa = tamepath::Point::from_cube(k, &a.legs()[ia].cube, &xa).unwrap();
        let pb = tamepath::Point::from_cube(k, &b.legs()[ib].cube, &xb).unwrap();
        pa == pb
    })
}

/// Exhaustive search for a monotone vertex-avoiding lattice path from `0^n`
/// to `1^n` inside `|A|`, on the grid with spacing `1/den`. Each step adds
/// `1/den` to a nonempty set of coordinates; every intermediate grid point
/// must lie in an open cell of `A` of positive dimension, and so must the
/// open segment between consecutive points.
pub fn grid_oracle(a: &tamepath::BoundarySubcomplex, den: i64) -> bool {
    use std::collections::VecDeque;
    let n = a.n();
    let cell = |x: &[i64]| -> Word {
        let s: String = x
            .iter()
            .map(|&c| if c == 0 { '0' } else if c == den { '1' } else { '*' })
            .collect();
        s.parse().unwrap()
    };
    // midpoints are compared at doubled resolution
    let open_cell = |x: &[i64], y: &[i64]| -> Word {
        let s: String = x
            .iter()
            .zip(y)
            .map(|(&p, &q)| {
                let m = p + q;
                if m == 0 { '0' } else if m == 2 * den { '1' } else { '*' }
            })
            .collect();
        s.parse().unwrap()
    };
    let start = vec![0i64; n];
    let goal = vec![den; n];
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for mask in 1u32..(1 << n) {
            let y: Vec<i64> = (0..n).map(|i| x[i] + i64::from((mask >> i) & 1)).collect();
            if y.iter().any(|&c| c > den) || !a.contains(&open_cell(&x, &y)) {
                continue;
            }
            if y == goal {
                return true;
            }
            let w = cell(&y);
            if w.dim() == 0 || !a.contains(&w) || !seen.insert(y.clone()) {
                continue;
            }
            queue.push_back(y);
        }
    }
    false
}

/// Every subcomplex of `∂□[n]` generated by at most two of `gens`, paired
/// with its generators.
pub fn two_generated(n: usize, gens: &[Word]) -> Vec<(Vec<Word>, tamepath::BoundarySubcomplex)> {
    let mut out = vec![(vec![], tamepath::BoundarySubcomplex::empty(n).unwrap())];
    for (i, g) in gens.iter().enumerate() {
        out.push((vec![g.clone()], tamepath::BoundarySubcomplex::new(n, [g.clone()]).unwrap()));
        for h in &gens[i + 1..] {
            let pair = vec![g.clone(), h.clone()];
            out.push((pair.clone(), tamepath::BoundarySubcomplex::new(n, pair).unwrap()));
        }
    }
    out
}

pub fn proper_words(n: usize, dim: Option<usize>) -> Vec<Word> {
    Word::all(n)
        .into_iter()
        .filter(|w| w.is_proper() && dim.is_none_or(|d| w.dim() == d))
        .collect()
}
