//! Finite precubical sets: cells, face maps, standard cubes, gluings and
//! agreement subcomplexes.
//!
//! Face indices are 1-based, as in the usual notation `∂_i^α`. The face
//! identities checked by [`validate`] use the convention
//! `∂_i^α ∂_j^β = ∂_{j-1}^β ∂_i^α` for `i < j`, which the word model of the
//! standard cube satisfies literally: `∂_i^α` replaces the `i`-th `*` of a
//! word in `{0,1,*}^n` by `α`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest cube dimension the word-model constructors will build.
pub const MAX_CUBE_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PcsError {
    #[error("unknown cell {0}")]
    UnknownCell(CellId),
    #[error("cell {cell} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        cell: CellId,
        expected: usize,
        found: usize,
    },
    #[error("cell {cell} of dimension {dim} has no face index {index}")]
    FaceIndex { cell: CellId, dim: usize, index: usize },
    #[error("cube dimension {n} exceeds the limit {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("invalid cube word {0:?}")]
    InvalidWord(String),
    #[error("invalid corner {0:?}")]
    InvalidCorner(String),
    #[error("subcomplex is not closed under faces at {0}")]
    NotFaceClosed(CellId),
    #[error("not a morphism of precubical sets: {0}")]
    NotAMorphism(String),
    #[error("cells must be distinct")]
    SameCell,
    #[error("{0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CellId(String);

impl CellId {
    pub fn new(id: impl Into<String>) -> Self {
        CellId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn tagged(tag: &str, id: &CellId) -> Self {
        CellId(format!("{tag}:{}", id.0))
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for CellId {
    fn from(s: &str) -> Self {
        CellId::new(s)
    }
}

/// A vertex of the standard `n`-cube, as a bitstring.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner(Vec<bool>);

impl Corner {
    pub fn new(bits: Vec<bool>) -> Self {
        Corner(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Corner(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Corner(vec![true; n])
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinatewise `self ≤ other`.
    pub fn le(&self, other: &Corner) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| !a || *b)
    }

    /// Number of coordinates that differ.
    pub fn l1_distance(&self, other: &Corner) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// All corners of the `n`-cube in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Corner> {
        (0u32..(1u32 << n)).map(move |m| Corner((0..n).map(|i| m >> (n - 1 - i) & 1 == 1).collect()))
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Corner {
    type Err = PcsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(PcsError::InvalidCorner(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Corner)
    }
}

/// A face of the standard `n`-cube: a word in `{0,1,*}^n`.
///
/// Ordering is bytewise, so `*` sorts before `0` before `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn top(n: usize) -> Self {
        Word(vec![b'*'; n])
    }

    pub fn from_corner(c: &Corner) -> Self {
        Word(c.bits().iter().map(|&b| if b { b'1' } else { b'0' }).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Number of free coordinates.
    pub fn dim(&self) -> usize {
        self.0.iter().filter(|&&s| s == b'*').count()
    }

    /// At least one coordinate fixed.
    pub fn is_proper(&self) -> bool {
        self.dim() < self.len()
    }

    /// Positions (0-based) of the free coordinates.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.0[k] == b'*').collect()
    }

    /// `∂_i^α` on words: replace the `i`-th `*` (1-based) by `α`.
    pub fn face(&self, i: usize, alpha: bool) -> Option<Word> {
        let pos = *self.free_positions().get(i.checked_sub(1)?)?;
        let mut w = self.0.clone();
        w[pos] = if alpha { b'1' } else { b'0' };
        Some(Word(w))
    }

    /// Is `self` a (not necessarily proper) face of `other`?
    pub fn is_face_of(&self, other: &Word) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| *b == b'*' || a == b)
    }

    /// All faces of `self`, itself included.
    pub fn closure(&self) -> Vec<Word> {
        let mut out = vec![self.clone()];
        for pos in self.free_positions() {
            let mut next = Vec::with_capacity(out.len() * 3);
            for w in &out {
                for s in *b"01" {
                    let mut v = w.0.clone();
                    v[pos] = s;
                    next.push(Word(v));
                }
            }
            out.extend(next);
        }
        out.sort();
        out
    }

    /// Every word of length `n`, sorted.
    pub fn all(n: usize) -> Vec<Word> {
        Word::top(n).closure()
    }

    /// The corner reached by reading `*` as `bit`.
    pub fn fill(&self, bit: bool) -> Corner {
        Corner(self.0.iter().map(|&s| if s == b'*' { bit } else { s == b'1' }).collect())
    }

    /// Cell id used by the word model; the empty word becomes `()`.
    pub fn cell_id(&self) -> CellId {
        if self.is_empty() {
            CellId::new("()")
        } else {
            CellId::new(self.to_string())
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(std::str::from_utf8(&self.0).expect("ascii word"))
    }
}

impl FromStr for Word {
    type Err = PcsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "()" {
            return Ok(Word(Vec::new()));
        }
        if s.bytes().all(|b| matches!(b, b'0' | b'1' | b'*')) {
            Ok(Word(s.as_bytes().to_vec()))
        } else {
            Err(PcsError::InvalidWord(s.to_string()))
        }
    }
}

/// A cell: its dimension and its faces, `faces[α][i-1] = ∂_i^α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    pub faces: [Vec<CellId>; 2],
}

impl Cell {
    pub fn vertex() -> Self {
        Cell {
            dim: 0,
            faces: [Vec::new(), Vec::new()],
        }
    }
}

/// A finite precubical set. Construction does not enforce the face
/// identities; use [`validate`] for that.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrecubicalSet {
    cells: BTreeMap<CellId, Cell>,
}

impl PrecubicalSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, id: CellId, cell: Cell) {
        self.cells.insert(id, cell);
    }

    /// Insert a cell from its `∂^0` and `∂^1` face lists.
    pub fn insert_cell(&mut self, id: impl Into<String>, faces0: &[&str], faces1: &[&str]) {
        let ids = |xs: &[&str]| xs.iter().map(|s| CellId::new(*s)).collect::<Vec<_>>();
        self.insert(
            CellId::new(id),
            Cell {
                dim: faces0.len(),
                faces: [ids(faces0), ids(faces1)],
            },
        );
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> impl Iterator<Item = (&CellId, &Cell)> {
        self.cells.iter()
    }

    pub fn ids(&self) -> impl Iterator<Item = &CellId> {
        self.cells.keys()
    }

    pub fn contains(&self, id: &CellId) -> bool {
        self.cells.contains_key(id)
    }

    pub fn cell(&self, id: &CellId) -> Result<&Cell, PcsError> {
        self.cells.get(id).ok_or_else(|| PcsError::UnknownCell(id.clone()))
    }

    pub fn dim(&self, id: &CellId) -> Result<usize, PcsError> {
        Ok(self.cell(id)?.dim)
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.values().map(|c| c.dim).max()
    }

    /// Cells of dimension `n`, sorted by id.
    pub fn cells_of_dim(&self, n: usize) -> Vec<&CellId> {
        self.cells.iter().filter(|(_, c)| c.dim == n).map(|(id, _)| id).collect()
    }

    /// Cell counts indexed by dimension.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim().map_or(0, |d| d + 1)];
        for c in self.cells.values() {
            counts[c.dim] += 1;
        }
        counts
    }

    /// `∂_i^α c` with `i` 1-based.
    pub fn face(&self, c: &CellId, i: usize, alpha: bool) -> Result<&CellId, PcsError> {
        let cell = self.cell(c)?;
        if i == 0 || i > cell.dim {
            return Err(PcsError::FaceIndex {
                cell: c.clone(),
                dim: cell.dim,
                index: i,
            });
        }
        cell.faces[alpha as usize].get(i - 1).ok_or_else(|| PcsError::FaceIndex {
            cell: c.clone(),
            dim: cell.dim,
            index: i,
        })
    }

    /// The iterated face of `c` indexed by `w`: fixed coordinates are applied
    /// from the highest index down, so lower indices never shift.
    pub fn face_at(&self, c: &CellId, w: &Word) -> Result<CellId, PcsError> {
        let n = self.dim(c)?;
        if w.len() != n {
            return Err(PcsError::DimensionMismatch {
                cell: c.clone(),
                expected: w.len(),
                found: n,
            });
        }
        let mut cur = c.clone();
        for k in (0..n).rev() {
            match w.as_bytes()[k] {
                b'*' => {}
                s => cur = self.face(&cur, k + 1, s == b'1')?.clone(),
            }
        }
        Ok(cur)
    }

    pub fn vertex_of(&self, c: &CellId, v: &Corner) -> Result<CellId, PcsError> {
        self.face_at(c, &Word::from_corner(v))
    }

    /// Every face occurrence `(cube, word)` of every cell, keyed by the face.
    pub fn occurrences(&self) -> Result<BTreeMap<CellId, Vec<(CellId, Word)>>, PcsError> {
        let mut out: BTreeMap<CellId, Vec<(CellId, Word)>> = BTreeMap::new();
        for (id, cell) in &self.cells {
            for w in Word::all(cell.dim) {
                let f = self.face_at(id, &w)?;
                out.entry(f).or_default().push((id.clone(), w));
            }
        }
        Ok(out)
    }

    /// Face closure of a set of cells.
    pub fn closure<'a>(&self, seeds: impl IntoIterator<Item = &'a CellId>) -> Result<BTreeSet<CellId>, PcsError> {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<CellId> = seeds.into_iter().cloned().collect();
        while let Some(c) = stack.pop() {
            if !seen.insert(c.clone()) {
                continue;
            }
            let cell = self.cell(&c)?;
            for f in cell.faces.iter().flatten() {
                if !seen.contains(f) {
                    stack.push(f.clone());
                }
            }
        }
        Ok(seen)
    }

    /// The subcomplex spanned by `ids`, which must be face-closed.
    pub fn restrict(&self, ids: &BTreeSet<CellId>) -> Result<PrecubicalSet, PcsError> {
        let mut out = PrecubicalSet::new();
        for id in ids {
            let cell = self.cell(id)?;
            if let Some(f) = cell.faces.iter().flatten().find(|f| !ids.contains(*f)) {
                return Err(PcsError::NotFaceClosed(f.clone()));
            }
            out.insert(id.clone(), cell.clone());
        }
        Ok(out)
    }

    /// Rename every cell through `rename`, which must be injective.
    pub fn relabel(&self, rename: impl Fn(&CellId) -> CellId) -> PrecubicalSet {
        let cells = self
            .cells
            .iter()
            .map(|(id, c)| {
                let faces = [
                    c.faces[0].iter().map(&rename).collect(),
                    c.faces[1].iter().map(&rename).collect(),
                ];
                (rename(id), Cell { dim: c.dim, faces })
            })
            .collect();
        PrecubicalSet { cells }
    }
}

/// One failed check reported by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyId,
    FaceCount {
        cell: CellId,
        alpha: bool,
        expected: usize,
        found: usize,
    },
    MissingFace {
        cell: CellId,
        i: usize,
        alpha: bool,
        face: CellId,
    },
    FaceDimension {
        cell: CellId,
        i: usize,
        alpha: bool,
        face: CellId,
        found: usize,
    },
    Identity {
        cell: CellId,
        i: usize,
        j: usize,
        alpha: bool,
        beta: bool,
        left: CellId,
        right: CellId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |x: &bool| *x as u8;
        match self {
            Violation::EmptyId => write!(f, "empty cell id"),
            Violation::FaceCount {
                cell,
                alpha,
                expected,
                found,
            } => write!(f, "{cell}: {found} faces of sign {}, expected {expected}", b(alpha)),
            Violation::MissingFace { cell, i, alpha, face } => {
                write!(f, "{cell}: face d_{i}^{} = {face} does not exist", b(alpha))
            }
            Violation::FaceDimension {
                cell,
                i,
                alpha,
                face,
                found,
            } => write!(f, "{cell}: face d_{i}^{} = {face} has dimension {found}", b(alpha)),
            Violation::Identity {
                cell,
                i,
                j,
                alpha,
                beta,
                left,
                right,
            } => write!(
                f,
                "{cell}: d_{i}^{a} d_{j}^{bb} = {left} but d_{jm}^{bb} d_{i}^{a} = {right} (i={i}, j={j}, alpha={a}, beta={bb})",
                a = b(alpha),
                bb = b(beta),
                jm = j - 1,
            ),
        }
    }
}

/// Check every structural invariant and precubical identity.
pub fn validate(k: &PrecubicalSet) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut structurally_ok = BTreeSet::new();
    for (id, cell) in k.cells() {
        if id.as_str().is_empty() {
            out.push(Violation::EmptyId);
        }
        let mut ok = true;
        for alpha in [false, true] {
            let faces = &cell.faces[alpha as usize];
            if faces.len() != cell.dim {
                out.push(Violation::FaceCount {
                    cell: id.clone(),
                    alpha,
                    expected: cell.dim,
                    found: faces.len(),
                });
                ok = false;
                continue;
            }
            for (idx, f) in faces.iter().enumerate() {
                match k.cell(f) {
                    Err(_) => {
                        out.push(Violation::MissingFace {
                            cell: id.clone(),
                            i: idx + 1,
                            alpha,
                            face: f.clone(),
                        });
                        ok = false;
                    }
                    Ok(fc) if fc.dim + 1 != cell.dim => {
                        out.push(Violation::FaceDimension {
                            cell: id.clone(),
                            i: idx + 1,
                            alpha,
                            face: f.clone(),
                            found: fc.dim,
                        });
                        ok = false;
                    }
                    Ok(_) => {}
                }
            }
        }
        if ok {
            structurally_ok.insert(id);
        }
    }
    for (id, cell) in k.cells() {
        if cell.dim < 2 || !structurally_ok.contains(id) {
            continue;
        }
        for j in 2..=cell.dim {
            for i in 1..j {
                for alpha in [false, true] {
                    for beta in [false, true] {
                        let left = cell.faces[beta as usize][j - 1].clone();
                        let right = cell.faces[alpha as usize][i - 1].clone();
                        // faces of structurally broken cells are reported above
                        let (Ok(l), Ok(r)) = (k.face(&left, i, alpha), k.face(&right, j - 1, beta)) else {
                            continue;
                        };
                        if l != r {
                            out.push(Violation::Identity {
                                cell: id.clone(),
                                i,
                                j,
                                alpha,
                                beta,
                                left: l.clone(),
                                right: r.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn check_cube_dim(n: usize) -> Result<(), PcsError> {
    if n > MAX_CUBE_DIM {
        Err(PcsError::SizeLimit { n, max: MAX_CUBE_DIM })
    } else {
        Ok(())
    }
}

fn word_model(words: impl IntoIterator<Item = Word>) -> PrecubicalSet {
    let mut k = PrecubicalSet::new();
    for w in words {
        let d = w.dim();
        let faces = [false, true].map(|a| (1..=d).map(|i| w.face(i, a).expect("face of word").cell_id()).collect());
        k.insert(w.cell_id(), Cell { dim: d, faces });
    }
    k
}

/// `□[n]`: all words in `{0,1,*}^n`, with ids equal to the words.
pub fn standard_cube(n: usize) -> Result<PrecubicalSet, PcsError> {
    check_cube_dim(n)?;
    Ok(word_model(Word::all(n)))
}

/// `∂□[n]`: the standard cube without its top cell.
pub fn boundary_cube(n: usize) -> Result<PrecubicalSet, PcsError> {
    if n == 0 {
        return Err(PcsError::Unsupported("the boundary cube needs n >= 1".into()));
    }
    check_cube_dim(n)?;
    Ok(word_model(Word::all(n).into_iter().filter(Word::is_proper)))
}

/// Result of [`pushout`] together with both characteristic maps.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub set: PrecubicalSet,
    pub left: BTreeMap<CellId, CellId>,
    pub right: BTreeMap<CellId, CellId>,
}

/// Glue `l` to `m` along the face-closed subcomplex `a ⊆ l` mapped into `m`
/// by `f`. Cells of `m` become `2:<id>`, cells of `l` outside `a` become
/// `1:<id>`.
pub fn pushout(
    l: &PrecubicalSet,
    a: &BTreeSet<CellId>,
    f: &BTreeMap<CellId, CellId>,
    m: &PrecubicalSet,
) -> Result<Pushout, PcsError> {
    for x in a {
        let cell = l.cell(x)?;
        if let Some(face) = cell.faces.iter().flatten().find(|y| !a.contains(*y)) {
            return Err(PcsError::NotFaceClosed(face.clone()));
        }
        let fx = f
            .get(x)
            .ok_or_else(|| PcsError::NotAMorphism(format!("{x} has no image")))?;
        let image = m.cell(fx)?;
        if image.dim != cell.dim {
            return Err(PcsError::NotAMorphism(format!(
                "{x} (dim {}) maps to {fx} (dim {})",
                cell.dim, image.dim
            )));
        }
        for alpha in [0, 1] {
            for (i, face) in cell.faces[alpha].iter().enumerate() {
                let want = f.get(face);
                let got = image.faces[alpha].get(i);
                if want.is_none() || want != got {
                    return Err(PcsError::NotAMorphism(format!(
                        "f(d_{}^{alpha} {x}) differs from d_{}^{alpha} f({x})",
                        i + 1,
                        i + 1
                    )));
                }
            }
        }
    }

    let right: BTreeMap<CellId, CellId> = m.ids().map(|id| (id.clone(), CellId::tagged("2", id))).collect();
    let left: BTreeMap<CellId, CellId> = l
        .ids()
        .map(|id| {
            let target = match f.get(id) {
                Some(fx) if a.contains(id) => right[fx].clone(),
                _ => CellId::tagged("1", id),
            };
            (id.clone(), target)
        })
        .collect();

    let mut set = PrecubicalSet::new();
    for (id, cell) in m.cells() {
        let faces = [0, 1].map(|s| cell.faces[s].iter().map(|y| right[y].clone()).collect());
        set.insert(right[id].clone(), Cell { dim: cell.dim, faces });
    }
    for (id, cell) in l.cells() {
        if a.contains(id) {
            continue;
        }
        let faces = [0, 1].map(|s| cell.faces[s].iter().map(|y| left[y].clone()).collect());
        set.insert(left[id].clone(), Cell { dim: cell.dim, faces });
    }
    Ok(Pushout { set, left, right })
}

/// Search for a dimension- and face-preserving bijection `k1 → k2`.
pub fn find_isomorphism(k1: &PrecubicalSet, k2: &PrecubicalSet) -> Option<BTreeMap<CellId, CellId>> {
    if k1.counts_by_dim() != k2.counts_by_dim() {
        return None;
    }
    let mut order: Vec<&CellId> = k1.ids().collect();
    order.sort_by(|a, b| k1.cells[*b].dim.cmp(&k1.cells[*a].dim).then(a.cmp(b)));
    let mut fwd = BTreeMap::new();
    let mut bwd = BTreeMap::new();
    if iso_search(k1, k2, &order, 0, &mut fwd, &mut bwd) {
        Some(fwd)
    } else {
        None
    }
}

fn iso_assign(
    k1: &PrecubicalSet,
    k2: &PrecubicalSet,
    x: &CellId,
    y: &CellId,
    fwd: &mut BTreeMap<CellId, CellId>,
    bwd: &mut BTreeMap<CellId, CellId>,
    log: &mut Vec<CellId>,
) -> bool {
    match (fwd.get(x), bwd.get(y)) {
        (Some(fy), _) => return fy == y,
        (None, Some(_)) => return false,
        (None, None) => {}
    }
    let (cx, cy) = (&k1.cells[x], &k2.cells[y]);
    if cx.dim != cy.dim {
        return false;
    }
    fwd.insert(x.clone(), y.clone());
    bwd.insert(y.clone(), x.clone());
    log.push(x.clone());
    for s in 0..2 {
        for (fx, fy) in cx.faces[s].iter().zip(&cy.faces[s]) {
            if !iso_assign(k1, k2, fx, fy, fwd, bwd, log) {
                return false;
            }
        }
    }
    true
}

fn iso_search(
    k1: &PrecubicalSet,
    k2: &PrecubicalSet,
    order: &[&CellId],
    pos: usize,
    fwd: &mut BTreeMap<CellId, CellId>,
    bwd: &mut BTreeMap<CellId, CellId>,
) -> bool {
    let Some(&x) = order.get(pos) else {
        return true;
    };
    if fwd.contains_key(x) {
        return iso_search(k1, k2, order, pos + 1, fwd, bwd);
    }
    let dim = k1.cells[x].dim;
    let candidates: Vec<CellId> = k2.cells_of_dim(dim).into_iter().filter(|y| !bwd.contains_key(*y)).cloned().collect();
    for y in candidates {
        let mut log = Vec::new();
        if iso_assign(k1, k2, x, &y, fwd, bwd, &mut log) && iso_search(k1, k2, order, pos + 1, fwd, bwd) {
            return true;
        }
        for z in log {
            if let Some(w) = fwd.remove(&z) {
                bwd.remove(&w);
            }
        }
    }
    false
}

/// A face-closed set of proper faces of `□[n]`, as words.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoundarySubcomplex {
    n: usize,
    cells: BTreeSet<Word>,
}

impl BoundarySubcomplex {
    /// Face closure of `generators`; each must be a proper face of `□[n]`.
    pub fn new(n: usize, generators: impl IntoIterator<Item = Word>) -> Result<Self, PcsError> {
        if n < 2 {
            return Err(PcsError::Unsupported(format!("boundary subcomplexes need n >= 2, got {n}")));
        }
        let mut cells = BTreeSet::new();
        for g in generators {
            if g.len() != n || !g.is_proper() {
                return Err(PcsError::InvalidWord(g.to_string()));
            }
            cells.extend(g.closure());
        }
        Ok(BoundarySubcomplex { n, cells })
    }

    pub fn empty(n: usize) -> Result<Self, PcsError> {
        Self::new(n, [])
    }

    pub fn full(n: usize) -> Result<Self, PcsError> {
        Self::new(n, Word::all(n).into_iter().filter(Word::is_proper))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &BTreeSet<Word> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.cells.contains(w)
    }

    pub fn is_subset(&self, other: &BoundarySubcomplex) -> bool {
        self.n == other.n && self.cells.is_subset(&other.cells)
    }

    pub fn is_face_closed(&self) -> bool {
        self.cells.iter().all(|w| w.closure().iter().all(|f| self.cells.contains(f)))
    }

    /// The subcomplex as a precubical set whose ids are the words.
    pub fn to_precubical_set(&self) -> PrecubicalSet {
        word_model(self.cells.iter().cloned())
    }

    /// Read a precubical set whose cell ids are words of length `n` and whose
    /// faces follow the word model.
    pub fn from_precubical_set(k: &PrecubicalSet, n: usize) -> Result<Self, PcsError> {
        let mut words = Vec::new();
        for (id, cell) in k.cells() {
            let w: Word = id.as_str().parse()?;
            if w.len() != n || !w.is_proper() || w.dim() != cell.dim {
                return Err(PcsError::InvalidWord(id.to_string()));
            }
            for alpha in [false, true] {
                for (i, f) in cell.faces[alpha as usize].iter().enumerate() {
                    let expected = w.face(i + 1, alpha).map(|x| x.cell_id());
                    if expected.as_ref() != Some(f) {
                        return Err(PcsError::NotAMorphism(format!(
                            "{id}: face d_{}^{} is {f}, the word model requires {}",
                            i + 1,
                            alpha as u8,
                            expected.map_or_else(|| "none".to_string(), |x| x.to_string())
                        )));
                    }
                    if !k.contains(f) {
                        return Err(PcsError::NotFaceClosed(f.clone()));
                    }
                }
            }
            words.push(w);
        }
        Self::new(n, words)
    }
}

/// The proper faces of `□[n]` on which the iterated faces of `x` and `y`
/// coincide.
pub fn agreement_subcomplex(k: &PrecubicalSet, x: &CellId, y: &CellId) -> Result<BoundarySubcomplex, PcsError> {
    if x == y {
        return Err(PcsError::SameCell);
    }
    let n = k.dim(x)?;
    let ny = k.dim(y)?;
    if n != ny {
        return Err(PcsError::DimensionMismatch {
            cell: y.clone(),
            expected: n,
            found: ny,
        });
    }
    let mut agree = Vec::new();
    for w in Word::all(n).into_iter().filter(Word::is_proper) {
        if k.face_at(x, &w)? == k.face_at(y, &w)? {
            agree.push(w);
        }
    }
    BoundarySubcomplex::new(n, agree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> CellId {
        CellId::new(s)
    }

    #[test]
    fn cube_counts() {
        assert_eq!(standard_cube(0).unwrap().len(), 1);
        assert_eq!(standard_cube(2).unwrap().counts_by_dim(), vec![4, 4, 1]);
        assert_eq!(standard_cube(3).unwrap().counts_by_dim(), vec![8, 12, 6, 1]);
        assert_eq!(boundary_cube(3).unwrap().len(), 26);
        assert_eq!(boundary_cube(2).unwrap().counts_by_dim(), vec![4, 4]);
        assert_eq!(boundary_cube(1).unwrap().counts_by_dim(), vec![2]);
        assert!(matches!(standard_cube(7), Err(PcsError::SizeLimit { n: 7, .. })));
        assert!(boundary_cube(0).is_err());
    }

    #[test]
    fn standard_cubes_validate() {
        for n in 0..=MAX_CUBE_DIM {
            assert!(validate(&standard_cube(n).unwrap()).is_empty(), "n = {n}");
        }
        assert!(validate(&PrecubicalSet::new()).is_empty());
    }

    #[test]
    fn mismatched_corner_reports_one_identity() {
        // square whose bottom edge starts at a foreign vertex: only the
        // (i=1, j=2, α=0, β=0) composite disagrees
        let mut k = PrecubicalSet::new();
        for v in ["00", "01", "10", "11", "z"] {
            k.insert_cell(v, &[], &[]);
        }
        k.insert_cell("0*", &["00"], &["01"]);
        k.insert_cell("1*", &["10"], &["11"]);
        k.insert_cell("*0", &["z"], &["10"]);
        k.insert_cell("*1", &["01"], &["11"]);
        k.insert_cell("**", &["0*", "*0"], &["1*", "*1"]);
        let report = validate(&k);
        assert_eq!(report.len(), 1, "{report:?}");
        match &report[0] {
            Violation::Identity { cell, i, j, alpha, beta, .. } => {
                assert_eq!((cell.as_str(), *i, *j, *alpha, *beta), ("**", 1, 2, false, false));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn structural_violations() {
        let mut k = PrecubicalSet::new();
        k.insert_cell("v", &[], &[]);
        k.insert_cell("e", &["v"], &["w"]);
        k.insert_cell("s", &["e", "v"], &["e", "e"]);
        let report = validate(&k);
        assert!(report.iter().any(|v| matches!(v, Violation::MissingFace { face, .. } if face.as_str() == "w")));
        assert!(report.iter().any(|v| matches!(v, Violation::FaceDimension { face, .. } if face.as_str() == "v")));
    }

    #[test]
    fn vertex_of_substitutes_word() {
        let k = standard_cube(2).unwrap();
        let v = k.vertex_of(&id("**"), &"10".parse().unwrap()).unwrap();
        assert_eq!(v, id("10"));
        assert!(k.vertex_of(&id("**"), &"1".parse().unwrap()).is_err());
    }

    fn double_cube() -> PrecubicalSet {
        let c = standard_cube(3).unwrap();
        let a: BTreeSet<CellId> = boundary_cube(3).unwrap().ids().cloned().collect();
        let f = a.iter().map(|x| (x.clone(), x.clone())).collect();
        pushout(&c, &a, &f, &c).unwrap().set
    }

    #[test]
    fn pushout_counts() {
        let k = double_cube();
        assert_eq!(k.len(), 28);
        assert!(validate(&k).is_empty());
        let top = Corner::ones(3);
        assert_eq!(
            k.vertex_of(&id("1:***"), &top).unwrap(),
            k.vertex_of(&id("2:***"), &top).unwrap()
        );

        let e = standard_cube(1).unwrap();
        let a = BTreeSet::from([id("1")]);
        let f = BTreeMap::from([(id("1"), id("0"))]);
        let glued = pushout(&e, &a, &f, &e).unwrap().set;
        assert_eq!(glued.counts_by_dim(), vec![3, 2]);

        // two squares along one edge: 9 + 9 - 3
        let s = standard_cube(2).unwrap();
        let a: BTreeSet<CellId> = [id("1*"), id("10"), id("11")].into();
        let f = BTreeMap::from([(id("1*"), id("0*")), (id("10"), id("00")), (id("11"), id("01"))]);
        let glued = pushout(&s, &a, &f, &s).unwrap().set;
        assert_eq!(glued.len(), 15);
        assert!(validate(&glued).is_empty());
    }

    #[test]
    fn pushout_rejects_non_morphisms() {
        let s = standard_cube(2).unwrap();
        let a: BTreeSet<CellId> = [id("1*"), id("10"), id("11")].into();
        let bad = BTreeMap::from([(id("1*"), id("0*")), (id("10"), id("01")), (id("11"), id("00"))]);
        assert!(matches!(pushout(&s, &a, &bad, &s), Err(PcsError::NotAMorphism(_))));
        let open: BTreeSet<CellId> = [id("1*")].into();
        assert!(matches!(pushout(&s, &open, &bad, &s), Err(PcsError::NotFaceClosed(_))));
    }

    #[test]
    fn agreement_examples() {
        let k = double_cube();
        let a = agreement_subcomplex(&k, &id("1:***"), &id("2:***")).unwrap();
        assert_eq!(a, BoundarySubcomplex::full(3).unwrap());
        assert_eq!(a.len(), 26);

        let c = standard_cube(3).unwrap();
        let sq: BTreeSet<CellId> = Word::from_str("0**").unwrap().closure().iter().map(Word::cell_id).collect();
        let f = sq.iter().map(|x| (x.clone(), x.clone())).collect();
        let k = pushout(&c, &sq, &f, &c).unwrap().set;
        let a = agreement_subcomplex(&k, &id("1:***"), &id("2:***")).unwrap();
        assert_eq!(a.len(), 9);
        assert!(a.contains(&"0**".parse().unwrap()));

        let mut two = standard_cube(3).unwrap().relabel(|x| CellId::new(format!("a{x}")));
        for (i, c) in standard_cube(3).unwrap().relabel(|x| CellId::new(format!("b{x}"))).cells() {
            two.insert(i.clone(), c.clone());
        }
        let a = agreement_subcomplex(&two, &id("a***"), &id("b***")).unwrap();
        assert!(a.is_empty());

        assert!(matches!(agreement_subcomplex(&two, &id("a***"), &id("a***")), Err(PcsError::SameCell)));
        assert!(agreement_subcomplex(&two, &id("a***"), &id("b**0")).is_err());
    }

    #[test]
    fn boundary_subcomplex_closes_generators() {
        let a = BoundarySubcomplex::new(3, ["**0".parse().unwrap()]).unwrap();
        assert_eq!(a.len(), 9);
        assert!(a.is_face_closed());
        assert!(BoundarySubcomplex::new(3, ["***".parse().unwrap()]).is_err());
        assert!(BoundarySubcomplex::new(3, ["*0".parse().unwrap()]).is_err());
        let k = a.to_precubical_set();
        assert_eq!(BoundarySubcomplex::from_precubical_set(&k, 3).unwrap(), a);
    }

    #[test]
    fn isomorphism_finds_relabeling() {
        let k = double_cube();
        let r = k.relabel(|x| CellId::new(format!("z{x}")));
        let iso = find_isomorphism(&k, &r).unwrap();
        assert_eq!(iso.len(), 28);
        assert!(find_isomorphism(&k, &standard_cube(3).unwrap()).is_none());
    }
}
