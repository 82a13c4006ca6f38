//! JSON file formats for complexes, paths and reparametrizations.
//!
//! Rationals are `"p/q"` strings and corners are bitstrings. Writers are
//! deterministic: cells are ordered by dimension then id.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dpath::{Leg, TameDPath, TrackPoint};
use crate::pcs::{Cell, CellId, Corner, PcsError, PrecubicalSet};
use crate::rational::{format_q, Rat};
use crate::reparam::{Reparam, ReparamError};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        FormatError::Syntax {
            line: e.line(),
            column: e.column(),
            message,
        }
    }
}

impl From<PcsError> for FormatError {
    fn from(e: PcsError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

impl From<ReparamError> for FormatError {
    fn from(e: ReparamError) -> Self {
        FormatError::Invalid(e.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceLists {
    #[serde(rename = "0")]
    zero: Vec<CellId>,
    #[serde(rename = "1")]
    one: Vec<CellId>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellEntry {
    id: CellId,
    dim: usize,
    faces: FaceLists,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDoc {
    cells: Vec<CellEntry>,
}

fn to_pretty<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

/// Parse a complex file. Face structure is not validated here.
pub fn parse_complex(text: &str) -> Result<PrecubicalSet, FormatError> {
    let doc: ComplexDoc = serde_json::from_str(text)?;
    let mut k = PrecubicalSet::new();
    for c in doc.cells {
        if k.contains(&c.id) {
            return Err(FormatError::Invalid(format!("duplicate cell id {}", c.id)));
        }
        k.insert(
            c.id,
            Cell {
                dim: c.dim,
                faces: [c.faces.zero, c.faces.one],
            },
        );
    }
    Ok(k)
}

pub fn write_complex(k: &PrecubicalSet) -> String {
    let mut cells: Vec<(&CellId, &Cell)> = k.cells().collect();
    cells.sort_by(|a, b| a.1.dim.cmp(&b.1.dim).then(a.0.cmp(b.0)));
    let doc = ComplexDoc {
        cells: cells
            .into_iter()
            .map(|(id, c)| CellEntry {
                id: id.clone(),
                dim: c.dim,
                faces: FaceLists {
                    zero: c.faces[0].clone(),
                    one: c.faces[1].clone(),
                },
            })
            .collect(),
    };
    to_pretty(&doc)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LegEntry {
    cube: CellId,
    from: String,
    to: String,
    duration: Rat,
    track: Vec<(Rat, Vec<Rat>)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathDoc {
    complex: String,
    legs: Vec<LegEntry>,
}

/// A parsed path file: the complex reference as written, and the legs
/// exactly as given (not canonicalized).
#[derive(Debug, Clone)]
pub struct PathFile {
    pub complex: String,
    pub path: TameDPath,
}

pub fn parse_path(text: &str) -> Result<PathFile, FormatError> {
    let doc: PathDoc = serde_json::from_str(text)?;
    let mut legs = Vec::with_capacity(doc.legs.len());
    for (i, l) in doc.legs.into_iter().enumerate() {
        let from: Corner = l.from.parse()?;
        let to: Corner = l.to.parse()?;
        let track: Vec<TrackPoint> = l
            .track
            .into_iter()
            .map(|(t, x)| TrackPoint::new(t.0, x.into_iter().map(|r| r.0).collect()))
            .collect();
        if track.last().map(|p| &p.t) != Some(&l.duration.0) {
            return Err(FormatError::Invalid(format!(
                "leg {i}: duration {} differs from the last track time",
                format_q(&l.duration.0)
            )));
        }
        legs.push(Leg {
            cube: l.cube,
            from,
            to,
            track,
        });
    }
    Ok(PathFile {
        complex: doc.complex,
        path: TameDPath::from_raw(legs),
    })
}

pub fn write_path(complex: &str, path: &TameDPath) -> String {
    let legs = path
        .legs()
        .iter()
        .map(|l| LegEntry {
            cube: l.cube.clone(),
            from: l.from.to_string(),
            to: l.to.to_string(),
            duration: Rat(l.duration().clone()),
            track: l
                .track
                .iter()
                .map(|p| (Rat(p.t.clone()), p.x.iter().cloned().map(Rat).collect()))
                .collect(),
        })
        .collect();
    to_pretty(&PathDoc {
        complex: complex.to_string(),
        legs,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReparamDoc {
    breakpoints: Vec<(Rat, Rat)>,
}

pub fn parse_reparam(text: &str) -> Result<Reparam, FormatError> {
    let doc: ReparamDoc = serde_json::from_str(text)?;
    Ok(Reparam::new(doc.breakpoints.into_iter().map(|(t, v)| (t.0, v.0)).collect())?)
}

pub fn write_reparam(r: &Reparam) -> String {
    to_pretty(&ReparamDoc {
        breakpoints: r
            .breakpoints()
            .iter()
            .map(|(t, v)| (Rat(t.clone()), Rat(v.clone())))
            .collect(),
    })
}

/// Cell counts by dimension, as a map for reports.
pub fn counts_by_dim(k: &PrecubicalSet) -> BTreeMap<usize, usize> {
    k.counts_by_dim().into_iter().enumerate().filter(|(_, c)| *c > 0).collect()
}
