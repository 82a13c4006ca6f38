use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};
use tamepath::dpath::{
    enumerate_skeletons_with, moore_compose, naturalize, normalized_compose, psi, reparametrize, Skeleton,
};
use tamepath::io::{counts_by_dim, write_complex, write_path, write_reparam};
use tamepath::metric::{d1_upper_with, ChainSearch, MetricError};
use tamepath::pcs::{boundary_cube, standard_cube, validate};
use tamepath::rational::{format_q, parse_q};
use tamepath::spatial::{in_bn, is_spatial, BnWitness};
use tamepath::{BoundarySubcomplex, CellId, Exec, Point, Q};

use crate::load::{self, LoadedPath};
use crate::{Cli, Command, Failure, SCHEMA_VERSION};

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let r = Reporter { json: cli.json };
    match &cli.command {
        Command::Validate { complex } => validate_cmd(&r, complex),
        Command::Info { complex } => info(&r, complex),
        Command::Spatial { complex } => spatial(&r, complex),
        Command::BnCheck { subcomplex, n } => bn_check(&r, subcomplex, *n),
        Command::Chains { complex, from, to, length, max_length } => chains(&r, complex, from, to, *length, *max_length),
        Command::Naturalize { path, out } => naturalize_cmd(&r, path, out.as_deref()),
        Command::Factorize { path, out_reparam, out_natural } => factorize(&r, path, out_reparam, out_natural),
        Command::ApplyReparam { path, reparam, out } => apply_reparam(&r, path, reparam, out.as_deref()),
        Command::Compose { first, second, normalized, out } => compose(&r, first, second, *normalized, out.as_deref()),
        Command::Dist { complex, p, q, max_hops, grid } => dist(&r, complex, p, q, *max_hops, *grid),
        Command::Cube { n, boundary, out } => cube(&r, *n, *boundary, out.as_deref()),
    }
}

struct Reporter {
    json: bool,
}

impl Reporter {
    /// The text report, or the JSON report built from `fields`.
    fn finish(&self, command: &str, fields: Value, text: String) -> String {
        if !self.json {
            return text;
        }
        let mut obj = Map::new();
        obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
        obj.insert("command".into(), json!(command));
        if let Value::Object(rest) = fields {
            obj.extend(rest);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }
}

fn qs(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(|x| json!(format_q(x))).collect())
}

fn tuple(xs: &[Q]) -> String {
    let parts: Vec<String> = xs.iter().map(format_q).collect();
    format!("({})", parts.join(","))
}

fn document(text: &str) -> Value {
    serde_json::from_str(text).expect("writers emit valid JSON")
}

fn validate_cmd(r: &Reporter, file: &Path) -> Result<String, Failure> {
    let k = load::complex_unchecked(file)?;
    let violations: Vec<String> = validate(&k).iter().map(ToString::to_string).collect();
    let mut text = String::new();
    if violations.is_empty() {
        writeln!(text, "valid: {} cells, max dimension {}", k.len(), k.max_dim().unwrap_or(0)).unwrap();
    } else {
        writeln!(text, "invalid: {} violations", violations.len()).unwrap();
        for v in &violations {
            writeln!(text, "  {v}").unwrap();
        }
    }
    let out = r.finish(
        "validate",
        json!({ "valid": violations.is_empty(), "cells": k.len(), "violations": violations }),
        text,
    );
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(Failure::Rejected(out))
    }
}

fn info(r: &Reporter, file: &Path) -> Result<String, Failure> {
    let k = load::complex(file)?;
    let counts = counts_by_dim(&k);
    let mut text = format!("cells: {}\nmax dimension: {}\n", k.len(), k.max_dim().unwrap_or(0));
    for (d, c) in &counts {
        writeln!(text, "dim {d}: {c}").unwrap();
    }
    let by_dim: Map<String, Value> = counts.iter().map(|(d, c)| (d.to_string(), json!(c))).collect();
    Ok(r.finish(
        "info",
        json!({ "cells": k.len(), "max_dim": k.max_dim().unwrap_or(0), "counts_by_dim": by_dim }),
        text,
    ))
}

fn witness_json(w: &BnWitness) -> Value {
    json!({
        "itinerary": w.itinerary.cells.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "path": w.path.iter().map(|p| qs(p)).collect::<Vec<_>>(),
    })
}

fn witness_text(w: &BnWitness) -> String {
    let cells: Vec<String> = w.itinerary.cells.iter().map(ToString::to_string).collect();
    let pts: Vec<String> = w.path.iter().map(|p| tuple(p)).collect();
    format!("  itinerary: {}\n  path: {}\n", cells.join(" "), pts.join(" -> "))
}

fn spatial(r: &Reporter, file: &Path) -> Result<String, Failure> {
    let k = load::complex(file)?;
    let rep = is_spatial(&k).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!(
        "{}\npairs checked: {}\n",
        if rep.is_spatial() { "spatial" } else { "non-spatial" },
        rep.pairs_checked
    );
    let mut ws = Vec::new();
    for w in &rep.witnesses {
        let agreement: Vec<String> = w.agreement.cells().iter().map(ToString::to_string).collect();
        writeln!(text, "witness: {} {} (n = {}), agreement of {} cells", w.x, w.y, w.n, agreement.len()).unwrap();
        text.push_str(&witness_text(&w.path));
        let mut entry = json!({ "x": w.x, "y": w.y, "n": w.n, "agreement": agreement });
        if let (Value::Object(e), Value::Object(p)) = (&mut entry, witness_json(&w.path)) {
            e.extend(p);
        }
        ws.push(entry);
    }
    Ok(r.finish(
        "spatial",
        json!({
            "spatial": rep.is_spatial(),
            "max_dim": rep.max_dim,
            "pairs_checked": rep.pairs_checked,
            "witnesses": ws,
        }),
        text,
    ))
}

fn bn_check(r: &Reporter, file: &Path, n: usize) -> Result<String, Failure> {
    let k = load::complex(file)?;
    let a = BoundarySubcomplex::from_precubical_set(&k, n)
        .map_err(|e| Failure::Invalid(format!("{} is not a subcomplex of the boundary of the {n}-cube: {e}", file.display())))?;
    let w = in_bn(&a).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!("in B_{n}: {}\n", if w.is_some() { "yes" } else { "no" });
    let mut fields = json!({ "n": n, "in_bn": w.is_some(), "cells": a.len() });
    if let Some(w) = &w {
        text.push_str(&witness_text(w));
        if let (Value::Object(f), Value::Object(p)) = (&mut fields, witness_json(w)) {
            f.insert("witness".into(), Value::Object(p));
        }
    }
    Ok(r.finish("bn-check", fields, text))
}

fn chains(r: &Reporter, file: &Path, from: &str, to: &str, length: usize, max: usize) -> Result<String, Failure> {
    let k = load::complex(file)?;
    let found: Vec<Skeleton> =
        enumerate_skeletons_with(&k, &CellId::from(from), &CellId::from(to), length, max, Exec::default())
            .map_err(|e| Failure::Usage(e.to_string()))?;
    let mut text = format!("{} chains\n", found.len());
    for ch in &found {
        let steps: Vec<String> = ch.iter().map(|s| format!("{} {}->{}", s.cube, s.from, s.to)).collect();
        writeln!(text, "  {}", steps.join(", ")).unwrap();
    }
    let as_json: Vec<Value> = found
        .iter()
        .map(|ch| {
            Value::Array(
                ch.iter()
                    .map(|s| json!({ "cube": s.cube, "from": s.from.to_string(), "to": s.to.to_string() }))
                    .collect(),
            )
        })
        .collect();
    Ok(r.finish(
        "chains",
        json!({ "from": from, "to": to, "length": length, "count": found.len(), "chains": as_json }),
        text,
    ))
}

/// Emit a path file, wrapped into a report in JSON mode.
fn emit_path(r: &Reporter, command: &str, text: String, out: Option<&Path>, mut fields: Value) -> Result<String, Failure> {
    if !r.json {
        return load::emit(out, text);
    }
    if let Value::Object(f) = &mut fields {
        f.insert("path".into(), document(&text));
        if let Some(o) = out {
            f.insert("written".into(), json!(o.display().to_string()));
        }
    }
    load::emit(out, text)?;
    Ok(r.finish(command, fields, String::new()))
}

fn naturalize_cmd(r: &Reporter, file: &Path, out: Option<&Path>) -> Result<String, Failure> {
    let src = load::path(file)?;
    let nu = naturalize(&src.path);
    let text = write_path(&load::complex_ref_for(&src, file, out), nu.path());
    emit_path(r, "naturalize", text, out, json!({ "length": nu.length() }))
}

fn factorize(r: &Reporter, file: &Path, out_reparam: &Path, out_natural: &Path) -> Result<String, Failure> {
    let src = load::path(file)?;
    let (profile, nu) = psi(&src.path);
    let reparam_text = write_reparam(&profile);
    let natural_text = write_path(&load::complex_ref_for(&src, file, Some(out_natural)), nu.path());
    let fields = json!({
        "length": nu.length(),
        "regular": profile.is_regular(),
        "reparam": document(&reparam_text),
        "natural": document(&natural_text),
        "written": [out_reparam.display().to_string(), out_natural.display().to_string()],
    });
    load::emit(Some(out_reparam), reparam_text)?;
    load::emit(Some(out_natural), natural_text)?;
    let text = format!(
        "length: {}\nprofile: {profile}\nwrote {}\nwrote {}\n",
        nu.length(),
        out_reparam.display(),
        out_natural.display()
    );
    Ok(r.finish("factorize", fields, text))
}

fn apply_reparam(r: &Reporter, file: &Path, reparam: &Path, out: Option<&Path>) -> Result<String, Failure> {
    let src = load::path(file)?;
    let phi = load::reparam(reparam)?;
    let result = reparametrize(&src.path, &phi).map_err(|e| Failure::Invalid(e.to_string()))?;
    let text = write_path(&load::complex_ref_for(&src, file, out), &result);
    emit_path(r, "apply-reparam", text, out, json!({ "duration": format_q(&result.duration()) }))
}

fn same_file(a: &LoadedPath, b: &LoadedPath) -> bool {
    match (std::fs::canonicalize(&a.complex_file), std::fs::canonicalize(&b.complex_file)) {
        (Ok(x), Ok(y)) => x == y,
        _ => a.complex_file == b.complex_file,
    }
}

fn compose(r: &Reporter, first: &Path, second: &Path, normalized: bool, out: Option<&Path>) -> Result<String, Failure> {
    let a = load::path(first)?;
    let b = load::path(second)?;
    if !same_file(&a, &b) {
        return Err(Failure::Usage(format!(
            "the paths live in different complexes ({} and {})",
            a.complex_file.display(),
            b.complex_file.display()
        )));
    }
    let joined = if normalized {
        normalized_compose(&a.complex, &a.path, &b.path)
    } else {
        moore_compose(&a.complex, &a.path, &b.path)
    }
    .map_err(|e| Failure::Invalid(e.to_string()))?;
    let text = write_path(&load::complex_ref_for(&a, first, out), &joined);
    emit_path(
        r,
        "compose",
        text,
        out,
        json!({ "normalized": normalized, "duration": format_q(&joined.duration()) }),
    )
}

fn parse_point(s: &str) -> Result<Point, Failure> {
    let (cell, coords) = match s.rsplit_once('@') {
        Some((c, xs)) => (c, Some(xs)),
        None => (s, None),
    };
    if cell.is_empty() {
        return Err(Failure::Usage(format!("point {s:?} has no cell")));
    }
    let coords = match coords {
        None => Vec::new(),
        Some(xs) => xs
            .split(',')
            .map(|x| parse_q(x.trim()).map_err(|e| Failure::Usage(format!("point {s:?}: {e}"))))
            .collect::<Result<_, _>>()?,
    };
    Ok(Point { carrier: CellId::from(cell), coords })
}

fn dist(r: &Reporter, file: &Path, p: &str, q: &str, max_hops: Option<usize>, grid: usize) -> Result<String, Failure> {
    let k = load::complex(file)?;
    let (p, q) = (parse_point(p)?, parse_point(q)?);
    let search = ChainSearch { max_hops, grid, exec: Exec::default() };
    let fields_base = json!({ "p": p.to_string(), "q": q.to_string(), "grid": grid, "max_hops": max_hops.unwrap_or(k.len()) });
    match d1_upper_with(&k, &p, &q, search) {
        Ok(est) => {
            let mut text = format!("d1 <= {}\n", format_q(&est.value));
            let hops: Vec<Value> = est
                .chain
                .iter()
                .map(|(a, b)| {
                    writeln!(text, "  {a} -> {b}").unwrap();
                    json!([a.to_string(), b.to_string()])
                })
                .collect();
            let mut fields = fields_base;
            if let Value::Object(f) = &mut fields {
                f.insert("value".into(), json!(format_q(&est.value)));
                f.insert("chain".into(), Value::Array(hops));
            }
            Ok(r.finish("dist", fields, text))
        }
        Err(MetricError::Unreachable(h)) => {
            let mut fields = fields_base;
            if let Value::Object(f) = &mut fields {
                f.insert("value".into(), Value::Null);
                f.insert("chain".into(), json!([]));
            }
            Ok(r.finish("dist", fields, format!("no chain of at most {h} hops\n")))
        }
        Err(e) => Err(Failure::Usage(e.to_string())),
    }
}

fn cube(r: &Reporter, n: usize, boundary: bool, out: Option<&Path>) -> Result<String, Failure> {
    let k = if boundary { boundary_cube(n) } else { standard_cube(n) }.map_err(|e| Failure::Usage(e.to_string()))?;
    let text = write_complex(&k);
    if !r.json {
        return load::emit(out, text);
    }
    let fields = json!({ "n": n, "boundary": boundary, "complex": document(&text) });
    load::emit(out, text)?;
    Ok(r.finish("cube", fields, String::new()))
}
