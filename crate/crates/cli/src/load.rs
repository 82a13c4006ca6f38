use std::path::{Component, Path, PathBuf};

use tamepath::dpath::validate_path;
use tamepath::io::{parse_complex, parse_path, parse_reparam, FormatError};
use tamepath::pcs::validate;
use tamepath::{PrecubicalSet, Reparam, TameDPath};

use crate::Failure;

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// A format error rendered with the offending line of the file.
fn format_failure(path: &Path, text: &str, err: FormatError) -> Failure {
    match err {
        FormatError::Syntax { line, column, message } => {
            let mut msg = format!("{}:{line}:{column}: {message}", path.display());
            if let Some(src) = text.lines().nth(line.saturating_sub(1)) {
                msg.push_str(&format!("\n{line:>5} | {src}\n      | {}^", " ".repeat(column.saturating_sub(1))));
            }
            Failure::Usage(msg)
        }
        FormatError::Invalid(m) => Failure::Usage(format!("{}: {m}", path.display())),
    }
}

/// Parse a complex without checking the precubical identities.
pub fn complex_unchecked(path: &Path) -> Result<PrecubicalSet, Failure> {
    let text = read(path)?;
    parse_complex(&text).map_err(|e| format_failure(path, &text, e))
}

pub fn complex(path: &Path) -> Result<PrecubicalSet, Failure> {
    let k = complex_unchecked(path)?;
    let violations = validate(&k);
    if let Some(first) = violations.first() {
        return Err(Failure::Invalid(format!(
            "{} is not a valid precubical set ({} violations, first: {first})",
            path.display(),
            violations.len()
        )));
    }
    Ok(k)
}

pub fn reparam(path: &Path) -> Result<Reparam, Failure> {
    let text = read(path)?;
    parse_reparam(&text).map_err(|e| format_failure(path, &text, e))
}

/// A validated path file together with its complex.
pub struct LoadedPath {
    /// The complex reference exactly as written in the file.
    pub complex_ref: String,
    /// The complex file, resolved against the path file's directory.
    pub complex_file: PathBuf,
    pub complex: PrecubicalSet,
    /// Canonical form of the path.
    pub path: TameDPath,
}

fn parent(path: &Path) -> &Path {
    match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    }
}

pub fn path(file: &Path) -> Result<LoadedPath, Failure> {
    let text = read(file)?;
    let parsed = parse_path(&text).map_err(|e| format_failure(file, &text, e))?;
    let complex_file = parent(file).join(&parsed.complex);
    let k = complex(&complex_file)?;
    let violations = validate_path(&k, &parsed.path);
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Failure::Invalid(format!(
            "{} is not a valid tame path: {}",
            file.display(),
            list.join("; ")
        )));
    }
    Ok(LoadedPath {
        complex_ref: parsed.complex,
        complex_file,
        complex: k,
        path: parsed.path.canonical(),
    })
}

fn absolute(p: &Path) -> PathBuf {
    std::fs::canonicalize(p).unwrap_or_else(|_| std::env::current_dir().map(|d| d.join(p)).unwrap_or(p.to_path_buf()))
}

/// The reference to write into an output path file so that it resolves to
/// `source.complex_file` from the directory of `out`. Output on stdout, or
/// next to the source file, keeps the original reference.
pub fn complex_ref_for(source: &LoadedPath, source_file: &Path, out: Option<&Path>) -> String {
    let Some(out) = out else {
        return source.complex_ref.clone();
    };
    let out_dir = absolute(parent(out));
    if out_dir == absolute(parent(source_file)) {
        return source.complex_ref.clone();
    }
    let target = absolute(&source.complex_file);
    relative(&out_dir, &target).to_string_lossy().replace('\\', "/")
}

/// `target` relative to the directory `base`; both absolute. Paths sharing
/// only the root stay absolute.
fn relative(base: &Path, target: &Path) -> PathBuf {
    let b: Vec<Component> = base.components().collect();
    let t: Vec<Component> = target.components().collect();
    let common = b.iter().zip(&t).take_while(|(x, y)| x == y).count();
    if common <= 1 {
        return target.to_path_buf();
    }
    let mut out = PathBuf::new();
    for _ in common..b.len() {
        out.push("..");
    }
    for c in &t[common..] {
        out.push(c.as_os_str());
    }
    out
}

/// Write `text` to `out`, or hand it back for stdout.
pub fn emit(out: Option<&Path>, text: String) -> Result<String, Failure> {
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
