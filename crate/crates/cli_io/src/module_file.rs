//! Module presentation files:
//!
//! ```text
//! # the mod 2 Moore spectrum
//! p 2
//! gens 0 1
//! Sq(1) g0 = g1
//! ```
//!
//! `gens` lists the degrees of the basis elements `g0, g1, …`; each action
//! line gives `Sq(R) g_i` as a sum of basis elements (`0` for none, `g_j`
//! and `gj` both accepted, integer coefficients read mod 2). Unspecified
//! actions are zero. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use steenrod_milnor::{MilnorProfile, ModuleError, ModulePresentation};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuleFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: ModuleError },
    #[error("invalid module: {0}")]
    Module(ModuleError),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
}

fn gen_index(token: &str) -> Option<usize> {
    let rest = token.strip_prefix('g')?;
    rest.strip_prefix('_').unwrap_or(rest).parse().ok()
}

fn parse_sum(rhs: &str) -> Result<Vec<usize>, String> {
    let rhs = rhs.trim();
    if rhs == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in rhs.split('+') {
        let words: Vec<&str> = term.split(|c: char| c.is_whitespace() || c == '*').filter(|w| !w.is_empty()).collect();
        let (coeff, g) = match words.as_slice() {
            [g] => (1, *g),
            [c, g] => (c.parse::<i64>().map_err(|_| format!("bad coefficient {c:?}"))?, *g),
            _ => return Err(format!("cannot parse term {:?}", term.trim())),
        };
        let idx = gen_index(g).ok_or_else(|| format!("expected a generator g_j, found {g:?}"))?;
        if coeff.rem_euclid(2) == 1 {
            out.push(idx);
        }
    }
    Ok(out)
}

pub fn parse_module(name: &str, text: &str) -> Result<ModulePresentation, ModuleFileError> {
    let mut seen_p = false;
    let mut module: Option<ModulePresentation> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |msg: String| ModuleFileError::Parse { line, msg };
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        if let Some(p) = content.strip_prefix("p ") {
            if p.trim() != "2" {
                return Err(err(format!("only p = 2 is supported, found {}", p.trim())));
            }
            seen_p = true;
        } else if let Some(list) = content.strip_prefix("gens") {
            if !seen_p {
                return Err(err("expected `p 2` before `gens`".into()));
            }
            if module.is_some() {
                return Err(err("duplicate `gens` line".into()));
            }
            let degrees = list
                .split_whitespace()
                .map(|d| d.parse::<i32>().map_err(|_| err(format!("bad degree {d:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            if degrees.is_empty() {
                return Err(err("`gens` needs at least one degree".into()));
            }
            module = Some(
                ModulePresentation::new(name, degrees).map_err(|source| ModuleFileError::Invalid { line, source })?,
            );
        } else if content.starts_with("Sq(") {
            let m = module.as_mut().ok_or_else(|| err("action before `gens`".into()))?;
            let (lhs, rhs) = content.split_once('=').ok_or_else(|| err("expected `Sq(R) g_i = …`".into()))?;
            let close = lhs.find(')').ok_or_else(|| err("unclosed `Sq(`".into()))?;
            let op: MilnorProfile = lhs[..=close].parse().map_err(err)?;
            let src = gen_index(lhs[close + 1..].trim())
                .ok_or_else(|| err(format!("expected a generator, found {:?}", lhs[close + 1..].trim())))?;
            let targets = parse_sum(rhs).map_err(err)?;
            m.set_action(op, src, targets).map_err(|source| ModuleFileError::Invalid { line, source })?;
        } else {
            return Err(err(format!("unrecognized line {content:?}")));
        }
    }
    let module =
        module.ok_or(ModuleFileError::Parse { line: text.lines().count(), msg: "missing `gens` line".into() })?;
    module.validate().map_err(ModuleFileError::Module)?;
    Ok(module)
}

/// Reads a module file; the module is named after the file stem.
pub fn load_module_file(path: impl AsRef<Path>) -> Result<ModulePresentation, ModuleFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModuleFileError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    let name = path.file_stem().map_or("module".into(), |s| s.to_string_lossy().into_owned());
    parse_module(&name, &text)
}

/// The file form of `m`; [`parse_module`] reads it back to `m`.
pub fn write_module(m: &ModulePresentation) -> String {
    let mut out = String::from("p 2\ngens");
    for d in m.gen_degrees() {
        let _ = write!(out, " {d}");
    }
    out.push('\n');
    for (op, src, targets) in m.actions() {
        let rhs: Vec<String> = targets.iter().map(|t| format!("g{t}")).collect();
        let _ = writeln!(out, "{op} g{src} = {}", rhs.join(" + "));
    }
    out
}
