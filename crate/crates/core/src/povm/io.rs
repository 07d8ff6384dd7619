//! POVM text format: a header `povm d=<d> n=<d²> kind=<SIC|GSIC:a=<a>>`
//! followed by `n` matrices separated by blank lines.

use std::fs;
use std::path::Path;

use super::{validate_povm, Povm, PovmKind};
use crate::error::{Error, Result};
use crate::operator::format::{content_lines, format_real, parse_block};
use crate::operator::serialize_operator;

fn header_field<'a>(fields: &[&'a str], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find_map(|f| f.strip_prefix(key).and_then(|v| v.strip_prefix('=')))
        .ok_or_else(|| Error::Format(format!("POVM header is missing `{key}=`")))
}

fn parse_kind(text: &str) -> Result<PovmKind> {
    if text == "SIC" {
        return Ok(PovmKind::Sic);
    }
    let a = text
        .strip_prefix("GSIC:a=")
        .and_then(|v| v.parse::<f64>().ok())
        .ok_or_else(|| Error::Format(format!("unknown POVM kind `{text}`")))?;
    Ok(PovmKind::Gsic { a })
}

/// Parses without algebraic validation.
pub fn parse_povm(text: &str) -> Result<Povm> {
    let mut lines = content_lines(text).skip_while(|(_, l)| l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Format("empty POVM file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.first() != Some(&"povm") {
        return Err(Error::Format(format!(
            "expected `povm` header, found `{header}`"
        )));
    }
    let parse_usize = |key: &str| -> Result<usize> {
        header_field(&fields, key)?
            .parse()
            .map_err(|_| Error::Format(format!("bad `{key}` in POVM header")))
    };
    let dim = parse_usize("d")?;
    let count = parse_usize("n")?;
    let kind = parse_kind(header_field(&fields, "kind")?)?;
    if count != dim * dim {
        return Err(Error::Format(format!(
            "header declares n={count}, expected d²={}",
            dim * dim
        )));
    }

    let mut blocks: Vec<Vec<(usize, &str)>> = Vec::new();
    let mut current = Vec::new();
    for (no, line) in lines {
        if line.is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
        } else {
            current.push((no, line));
        }
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    if blocks.len() != count {
        return Err(Error::Format(format!(
            "expected d²={count} elements, found {}",
            blocks.len()
        )));
    }
    let elements = blocks
        .iter()
        .map(|b| parse_block(b))
        .collect::<Result<Vec<_>>>()?;
    Povm::new(dim, elements, kind)
}

pub fn serialize_povm(p: &Povm) -> String {
    let kind = match p.kind() {
        PovmKind::Sic => "SIC".to_string(),
        PovmKind::Gsic { a } => format!("GSIC:a={}", format_real(a)),
    };
    let mut out = format!("povm d={} n={} kind={kind}\n", p.dim(), p.len());
    for e in p.elements() {
        out.push('\n');
        out.push_str(&serialize_operator(e));
    }
    out
}

/// Loads and re-validates at `tol`.
pub fn load_povm(path: impl AsRef<Path>, tol: f64) -> Result<Povm> {
    let povm = parse_povm(&fs::read_to_string(path)?)?;
    let report = validate_povm(&povm, tol);
    if report.kind_confirmed.is_none() {
        return Err(Error::Validation(format!(
            "POVM violates its declared kind by {:.3e} (tolerance {tol:.1e})",
            report.max_violation
        )));
    }
    Ok(povm)
}

pub fn save_povm(p: &Povm, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, serialize_povm(p))?;
    Ok(())
}
