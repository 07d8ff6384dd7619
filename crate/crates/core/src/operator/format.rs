//! Plain-text matrix format.
//!
//! One row per line, entries separated by whitespace, `#` starts a comment
//! line. An entry is `R`, `R+Ii` or `R-Ii` with decimal or scientific
//! literals, e.g. `0.18`, `0.19-0.015i`, `1.5e-3+2e-4i`.

use super::{ComplexOperator, C64};
use crate::error::{Error, Result};

fn parse_real(s: &str) -> Option<f64> {
    if s.is_empty() {
        return None;
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn split_point(body: &str) -> Option<usize> {
    let bytes = body.as_bytes();
    (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
}

/// Parses a single complex literal.
pub(crate) fn parse_complex(token: &str) -> Option<C64> {
    let Some(body) = token.strip_suffix('i') else {
        return parse_real(token).map(|re| C64::new(re, 0.0));
    };
    let imag = |s: &str| match s {
        "+" | "" => Some(1.0),
        "-" => Some(-1.0),
        _ => parse_real(s),
    };
    match split_point(body) {
        Some(k) => Some(C64::new(parse_real(&body[..k])?, imag(&body[k..])?)),
        None => Some(C64::new(0.0, imag(body)?)),
    }
}

/// Parses consecutive numbered lines into a square operator.
///
/// `lines` holds `(line_number, text)` pairs with comments and blanks
/// already removed.
pub(crate) fn parse_block(lines: &[(usize, &str)]) -> Result<ComplexOperator> {
    let dim = lines.len();
    if dim == 0 {
        return Err(Error::Format("empty matrix".into()));
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (line_no, text) in lines {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != dim {
            return Err(Error::RaggedRow {
                row: *line_no,
                expected: dim,
                found: tokens.len(),
            });
        }
        for (c, tok) in tokens.iter().enumerate() {
            let z = parse_complex(tok).ok_or_else(|| Error::Parse {
                row: *line_no,
                column: c + 1,
                token: tok.to_string(),
                message: "not a complex literal".into(),
            })?;
            data.push(z);
        }
    }
    ComplexOperator::from_vec(dim, data)
}

pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.starts_with('#'))
}

pub fn parse_operator(text: &str) -> Result<ComplexOperator> {
    let lines: Vec<(usize, &str)> = content_lines(text).filter(|(_, l)| !l.is_empty()).collect();
    parse_block(&lines)
}

/// Parses a matrix whose entries must all be real.
pub fn parse_real_matrix(text: &str) -> Result<nalgebra::DMatrix<f64>> {
    let op = parse_operator(text)?;
    let n = op.dim();
    for i in 0..n {
        for j in 0..n {
            if op[(i, j)].im != 0.0 {
                return Err(Error::Parse {
                    row: i + 1,
                    column: j + 1,
                    token: format_complex(op[(i, j)]),
                    message: "expected a real entry".into(),
                });
            }
        }
    }
    Ok(op.real_part())
}

pub(crate) fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format_real(z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", format_real(z.re), format_real(-z.im))
    } else {
        format!("{}+{}i", format_real(z.re), format_real(z.im))
    }
}

/// Serializes with 17 significant digits per component.
pub fn serialize_operator(op: &ComplexOperator) -> String {
    let n = op.dim();
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| format_complex(op[(i, j)])).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
