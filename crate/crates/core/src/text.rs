//! Line-oriented helpers shared by the spec-file parsers.

use crate::error::{Error, Result};
use crate::gf::GaloisField;

/// A non-empty content line: its 1-based number and whitespace-separated tokens.
pub(crate) struct Line<'a> {
    pub number: usize,
    pub tokens: Vec<&'a str>,
}

/// Splits text into content lines, dropping comments and blank lines.
pub(crate) fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = body.split_whitespace().collect();
            (!tokens.is_empty()).then_some(Line { number: i + 1, tokens })
        })
        .collect()
}

pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

pub(crate) fn parse_int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| syntax(line, format!("expected {what}, found '{tok}'")))
}

/// The leading header: a size keyword (`n` or `d`), `q`, and an optional `modulus`.
pub(crate) struct Header {
    pub size: usize,
    pub field: GaloisField,
    /// Index of the first line after the header.
    pub next: usize,
}

pub(crate) fn parse_header(lines: &[Line<'_>], size_key: &str) -> Result<Header> {
    let mut size = None;
    let mut q = None;
    let mut modulus = None;
    let mut idx = 0;
    while idx < lines.len() {
        let line = &lines[idx];
        let key = line.tokens[0];
        if key != size_key && key != "q" && key != "modulus" {
            break;
        }
        let args = &line.tokens[1..];
        if key == "modulus" {
            if args.is_empty() {
                return Err(syntax(line.number, "modulus needs coefficients"));
            }
            let coeffs = args
                .iter()
                .map(|t| parse_int::<u32>(line.number, t, "a coefficient"))
                .collect::<Result<Vec<_>>>()?;
            modulus = Some(coeffs);
        } else {
            if args.len() != 1 {
                return Err(syntax(line.number, format!("'{key}' takes exactly one integer")));
            }
            if key == "q" {
                q = Some(parse_int::<u32>(line.number, args[0], "an integer")?);
            } else {
                size = Some(parse_int::<usize>(line.number, args[0], "an integer")?);
            }
        }
        idx += 1;
    }
    let at = lines.get(idx).or(lines.last()).map_or(1, |l| l.number);
    let size = size.ok_or_else(|| syntax(at, format!("missing '{size_key}' header")))?;
    let q = q.ok_or_else(|| syntax(at, "missing 'q' header"))?;
    let field = GaloisField::new(q, modulus)?;
    Ok(Header { size, field, next: idx })
}

/// Header lines reproducing `field`, for emitters.
pub(crate) fn emit_header(size_key: &str, size: usize, field: &GaloisField) -> String {
    let mut out = format!("{size_key} {size}\nq {}\n", field.q());
    if let Some(m) = field.modulus() {
        let coeffs: Vec<String> = m.iter().map(u32::to_string).collect();
        out.push_str(&format!("modulus {}\n", coeffs.join(" ")));
    }
    out
}
