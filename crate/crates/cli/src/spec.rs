//! Web description files: `key = value` lines, `#` comments.
//!
//! ```text
//! degree = 4
//! F = p^4 + y^2*p^2 - y*p
//! base_point = 0 1
//! ```
//! or `slopes = [0, 1, x + y]` in place of `F`.

use std::fmt;

use webconn_core::kernel::{parse_ppoly, parse_ratfunc, ExprError, PPoly, RatFunc, Rational};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Equation(PPoly),
    Slopes(Vec<RatFunc>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebSpecFile {
    pub degree: usize,
    pub presentation: Presentation,
    pub base_point: (Rational, Rational),
}

impl fmt::Display for WebSpecFile {
    /// Canonical text, parseable by [`parse_spec`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree = {}", self.degree)?;
        match &self.presentation {
            Presentation::Equation(p) => writeln!(f, "F = {}", p)?,
            Presentation::Slopes(s) => {
                let items: Vec<String> = s.iter().map(ToString::to_string).collect();
                writeln!(f, "slopes = [{}]", items.join(", "))?
            }
        }
        writeln!(f, "base_point = {} {}", self.base_point.0, self.base_point.1)
    }
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> CliError {
    CliError::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Column (1-based, in characters) of byte offset `off` within `text`.
fn column(text: &str, off: usize) -> usize {
    text[..off.min(text.len())].chars().count() + 1
}

fn expr_error(line: usize, raw: &str, start: usize, e: ExprError) -> CliError {
    parse_error(line, column(raw, start + e.offset), e.message)
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: num_bigint::BigInt = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d == 0.into() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => s.parse::<num_bigint::BigInt>().ok().map(Rational::from_integer),
    }
}

/// Splits the body of `[a, b, c]` at top-level commas; offsets are relative to `body`.
fn split_items(body: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &body[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &body[start..]));
    out
}

pub fn parse_spec(text: &str) -> Result<WebSpecFile, CliError> {
    let mut degree: Option<(usize, usize)> = None;
    let mut equation: Option<(usize, PPoly)> = None;
    let mut slopes: Option<(usize, Vec<RatFunc>)> = None;
    let mut base_point: Option<(Rational, Rational)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            let first = content.len() - content.trim_start().len();
            return Err(parse_error(line, column(raw, first), "expected `key = value`"));
        };
        let key = content[..eq].trim();
        let value_start = eq + 1 + (content[eq + 1..].len() - content[eq + 1..].trim_start().len());
        let value = content[value_start..].trim_end();
        if value.is_empty() {
            return Err(parse_error(line, column(raw, value_start), format!("missing value for `{key}`")));
        }
        match key {
            "degree" => {
                let d = value
                    .parse::<usize>()
                    .map_err(|_| parse_error(line, column(raw, value_start), "degree must be a non-negative integer"))?;
                degree = Some((line, d));
            }
            "F" => {
                let f = parse_ppoly(value).map_err(|e| expr_error(line, raw, value_start, e))?;
                equation = Some((line, f));
            }
            "slopes" => {
                let inner = value
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| parse_error(line, column(raw, value_start), "slopes must be written [s1, s2, ...]"))?;
                let body_start = value_start + 1;
                let mut list = Vec::new();
                for (off, item) in split_items(inner) {
                    let lead = item.len() - item.trim_start().len();
                    let at = body_start + off + lead;
                    if item.trim().is_empty() {
                        return Err(parse_error(line, column(raw, at), "empty slope"));
                    }
                    let e = webconn_core::kernel::parse_expr(item).map_err(|e| expr_error(line, raw, body_start + off, e))?;
                    if e.uses_p() {
                        let p = item.find('p').unwrap_or(0);
                        return Err(parse_error(
                            line,
                            column(raw, body_start + off + p),
                            "variable p is not allowed in a slope",
                        ));
                    }
                    let s = parse_ratfunc(item).map_err(|e| expr_error(line, raw, body_start + off, e))?;
                    list.push(s);
                }
                slopes = Some((line, list));
            }
            "base_point" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                let parsed: Option<Vec<Rational>> = parts.iter().map(|s| parse_rational(s)).collect();
                match parsed {
                    Some(v) if v.len() == 2 => base_point = Some((v[0].clone(), v[1].clone())),
                    _ => {
                        return Err(parse_error(
                            line,
                            column(raw, value_start),
                            "base_point must be two rationals, e.g. `0 1/2`",
                        ))
                    }
                }
            }
            other => {
                let at = content.find(other).unwrap_or(0);
                return Err(parse_error(line, column(raw, at), format!("unknown key `{other}`")));
            }
        }
    }

    let presentation = match (equation, slopes) {
        (Some(_), Some((line, _))) => {
            return Err(parse_error(line, 1, "both F and slopes given; exactly one is allowed"))
        }
        (Some((_, f)), None) => Presentation::Equation(f),
        (None, Some((_, s))) => Presentation::Slopes(s),
        (None, None) => return Err(parse_error(1, 1, "missing F or slopes")),
    };
    let degree = match degree {
        Some((_, d)) => d,
        None => return Err(parse_error(1, 1, "missing degree")),
    };
    Ok(WebSpecFile {
        degree,
        presentation,
        base_point: base_point.unwrap_or_else(|| (Rational::from_integer(0.into()), Rational::from_integer(0.into()))),
    })
}
