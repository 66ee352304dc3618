//! Line-oriented ring files:
//!
//! ```text
//! # Heisenberg
//! name heisenberg
//! dim 3
//! grading 2 1
//! bracket 1 2 = 1*3
//! ```
//!
//! Indices are 1-based, `bracket i j` requires `i < j`, coefficients may be
//! negative, and brackets not mentioned are zero.

use std::collections::BTreeSet;

use super::LieRing;
use crate::error::{Error, Result};

pub fn parse_presentation(text: &str) -> Result<LieRing> {
    let mut name: Option<String> = None;
    let mut ring: Option<LieRing> = None;
    let mut grading: Option<(usize, Vec<usize>)> = None;
    let mut seen = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| Error::Syntax { line: line_no, msg: msg.to_string() };
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match keyword {
            "name" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(syntax("expected `name <identifier>`"));
                }
                name = Some(rest.to_string());
            }
            "dim" => {
                if ring.is_some() {
                    return Err(syntax("`dim` given twice"));
                }
                let n: usize = rest.parse().map_err(|_| syntax("expected `dim <n>`"))?;
                if n == 0 {
                    return Err(syntax("dimension must be at least 1"));
                }
                if n > 64 {
                    return Err(syntax("dimension above 64 is not supported"));
                }
                ring = Some(LieRing::new("", n)?);
            }
            "grading" => {
                let parts: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| syntax("expected `grading <d_1> <d_2> ...`"))?;
                if parts.is_empty() || parts.contains(&0) {
                    return Err(syntax("grading parts must be positive"));
                }
                grading = Some((line_no, parts));
            }
            "bracket" => {
                let ring = ring.as_mut().ok_or_else(|| syntax("`bracket` before `dim`"))?;
                let n = ring.dim();
                let (lhs, rhs) = rest.split_once('=').ok_or_else(|| syntax("expected `bracket i j = ...`"))?;
                let idx: Vec<usize> = lhs
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| syntax("bracket indices must be positive integers"))?;
                let [i, j] = idx[..] else {
                    return Err(syntax("expected exactly two indices before `=`"));
                };
                for x in [i, j] {
                    if x == 0 || x > n {
                        return Err(Error::IndexOutOfRange { line: line_no, index: x, dim: n });
                    }
                }
                if i >= j {
                    return Err(syntax("bracket indices must satisfy i < j"));
                }
                let terms = parse_terms(rhs, n, line_no)?;
                if !seen.insert((i, j)) {
                    return Err(Error::DuplicateBracket { line: line_no, i, j });
                }
                ring.set_bracket(i - 1, j - 1, &terms)?;
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }

    let mut ring = ring.ok_or(Error::Syntax { line: 0, msg: "missing `dim` line".into() })?;
    if let Some((line, g)) = grading {
        ring.set_grading(Some(g)).map_err(|e| Error::Syntax { line, msg: e.to_string() })?;
    }
    ring.rename(name.unwrap_or_else(|| "ring".to_string()));
    Ok(ring)
}

fn parse_terms(rhs: &str, n: usize, line: usize) -> Result<Vec<(i64, usize)>> {
    let rhs = rhs.trim();
    if rhs.is_empty() {
        return Err(Error::Syntax { line, msg: "empty right-hand side".into() });
    }
    if rhs == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in rhs.split('+') {
        let term: String = term.split_whitespace().collect();
        let bad = || Error::Syntax { line, msg: format!("malformed term `{term}`, expected `<c>*<k>`") };
        let (c, k) = match term.split_once('*') {
            Some((c, k)) => (c.parse::<i64>().map_err(|_| bad())?, k),
            None => (1, term.as_str()),
        };
        let k: usize = k.parse().map_err(|_| bad())?;
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { line, index: k, dim: n });
        }
        out.push((c, k - 1));
    }
    Ok(out)
}
