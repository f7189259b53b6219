//! Reading complexes and ideals from JSON or the terse line format.
//!
//! Line format: `#` starts a comment, an optional `n = 7` line fixes the
//! ambient size, and every other line is a facet (`1 2 3`, `{}` for the
//! empty face) or a generator (`x1*x2^2`). Commas may separate items.

use std::path::Path;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::simplicial::{SimplicialComplex, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Complex(SimplicialComplex),
    Ideal(MonomialIdeal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Parsed {
    pub input: Input,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    ComplexText,
    IdealText,
}

/// Decide the format from the file extension, falling back to content.
pub fn sniff(path: Option<&Path>, text: &str) -> Format {
    let ext = path.and_then(Path::extension).and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
    match ext.as_deref() {
        Some("json") => return Format::Json,
        Some("cx" | "complex" | "facets") => return Format::ComplexText,
        Some("ideal" | "gens") => return Format::IdealText,
        _ => {}
    }
    let first = content_lines(text).find(|l| header_n(l).is_none());
    match first {
        Some(l) if l.starts_with('{') && l != "{}" || l.starts_with('[') => Format::Json,
        Some(l) if l.contains('x') => Format::IdealText,
        Some(_) => Format::ComplexText,
        None if text.trim_start().starts_with('{') => Format::Json,
        None => Format::ComplexText,
    }
}

pub fn parse_input(text: &str, path: Option<&Path>) -> Result<Parsed> {
    match sniff(path, text) {
        Format::Json => {
            let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
            parse_json(&v)
        }
        Format::ComplexText => parse_complex_text(text),
        Format::IdealText => parse_ideal_text(text),
    }
}

/// Treat `arg` as inline data when it looks like JSON or spans several
/// lines, otherwise as a path.
pub fn read_input(arg: &str) -> Result<Parsed> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') || arg.contains('\n') {
        return parse_input(arg, None);
    }
    let path = Path::new(arg);
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{}`: {e}", path.display())))?;
    parse_input(&text, Some(path))
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
}

fn header_n(line: &str) -> Option<&str> {
    let rest = line.strip_prefix('n')?.trim_start();
    let rest = rest.strip_prefix('=').or_else(|| rest.strip_prefix(':')).unwrap_or(rest);
    let rest = rest.trim();
    (!rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit())).then_some(rest)
}

fn parse_n(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("bad variable count `{s}`")))
}

fn normalizing_warnings(dropped: &[Vec<usize>]) -> Vec<String> {
    dropped
        .iter()
        .map(|f| format!("dropped non-maximal or repeated face {f:?}"))
        .collect()
}

fn build_complex(n: Option<usize>, lists: Vec<Vec<usize>>, mut warnings: Vec<String>) -> Result<Parsed> {
    let top = lists.iter().flatten().copied().max().unwrap_or(0);
    let n = match n {
        Some(n) => n,
        None => {
            if top > 0 {
                warnings.push(format!("vertex count not given; using n = {top}"));
            }
            top
        }
    };
    if n > MAX_VERTICES {
        return Err(Error::InvalidInput(format!("{n} vertices exceeds the maximum of {MAX_VERTICES}")));
    }
    for l in &lists {
        let mut s = l.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            warnings.push(format!("repeated vertex in face {l:?}"));
        }
    }
    let (c, dropped) = SimplicialComplex::from_vertex_lists(n, &lists)?;
    warnings.extend(normalizing_warnings(&dropped));
    Ok(Parsed {
        input: Input::Complex(c),
        warnings,
    })
}

fn build_ideal(n: Option<usize>, gens: Vec<String>) -> Result<Parsed> {
    let mut warnings = Vec::new();
    let n = match n {
        Some(n) => n,
        None => {
            let n = gens.iter().map(|g| max_variable(g)).max().unwrap_or(0);
            warnings.push(format!("variable count not given; using n = {n}"));
            n
        }
    };
    let monos = gens.iter().map(|g| Monomial::parse(g, n)).collect::<Result<Vec<_>>>()?;
    let count = monos.len();
    let ideal = MonomialIdeal::new(n, monos)?;
    if ideal.gens().len() < count {
        warnings.push(format!("dropped {} redundant generators", count - ideal.gens().len()));
    }
    Ok(Parsed {
        input: Input::Ideal(ideal),
        warnings,
    })
}

fn max_variable(s: &str) -> usize {
    let b = s.as_bytes();
    let mut best = 0;
    for (k, _) in s.match_indices('x') {
        let digits: String = b[k + 1..]
            .iter()
            .map(|&c| c as char)
            .skip_while(|&c| c == '_' || c == '{')
            .take_while(char::is_ascii_digit)
            .collect();
        best = best.max(digits.parse().unwrap_or(0));
    }
    best
}

fn split_items(line: &str) -> impl Iterator<Item = &str> {
    line.split(',').map(str::trim).filter(|s| !s.is_empty())
}

pub fn parse_complex_text(text: &str) -> Result<Parsed> {
    let mut n = None;
    let mut lists = Vec::new();
    for line in content_lines(text) {
        if let Some(v) = header_n(line) {
            n = Some(parse_n(v)?);
            continue;
        }
        let line = line.trim_start_matches('[').trim_end_matches(']');
        if line == "{}" || line == "∅" {
            lists.push(Vec::new());
            continue;
        }
        let face = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad vertex `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        lists.push(face);
    }
    build_complex(n, lists, Vec::new())
}

pub fn parse_ideal_text(text: &str) -> Result<Parsed> {
    let mut n = None;
    let mut gens = Vec::new();
    for line in content_lines(text) {
        if let Some(v) = header_n(line) {
            n = Some(parse_n(v)?);
            continue;
        }
        let line = line.trim_start_matches('(').trim_end_matches(')');
        gens.extend(split_items(line).map(str::to_string));
    }
    build_ideal(n, gens)
}

pub fn parse_json(v: &Value) -> Result<Parsed> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("expected a JSON object with `facets` or `gens`".into()))?;
    let n = match obj.get("n") {
        None | Some(Value::Null) => None,
        Some(x) => Some(x.as_u64().ok_or_else(|| Error::Parse("`n` must be a non-negative integer".into()))? as usize),
    };
    if obj.get("void").and_then(Value::as_bool) == Some(true) {
        let n = n.ok_or_else(|| Error::Parse("void complex needs `n`".into()))?;
        return Ok(Parsed {
            input: Input::Complex(SimplicialComplex::void(n)),
            warnings: Vec::new(),
        });
    }
    if let Some(f) = obj.get("facets") {
        let lists: Vec<Vec<usize>> =
            serde_json::from_value(f.clone()).map_err(|e| Error::Parse(format!("bad `facets`: {e}")))?;
        return build_complex(n, lists, Vec::new());
    }
    if let Some(g) = obj.get("gens") {
        let arr = g.as_array().ok_or_else(|| Error::Parse("`gens` must be an array".into()))?;
        if arr.iter().all(Value::is_string) {
            return build_ideal(n, arr.iter().map(|s| s.as_str().unwrap_or_default().to_string()).collect());
        }
        let exps: Vec<Vec<u32>> =
            serde_json::from_value(g.clone()).map_err(|e| Error::Parse(format!("bad `gens`: {e}")))?;
        let n = match n {
            Some(n) => n,
            None => exps.first().map_or(0, Vec::len),
        };
        if let Some(e) = exps.iter().find(|e| e.len() != n) {
            return Err(Error::Parse(format!("exponent vector {e:?} does not have length {n}")));
        }
        return build_ideal_exps(n, &exps);
    }
    Err(Error::Parse("expected `facets` or `gens`".into()))
}

fn build_ideal_exps(n: usize, exps: &[Vec<u32>]) -> Result<Parsed> {
    let ideal = MonomialIdeal::from_exponents(n, exps)?;
    let mut warnings = Vec::new();
    if ideal.gens().len() < exps.len() {
        warnings.push(format!("dropped {} redundant generators", exps.len() - ideal.gens().len()));
    }
    Ok(Parsed {
        input: Input::Ideal(ideal),
        warnings,
    })
}

pub fn complex_to_json(c: &SimplicialComplex) -> Value {
    if c.is_void() {
        json!({ "n": c.n(), "facets": [], "void": true })
    } else {
        json!({ "n": c.n(), "facets": c.facet_lists() })
    }
}

pub fn ideal_to_json(i: &MonomialIdeal) -> Value {
    let gens: Vec<&[u32]> = i.gens().iter().map(Monomial::exps).collect();
    json!({ "n": i.n_vars(), "gens": gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(p: Parsed) -> SimplicialComplex {
        match p.input {
            Input::Complex(c) => c,
            other => panic!("expected complex, got {other:?}"),
        }
    }

    fn ideal(p: Parsed) -> MonomialIdeal {
        match p.input {
            Input::Ideal(i) => i,
            other => panic!("expected ideal, got {other:?}"),
        }
    }

    #[test]
    fn json_complex_normalizes() {
        let p = parse_input(r#"{"n": 4, "facets": [[1,2],[1],[2,3],[1,2]]}"#, None).unwrap();
        assert_eq!(p.warnings.len(), 2);
        let c = complex(p);
        assert_eq!(c.facet_lists(), vec![vec![1, 2], vec![2, 3]]);
        assert_eq!(c.n(), 4);
        assert!(parse_input(r#"{"n": 2, "facets": [[3]]}"#, None).is_err());
    }

    #[test]
    fn void_and_empty_are_distinct() {
        let v = complex(parse_input(r#"{"n": 3, "facets": [], "void": true}"#, None).unwrap());
        let e = complex(parse_input(r#"{"n": 3, "facets": [[]]}"#, None).unwrap());
        assert!(v.is_void());
        assert!(!e.is_void());
        assert_eq!(complex(parse_json(&complex_to_json(&v)).unwrap()), v);
        assert_eq!(complex(parse_complex_text("n=3\n{}\n").unwrap()), e);
    }

    #[test]
    fn text_formats_are_sniffed() {
        let c = complex(parse_input("# a path\n1 2\n2 3\n", None).unwrap());
        assert_eq!(c.n(), 3);
        let i = ideal(parse_input("n = 4\nx1*x2\nx_3x_4, x1^2\n", None).unwrap());
        assert_eq!(i.n_vars(), 4);
        assert_eq!(i.gens().len(), 3);
        assert_eq!(sniff(Some(Path::new("a.ideal")), "1 2"), Format::IdealText);
        assert_eq!(sniff(None, "{\n \"n\": 2 }"), Format::Json);
    }

    #[test]
    fn ideal_json_round_trip() {
        let i = ideal(parse_input(r#"{"n": 3, "gens": [[1,1,0],[0,1,1],[1,1,1]]}"#, None).unwrap());
        assert_eq!(i.gens().len(), 2);
        assert_eq!(ideal(parse_json(&ideal_to_json(&i)).unwrap()), i);
        let j = ideal(parse_input(r#"{"gens": ["x1*x2", "x2*x3"]}"#, None).unwrap());
        assert_eq!(i, j);
    }
}
