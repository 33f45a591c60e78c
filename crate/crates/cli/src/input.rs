//! Argument decoding. Every structured argument accepts inline text, inline
//! JSON, or `@path` to read either from a file.

use algcomp_core::circuit::CircuitGraph;
use algcomp_core::field::parse_rational;
use algcomp_core::interp::ValueTable;
use algcomp_core::poly::parse::{parse_point, parse_poly, parse_polymap};
use algcomp_core::{FieldElem, Poly, PolyMap, Rational};
use serde::de::DeserializeOwned;

use crate::CliError;

pub fn load(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn looks_like_json(s: &str) -> bool {
    let t = s.trim_start();
    t.starts_with('{') || t.starts_with('[')
}

fn json<T: DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    serde_json::from_str(s).map_err(|e| CliError::Usage(format!("bad {what} JSON: {e}")))
}

pub fn poly(arg: &str, nvars: Option<usize>) -> Result<Poly, CliError> {
    let s = load(arg)?;
    if s.trim_start().starts_with('{') {
        let p: Poly = json("polynomial", &s)?;
        match nvars {
            Some(n) if n != p.nvars() => Err(CliError::Usage(format!(
                "polynomial has {} variables, --nvars says {n}",
                p.nvars()
            ))),
            _ => Ok(p),
        }
    } else {
        Ok(parse_poly(&s, nvars)?)
    }
}

pub fn polymap(arg: &str, nvars: Option<usize>) -> Result<PolyMap, CliError> {
    let s = load(arg)?;
    if s.trim_start().starts_with('{') {
        let f: PolyMap = json("map", &s)?;
        match nvars {
            Some(n) if n != f.nvars() => Err(CliError::Usage(format!(
                "map has {} variables, --nvars says {n}",
                f.nvars()
            ))),
            _ => Ok(f),
        }
    } else {
        Ok(parse_polymap(&s, nvars)?)
    }
}

/// Several polynomials sharing one variable count: the largest index seen
/// unless `nvars` is given.
pub fn poly_list(args: &[String], nvars: Option<usize>) -> Result<Vec<Poly>, CliError> {
    if args.is_empty() {
        return Err(CliError::Usage("at least one generator is required".into()));
    }
    let texts = args.iter().map(|a| load(a)).collect::<Result<Vec<_>, _>>()?;
    if texts.iter().any(|t| looks_like_json(t)) {
        let polys = texts
            .iter()
            .map(|t| json::<Poly>("polynomial", t))
            .collect::<Result<Vec<_>, _>>()?;
        let n = nvars.unwrap_or(polys[0].nvars());
        if polys.iter().any(|p| p.nvars() != n) {
            return Err(CliError::Usage("generators disagree on the number of variables".into()));
        }
        return Ok(polys);
    }
    let joined = format!("({})", texts.join(", "));
    Ok(parse_polymap(&joined, nvars)?.into_components())
}

pub fn point(arg: &str) -> Result<Vec<FieldElem>, CliError> {
    let s = load(arg)?;
    if s.trim_start().starts_with('[') {
        json("point", &s)
    } else {
        Ok(parse_point(&s)?)
    }
}

/// A list of points: JSON `[[..],[..]]` or text `(a,b); (c,d)`.
pub fn points(arg: &str) -> Result<Vec<Vec<FieldElem>>, CliError> {
    let s = load(arg)?;
    if s.trim_start().starts_with('[') {
        json("point list", &s)
    } else {
        s.split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| parse_point(p).map_err(CliError::from))
            .collect()
    }
}

pub fn rationals(arg: &str) -> Result<Vec<Rational>, CliError> {
    let s = load(arg)?;
    let items: Vec<serde_json::Value> = if s.trim_start().starts_with('[') {
        json("rational list", &s)?
    } else {
        s.trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| serde_json::Value::String(t.trim().to_string()))
            .collect()
    };
    items.iter().map(rational_value).collect()
}

pub fn matrix(arg: &str) -> Result<Vec<Vec<Rational>>, CliError> {
    let rows: Vec<Vec<serde_json::Value>> = json("matrix", &load(arg)?)?;
    rows.iter()
        .map(|r| r.iter().map(rational_value).collect())
        .collect()
}

fn rational_value(v: &serde_json::Value) -> Result<Rational, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(parse_rational(s)?),
        serde_json::Value::Number(n) => Ok(parse_rational(&n.to_string())?),
        other => Err(CliError::Usage(format!("expected a rational, got {other}"))),
    }
}

pub fn graph(arg: &str) -> Result<CircuitGraph, CliError> {
    let s = load(arg)?;
    serde_json::from_str(&s).map_err(|e| {
        // Structural problems surface through serde as messages; keep them
        // in the usage class so they map to exit code 2.
        CliError::Usage(format!("bad circuit graph: {e}"))
    })
}

pub fn table(arg: &str) -> Result<ValueTable, CliError> {
    json("value table", &load(arg)?)
}
