//! Polytope interchange format and named built-in bodies.
//!
//! A polytope file is a JSON object
//! `{"dim": n, "vertices": [[x, ...], ...]}` where coordinates are JSON
//! integers or exact-rational strings `"p/q"`. Output always serializes
//! rationals as strings.

use serde_json::{json, Value};

use crate::exact::{format_rational, parse_rational, Rational};
use crate::polytope::{self, Point, VPolytope};
use crate::{Error, Result};

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::exact::rat_int(i))
            } else {
                Err(Error::BadRational(n.to_string()))
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(Error::BadRational(other.to_string())),
    }
}

pub fn polytope_to_json(p: &VPolytope) -> Value {
    json!({
        "dim": p.ambient_dim(),
        "vertices": p
            .vertices()
            .iter()
            .map(|v| v.iter().map(rational_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn polytope_from_json(v: &Value) -> Result<VPolytope> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::BadPolytopeFile("expected a JSON object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::BadPolytopeFile("missing integer field \"dim\"".into()))?
        as usize;
    if dim < 1 {
        return Err(Error::BadPolytopeFile("\"dim\" must be at least 1".into()));
    }
    let raw = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::BadPolytopeFile("missing array field \"vertices\"".into()))?;
    let mut points: Vec<Point> = Vec::with_capacity(raw.len());
    for row in raw {
        let row = row
            .as_array()
            .ok_or_else(|| Error::BadPolytopeFile("vertex is not an array".into()))?;
        if row.len() != dim {
            return Err(Error::BadPolytopeFile(format!(
                "vertex has {} coordinates, expected {dim}",
                row.len()
            )));
        }
        points.push(row.iter().map(rational_from_json).collect::<Result<_>>()?);
    }
    if points.is_empty() {
        return Err(Error::BadPolytopeFile("empty vertex list".into()));
    }
    VPolytope::hull(dim, points)
}

pub fn load_polytope(path: &std::path::Path) -> Result<VPolytope> {
    let body = std::fs::read_to_string(path)?;
    let value: Value = serde_json::from_str(&body)?;
    polytope_from_json(&value)
}

/// Resolves a body argument: a built-in name (`@hexagon`, `@cube:n`,
/// `@cross:n:l`, `@diamond:n`) or a path to a polytope JSON file.
pub fn resolve_body(spec: &str) -> Result<VPolytope> {
    let Some(name) = spec.strip_prefix('@') else {
        return load_polytope(std::path::Path::new(spec));
    };
    let parts: Vec<&str> = name.split(':').collect();
    let parse_dim = |s: &str| -> Result<usize> {
        let n: usize = s
            .parse()
            .map_err(|_| Error::BadPolytopeFile(format!("bad dimension {s:?} in {spec:?}")))?;
        if !(1..=10).contains(&n) {
            return Err(Error::CostGuard(format!("dimension {n} outside 1..=10")));
        }
        Ok(n)
    };
    match parts.as_slice() {
        ["hexagon"] => Ok(polytope::hexagon()),
        ["cube", n] => Ok(polytope::cube(parse_dim(n)?)),
        ["diamond", n] => Ok(polytope::diamond(parse_dim(n)?)),
        ["cross", n, l] => {
            let n = parse_dim(n)?;
            let l: i64 = l
                .parse()
                .map_err(|_| Error::BadPolytopeFile(format!("bad stretch {l:?} in {spec:?}")))?;
            if !(1..=1000).contains(&l) {
                return Err(Error::CostGuard(format!("stretch {l} outside 1..=1000")));
            }
            Ok(polytope::crosspolytope_stretched(n, l))
        }
        _ => Err(Error::BadPolytopeFile(format!(
            "unknown built-in body {spec:?}"
        ))),
    }
}
