//! Polytope JSON documents: `{"rank": 2, "vertices": [["1","0"], ["0","1"], ["-1","-1"]]}`.
//!
//! Coordinates are strings holding an integer or a `p/q` fraction; bare JSON
//! integers are accepted too. Errors carry either the line and column of a
//! syntax problem or the path of the offending field.

use serde_json::{json, Value};
use thiserror::Error;

use super::{LatticePolytope, PolytopeError, RationalPoint};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error)]
pub enum PolytopeIoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("invalid polytope: {0}")]
    Geometry(#[from] PolytopeError),
}

fn field(path: impl Into<String>, message: impl Into<String>) -> PolytopeIoError {
    PolytopeIoError::Field { path: path.into(), message: message.into() }
}

pub fn parse_rational_value(v: &Value, path: &str) -> Result<Rational, PolytopeIoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| field(path, e)),
        Value::Number(n) if n.is_i64() || n.is_u64() => {
            parse_rational(&n.to_string()).map_err(|e| field(path, e))
        }
        _ => Err(field(path, "expected an integer or \"p/q\" string")),
    }
}

pub fn parse_polytope_json(text: &str) -> Result<LatticePolytope, PolytopeIoError> {
    let value: Value = serde_json::from_str(text).map_err(|e| PolytopeIoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    polytope_from_value(&value)
}

pub fn polytope_from_value(value: &Value) -> Result<LatticePolytope, PolytopeIoError> {
    let obj = value.as_object().ok_or_else(|| field("$", "expected an object"))?;
    let rank = obj
        .get("rank")
        .ok_or_else(|| field("rank", "missing field"))?
        .as_u64()
        .ok_or_else(|| field("rank", "expected a nonnegative integer"))? as usize;
    let verts = obj
        .get("vertices")
        .ok_or_else(|| field("vertices", "missing field"))?
        .as_array()
        .ok_or_else(|| field("vertices", "expected an array"))?;
    if verts.is_empty() {
        return Err(field("vertices", "expected at least one vertex"));
    }
    let mut points: Vec<RationalPoint> = Vec::with_capacity(verts.len());
    for (i, v) in verts.iter().enumerate() {
        let coords = v
            .as_array()
            .ok_or_else(|| field(format!("vertices[{i}]"), "expected an array"))?;
        if coords.len() != rank {
            return Err(field(
                format!("vertices[{i}]"),
                format!("expected {rank} coordinates, found {}", coords.len()),
            ));
        }
        let p = coords
            .iter()
            .enumerate()
            .map(|(j, c)| parse_rational_value(c, &format!("vertices[{i}][{j}]")))
            .collect::<Result<RationalPoint, _>>()?;
        points.push(p);
    }
    Ok(LatticePolytope::new(rank, points)?)
}

pub fn polytope_to_value(p: &LatticePolytope) -> Value {
    let verts: Vec<Vec<String>> =
        p.vertices().iter().map(|v| v.iter().map(format_rational).collect()).collect();
    json!({ "rank": p.rank(), "vertices": verts })
}
