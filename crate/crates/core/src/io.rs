//! Polygon text format.
//!
//! One vertex per line as `x y`, each coordinate an integer, decimal or
//! `p/q` fraction. Lines starting with `#` and blank lines are ignored.
//! The first vertex is not repeated at the end.

use crate::geometry::scalar::parse_scalar;
use crate::geometry::{GeometryError, Point, SimplePolygon};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("invalid polygon: {0}")]
    Invalid(GeometryError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl From<GeometryError> for ParseError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::NotSimple(i, j) => ParseError::NotSimple(i, j),
            GeometryError::TooFewVertices(n) => ParseError::TooFewVertices(n),
            other => ParseError::Invalid(other),
        }
    }
}

/// Parses polygon text. Clockwise input is reversed to counter-clockwise.
pub fn parse_polygon_str(text: &str) -> Result<SimplePolygon, ParseError> {
    let mut pts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut coords = Vec::with_capacity(2);
        let mut rest = raw;
        let mut offset = 0;
        loop {
            let skip = rest.len() - rest.trim_start().len();
            rest = &rest[skip..];
            offset += skip;
            if rest.is_empty() {
                break;
            }
            let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let token = &rest[..len];
            if coords.len() == 2 {
                return Err(ParseError::Syntax {
                    line: line_no,
                    column: offset + 1,
                    message: format!("unexpected third value `{token}`"),
                });
            }
            let v = parse_scalar(token).map_err(|e| ParseError::Syntax {
                line: line_no,
                column: offset + e.offset + 1,
                message: format!("{} in `{token}`", e.message),
            })?;
            coords.push(v);
            rest = &rest[len..];
            offset += len;
        }
        if coords.len() < 2 {
            return Err(ParseError::Syntax {
                line: line_no,
                column: raw.trim_end().len() + 1,
                message: "expected two coordinates".into(),
            });
        }
        let y = coords.pop().expect("two values");
        let x = coords.pop().expect("two values");
        pts.push(Point::new(x, y));
    }
    Ok(SimplePolygon::new(pts)?)
}

pub fn parse_polygon(path: impl AsRef<Path>) -> Result<SimplePolygon, ParseError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_polygon_str(&text)
}

/// Polygon text for `poly`, coordinates written as exact fractions.
pub fn format_polygon(poly: &SimplePolygon) -> String {
    poly.vertices().iter().map(|v| format!("{} {}\n", v.x(), v.y())).collect()
}
