//! Polytope input files.
//!
//! JSON: `{"name": "optional", "vertices": [[0,0],[1,0],...]}`.
//! Text: one point per line, whitespace-separated integers; `#` starts a
//! comment line and blank lines are skipped.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::exactmath::IntVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointFile {
    pub name: Option<String>,
    pub points: Vec<IntVector>,
}

#[derive(Deserialize)]
struct JsonInput {
    name: Option<String>,
    vertices: Vec<IntVector>,
}

pub fn parse_json(s: &str) -> Result<PointFile> {
    let input: JsonInput = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(PointFile {
        name: input.name,
        points: input.vertices,
    })
}

pub fn parse_text(s: &str) -> Result<PointFile> {
    let mut points = Vec::new();
    for (lineno, line) in s.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let point = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i64>()
                    .map_err(|e| Error::Parse(format!("line {}: {tok:?}: {e}", lineno + 1)))
            })
            .collect::<Result<IntVector>>()?;
        points.push(point);
    }
    Ok(PointFile { name: None, points })
}

/// Parses JSON when the content starts with `{`, plain text otherwise.
pub fn parse_auto(s: &str) -> Result<PointFile> {
    if s.trim_start().starts_with('{') {
        parse_json(s)
    } else {
        parse_text(s)
    }
}

pub fn read_point_file(path: &Path) -> Result<PointFile> {
    let s = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut file = parse_auto(&s)?;
    if file.name.is_none() {
        file.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
    }
    Ok(file)
}

/// Renders points in the plain-text format.
pub fn to_text(points: &[IntVector]) -> String {
    let mut out = String::new();
    for p in points {
        let line: Vec<String> = p.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
