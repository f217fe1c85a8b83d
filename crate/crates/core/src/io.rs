//! File formats: coordinate CSV (`x,y[,z...],w`) and abstract-metric JSON
//! (`{ "distance_matrix": [[...]], "weights": [...] }`).
//!
//! All file input and output for point clouds lives here; every other
//! module works on in-memory types.

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, MeasuredSpace};
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Deserialize)]
struct JsonCloud {
    distance_matrix: Vec<Vec<f64>>,
    weights: Vec<f64>,
    labels: Option<Vec<String>>,
}

/// Load a cloud from a coordinate CSV: header `x,y[,z...],w`, one point
/// per row, coordinates mapped to the Euclidean distance matrix.
pub fn load_csv(path: &Path) -> Result<MeasuredSpace> {
    let text = std::fs::read_to_string(path)?;
    parse_csv(&text)
}

/// Parse CSV text in the `x,y[,z...],w` format.
pub fn parse_csv(text: &str) -> Result<MeasuredSpace> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty CSV".into()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() < 2 || columns.last() != Some(&"w") {
        return Err(Error::Parse(format!(
            "CSV header must be coordinate columns followed by 'w', got '{header}'"
        )));
    }
    let dim = columns.len() - 1;
    let mut points = Vec::new();
    let mut weights = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != dim + 1 {
            return Err(Error::Parse(format!(
                "row {}: expected {} fields, got {}",
                lineno + 2,
                dim + 1,
                fields.len()
            )));
        }
        let mut point = Vec::with_capacity(dim);
        for f in &fields[..dim] {
            point.push(parse_f64(f, lineno + 2)?);
        }
        points.push(point);
        weights.push(parse_f64(fields[dim], lineno + 2)?);
    }
    if points.is_empty() {
        return Err(Error::Parse("CSV has a header but no rows".into()));
    }
    MeasuredSpace::new(FiniteMetricSpace::from_points(&points)?, weights)
}

fn parse_f64(s: &str, lineno: usize) -> Result<f64> {
    s.parse::<f64>()
        .map_err(|_| Error::Parse(format!("row {lineno}: '{s}' is not a number")))
}

/// Serialize a coordinate-backed cloud to the CSV format.
pub fn to_csv(m: &MeasuredSpace) -> Result<String> {
    let coords = m
        .space()
        .coords()
        .ok_or_else(|| Error::Unsupported("CSV output requires coordinates".into()))?;
    let names = ["x", "y", "z"];
    let mut header: Vec<String> = (0..coords.dim)
        .map(|d| names.get(d).map(|s| s.to_string()).unwrap_or(format!("c{d}")))
        .collect();
    header.push("w".into());
    let mut out = header.join(",");
    out.push('\n');
    for i in 0..m.len() {
        let mut row: Vec<String> =
            coords.point(i).iter().map(|c| format_float(*c)).collect();
        row.push(format_float(m.weights()[i]));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// Shortest representation that round-trips through f64.
fn format_float(v: f64) -> String {
    let mut s = format!("{v}");
    if s.parse::<f64>() != Ok(v) {
        s = format!("{v:?}");
    }
    s
}

pub fn save_csv(m: &MeasuredSpace, path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(m)?)?;
    Ok(())
}

/// Load an abstract-metric cloud from JSON.
pub fn load_json(path: &Path) -> Result<MeasuredSpace> {
    let text = std::fs::read_to_string(path)?;
    parse_json(&text)
}

/// Parse JSON text with a `distance_matrix` and `weights` (and optional
/// `labels`).
pub fn parse_json(text: &str) -> Result<MeasuredSpace> {
    let cloud: JsonCloud =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("JSON cloud: {e}")))?;
    let mut space = FiniteMetricSpace::from_matrix(cloud.distance_matrix, None)?;
    if let Some(labels) = cloud.labels {
        space = space.with_labels(labels)?;
    }
    MeasuredSpace::new(space, cloud.weights)
}

/// Load from a path, dispatching on the `.json` extension (anything else
/// is treated as CSV).
pub fn load_cloud(path: &Path) -> Result<MeasuredSpace> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => load_json(path),
        _ => load_csv(path),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_circle;

    #[test]
    fn csv_round_trip() {
        let m = gen_circle(12).unwrap();
        let text = to_csv(&m).unwrap();
        let back = parse_csv(&text).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn csv_rejects_bad_headers_and_rows() {
        assert!(parse_csv("x,y\n0,0\n").is_err()); // no w column
        assert!(parse_csv("x,w\n0\n").is_err()); // short row
        assert!(parse_csv("x,w\n0,oops\n").is_err());
        assert!(parse_csv("").is_err());
    }

    #[test]
    fn json_round_trip_abstract_metric() {
        let text = r#"{
            "distance_matrix": [[0.0, 1.0, 2.0], [1.0, 0.0, 1.5], [2.0, 1.5, 0.0]],
            "weights": [0.5, 0.25, 0.25],
            "labels": ["a", "b", "c"]
        }"#;
        let m = parse_json(text).unwrap();
        assert_eq!(m.len(), 3);
        assert_eq!(m.d(0, 2), 2.0);
        assert_eq!(m.space().labels().unwrap()[2], "c");
        // matrix-only spaces carry no coordinates
        assert!(m.space().coords().is_none());
    }

    #[test]
    fn json_rejects_non_metric() {
        let text = r#"{
            "distance_matrix": [[0.0, 1.0], [2.0, 0.0]],
            "weights": [0.5, 0.5]
        }"#;
        assert!(parse_json(text).is_err());
    }
}
