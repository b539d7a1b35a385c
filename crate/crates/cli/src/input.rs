//! Input documents: labeled point clouds or explicit distance matrices.
//!
//! JSON is the primary format; CSV covers point clouds with the header
//! `label,x1,...,xm`, one record per point.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use chaindev::{FiniteMetricSpace, Metric};

use crate::error::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PointRecord {
    pub label: String,
    pub coords: Vec<f64>,
}

/// On-disk input: either `points` (+ optional `metric`) or
/// `labels` + `matrix`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct InputDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<PointRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Csv,
}

impl InputDocument {
    pub fn from_points(metric: Metric, points: Vec<PointRecord>) -> Self {
        InputDocument {
            metric: Some(metric.name().to_string()),
            points: Some(points),
            labels: None,
            matrix: None,
        }
    }

    pub fn read(path: &Path, format: Option<InputFormat>) -> Result<Self, CliError> {
        let format = format.unwrap_or_else(|| {
            match path.extension().and_then(|e| e.to_str()) {
                Some("csv") => InputFormat::Csv,
                _ => InputFormat::Json,
            }
        });
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        match format {
            InputFormat::Json => Self::from_json(&text),
            InputFormat::Csv => Self::from_csv(&text),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: InputDocument = serde_json::from_str(text)
            .map_err(|e| CliError::schema(format!("malformed JSON input: {e}")))?;
        doc.check_shape()?;
        Ok(doc)
    }

    /// CSV schema: header `label,x1,...,xm`, one record per point.
    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| CliError::schema(format!("malformed CSV header: {e}")))?
            .clone();
        if headers.is_empty() || headers.get(0) != Some("label") {
            return Err(CliError::schema(
                "CSV header must start with `label` followed by coordinate columns",
            ));
        }
        let dim = headers.len() - 1;
        let mut points = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record =
                record.map_err(|e| CliError::schema(format!("malformed CSV record: {e}")))?;
            if record.len() != dim + 1 {
                return Err(CliError::schema(format!(
                    "CSV record {} has {} fields, expected {}",
                    line + 2,
                    record.len(),
                    dim + 1
                )));
            }
            let label = record[0].to_string();
            let mut coords = Vec::with_capacity(dim);
            for v in record.iter().skip(1) {
                let parsed: f64 = v.parse().map_err(|_| {
                    CliError::schema(format!("bad coordinate {v:?} on CSV record {}", line + 2))
                })?;
                coords.push(parsed);
            }
            points.push(PointRecord { label, coords });
        }
        let doc = InputDocument {
            metric: None,
            points: Some(points),
            labels: None,
            matrix: None,
        };
        doc.check_shape()?;
        Ok(doc)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let points = self
            .points
            .as_ref()
            .ok_or_else(|| CliError::schema("matrix documents have no CSV form"))?;
        let dim = points.first().map_or(0, |p| p.coords.len());
        let mut out = String::from("label");
        for k in 1..=dim {
            out.push_str(&format!(",x{k}"));
        }
        out.push('\n');
        for p in points {
            out.push_str(&p.label);
            for c in &p.coords {
                out.push_str(&format!(",{c}"));
            }
            out.push('\n');
        }
        Ok(out)
    }

    fn check_shape(&self) -> Result<(), CliError> {
        match (&self.points, &self.labels, &self.matrix) {
            (Some(points), None, None) => {
                if points.is_empty() {
                    return Err(CliError::schema("point list is empty"));
                }
                let dim = points[0].coords.len();
                if dim == 0 {
                    return Err(CliError::schema("points need at least one coordinate"));
                }
                for p in points {
                    if p.coords.len() != dim {
                        return Err(CliError::schema(format!(
                            "point {:?} has {} coordinates, expected {}",
                            p.label,
                            p.coords.len(),
                            dim
                        )));
                    }
                    if p.coords.iter().any(|c| !c.is_finite()) {
                        return Err(CliError::schema(format!(
                            "point {:?} has a non-finite coordinate",
                            p.label
                        )));
                    }
                }
                check_unique(points.iter().map(|p| p.label.as_str()))?;
                if let Some(metric) = &self.metric {
                    metric.parse::<Metric>().map_err(CliError::schema)?;
                }
                Ok(())
            }
            (None, Some(labels), Some(matrix)) => {
                if labels.len() != matrix.len() {
                    return Err(CliError::schema(format!(
                        "{} labels for a {}-row matrix",
                        labels.len(),
                        matrix.len()
                    )));
                }
                for (i, row) in matrix.iter().enumerate() {
                    if row.len() != matrix.len() {
                        return Err(CliError::schema(format!(
                            "matrix row {i} has {} entries, expected {}",
                            row.len(),
                            matrix.len()
                        )));
                    }
                    if row.iter().any(|v| !v.is_finite() || *v < 0.0) {
                        return Err(CliError::schema(format!(
                            "matrix row {i} has a negative or non-finite entry"
                        )));
                    }
                }
                check_unique(labels.iter().map(|l| l.as_str()))?;
                Ok(())
            }
            _ => Err(CliError::schema(
                "input must provide either `points` (with optional `metric`) or `labels` + `matrix`",
            )),
        }
    }

    /// Metric recorded in the document, if any.
    pub fn metric(&self) -> Option<Metric> {
        self.metric.as_deref().and_then(|m| m.parse().ok())
    }

    /// Builds the finite metric space, applying `override_metric` over the
    /// document's own metric (default Euclidean), and rejecting spaces that
    /// fail semimetric validation.
    pub fn to_space(&self, override_metric: Option<Metric>) -> Result<FiniteMetricSpace, CliError> {
        let space = match (&self.points, &self.labels, &self.matrix) {
            (Some(points), _, _) => {
                let metric = override_metric
                    .or_else(|| self.metric())
                    .unwrap_or(Metric::Euclidean);
                let labels: Vec<String> = points.iter().map(|p| p.label.clone()).collect();
                let coords: Vec<Vec<f64>> = points.iter().map(|p| p.coords.clone()).collect();
                FiniteMetricSpace::from_points(labels, &coords, metric)?
            }
            (_, Some(labels), Some(matrix)) => {
                FiniteMetricSpace::from_rows(labels.clone(), matrix)?
            }
            _ => unreachable!("check_shape enforces one of the two forms"),
        };
        let report = space.validate(false);
        if !report.is_valid() {
            return Err(CliError::invalid(format!("invalid metric space: {report}")));
        }
        Ok(space)
    }
}

fn check_unique<'a>(labels: impl Iterator<Item = &'a str>) -> Result<(), CliError> {
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label) {
            return Err(CliError::schema(format!("duplicate label {label:?}")));
        }
    }
    Ok(())
}
