//! Command implementations, each returning the rendered output document.

use serde::Deserialize;

use chaindev::{
    build_development, build_tree, chain_distance, diameter_identity, mst_weight, stretch,
    tv_check, verify_development, width, FiniteMetricSpace, SelfSimilarSpec,
};

use crate::error::CliError;
use crate::output::{
    to_json, ChainDistDoc, DevelopDoc, DisDoc, SelfsimDoc, TreeDoc, VerifyDoc, WidthDoc,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ExportFormat::Json),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(format!("unknown export format {other:?}, expected json or dot")),
        }
    }
}

pub fn cmd_chaindist(space: &FiniteMetricSpace) -> Result<String, CliError> {
    let chain = chain_distance(space)?;
    Ok(to_json(&ChainDistDoc {
        labels: space.labels().to_vec(),
        chain: chain.matrix().to_rows(),
    }))
}

pub fn cmd_tree(space: &FiniteMetricSpace, export: ExportFormat) -> Result<String, CliError> {
    let tree = build_tree(&chain_distance(space)?);
    Ok(match export {
        ExportFormat::Json => to_json(&TreeDoc::build(&tree, space.labels())),
        ExportFormat::Dot => tree.to_dot(),
    })
}

pub fn cmd_width(space: &FiniteMetricSpace) -> Result<String, CliError> {
    let report = width(&build_tree(&chain_distance(space)?));
    Ok(to_json(&WidthDoc::from(&report)))
}

pub fn cmd_dis(space: &FiniteMetricSpace) -> Result<String, CliError> {
    let cert = mst_weight(space)?;
    Ok(to_json(&DisDoc::from(&cert)))
}

pub fn cmd_develop(space: &FiniteMetricSpace) -> Result<String, CliError> {
    let dev = build_development(&build_tree(&chain_distance(space)?));
    Ok(to_json(&DevelopDoc::build(&dev, space.labels())))
}

/// Verifies a development document (as produced by `develop`) against the
/// space it claims to embed.
pub fn cmd_verify(space: &FiniteMetricSpace, dev: &DevelopDoc) -> Result<String, CliError> {
    let mut coords = vec![f64::NAN; space.n()];
    let mut seen = vec![false; space.n()];
    for point in &dev.points {
        let idx = space
            .labels()
            .iter()
            .position(|l| l == &point.label)
            .ok_or_else(|| {
                CliError::invalid(format!(
                    "development point {:?} is not in the input space",
                    point.label
                ))
            })?;
        if seen[idx] {
            return Err(CliError::invalid(format!(
                "development lists point {:?} twice",
                point.label
            )));
        }
        seen[idx] = true;
        coords[idx] = point.coord;
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(CliError::invalid(format!(
            "development is missing point {:?}",
            space.labels()[missing]
        )));
    }
    let verify = verify_development(space, &coords)?;
    let tv = tv_check(space, &coords)?;
    let diam = diameter_identity(space, &coords)?;
    Ok(to_json(&VerifyDoc::build(&verify, &tv, &diam)))
}

/// On-disk self-similar spec: `{"branching", "root_diameter", "ratio"}`.
#[derive(Debug, Deserialize)]
pub struct SpecDoc {
    pub branching: u32,
    pub root_diameter: f64,
    pub ratio: f64,
}

pub fn parse_spec(text: &str) -> Result<SelfSimilarSpec, CliError> {
    let doc: SpecDoc = serde_json::from_str(text)
        .map_err(|e| CliError::schema(format!("malformed spec JSON: {e}")))?;
    Ok(SelfSimilarSpec::new(
        doc.branching,
        doc.root_diameter,
        doc.ratio,
    )?)
}

pub fn cmd_selfsim(
    spec: &SelfSimilarSpec,
    depth: u32,
    excess: Option<f64>,
) -> Result<String, CliError> {
    let series = spec.width_series(depth as usize);
    let stretched = match excess {
        Some(c) => Some(stretch(&spec.symbolic_development(depth)?, c)?),
        None => None,
    };
    Ok(to_json(&SelfsimDoc::build(spec, &series, stretched.as_ref())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::InputDocument;

    fn line_doc() -> InputDocument {
        InputDocument::from_json(
            r#"{"points":[
                {"label":"a","coords":[0.0]},
                {"label":"b","coords":[1.0]},
                {"label":"c","coords":[1.5]},
                {"label":"d","coords":[3.0]}
            ]}"#,
        )
        .unwrap()
    }

    #[test]
    fn width_of_the_line_example() {
        let space = line_doc().to_space(None).unwrap();
        let out = cmd_width(&space).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["width"], 3.0);
    }

    #[test]
    fn dis_of_a_single_point() {
        let doc =
            InputDocument::from_json(r#"{"points":[{"label":"a","coords":[0.5]}]}"#).unwrap();
        let space = doc.to_space(None).unwrap();
        let out = cmd_dis(&space).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["total"], 0.0);
        assert_eq!(parsed["pairs"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn develop_then_verify_round_trips() {
        let space = line_doc().to_space(None).unwrap();
        let dev_out = cmd_develop(&space).unwrap();
        let dev: DevelopDoc = serde_json::from_str(&dev_out).unwrap();
        let verify_out = cmd_verify(&space, &dev).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&verify_out).unwrap();
        assert_eq!(parsed["pass"], true);
        assert_eq!(parsed["excess"], 0.0);
        assert_eq!(parsed["tv"]["pass"], true);
        assert_eq!(parsed["diameter_identity"]["pass"], true);
    }

    #[test]
    fn verify_rejects_label_mismatches() {
        let space = line_doc().to_space(None).unwrap();
        let dev = DevelopDoc {
            points: vec![crate::output::DevelopPointDoc {
                label: "zz".into(),
                coord: 0.0,
            }],
            width: 0.0,
            gaps: vec![],
        };
        let err = cmd_verify(&space, &dev).unwrap_err();
        assert!(err.to_string().contains("zz"));
    }

    #[test]
    fn selfsim_square_example_diverges() {
        let spec = parse_spec(
            r#"{"branching":4,"root_diameter":0.3333333333333333,"ratio":0.3333333333333333}"#,
        )
        .unwrap();
        let out = cmd_selfsim(&spec, 3, None).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["exists"], false);
        let ratio = parsed["ratio"].as_f64().unwrap();
        assert!((ratio - 4.0 / 3.0).abs() < 1e-12);
        assert_eq!(parsed["minimal_diameter"], serde_json::Value::Null);
        let terms = parsed["series"]["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert!((terms[0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn selfsim_stretch_reports_the_stretched_diameter() {
        let spec = parse_spec(
            r#"{"branching":2,"root_diameter":0.3333333333333333,"ratio":0.3333333333333333}"#,
        )
        .unwrap();
        let out = cmd_selfsim(&spec, 2, Some(0.5)).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed["exists"], true);
        let diam = parsed["stretch"]["diameter"].as_f64().unwrap();
        assert!((diam - 1.5).abs() < 1e-9);
        assert_eq!(parsed["stretch"]["gaps"].as_array().unwrap().len(), 2);
    }
}
