//! Output documents. Every command emits exactly one JSON document (or DOT
//! text), fully determined by its inputs.

use serde::Serialize;

use chaindev::{
    ClusterTree, Development, DiameterReport, DisCertificate, ExistenceVerdict, SelfSimilarSpec,
    SymbolicDevelopment, TvReport, VerifyReport, WidthReport, WidthSeries,
};

#[derive(Debug, Serialize)]
pub struct ChainDistDoc {
    pub labels: Vec<String>,
    pub chain: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct TreeNodeDoc {
    pub id: usize,
    pub r: f64,
    pub level: usize,
    pub size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TreeNodeDoc>,
}

#[derive(Debug, Serialize)]
pub struct TreeDoc {
    pub labels: Vec<String>,
    pub root: TreeNodeDoc,
}

impl TreeDoc {
    pub fn build(tree: &ClusterTree, labels: &[String]) -> Self {
        fn node_doc(tree: &ClusterTree, labels: &[String], id: usize) -> TreeNodeDoc {
            let node = tree.node(id);
            TreeNodeDoc {
                id,
                r: node.r,
                level: node.level,
                size: node.size(),
                point: node
                    .is_leaf()
                    .then(|| labels[tree.members(id)[0]].clone()),
                children: node
                    .children
                    .iter()
                    .map(|&ch| node_doc(tree, labels, ch))
                    .collect(),
            }
        }
        TreeDoc {
            labels: labels.to_vec(),
            root: node_doc(tree, labels, tree.root()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WidthTermDoc {
    pub node: usize,
    pub term: f64,
}

#[derive(Debug, Serialize)]
pub struct WidthDoc {
    pub width: f64,
    pub terms: Vec<WidthTermDoc>,
}

impl From<&WidthReport> for WidthDoc {
    fn from(report: &WidthReport) -> Self {
        WidthDoc {
            width: report.width,
            terms: report
                .per_node_terms
                .iter()
                .map(|&(node, term)| WidthTermDoc { node, term })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DisPairDoc {
    pub i: usize,
    pub j: usize,
    pub d: f64,
}

#[derive(Debug, Serialize)]
pub struct DisDoc {
    pub total: f64,
    pub pairs: Vec<DisPairDoc>,
}

impl From<&DisCertificate> for DisDoc {
    fn from(cert: &DisCertificate) -> Self {
        DisDoc {
            total: cert.total,
            pairs: cert
                .pairs
                .iter()
                .map(|e| DisPairDoc {
                    i: e.i,
                    j: e.j,
                    d: e.d,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize, serde::Deserialize)]
pub struct DevelopPointDoc {
    pub label: String,
    pub coord: f64,
}

#[derive(Debug, Serialize, serde::Deserialize)]
pub struct DevelopGapDoc {
    pub node: usize,
    pub len: f64,
}

/// Schema: `{"points": [{"label", "coord"}], "width", "gaps": [{"node", "len"}]}`.
#[derive(Debug, Serialize, serde::Deserialize)]
pub struct DevelopDoc {
    pub points: Vec<DevelopPointDoc>,
    pub width: f64,
    pub gaps: Vec<DevelopGapDoc>,
}

impl DevelopDoc {
    pub fn build(dev: &Development, labels: &[String]) -> Self {
        DevelopDoc {
            points: labels
                .iter()
                .zip(&dev.coords)
                .map(|(label, &coord)| DevelopPointDoc {
                    label: label.clone(),
                    coord,
                })
                .collect(),
            width: dev.width,
            gaps: dev
                .gaps
                .iter()
                .map(|&(node, len)| DevelopGapDoc { node, len })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PairViolationDoc {
    pub i: usize,
    pub j: usize,
    pub expected: f64,
    pub actual: f64,
}

#[derive(Debug, Serialize)]
pub struct TvViolationDoc {
    pub points: (usize, usize, usize),
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Serialize)]
pub struct TvDoc {
    pub pass: bool,
    pub triples_checked: usize,
    pub violations: Vec<TvViolationDoc>,
}

impl From<&TvReport> for TvDoc {
    fn from(report: &TvReport) -> Self {
        TvDoc {
            pass: report.pass,
            triples_checked: report.triples_checked,
            violations: report
                .violations
                .iter()
                .map(|v| TvViolationDoc {
                    points: v.points,
                    lhs: v.lhs,
                    rhs: v.rhs,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiameterDoc {
    pub diameter: f64,
    pub width: f64,
    pub pass: bool,
}

impl From<&DiameterReport> for DiameterDoc {
    fn from(report: &DiameterReport) -> Self {
        DiameterDoc {
            diameter: report.diameter,
            width: report.width,
            pass: report.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyDoc {
    pub pass: bool,
    pub pairs_checked: usize,
    pub diameter: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub excess: Option<f64>,
    pub violations: Vec<PairViolationDoc>,
    pub collisions: Vec<(usize, usize)>,
    pub tv: TvDoc,
    pub diameter_identity: DiameterDoc,
}

impl VerifyDoc {
    pub fn build(verify: &VerifyReport, tv: &TvReport, diam: &DiameterReport) -> Self {
        VerifyDoc {
            pass: verify.pass,
            pairs_checked: verify.pairs_checked,
            diameter: verify.diameter,
            excess: verify.excess,
            violations: verify
                .violations
                .iter()
                .map(|v| PairViolationDoc {
                    i: v.i,
                    j: v.j,
                    expected: v.expected,
                    actual: v.actual,
                })
                .collect(),
            collisions: verify.collisions.clone(),
            tv: tv.into(),
            diameter_identity: diam.into(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SeriesDoc {
    pub terms: Vec<f64>,
    pub convergent: bool,
    pub total: Option<f64>,
}

impl From<&WidthSeries> for SeriesDoc {
    fn from(series: &WidthSeries) -> Self {
        SeriesDoc {
            terms: series.terms.clone(),
            convergent: series.convergent,
            total: series.total,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GapLevelDoc {
    pub level: u32,
    pub len: f64,
    pub count: u64,
}

#[derive(Debug, Serialize)]
pub struct StretchDoc {
    pub depth: u32,
    pub leaf_count: u64,
    pub leaf_len: f64,
    pub excess: f64,
    pub diameter: f64,
    pub gaps: Vec<GapLevelDoc>,
}

impl From<&SymbolicDevelopment> for StretchDoc {
    fn from(dev: &SymbolicDevelopment) -> Self {
        StretchDoc {
            depth: dev.depth,
            leaf_count: dev.leaf_count,
            leaf_len: dev.leaf_len,
            excess: dev.excess,
            diameter: dev.diameter(),
            gaps: dev
                .gap_levels
                .iter()
                .map(|g| GapLevelDoc {
                    level: g.level,
                    len: g.len,
                    count: g.count,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SelfsimDoc {
    pub exists: bool,
    pub ratio: f64,
    pub minimal_diameter: Option<f64>,
    pub series: SeriesDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stretch: Option<StretchDoc>,
}

impl SelfsimDoc {
    pub fn build(
        spec: &SelfSimilarSpec,
        series: &WidthSeries,
        stretch: Option<&SymbolicDevelopment>,
    ) -> Self {
        let (exists, minimal_diameter) = match spec.exists_development() {
            ExistenceVerdict::Exists { minimal_diameter } => (true, Some(minimal_diameter)),
            ExistenceVerdict::DoesNotExist { .. } => (false, None),
        };
        SelfsimDoc {
            exists,
            ratio: spec.series_ratio(),
            minimal_diameter,
            series: series.into(),
            stretch: stretch.map(Into::into),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub kind: String,
    pub message: String,
}

/// Machine-readable error report emitted on validation failures.
#[derive(Debug, Serialize)]
pub struct ErrorDoc {
    pub error: ErrorBody,
}

/// Pretty JSON with a trailing newline; stable for golden comparisons.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("output documents serialize");
    text.push('\n');
    text
}
