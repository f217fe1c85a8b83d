//! Versioned JSON reports for the batch front door.
//!
//! Field names are frozen in `schema/report.schema.json` at the repo
//! root. The timestamp is isolated in the single `generated_at` field so
//! two runs with the same configuration produce byte-identical reports
//! except for that one line.

use crate::besipart::{ExtractionTrace, FamilyReport};
use crate::blowup::{LabelFractions, PointLabel, TangentProfile, Thresholds};
use crate::covering::{CoverReport, UniformCover};
use crate::generators::CorpusSpec;
use crate::quasipath::QuasiPathCertificate;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

/// Fully serialized run configuration, echoed into every report.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locality: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder_r0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder_lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Thresholds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub out_dir: String,
}

/// Result payload, one variant per subcommand.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportResults {
    Generate {
        points: usize,
        total_mass: f64,
        csv_file: String,
    },
    Cover {
        cover: UniformCover,
        ahlfors_constant: f64,
        verification: CoverReport,
        overlap_counts: Vec<usize>,
    },
    Quasipath {
        certificate: QuasiPathCertificate,
    },
    Besipart {
        partitions: usize,
        verification: FamilyReport,
        omegas: Vec<f64>,
        trace: ExtractionTrace,
    },
    Profile {
        ladder: Vec<f64>,
        profiles: Vec<TangentProfile>,
        csv_file: String,
    },
    Classify {
        ladder: Vec<f64>,
        fractions: LabelFractions,
        labels: Vec<PointLabel>,
        csv_file: String,
    },
}

/// The versioned report written as `report.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub library_version: String,
    /// Seconds since the Unix epoch; the only nondeterministic field.
    pub generated_at: String,
    pub config: RunConfig,
    pub results: ReportResults,
}

impl Report {
    pub fn new(config: RunConfig, results: ReportResults) -> Self {
        let now = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs().to_string())
            .unwrap_or_else(|_| "0".into());
        Self {
            schema_version: SCHEMA_VERSION.into(),
            library_version: env!("CARGO_PKG_VERSION").into(),
            generated_at: now,
            config,
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}
