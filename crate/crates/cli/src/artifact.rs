//! Documents written by the CLI and the helpers that read and write them.

use std::io::Write;
use std::path::{Path, PathBuf};

use robsub_core::io::{self, FORMAT_VERSION};
use robsub_core::mc::TrialReport;
use robsub_core::rainbow::RainbowCycle;
use robsub_core::{ColoredGraph, FaceCycleCert, RGraph, SubdivisionCert};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Variable naming the directory relative paths resolve against.
pub const DATA_DIR_ENV: &str = "ROBSUB_DATA_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    RainbowCycle(RainbowCycle),
    Subdivision(SubdivisionCert),
    FaceCycle(FaceCycleCert),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Found,
    NoneFound,
    Indeterminate,
}

/// A search result together with enough context to re-check it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format_version: u32,
    pub command: String,
    pub seed: u64,
    /// SHA-256 of the host in canonical text form.
    pub host_digest: String,
    pub outcome: Outcome,
    pub certificate: Option<Certificate>,
}

impl CertificateDoc {
    pub fn new(command: &str, seed: u64, host_digest: String, outcome: Outcome, certificate: Option<Certificate>) -> Self {
        CertificateDoc {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            seed,
            host_digest,
            outcome,
            certificate,
        }
    }
}

fn hex_sha256(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn colored_digest(g: &ColoredGraph) -> String {
    hex_sha256(&io::write_colored_edge_list(g))
}

pub fn rgraph_digest(g: &RGraph) -> String {
    hex_sha256(&io::write_hyperedge_list(g))
}

pub fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let p = resolve(path);
    std::fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let p = resolve(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Output(format!("{}: {e}", dir.display())))?;
            }
            std::fs::write(&p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

pub fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<(), CliError> {
    emit(path, &io::to_json(value)?)
}

/// Fixed-column CSV with a header row.
pub fn csv_text<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Output(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

/// One CSV row per configuration. Columns are fixed; `format_version` versions them.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McRow {
    pub format_version: u32,
    pub lemma: String,
    pub instance: String,
    pub lambda: f64,
    pub trials: usize,
    pub successes: usize,
    pub failure_rate: f64,
    pub bound: f64,
    pub slack: f64,
    pub within_bound: bool,
    pub hypothesis_ok: bool,
    pub seed: u64,
}

impl McRow {
    pub fn from_report(lemma: &str, instance: &str, r: &TrialReport) -> Self {
        McRow {
            format_version: FORMAT_VERSION,
            lemma: lemma.to_string(),
            instance: instance.to_string(),
            lambda: r.lambda,
            trials: r.trials,
            successes: r.successes,
            failure_rate: r.failure_rate,
            bound: r.bound,
            slack: r.slack,
            within_bound: r.within_bound(),
            hypothesis_ok: r.hypothesis_ok,
            seed: r.seed,
        }
    }
}
