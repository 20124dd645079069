// SPDX-License-Identifier: Apache-2.0

//! File formats of the experiment pipeline. Every CSV has a header row and
//! every CSV output has a JSON sidecar next to it (same stem, `.json`)
//! carrying the schema version, graph fingerprint and config hash.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sir::InfluenceLabels;

pub const SCHEMA_VERSION: u32 = 1;

/// Where the JSON sidecar of `path` lives.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    serde_json::to_writer_pretty(file, value)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Mismatch(format!("{}: {e}", path.display())))
}

fn check_schema(path: &Path, version: u32) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Mismatch(format!(
            "{} has schema version {version}, expected {SCHEMA_VERSION}",
            path.display()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelsMeta {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub config_hash: String,
    pub mu: f64,
    pub mu_c: f64,
    /// `mu / mu_c`.
    pub mu_multiplier: f64,
    pub beta: f64,
    pub trials: usize,
    pub seed: u64,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoresMeta {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub config_hash: String,
    pub methods: Vec<Method>,
    /// Compute time per method, excluding file I/O and training.
    pub seconds: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub config_hash: String,
    pub labels_file: PathBuf,
    pub epochs: usize,
    pub learning_rate: f64,
    pub init_seed: u64,
    pub initial_loss: f64,
    pub final_loss: f64,
    pub wall_time_seconds: f64,
}

/// Writes `node_id,label,std_error` rows in graph order.
pub fn write_labels(path: &Path, g: &Graph, labels: &InfluenceLabels) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["node_id", "label", "std_error"])?;
    for v in 0..g.node_count() {
        w.write_record([g.label(v), &labels.values[v].to_string(), &labels.std_errors[v].to_string()])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_f64(path: &Path, row: usize, field: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse { line: row + 2, message: format!("{}: '{field}' is not a number", path.display()) })
}

/// Reads a labels CSV and aligns it to the nodes of `g`. Any missing, extra
/// or repeated node is a data mismatch.
pub fn read_labels(path: &Path, g: &Graph) -> Result<Vec<f64>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() < 2 {
            return Err(Error::Parse { line: i + 2, message: "expected node_id,label".into() });
        }
        rows.push((rec[0].to_string(), parse_f64(path, i, &rec[1])?));
    }
    align(g, rows, path)
}

fn align(g: &Graph, rows: Vec<(String, f64)>, path: &Path) -> Result<Vec<f64>> {
    let index = g.label_index();
    let mut out = vec![f64::NAN; g.node_count()];
    let mut seen = vec![false; g.node_count()];
    for (node, value) in rows {
        let Some(&v) = index.get(node.as_str()) else {
            return Err(Error::Mismatch(format!("{}: node '{node}' is not in the graph", path.display())));
        };
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Mismatch(format!("{}: node '{node}' appears twice", path.display())));
        }
        out[v] = value;
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(Error::Mismatch(format!("{}: node '{}' has no value", path.display(), g.label(v))));
    }
    Ok(out)
}

/// Writes long-format `node_id,method,score` rows.
pub fn write_scores(path: &Path, g: &Graph, scores: &[CentralityScores]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["node_id", "method", "score"])?;
    for s in scores {
        for v in 0..g.node_count() {
            w.write_record([g.label(v), s.method.name(), &s.values[v].to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a scores CSV back into one vector per method, aligned to `g`.
pub fn read_scores(path: &Path, g: &Graph) -> Result<Vec<CentralityScores>> {
    let mut r = csv::Reader::from_path(path)?;
    let mut by_method: BTreeMap<Method, Vec<(String, f64)>> = BTreeMap::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        if rec.len() < 3 {
            return Err(Error::Parse { line: i + 2, message: "expected node_id,method,score".into() });
        }
        let method: Method = rec[1].parse()?;
        by_method.entry(method).or_default().push((rec[0].to_string(), parse_f64(path, i, &rec[2])?));
    }
    by_method
        .into_iter()
        .map(|(m, rows)| Ok(CentralityScores::new(m, align(g, rows, path)?)))
        .collect()
}

pub fn read_labels_meta(labels_path: &Path) -> Result<LabelsMeta> {
    let path = sidecar_path(labels_path);
    let meta: LabelsMeta = read_json(&path)?;
    check_schema(&path, meta.schema_version)?;
    Ok(meta)
}

pub fn read_scores_meta(scores_path: &Path) -> Result<ScoresMeta> {
    let path = sidecar_path(scores_path);
    let meta: ScoresMeta = read_json(&path)?;
    check_schema(&path, meta.schema_version)?;
    Ok(meta)
}

/// Refuses to combine artifacts computed on different graphs.
pub fn require_fingerprint(what: &str, found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Mismatch(format!(
            "{what} was computed on graph {found:.12}, not on {expected:.12}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::load_edge_list;

    fn graph() -> Graph {
        load_edge_list("x y\ny z\n".as_bytes()).unwrap().0
    }

    #[test]
    fn labels_round_trip_by_node_id() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labels.csv");
        let g = graph();
        let labels = InfluenceLabels {
            values: vec![1.5, 2.25, 1.0 / 3.0],
            std_errors: vec![0.1, 0.2, 0.3],
            params: crate::SirParams::new(0.5, 1.0, 10, 1).unwrap(),
            graph_fingerprint: g.fingerprint(),
        };
        write_labels(&path, &g, &labels).unwrap();
        assert_eq!(read_labels(&path, &g).unwrap(), labels.values);
    }

    #[test]
    fn misaligned_labels_are_a_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let g = graph();
        for (name, body) in [("extra", "x,1\ny,1\nz,1\nw,1\n"), ("missing", "x,1\ny,1\n"), ("twice", "x,1\nx,1\nz,1\n")] {
            let path = dir.path().join(format!("{name}.csv"));
            std::fs::write(&path, format!("node_id,label\n{body}")).unwrap();
            assert!(matches!(read_labels(&path, &g), Err(Error::Mismatch(_))), "{name}");
        }
    }

    #[test]
    fn scores_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scores.csv");
        let g = graph();
        let scores = vec![
            CentralityScores::new(Method::Dc, vec![0.5, 1.0, 0.5]),
            CentralityScores::new(Method::Cgs, vec![0.1, -2.5, 1e-300]),
        ];
        write_scores(&path, &g, &scores).unwrap();
        assert_eq!(read_scores(&path, &g).unwrap(), scores);
    }

    #[test]
    fn fingerprint_check() {
        assert!(require_fingerprint("labels", "ab", "ab").is_ok());
        assert!(matches!(require_fingerprint("labels", "ab", "cd"), Err(Error::Mismatch(_))));
    }
}
