// SPDX-License-Identifier: Apache-2.0

//! Experiment orchestration: the steps behind each `cgsrank` subcommand.
//!
//! Every command reads its inputs from files, writes CSV outputs with JSON
//! sidecars into the configured output directory, and returns a summary.
//! The pure pieces ([`rank_methods`], [`build_report`], [`sweep_mu`],
//! [`time_methods`]) are usable without touching the filesystem.

mod config;
pub mod io;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::centrality::{self, CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::{feature_matrix, generate_ba, load_edge_list_file, network_stats, Graph, NetworkStats};
use crate::metrics::{self, RankingReport};
use crate::model::{self, TrainedModel};
use crate::sir::{influence_labels, InfluenceLabels, SirParams};

pub use config::{effective_k_grid, scaled_mu, BaSpec, ExperimentConfig};
use io::{LabelsMeta, ScoresMeta, TrainMeta, SCHEMA_VERSION};

/// A graph together with the name used for it in reports.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

/// Loads `cfg.graph`, or generates the configured BA graph when none is given.
pub fn load_graph(cfg: &ExperimentConfig) -> Result<NamedGraph> {
    match &cfg.graph {
        Some(path) => load_named(path),
        None => {
            let BaSpec { n, m_attach } = cfg.ba;
            let graph = generate_ba(n, m_attach, cfg.ba_seed())?;
            Ok(NamedGraph { name: format!("ba-{n}-{m_attach}"), graph })
        }
    }
}

pub fn load_named(path: &Path) -> Result<NamedGraph> {
    let (graph, _) = load_edge_list_file(path)?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "graph".into());
    Ok(NamedGraph { name, graph })
}

fn out_path(cfg: &ExperimentConfig, file: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.output_dir)?;
    Ok(cfg.output_dir.join(file))
}

/// Output files written by [`cmd_generate`].
#[derive(Debug, Clone)]
pub struct Generated {
    pub edges: PathBuf,
    pub stats: PathBuf,
    pub stats_row: NetworkStats,
}

/// Writes the configured BA graph as `<name>.edges` plus `<name>.stats.csv`.
pub fn cmd_generate(cfg: &ExperimentConfig) -> Result<Generated> {
    cfg.validate()?;
    let BaSpec { n, m_attach } = cfg.ba;
    let graph = generate_ba(n, m_attach, cfg.ba_seed())?;
    let stem = format!("ba-{n}-{m_attach}");
    let edges = out_path(cfg, &format!("{stem}.edges"))?;
    let mut file = std::io::BufWriter::new(std::fs::File::create(&edges)?);
    graph.write_edge_list(&mut file)?;
    std::io::Write::flush(&mut file)?;
    let stats_row = network_stats(&graph)?;
    let stats = out_path(cfg, &format!("{stem}.stats.csv"))?;
    std::fs::write(&stats, format!("{}\n{}\n", NetworkStats::CSV_HEADER, stats_row.csv_row()))?;
    log::info!("wrote {} ({} nodes, {} edges)", edges.display(), graph.node_count(), graph.edge_count());
    Ok(Generated { edges, stats, stats_row })
}

/// SIR labels for `g` under the configured rates.
pub fn label_graph(g: &Graph, cfg: &ExperimentConfig) -> Result<(InfluenceLabels, LabelsMeta)> {
    let mu_c = network_stats(g)?.mu_c;
    let mu = cfg.resolve_mu(mu_c)?;
    let params = SirParams::new(mu, cfg.beta, cfg.trials, cfg.labels_seed())?;
    let start = Instant::now();
    let labels = influence_labels(g, &params)?;
    let meta = LabelsMeta {
        schema_version: SCHEMA_VERSION,
        graph_fingerprint: g.fingerprint(),
        config_hash: cfg.hash(),
        mu,
        mu_c,
        mu_multiplier: if cfg.mu.is_some() { mu / mu_c } else { cfg.mu_multiplier },
        beta: cfg.beta,
        trials: cfg.trials,
        seed: params.seed,
        wall_time_seconds: start.elapsed().as_secs_f64(),
    };
    Ok((labels, meta))
}

/// Writes `labels.csv` and its sidecar; returns the CSV path.
pub fn cmd_label(cfg: &ExperimentConfig) -> Result<PathBuf> {
    cfg.validate()?;
    let g = load_graph(cfg)?.graph;
    let (labels, meta) = label_graph(&g, cfg)?;
    let path = out_path(cfg, "labels.csv")?;
    io::write_labels(&path, &g, &labels)?;
    io::write_json(&io::sidecar_path(&path), &meta)?;
    log::info!("labelled {} nodes at mu = {:.5} ({:.2} x mu_c)", g.node_count(), meta.mu, meta.mu_multiplier);
    Ok(path)
}

/// Trains on the configured graph with labels from `labels_path`. Writes
/// `weights.json`, `loss.csv` (`epoch,loss`) and `train.json`.
pub fn cmd_train(cfg: &ExperimentConfig, labels_path: &Path) -> Result<PathBuf> {
    cfg.validate()?;
    let g = load_graph(cfg)?.graph;
    let meta = io::read_labels_meta(labels_path)?;
    io::require_fingerprint("labels", &meta.graph_fingerprint, &g.fingerprint())?;
    let labels = io::read_labels(labels_path, &g)?;
    let train_cfg = cfg.train_config();
    let start = Instant::now();
    let (trained, losses) = model::train(&g, &feature_matrix(&g), &labels, &train_cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let weights = out_path(cfg, "weights.json")?;
    trained.save(&weights)?;
    let mut w = csv::Writer::from_path(out_path(cfg, "loss.csv")?)?;
    w.write_record(["epoch", "loss"])?;
    for (epoch, loss) in losses.iter().enumerate() {
        w.write_record([epoch.to_string(), loss.to_string()])?;
    }
    w.flush()?;
    let meta = TrainMeta {
        schema_version: SCHEMA_VERSION,
        graph_fingerprint: g.fingerprint(),
        config_hash: cfg.hash(),
        labels_file: labels_path.to_path_buf(),
        epochs: train_cfg.epochs,
        learning_rate: train_cfg.learning_rate,
        init_seed: train_cfg.seed,
        initial_loss: losses[0],
        final_loss: *losses.last().expect("at least one epoch"),
        wall_time_seconds: elapsed,
    };
    io::write_json(&out_path(cfg, "train.json")?, &meta)?;
    log::info!("loss {:.4} -> {:.4} in {elapsed:.1} s", meta.initial_loss, meta.final_loss);
    Ok(weights)
}

/// Scores `g` with each method and times it. Timing covers computation
/// only; for 1D-CGS it is feature construction plus inference.
pub fn rank_methods(
    g: &Graph,
    methods: &[Method],
    model: Option<&TrainedModel>,
    mdd_lambda: f64,
) -> Result<Vec<(CentralityScores, f64)>> {
    if methods.contains(&Method::Cgs) && model.is_none() {
        return Err(Error::invalid("1D-CGS requested but no trained weights were given"));
    }
    methods
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let scores = score_once(g, m, model, mdd_lambda)?;
            Ok((scores, start.elapsed().as_secs_f64()))
        })
        .collect()
}

fn score_once(g: &Graph, method: Method, model: Option<&TrainedModel>, mdd_lambda: f64) -> Result<CentralityScores> {
    match (method, model) {
        (Method::Cgs, Some(trained)) => model::predict(g, &feature_matrix(g), trained),
        (Method::Cgs, None) => Err(Error::invalid("1D-CGS needs trained weights")),
        (m, _) => centrality::compute(g, m, mdd_lambda),
    }
}

fn load_model(weights: Option<&Path>) -> Result<Option<TrainedModel>> {
    weights.map(TrainedModel::load).transpose()
}

/// Writes `scores.csv` (`node_id,method,score`) and its sidecar.
pub fn cmd_rank(cfg: &ExperimentConfig, weights: Option<&Path>) -> Result<PathBuf> {
    cfg.validate()?;
    let g = load_graph(cfg)?.graph;
    let model = load_model(weights)?;
    let ranked = rank_methods(&g, &cfg.methods, model.as_ref(), cfg.mdd_lambda)?;
    let path = out_path(cfg, "scores.csv")?;
    let scores: Vec<CentralityScores> = ranked.iter().map(|(s, _)| s.clone()).collect();
    io::write_scores(&path, &g, &scores)?;
    let meta = ScoresMeta {
        schema_version: SCHEMA_VERSION,
        graph_fingerprint: g.fingerprint(),
        config_hash: cfg.hash(),
        methods: cfg.methods.clone(),
        seconds: ranked.iter().map(|(s, t)| (s.method.name().to_string(), *t)).collect(),
    };
    io::write_json(&io::sidecar_path(&path), &meta)?;
    Ok(path)
}

/// Compares one score vector against influence labels.
pub fn build_report(
    graph: &str,
    scores: &CentralityScores,
    labels: &[f64],
    cfg: &ExperimentConfig,
    seconds: f64,
) -> Result<RankingReport> {
    if scores.len() != labels.len() {
        return Err(Error::Mismatch(format!("{} scores for {} labels", scores.len(), labels.len())));
    }
    let ks = effective_k_grid(&cfg.k_grid, labels.len());
    let jaccard_at_k =
        ks.iter().map(|&k| Ok((k, metrics::jaccard_top_k(&scores.values, labels, k)?))).collect::<Result<_>>()?;
    Ok(RankingReport {
        graph: graph.to_string(),
        method: scores.method.name().to_string(),
        kendall_tau: metrics::kendall_tau_with(&scores.values, labels, cfg.tau_variant)?,
        jaccard_at_k,
        monotonicity: metrics::monotonicity_index_with(&scores.values, cfg.mi_denominator)?,
        rank_histogram: metrics::rank_histogram(&scores.values, cfg.histogram_bins)?,
        wall_time_seconds: seconds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationDocument {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub config_hash: String,
    pub labels_config_hash: String,
    pub scores_config_hash: String,
    pub reports: Vec<RankingReport>,
}

/// Evaluates `scores.csv` against `labels.csv`. Writes `report.csv`,
/// `report.json` and the long-format `jaccard.csv` (`method,k,jaccard`).
pub fn cmd_evaluate(cfg: &ExperimentConfig, scores_path: &Path, labels_path: &Path) -> Result<Vec<RankingReport>> {
    cfg.validate()?;
    let named = load_graph(cfg)?;
    let g = &named.graph;
    let labels_meta = io::read_labels_meta(labels_path)?;
    let scores_meta = io::read_scores_meta(scores_path)?;
    io::require_fingerprint("labels", &labels_meta.graph_fingerprint, &g.fingerprint())?;
    io::require_fingerprint("scores", &scores_meta.graph_fingerprint, &g.fingerprint())?;
    let labels = io::read_labels(labels_path, g)?;
    let scores = io::read_scores(scores_path, g)?;
    let reports: Vec<RankingReport> = scores
        .iter()
        .map(|s| {
            let secs = scores_meta.seconds.get(s.method.name()).copied().unwrap_or(f64::NAN);
            build_report(&named.name, s, &labels, cfg, secs)
        })
        .collect::<Result<_>>()?;

    let ks = effective_k_grid(&cfg.k_grid, g.node_count());
    let mut w = csv::Writer::from_path(out_path(cfg, "report.csv")?)?;
    let mut header = vec!["graph".to_string(), "method".into(), "tau".into()];
    header.extend(ks.iter().map(|k| format!("js@{k}")));
    header.extend(["mi".to_string(), "seconds".into()]);
    w.write_record(&header)?;
    for r in &reports {
        let mut row = vec![r.graph.clone(), r.method.clone(), r.kendall_tau.to_string()];
        row.extend(ks.iter().map(|k| r.jaccard_at_k[k].to_string()));
        row.extend([r.monotonicity.to_string(), r.wall_time_seconds.to_string()]);
        w.write_record(&row)?;
    }
    w.flush()?;

    let mut w = csv::Writer::from_path(out_path(cfg, "jaccard.csv")?)?;
    w.write_record(["method", "k", "jaccard"])?;
    for r in &reports {
        for (k, j) in &r.jaccard_at_k {
            w.write_record([r.method.clone(), k.to_string(), j.to_string()])?;
        }
    }
    w.flush()?;

    let doc = EvaluationDocument {
        schema_version: SCHEMA_VERSION,
        graph_fingerprint: g.fingerprint(),
        config_hash: cfg.hash(),
        labels_config_hash: labels_meta.config_hash,
        scores_config_hash: scores_meta.config_hash,
        reports: reports.clone(),
    };
    io::write_json(&out_path(cfg, "report.json")?, &doc)?;
    Ok(reports)
}

/// One point of a tau-versus-infection-rate curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub multiplier: f64,
    pub mu: f64,
    pub method: Method,
    pub tau: f64,
}

/// For each multiplier, relabels `g` at `multiplier · mu_c` and correlates
/// every method's scores with the labels. Scores are computed once.
pub fn sweep_mu(g: &Graph, cfg: &ExperimentConfig, model: Option<&TrainedModel>) -> Result<Vec<SweepPoint>> {
    let ranked = rank_methods(g, &cfg.methods, model, cfg.mdd_lambda)?;
    let mu_c = network_stats(g)?.mu_c;
    let mut points = Vec::new();
    for &multiplier in &cfg.mu_multipliers {
        let mu = scaled_mu(multiplier, mu_c)?;
        let params = SirParams::new(mu, cfg.beta, cfg.trials, cfg.labels_seed())?;
        let labels = influence_labels(g, &params)?;
        for (scores, _) in &ranked {
            let tau = metrics::kendall_tau_with(&scores.values, &labels.values, cfg.tau_variant)?;
            points.push(SweepPoint { multiplier, mu, method: scores.method, tau });
        }
    }
    Ok(points)
}

/// Writes `sweep_mu.csv` (`multiplier,method,tau`) and its sidecar.
pub fn cmd_sweep_mu(cfg: &ExperimentConfig, weights: Option<&Path>) -> Result<PathBuf> {
    cfg.validate()?;
    let g = load_graph(cfg)?.graph;
    let model = load_model(weights)?;
    let points = sweep_mu(&g, cfg, model.as_ref())?;
    let path = out_path(cfg, "sweep_mu.csv")?;
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["multiplier", "method", "tau"])?;
    for p in &points {
        w.write_record([p.multiplier.to_string(), p.method.name().to_string(), p.tau.to_string()])?;
    }
    w.flush()?;
    let sidecar = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "graph_fingerprint": g.fingerprint(),
        "config_hash": cfg.hash(),
        "points": points,
    });
    io::write_json(&io::sidecar_path(&path), &sidecar)?;
    Ok(path)
}

/// Median wall-clock seconds of `repeats` runs of each method on `g`.
pub fn time_methods(
    g: &Graph,
    methods: &[Method],
    model: Option<&TrainedModel>,
    mdd_lambda: f64,
    repeats: usize,
) -> Result<BTreeMap<Method, f64>> {
    let mut out = BTreeMap::new();
    for _ in 0..repeats.max(1) {
        for (scores, secs) in rank_methods(g, methods, model, mdd_lambda)? {
            out.entry(scores.method).or_insert_with(Vec::new).push(secs);
        }
    }
    Ok(out.into_iter().map(|(m, times)| (m, median(times))).collect())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

/// Times every configured method on each graph (the configured graph when
/// `graphs` is empty) and writes `timing.csv` (`graph,method,seconds`).
pub fn cmd_bench_time(cfg: &ExperimentConfig, graphs: &[PathBuf], weights: Option<&Path>) -> Result<PathBuf> {
    cfg.validate()?;
    let model = load_model(weights)?;
    let named: Vec<NamedGraph> = if graphs.is_empty() {
        vec![load_graph(cfg)?]
    } else {
        graphs.iter().map(|p| load_named(p)).collect::<Result<_>>()?
    };
    let path = out_path(cfg, "timing.csv")?;
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record(["graph", "method", "seconds"])?;
    let mut fingerprints = BTreeMap::new();
    for ng in &named {
        let times = time_methods(&ng.graph, &cfg.methods, model.as_ref(), cfg.mdd_lambda, cfg.timing_repeats)?;
        for m in &cfg.methods {
            w.write_record([ng.name.clone(), m.name().to_string(), times[m].to_string()])?;
        }
        fingerprints.insert(ng.name.clone(), ng.graph.fingerprint());
    }
    w.flush()?;
    let sidecar = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "config_hash": cfg.hash(),
        "repeats": cfg.timing_repeats,
        "graph_fingerprints": fingerprints,
    });
    io::write_json(&io::sidecar_path(&path), &sidecar)?;
    Ok(path)
}
