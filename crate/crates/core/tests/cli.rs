// SPDX-License-Identifier: Apache-2.0

//! Drives the `cgsrank` binary end to end on small graphs.

use std::path::Path;
use std::process::Command;

fn cgsrank(dir: &Path, args: &[&str]) -> i32 {
    let out = Command::new(env!("CARGO_BIN_EXE_cgsrank"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .env("RUST_LOG", "warn")
        .output()
        .expect("binary runs");
    out.status.code().expect("exited normally")
}

fn read(path: impl AsRef<Path>) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn full_pipeline_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let p = |f: &str| d.join(f).to_string_lossy().into_owned();

    assert_eq!(cgsrank(d, &["generate", "--ba-n", "200", "--seed", "3"]), 0);
    let graph = p("ba-200-2.edges");
    assert_eq!(read(&graph).lines().count(), 2 * (200 - 3) + 3);
    assert!(read(p("ba-200-2.stats.csv")).starts_with("n,m,density,avg_degree,max_degree,mu_c\n200,397,"));

    assert_eq!(cgsrank(d, &["label", "--graph", &graph, "--trials", "100", "--seed", "3"]), 0);
    let labels = read(p("labels.csv"));
    assert!(labels.starts_with("node_id,label,std_error\n"));
    let meta: serde_json::Value = serde_json::from_str(&read(p("labels.json"))).unwrap();
    assert_eq!(meta["schema_version"], 1);
    assert_eq!(meta["mu_multiplier"], 1.5);

    assert_eq!(cgsrank(d, &["train", "--graph", &graph, "--labels", &p("labels.csv"), "--epochs", "30"]), 0);
    assert_eq!(read(p("loss.csv")).lines().count(), 31);

    let rank = ["rank", "--graph", &graph, "--weights", &p("weights.json"), "--methods", "dc,nd,cgs"];
    assert_eq!(cgsrank(d, &rank), 0);
    let scores = read(p("scores.csv"));
    assert_eq!(scores.lines().count(), 1 + 3 * 200);
    assert_eq!(cgsrank(d, &rank), 0);
    assert_eq!(read(p("scores.csv")), scores, "ranking is deterministic");

    let evaluate = ["evaluate", "--graph", &graph, "--scores", &p("scores.csv"), "--labels", &p("labels.csv")];
    assert_eq!(cgsrank(d, &evaluate), 0);
    let report = read(p("report.csv"));
    assert!(report.starts_with("graph,method,tau,js@10,js@20,mi,seconds\n"), "{report}");
    assert_eq!(report.lines().count(), 4);
    let doc: serde_json::Value = serde_json::from_str(&read(p("report.json"))).unwrap();
    assert_eq!(doc["reports"].as_array().unwrap().len(), 3);
    assert!(read(p("jaccard.csv")).starts_with("method,k,jaccard\n"));

    let sweep = ["sweep-mu", "--graph", &graph, "--methods", "dc,nd", "--mu-grid", "1,1.5,2", "--trials", "20"];
    assert_eq!(cgsrank(d, &sweep), 0);
    assert_eq!(read(p("sweep_mu.csv")).lines().count(), 1 + 3 * 2);

    assert_eq!(cgsrank(d, &["bench-time", "--methods", "dc,kcore", "--repeats", "1", &graph]), 0);
    assert!(read(p("timing.csv")).starts_with("graph,method,seconds\nba-200-2,DC,"));

    // usage errors
    assert_eq!(cgsrank(d, &["rank", "--graph", &graph, "--methods", "dc,cgs"]), 2);
    assert_eq!(cgsrank(d, &["rank", "--methods", "nonsense"]), 2);
    assert_eq!(cgsrank(d, &["frobnicate"]), 2);

    // labels from one graph cannot be evaluated against another
    let other = tempfile::tempdir().unwrap();
    assert_eq!(cgsrank(other.path(), &["generate", "--ba-n", "200", "--seed", "4"]), 0);
    let other_graph = other.path().join("ba-200-2.edges").to_string_lossy().into_owned();
    let mismatched = ["evaluate", "--graph", &other_graph, "--scores", &p("scores.csv"), "--labels", &p("labels.csv")];
    assert_eq!(cgsrank(d, &mismatched), 3);
    assert_eq!(cgsrank(d, &["train", "--graph", &other_graph, "--labels", &p("labels.csv")]), 3);

    // non-finite labels stop training
    let mut lines: Vec<String> = labels.lines().map(String::from).collect();
    let node = lines[1].split(',').next().unwrap().to_string();
    lines[1] = format!("{node},NaN,0");
    std::fs::write(p("labels.csv"), lines.join("\n") + "\n").unwrap();
    assert_eq!(cgsrank(d, &["train", "--graph", &graph, "--labels", &p("labels.csv"), "--epochs", "5"]), 4);
}

#[test]
fn generation_is_byte_identical_and_flags_override_config() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let config = a.path().join("config.json");
    std::fs::write(&config, r#"{"seed": 11, "ba": {"n": 150, "m_attach": 3}}"#).unwrap();
    let config = config.to_string_lossy().into_owned();
    assert_eq!(cgsrank(a.path(), &["generate", "--config", &config]), 0);
    assert_eq!(cgsrank(b.path(), &["generate", "--config", &config]), 0);
    let edges = read(a.path().join("ba-150-3.edges"));
    assert_eq!(edges, read(b.path().join("ba-150-3.edges")));

    assert_eq!(cgsrank(b.path(), &["generate", "--config", &config, "--ba-n", "120"]), 0);
    assert!(b.path().join("ba-120-3.edges").exists());
    assert_eq!(cgsrank(b.path(), &["generate", "--config", &config, "--seed", "12"]), 0);
    assert_ne!(edges, read(b.path().join("ba-150-3.edges")));

    std::fs::write(a.path().join("broken.json"), r#"{"sed": 1}"#).unwrap();
    let broken = a.path().join("broken.json").to_string_lossy().into_owned();
    assert_eq!(cgsrank(a.path(), &["generate", "--config", &broken]), 2);
}

#[test]
fn k4_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cgsrank(dir.path(), &["generate", "--ba-n", "4", "--ba-m", "3"]), 0);
    assert_eq!(read(dir.path().join("ba-4-3.edges")).lines().count(), 6);
}
