// SPDX-License-Identifier: Apache-2.0

// The file-based experiment pipeline, as the `cgsrank` binary runs it:
// generate, label, train, rank, evaluate.

use cgsrank::bench::{self, BaSpec, ExperimentConfig};

pub fn run_example() -> cgsrank::Result<()> {
    let dir = std::env::temp_dir().join(format!("cgsrank-pipeline-{}", std::process::id()));
    let mut cfg = ExperimentConfig {
        seed: 7,
        ba: BaSpec { n: 400, m_attach: 2 },
        trials: 300,
        epochs: 300,
        output_dir: dir.clone(),
        ..Default::default()
    };
    let generated = bench::cmd_generate(&cfg)?;
    cfg.graph = Some(generated.edges);
    let labels = bench::cmd_label(&cfg)?;
    let weights = bench::cmd_train(&cfg, &labels)?;
    let scores = bench::cmd_rank(&cfg, Some(&weights))?;
    for r in bench::cmd_evaluate(&cfg, &scores, &labels)? {
        println!("{:<7} tau {:+.3}  js@10 {:.2}  mi {:.3}", r.method, r.kendall_tau, r.jaccard_at_k[&10], r.monotonicity);
    }
    println!("artifacts in {}", dir.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
