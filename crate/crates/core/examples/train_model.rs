// SPDX-License-Identifier: Apache-2.0

// Train the graph regressor on one BA graph, persist it, and rank the nodes
// of a different, larger graph with the reloaded weights.

use cgsrank::graph::{feature_matrix, generate_ba, network_stats};
use cgsrank::metrics::kendall_tau;
use cgsrank::model::{predict, train};
use cgsrank::sir::influence_labels;
use cgsrank::{SirParams, TrainConfig, TrainedModel};

pub fn run_example() -> cgsrank::Result<()> {
    let g = generate_ba(300, 2, 1)?;
    let mu = 1.5 * network_stats(&g)?.mu_c;
    let labels = influence_labels(&g, &SirParams::new(mu, 1.0, 300, 2)?)?;
    // a short schedule; the defaults are 3000 epochs at learning rate 0.005
    let cfg = TrainConfig { epochs: 300, seed: 3, ..Default::default() };
    let (model, losses) = train(&g, &feature_matrix(&g), &labels.values, &cfg)?;
    println!("loss {:.3} -> {:.3}", losses[0], losses.last().unwrap());

    let path = std::env::temp_dir().join(format!("cgsrank-example-{}.json", std::process::id()));
    model.save(&path)?;
    let reloaded = TrainedModel::load(&path)?;
    std::fs::remove_file(&path)?;
    assert_eq!(reloaded, model);

    let target = generate_ba(2000, 2, 9)?;
    let scores = predict(&target, &feature_matrix(&target), &reloaded)?;
    let target_mu = 1.5 * network_stats(&target)?.mu_c;
    let truth = influence_labels(&target, &SirParams::new(target_mu, 1.0, 200, 4)?)?;
    println!("held-out tau = {:.3}", kendall_tau(&scores.values, &truth.values)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
