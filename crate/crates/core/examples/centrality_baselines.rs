// SPDX-License-Identifier: Apache-2.0

// Every classical baseline on one graph, with its five top-ranked nodes.

use cgsrank::centrality::{compute, louvain, MDD_DEFAULT_LAMBDA};
use cgsrank::graph::generate_ba;
use cgsrank::metrics::top_k;
use cgsrank::Method;

pub fn run_example() -> cgsrank::Result<()> {
    let g = generate_ba(800, 3, 5)?;
    for method in Method::BASELINES {
        let scores = compute(&g, method, MDD_DEFAULT_LAMBDA)?;
        println!("{method:<6} top 5: {:?}", top_k(&scores.values, 5));
    }
    let partition = louvain(&g)?;
    println!("louvain: {} communities, modularity {:.3}", partition.community_count(), partition.modularity);
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
