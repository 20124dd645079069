// SPDX-License-Identifier: Apache-2.0

// How well each baseline tracks spreading influence as the infection rate
// moves around the epidemic threshold.

use cgsrank::bench::{sweep_mu, ExperimentConfig};
use cgsrank::graph::generate_ba;
use cgsrank::Method;

pub fn run_example() -> cgsrank::Result<()> {
    let g = generate_ba(500, 2, 8)?;
    let cfg = ExperimentConfig {
        methods: vec![Method::Dc, Method::Nd, Method::Hi, Method::Mdd],
        trials: 300,
        ..Default::default()
    };
    println!("multiplier,method,tau");
    for p in sweep_mu(&g, &cfg, None)? {
        println!("{},{},{:.4}", p.multiplier, p.method, p.tau);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
