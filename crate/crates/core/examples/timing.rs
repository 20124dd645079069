// SPDX-License-Identifier: Apache-2.0

// Median-of-three wall time of each method, single-threaded.

use cgsrank::bench::time_methods;
use cgsrank::graph::generate_ba;
use cgsrank::{Method, ModelWeights, TrainedModel};

pub fn run_example() -> cgsrank::Result<()> {
    let g = generate_ba(5000, 2, 3)?;
    // untrained weights time the same as trained ones
    let x = cgsrank::graph::feature_matrix(&g);
    let model = TrainedModel { weights: ModelWeights::init(1), scaler: cgsrank::model::FeatureScaler::fit(&x) };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool");
    let times = pool.install(|| time_methods(&g, &Method::ALL, Some(&model), 0.7, 3))?;
    for (method, secs) in times {
        println!("{method:<6} {secs:.4} s");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> cgsrank::Result<()> {
    run_example()
}
