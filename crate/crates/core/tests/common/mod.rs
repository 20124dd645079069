// SPDX-License-Identifier: Apache-2.0

//! Independent oracles shared by the integration suites.

#![allow(dead_code)]

pub mod oracles;

use std::collections::VecDeque;

use cgsrank::graph::{feature_matrix, Graph};
use cgsrank::model::{activation_pattern, forward, mse_loss, ModelWeights};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) graph.
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap().0
}

/// Connected G(n, p) graph, redrawn until connected.
pub fn connected_gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    loop {
        let g = gnp(n, p, rng);
        if is_connected(&g) {
            return g;
        }
    }
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    count == n
}

/// Loss evaluated purely through the forward pass.
pub fn loss_at(g: &Graph, x: &cgsrank::FeatureMatrix, y: &[f64], w: &ModelWeights) -> f64 {
    let pred = forward(g, x, w).unwrap();
    mse_loss(pred.as_slice().unwrap(), y).unwrap()
}

/// Central finite differences of the loss for every parameter, in the
/// order of `ModelWeights::tensors`. Panics if any probe changes which ReLU
/// units are active, since the difference quotient would then straddle a kink.
pub fn finite_difference_gradient(g: &Graph, x: &cgsrank::FeatureMatrix, y: &[f64], w: &ModelWeights, step: f64) -> Vec<Vec<f64>> {
    let base = activation_pattern(g, x, w).unwrap();
    let mut probe = w.clone();
    let sizes: Vec<usize> = w.tensors().iter().map(|t| t.len()).collect();
    let mut out = Vec::new();
    for (t, &len) in sizes.iter().enumerate() {
        let mut grads = Vec::with_capacity(len);
        for i in 0..len {
            let orig = probe.tensors()[t][i];
            probe.tensors_mut()[t][i] = orig + step;
            let up = loss_at(g, x, y, &probe);
            assert_eq!(activation_pattern(g, x, &probe).unwrap(), base, "probe +{step} on tensor {t}[{i}] crosses a kink");
            probe.tensors_mut()[t][i] = orig - step;
            let down = loss_at(g, x, y, &probe);
            assert_eq!(activation_pattern(g, x, &probe).unwrap(), base, "probe -{step} on tensor {t}[{i}] crosses a kink");
            probe.tensors_mut()[t][i] = orig;
            grads.push((up - down) / (2.0 * step));
        }
        out.push(grads);
    }
    out
}

/// Relative error with an absolute floor so that near-zero gradients do not
/// blow up the ratio.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    let scale = analytic.abs().max(numeric.abs()).max(GRAD_FLOOR);
    (analytic - numeric).abs() / scale
}

pub const GRAD_FLOOR: f64 = 1e-6;

/// Smallest ReLU margin accepted for a gradient-check point. Random draws
/// typically put the closest of the ~4500 pre-activations around 1e-5 from
/// its kink, so only a small fraction of draws qualify.
pub const MIN_RELU_MARGIN: f64 = 1e-4;

/// Central-difference step used by the gradient check.
pub const FD_STEP: f64 = 1e-5;

/// Random 20-node gradient-check problem: graph, scaled features, labels,
/// weights. Weight draws are repeated (deterministically) until the point is
/// differentiable with margin [`MIN_RELU_MARGIN`].
pub fn gradient_problem(seed: u64) -> (Graph, cgsrank::FeatureMatrix, Vec<f64>, ModelWeights) {
    let mut r = rng(seed);
    let g = gnp(20, 0.2, &mut r);
    let raw = feature_matrix(&g);
    let x = cgsrank::model::FeatureScaler::fit(&raw).transform(&raw);
    let y: Vec<f64> = (0..20).map(|_| r.gen_range(0.0..2.0)).collect();
    for attempt in 0..20_000 {
        let mut w = ModelWeights::init(seed.wrapping_mul(1000).wrapping_add(attempt));
        // non-zero biases so every bias gradient is exercised
        for b in w.conv1_bias.iter_mut().chain(w.conv2_bias.iter_mut()) {
            *b = r.gen_range(-0.1..0.1);
        }
        w.head_b = 0.3;
        if cgsrank::model::relu_margin(&g, &x, &w).unwrap() > MIN_RELU_MARGIN {
            return (g, x, y, w);
        }
    }
    panic!("no differentiable point found for seed {seed}")
}
