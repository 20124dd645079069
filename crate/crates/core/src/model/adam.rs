// SPDX-License-Identifier: Apache-2.0

use super::weights::{Gradients, ModelWeights};
use super::TrainConfig;

/// First and second moment estimates, shaped like the weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub first: ModelWeights,
    pub second: ModelWeights,
    pub step: u64,
}

impl AdamState {
    pub fn new() -> Self {
        AdamState { first: ModelWeights::zeros(), second: ModelWeights::zeros(), step: 0 }
    }
}

impl Default for AdamState {
    fn default() -> Self {
        Self::new()
    }
}

/// One bias-corrected Adam update.
pub fn adam_step(w: &mut ModelWeights, grad: &Gradients, state: &mut AdamState, cfg: &TrainConfig) {
    state.step += 1;
    let (b1, b2) = (cfg.adam_beta1, cfg.adam_beta2);
    let c1 = 1.0 - b1.powi(state.step as i32);
    let c2 = 1.0 - b2.powi(state.step as i32);
    let params = w.tensors_mut();
    let firsts = state.first.tensors_mut();
    let seconds = state.second.tensors_mut();
    for (((p, m), v), g) in params.into_iter().zip(firsts).zip(seconds).zip(grad.tensors()) {
        for i in 0..p.len() {
            m[i] = b1 * m[i] + (1.0 - b1) * g[i];
            v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
            let m_hat = m[i] / c1;
            let v_hat = v[i] / c2;
            p[i] -= cfg.learning_rate * m_hat / (v_hat.sqrt() + cfg.adam_eps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_leaves_weights() {
        let mut w = ModelWeights::init(1);
        let before = w.clone();
        let mut state = AdamState::new();
        adam_step(&mut w, &Gradients(ModelWeights::zeros()), &mut state, &TrainConfig::default());
        assert_eq!(w, before);
        assert_eq!(state.step, 1);
    }

    #[test]
    fn first_step_moves_by_learning_rate() {
        let cfg = TrainConfig::default();
        let mut w = ModelWeights::init(1);
        let before = w.clone();
        let mut g = ModelWeights::zeros();
        g.sage1[[0, 0]] = 3.7;
        g.sage1[[1, 1]] = -0.002;
        g.head_b = 1e3;
        let mut state = AdamState::new();
        adam_step(&mut w, &Gradients(g), &mut state, &cfg);
        let lr = cfg.learning_rate;
        assert!((w.sage1[[0, 0]] - (before.sage1[[0, 0]] - lr)).abs() < 1e-9);
        assert!((w.sage1[[1, 1]] - (before.sage1[[1, 1]] + lr)).abs() < 1e-5 * lr);
        assert!((w.head_b - (before.head_b - lr)).abs() < 1e-12);
        assert_eq!(w.sage1[[2, 2]], before.sage1[[2, 2]]);
    }

    #[test]
    fn deterministic_update() {
        let cfg = TrainConfig::default();
        let g = Gradients(ModelWeights::init(5));
        let run = || {
            let mut w = ModelWeights::init(1);
            let mut s = AdamState::new();
            adam_step(&mut w, &g, &mut s, &cfg);
            adam_step(&mut w, &g, &mut s, &cfg);
            (w, s)
        };
        assert_eq!(run(), run());
    }
}
