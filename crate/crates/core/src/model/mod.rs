// SPDX-License-Identifier: Apache-2.0

//! The graph regressor: convolutional feature encoder, two mean-aggregation
//! graph layers and a linear head, with hand-derived gradients and Adam.

mod adam;
mod network;
mod weights;

use serde::{Deserialize, Serialize};

use crate::centrality::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::{FeatureMatrix, Graph};

pub use adam::{adam_step, AdamState};
pub use network::{
    activation_pattern, backward, encode, forward, mean_aggregate, mse_loss, relu_margin, sage_layer,
};
pub use weights::{
    load_weights, read_weights, save_weights, write_weights, Gradients, ModelWeights, CONV1_CHANNELS,
    CONV2_CHANNELS, HIDDEN, KERNEL, WEIGHT_FILE_MAGIC, WEIGHT_FILE_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub adam_beta1: f64,
    pub adam_beta2: f64,
    pub adam_eps: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.005,
            epochs: 3000,
            seed: 0,
            adam_beta1: 0.9,
            adam_beta2: 0.999,
            adam_eps: 1e-8,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(Error::invalid("learning rate must be positive"));
        }
        if self.epochs == 0 {
            return Err(Error::invalid("epochs must be at least 1"));
        }
        Ok(())
    }
}

/// Per-column min-max scaling fitted on the training graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureScaler {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl FeatureScaler {
    pub fn identity() -> Self {
        FeatureScaler { min: [0.0; 2], max: [1.0; 2] }
    }

    pub fn fit(features: &FeatureMatrix) -> Self {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for row in features.rows() {
            for c in 0..2 {
                min[c] = min[c].min(row[c]);
                max[c] = max[c].max(row[c]);
            }
        }
        if features.is_empty() {
            return Self::identity();
        }
        FeatureScaler { min, max }
    }

    /// Maps the fitted range onto [0, 1]; a constant column maps to 0.
    /// Values outside the fitted range extrapolate linearly.
    pub fn transform(&self, features: &FeatureMatrix) -> FeatureMatrix {
        let rows = features
            .rows()
            .iter()
            .map(|row| {
                let mut out = [0.0; 2];
                for c in 0..2 {
                    let span = self.max[c] - self.min[c];
                    out[c] = if span > 0.0 { (row[c] - self.min[c]) / span } else { 0.0 };
                }
                out
            })
            .collect();
        FeatureMatrix::from_rows(rows)
    }
}

/// Weights together with the normalization they were trained under.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedModel {
    pub weights: ModelWeights,
    pub scaler: FeatureScaler,
}

impl TrainedModel {
    pub fn save(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        save_weights(&self.weights, &self.scaler, path)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let (weights, scaler) = load_weights(path)?;
        Ok(TrainedModel { weights, scaler })
    }
}

/// Full-batch Adam training on one graph.
///
/// Features are min-max scaled with statistics fitted here; the returned
/// model carries them. Labels are standardized for the optimizer and the
/// affine map is folded back into the head afterwards, so the model predicts
/// on the original label scale. The loss curve holds the loss at the start of
/// every epoch, in original label units.
pub fn train(g: &Graph, features: &FeatureMatrix, labels: &[f64], cfg: &TrainConfig) -> Result<(TrainedModel, Vec<f64>)> {
    cfg.validate()?;
    if labels.len() != g.node_count() {
        return Err(Error::Shape(format!("{} labels for {} nodes", labels.len(), g.node_count())));
    }
    let scaler = FeatureScaler::fit(features);
    let x = scaler.transform(features);
    let (mean, std) = label_moments(labels)?;
    let targets: Vec<f64> = labels.iter().map(|y| (y - mean) / std).collect();
    let mut weights = ModelWeights::init(cfg.seed);
    let mut state = AdamState::new();
    let mut losses = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let (loss, grad) = backward(g, &x, &targets, &weights)?;
        if !loss.is_finite() {
            return Err(Error::Numeric(format!("loss became {loss} at epoch {epoch}")));
        }
        losses.push(loss * std * std);
        adam_step(&mut weights, &grad, &mut state, cfg);
        if epoch % 500 == 0 {
            log::debug!("epoch {epoch}: loss {loss:.6}");
        }
    }
    weights.head_w *= std;
    weights.head_b = weights.head_b * std + mean;
    if !weights.is_finite() {
        return Err(Error::Numeric("weights diverged to non-finite values".into()));
    }
    Ok((TrainedModel { weights, scaler }, losses))
}

/// Mean and spread used to standardize labels; a constant vector gets unit
/// spread so it is only centered.
fn label_moments(labels: &[f64]) -> Result<(f64, f64)> {
    if labels.iter().any(|y| !y.is_finite()) {
        return Err(Error::Numeric("labels contain non-finite values".into()));
    }
    let n = labels.len() as f64;
    let mean = labels.iter().sum::<f64>() / n;
    let var = labels.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n;
    let std = var.sqrt();
    Ok((mean, if std > 1e-12 * mean.abs().max(1.0) { std } else { 1.0 }))
}

/// Scores every node of `g` with a trained model.
pub fn predict(g: &Graph, features: &FeatureMatrix, model: &TrainedModel) -> Result<CentralityScores> {
    let x = model.scaler.transform(features);
    let scores = forward(g, &x, &model.weights)?;
    Ok(CentralityScores::new(Method::Cgs, scores.to_vec()))
}
