// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::centrality::{Method, MDD_DEFAULT_LAMBDA};
use crate::error::{Error, Result};
use crate::metrics::{MiDenominator, TauVariant};
use crate::model::TrainConfig;
use crate::rng::derive_seed;
use crate::sir::SirParams;

/// Barabási–Albert graph used when no edge list is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaSpec {
    pub n: usize,
    pub m_attach: usize,
}

impl Default for BaSpec {
    fn default() -> Self {
        BaSpec { n: 1000, m_attach: 2 }
    }
}

/// Everything an experiment run depends on. Loaded from JSON (every field
/// optional) and then overridden by command-line flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Root seed; BA generation, SIR labels and weight init use named substreams of it.
    pub seed: u64,
    /// Edge list to load. When absent, a BA graph is generated from `ba`.
    pub graph: Option<PathBuf>,
    pub ba: BaSpec,
    /// Absolute infection probability. Overrides `mu_multiplier` when set.
    pub mu: Option<f64>,
    /// Infection probability as a multiple of the graph's epidemic threshold.
    pub mu_multiplier: f64,
    pub beta: f64,
    pub trials: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub methods: Vec<Method>,
    pub k_grid: Vec<usize>,
    pub mu_multipliers: Vec<f64>,
    pub mdd_lambda: f64,
    pub tau_variant: TauVariant,
    pub mi_denominator: MiDenominator,
    pub histogram_bins: usize,
    pub timing_repeats: usize,
    pub output_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let train = TrainConfig::default();
        ExperimentConfig {
            seed: 0,
            graph: None,
            ba: BaSpec::default(),
            mu: None,
            mu_multiplier: 1.5,
            beta: 1.0,
            trials: 1000,
            learning_rate: train.learning_rate,
            epochs: train.epochs,
            methods: Method::ALL.to_vec(),
            k_grid: vec![10, 20, 50, 100],
            mu_multipliers: vec![1.0, 1.2, 1.5, 1.8, 2.0],
            mdd_lambda: MDD_DEFAULT_LAMBDA,
            tau_variant: TauVariant::A,
            mi_denominator: MiDenominator::Nodes,
            histogram_bins: 20,
            timing_repeats: 3,
            output_dir: PathBuf::from("."),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::invalid(format!("config {}: {e}", path.as_ref().display())))?;
        serde_json::from_str(&text).map_err(|e| Error::invalid(format!("config {}: {e}", path.as_ref().display())))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(mu) = self.mu {
            if !(0.0..=1.0).contains(&mu) {
                return Err(Error::invalid(format!("mu = {mu} outside [0, 1]")));
            }
        }
        if !(self.mu_multiplier > 0.0) {
            return Err(Error::invalid("mu multiplier must be positive"));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid("method list is empty"));
        }
        if self.k_grid.is_empty() || self.k_grid.contains(&0) {
            return Err(Error::invalid("k grid must be non-empty and positive"));
        }
        if self.mu_multipliers.is_empty() || self.mu_multipliers.iter().any(|&m| !(m > 0.0)) {
            return Err(Error::invalid("mu multipliers must be non-empty and positive"));
        }
        if self.histogram_bins == 0 || self.timing_repeats == 0 {
            return Err(Error::invalid("histogram bins and timing repeats must be at least 1"));
        }
        if let Some(path) = &self.graph {
            std::fs::metadata(path).map_err(|e| Error::invalid(format!("graph {}: {e}", path.display())))?;
        }
        self.train_config().validate()?;
        SirParams::new(self.mu.unwrap_or(0.5), self.beta, self.trials, 0)?;
        Ok(())
    }

    pub fn ba_seed(&self) -> u64 {
        derive_seed(self.seed, "ba")
    }

    pub fn labels_seed(&self) -> u64 {
        derive_seed(self.seed, "labels")
    }

    pub fn train_config(&self) -> TrainConfig {
        TrainConfig {
            learning_rate: self.learning_rate,
            epochs: self.epochs,
            seed: derive_seed(self.seed, "init"),
            ..TrainConfig::default()
        }
    }

    /// SHA-256 of the canonical JSON form, recorded in every output.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serializes");
        let digest = Sha256::digest(&json);
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Resolves the infection probability for a graph with threshold `mu_c`.
    pub fn resolve_mu(&self, mu_c: f64) -> Result<f64> {
        match self.mu {
            Some(mu) => Ok(mu),
            None => scaled_mu(self.mu_multiplier, mu_c),
        }
    }
}

/// `multiplier · mu_c`, which must be a probability.
pub fn scaled_mu(multiplier: f64, mu_c: f64) -> Result<f64> {
    let mu = multiplier * mu_c;
    if !mu.is_finite() || mu > 1.0 {
        return Err(Error::invalid(format!(
            "{multiplier} x mu_c = {mu} is not a probability; pass an explicit mu"
        )));
    }
    Ok(mu)
}

/// The configured k values that fit the graph: at most `n / 10`, or just
/// the smallest k when even that is too large.
pub fn effective_k_grid(grid: &[usize], n: usize) -> Vec<usize> {
    let cap = (n / 10).max(1);
    let mut ks: Vec<usize> = grid.iter().copied().filter(|&k| k <= cap && k <= n).collect();
    if ks.is_empty() {
        ks.push(cap.min(n).max(1));
    }
    ks.sort_unstable();
    ks.dedup();
    ks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = ExperimentConfig::default();
        c.validate().unwrap();
        assert_eq!(c.trials, 1000);
        assert_eq!(c.mu_multiplier, 1.5);
        assert_eq!(c.train_config().learning_rate, 0.005);
        assert_eq!(c.train_config().epochs, 3000);
    }

    #[test]
    fn partial_json_keeps_defaults() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"seed": 9, "methods": ["DC", "1D-CGS"]}"#).unwrap();
        assert_eq!(c.seed, 9);
        assert_eq!(c.methods, vec![Method::Dc, Method::Cgs]);
        assert_eq!(c.k_grid, vec![10, 20, 50, 100]);
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"sed": 9}"#).is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let b = ExperimentConfig { seed: 1, ..a.clone() };
        assert_eq!(a.hash(), a.clone().hash());
        assert_ne!(a.hash(), b.hash());
        assert_ne!(a.ba_seed(), a.labels_seed());
    }

    #[test]
    fn rejects_bad_grids() {
        let bad = [
            ExperimentConfig { mu_multipliers: vec![], ..Default::default() },
            ExperimentConfig { mu_multipliers: vec![1.0, -1.0], ..Default::default() },
            ExperimentConfig { k_grid: vec![0], ..Default::default() },
            ExperimentConfig { methods: vec![], ..Default::default() },
            ExperimentConfig { mu: Some(1.5), ..Default::default() },
        ];
        for c in bad {
            assert!(matches!(c.validate(), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn k_grid_capped_at_tenth() {
        assert_eq!(effective_k_grid(&[10, 20, 50, 100], 1000), vec![10, 20, 50, 100]);
        assert_eq!(effective_k_grid(&[10, 20, 50, 100], 300), vec![10, 20]);
        assert_eq!(effective_k_grid(&[10, 20], 40), vec![4]);
        assert_eq!(effective_k_grid(&[10], 3), vec![1]);
    }
}
