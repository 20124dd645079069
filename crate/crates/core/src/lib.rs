// SPDX-License-Identifier: Apache-2.0

//! Influential node ranking for undirected graphs.
//!
//! The crate bundles everything needed to rank nodes by spreading influence:
//!
//! - [`graph`]: edge-list ingestion, Barabási–Albert synthesis, node features
//!   and network statistics.
//! - [`sir`]: Monte Carlo SIR simulation producing per-node influence labels,
//!   plus an exact enumeration oracle for tiny graphs.
//! - [`centrality`]: the classical baselines (DC, BC, H-index, k-core, MDD,
//!   ND, V-community) and the Louvain partitioner V-community needs.
//! - [`model`]: a two-feature 1D convolution encoder followed by two mean
//!   aggregation graph layers and a linear head, trained with Adam.
//! - [`metrics`]: Kendall's tau, top-k Jaccard similarity, monotonicity index
//!   and rank histograms.
//! - [`bench`]: the experiment commands behind the `cgsrank` binary.

pub mod bench;
pub mod centrality;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod model;
pub mod rng;
pub mod sir;

pub use centrality::{CentralityScores, Method};
pub use error::{Error, Result};
pub use graph::{FeatureMatrix, Graph, NetworkStats};
pub use metrics::RankingReport;
pub use model::{ModelWeights, TrainConfig, TrainedModel};
pub use sir::{InfluenceLabels, SirParams};
