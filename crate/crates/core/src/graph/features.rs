// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Mean degree of `v`'s neighbors; 0 for an isolated node.
pub fn average_neighbor_degree(g: &Graph, v: NodeId) -> Result<f64> {
    if v >= g.node_count() {
        return Err(Error::invalid(format!("node {v} out of range for {} nodes", g.node_count())));
    }
    Ok(and_unchecked(g, v))
}

fn and_unchecked(g: &Graph, v: NodeId) -> f64 {
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return 0.0;
    }
    let total: usize = nbrs.iter().map(|&u| g.degree(u)).sum();
    total as f64 / nbrs.len() as f64
}

/// Per-node `[degree, average neighbor degree]` rows.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: Vec<[f64; 2]>,
}

impl FeatureMatrix {
    pub fn from_rows(rows: Vec<[f64; 2]>) -> Self {
        FeatureMatrix { rows }
    }

    pub fn rows(&self) -> &[[f64; 2]] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, c: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[c])
    }
}

pub fn feature_matrix(g: &Graph) -> FeatureMatrix {
    let rows = (0..g.node_count())
        .map(|v| [g.degree(v) as f64, and_unchecked(g, v)])
        .collect();
    FeatureMatrix { rows }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkStats {
    pub n: usize,
    pub m: usize,
    pub density: f64,
    pub avg_degree: f64,
    pub second_moment: f64,
    pub max_degree: usize,
    /// Mean-field SIR threshold `<k> / (<k^2> - <k>)`; `+inf` when every
    /// degree is 0 or 1.
    pub mu_c: f64,
}

impl NetworkStats {
    pub const CSV_HEADER: &'static str = "n,m,density,avg_degree,max_degree,mu_c";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.n, self.m, self.density, self.avg_degree, self.max_degree, self.mu_c
        )
    }
}

pub fn network_stats(g: &Graph) -> Result<NetworkStats> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("network statistics need at least 2 nodes"));
    }
    let m = g.edge_count();
    let degrees = g.degrees();
    let nf = n as f64;
    let avg_degree = degrees.iter().sum::<usize>() as f64 / nf;
    let second_moment = degrees.iter().map(|&d| (d * d) as f64).sum::<f64>() / nf;
    let spread = second_moment - avg_degree;
    let mu_c = if spread > 0.0 {
        avg_degree / spread
    } else {
        log::warn!("<k^2> equals <k>; epidemic threshold reported as +inf");
        f64::INFINITY
    };
    Ok(NetworkStats {
        n,
        m,
        density: 2.0 * m as f64 / (nf * (nf - 1.0)),
        avg_degree,
        second_moment,
        max_degree: g.max_degree(),
        mu_c,
    })
}
