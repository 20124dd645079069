// SPDX-License-Identifier: Apache-2.0

//! Baseline node rankers.

mod betweenness;
mod community;
mod local;
mod peeling;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use betweenness::betweenness_centrality;
pub use community::{louvain, modularity, v_community, Partition};
pub use local::{degree_centrality, h_index, neighborhood_degree};
pub use peeling::{k_core, mdd};

/// Default mixing weight for [`mdd`].
pub const MDD_DEFAULT_LAMBDA: f64 = 0.7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "DC")]
    Dc,
    #[serde(rename = "BC")]
    Bc,
    #[serde(rename = "HI")]
    Hi,
    #[serde(rename = "KCORE")]
    KCore,
    #[serde(rename = "VC")]
    Vc,
    #[serde(rename = "MDD")]
    Mdd,
    #[serde(rename = "ND")]
    Nd,
    /// Scores produced by the trained graph regressor.
    #[serde(rename = "1D-CGS")]
    Cgs,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Dc,
        Method::Bc,
        Method::Hi,
        Method::KCore,
        Method::Vc,
        Method::Mdd,
        Method::Nd,
        Method::Cgs,
    ];

    pub const BASELINES: [Method; 7] = [
        Method::Dc,
        Method::Bc,
        Method::Hi,
        Method::KCore,
        Method::Vc,
        Method::Mdd,
        Method::Nd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dc => "DC",
            Method::Bc => "BC",
            Method::Hi => "HI",
            Method::KCore => "KCORE",
            Method::Vc => "VC",
            Method::Mdd => "MDD",
            Method::Nd => "ND",
            Method::Cgs => "1D-CGS",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let m = match s.to_ascii_lowercase().as_str() {
            "dc" | "degree" => Method::Dc,
            "bc" | "betweenness" => Method::Bc,
            "hi" | "h-index" | "hindex" => Method::Hi,
            "kcore" | "k-core" | "ks" => Method::KCore,
            "vc" | "v-community" => Method::Vc,
            "mdd" => Method::Mdd,
            "nd" => Method::Nd,
            "cgs" | "1d-cgs" | "model" => Method::Cgs,
            _ => return Err(Error::invalid(format!("unknown method '{s}'"))),
        };
        Ok(m)
    }
}

/// Per-node scores tagged with the method that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CentralityScores {
    pub method: Method,
    pub values: Vec<f64>,
}

impl CentralityScores {
    pub fn new(method: Method, values: Vec<f64>) -> Self {
        CentralityScores { method, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Computes one baseline. `Method::Cgs` needs trained weights and is rejected here.
pub fn compute(g: &crate::Graph, method: Method, mdd_lambda: f64) -> Result<CentralityScores> {
    match method {
        Method::Dc => degree_centrality(g),
        Method::Bc => Ok(betweenness_centrality(g)),
        Method::Hi => Ok(h_index(g)),
        Method::KCore => Ok(k_core(g)),
        Method::Vc => {
            if g.edge_count() == 0 {
                return Ok(CentralityScores::new(Method::Vc, vec![0.0; g.node_count()]));
            }
            let p = louvain(g)?;
            v_community(g, &p)
        }
        Method::Mdd => mdd(g, mdd_lambda),
        Method::Nd => Ok(neighborhood_degree(g)),
        Method::Cgs => Err(Error::invalid("1D-CGS scores require trained model weights")),
    }
}
