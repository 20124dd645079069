// SPDX-License-Identifier: Apache-2.0

use super::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `deg(v) / (n - 1)`.
pub fn degree_centrality(g: &Graph) -> Result<CentralityScores> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::invalid("degree centrality needs at least 2 nodes"));
    }
    let denom = (n - 1) as f64;
    let values = (0..n).map(|v| g.degree(v) as f64 / denom).collect();
    Ok(CentralityScores::new(Method::Dc, values))
}

/// Sum of neighbor degrees.
pub fn neighborhood_degree(g: &Graph) -> CentralityScores {
    let values = (0..g.node_count())
        .map(|v| g.neighbors(v).iter().map(|&u| g.degree(u)).sum::<usize>() as f64)
        .collect();
    CentralityScores::new(Method::Nd, values)
}

/// Largest `h` such that at least `h` neighbors have degree `>= h`.
pub fn h_index(g: &Graph) -> CentralityScores {
    let mut buf = Vec::new();
    let values = (0..g.node_count())
        .map(|v| {
            buf.clear();
            buf.extend(g.neighbors(v).iter().map(|&u| g.degree(u)));
            h_of(&mut buf) as f64
        })
        .collect();
    CentralityScores::new(Method::Hi, values)
}

fn h_of(values: &mut [usize]) -> usize {
    values.sort_unstable_by(|a, b| b.cmp(a));
    values.iter().enumerate().take_while(|&(i, &d)| d > i).count()
}
