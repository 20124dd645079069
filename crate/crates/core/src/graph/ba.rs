// SPDX-License-Identifier: Apache-2.0

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::rng;

/// Barabási–Albert preferential attachment.
///
/// Growth starts from the complete graph on `m_attach + 1` nodes. Every later
/// node attaches to `m_attach` distinct existing nodes, each drawn with
/// probability proportional to its current degree (repeat draws are
/// rejected). The edge count is therefore exactly
/// `m_attach * (n - m_attach - 1) + m_attach * (m_attach + 1) / 2`.
pub fn generate_ba(n: usize, m_attach: usize, seed: u64) -> Result<Graph> {
    if m_attach == 0 {
        return Err(Error::invalid("m_attach must be at least 1"));
    }
    if n <= m_attach {
        return Err(Error::invalid(format!("n ({n}) must exceed m_attach ({m_attach})")));
    }
    let mut rng = rng::stream(seed);
    let seed_nodes = m_attach + 1;
    let mut edges = Vec::with_capacity(m_attach * n);
    // one entry per edge endpoint; uniform draws from it are degree-proportional
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * m_attach * n);
    for u in 0..seed_nodes {
        for v in u + 1..seed_nodes {
            edges.push((u, v));
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(m_attach);
    for new in seed_nodes..n {
        chosen.clear();
        while chosen.len() < m_attach {
            let target = endpoints[rng.gen_range(0..endpoints.len())];
            if !chosen.contains(&target) {
                chosen.push(target);
            }
        }
        for &t in &chosen {
            edges.push((t, new));
            endpoints.push(t);
            endpoints.push(new);
        }
    }
    Ok(Graph::from_edges(n, edges)?.0)
}
