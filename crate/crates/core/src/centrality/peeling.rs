// SPDX-License-Identifier: Apache-2.0

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Core index of every node (Batagelj–Zaversnik bucket peeling, O(m)).
pub fn k_core(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let mut deg = g.degrees();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bucket sort nodes by degree
    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for &u in g.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    CentralityScores::new(Method::KCore, deg.into_iter().map(|d| d as f64).collect())
}

/// Two mixed degrees closer than this are the same peeling threshold.
const THRESHOLD_EPS: f64 = 1e-9;

#[derive(PartialEq)]
struct Entry {
    mixed: f64,
    node: usize,
    residual: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mixed.total_cmp(&other.mixed).then(self.node.cmp(&other.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Mixed degree decomposition.
///
/// A node's mixed degree is `k_s + lambda * (k_d - k_s)` where `k_d` is its
/// degree and `k_s` its residual degree among nodes not yet removed. Nodes
/// are peeled in increasing mixed degree; the score of a node is the peeling
/// threshold in force when it is removed, so everything that falls to or
/// below the current threshold during a cascade shares one score. `lambda = 0`
/// reproduces the core index and `lambda = 1` the degree.
pub fn mdd(g: &Graph, lambda: f64) -> Result<CentralityScores> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::invalid(format!("MDD lambda = {lambda} outside [0, 1]")));
    }
    let n = g.node_count();
    let full = g.degrees();
    let mut residual = full.clone();
    let mut removed = vec![false; n];
    let mut scores = vec![0.0; n];
    let mixed = |v: usize, ks: usize| ks as f64 + lambda * (full[v] - ks) as f64;

    let mut heap: BinaryHeap<Reverse<Entry>> = (0..n)
        .map(|v| Reverse(Entry { mixed: mixed(v, full[v]), node: v, residual: full[v] }))
        .collect();
    let mut threshold = f64::NEG_INFINITY;
    while let Some(Reverse(e)) = heap.pop() {
        if removed[e.node] || residual[e.node] != e.residual {
            continue;
        }
        if e.mixed > threshold + THRESHOLD_EPS {
            threshold = e.mixed;
        }
        removed[e.node] = true;
        scores[e.node] = threshold;
        for &u in g.neighbors(e.node) {
            if !removed[u] {
                residual[u] -= 1;
                heap.push(Reverse(Entry { mixed: mixed(u, residual[u]), node: u, residual: residual[u] }));
            }
        }
    }
    Ok(CentralityScores::new(Method::Mdd, scores))
}
