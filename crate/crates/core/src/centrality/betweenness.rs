// SPDX-License-Identifier: Apache-2.0

use std::collections::VecDeque;

use rayon::prelude::*;

use super::{CentralityScores, Method};
use crate::graph::Graph;

/// Sources per parallel work unit. Partial sums are combined in chunk order,
/// so the floating-point result does not depend on the thread count.
const SOURCES_PER_CHUNK: usize = 32;

/// Unnormalized betweenness (Brandes), each unordered pair counted once.
pub fn betweenness_centrality(g: &Graph) -> CentralityScores {
    let n = g.node_count();
    let sources: Vec<usize> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCES_PER_CHUNK)
        .map(|chunk| {
            let mut work = Brandes::new(n);
            let mut acc = vec![0.0; n];
            for &s in chunk {
                work.accumulate(g, s, &mut acc);
            }
            acc
        })
        .collect();
    let mut values = vec![0.0; n];
    for part in partials {
        for (v, p) in values.iter_mut().zip(part) {
            *v += p;
        }
    }
    // every unordered pair was visited from both endpoints
    for v in &mut values {
        *v /= 2.0;
    }
    CentralityScores::new(Method::Bc, values)
}

struct Brandes {
    sigma: Vec<f64>,
    dist: Vec<i64>,
    delta: Vec<f64>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl Brandes {
    fn new(n: usize) -> Self {
        Brandes {
            sigma: vec![0.0; n],
            dist: vec![-1; n],
            delta: vec![0.0; n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, g: &Graph, s: usize, acc: &mut [f64]) {
        self.sigma.fill(0.0);
        self.dist.fill(-1);
        self.delta.fill(0.0);
        self.order.clear();

        self.sigma[s] = 1.0;
        self.dist[s] = 0;
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            for &w in g.neighbors(v) {
                if self.dist[w] < 0 {
                    self.dist[w] = self.dist[v] + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == self.dist[v] + 1 {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }
        // predecessors are the neighbors one level closer to s
        for &w in self.order.iter().rev() {
            for &v in g.neighbors(w) {
                if self.dist[v] == self.dist[w] - 1 {
                    self.delta[v] += self.sigma[v] / self.sigma[w] * (1.0 + self.delta[w]);
                }
            }
            if w != s {
                acc[w] += self.delta[w];
            }
        }
    }
}
