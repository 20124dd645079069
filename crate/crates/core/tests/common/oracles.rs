// SPDX-License-Identifier: Apache-2.0

//! Direct-definition reference implementations. Each is written for clarity
//! and tiny inputs, never for speed.

use std::collections::{BTreeSet, VecDeque};

use cgsrank::Graph;

fn adjacency(g: &Graph) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); g.node_count()];
    for (u, v) in g.edges() {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    adj
}

fn distances(adj: &[BTreeSet<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if dist[u].is_none() {
                dist[u] = Some(dist[v].unwrap() + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Betweenness by listing every shortest path explicitly, summed over
/// unordered pairs.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let adj = adjacency(g);
    let mut bc = vec![0.0; n];
    for s in 0..n {
        let dist = distances(&adj, s);
        for t in s + 1..n {
            let Some(d) = dist[t] else { continue };
            let mut paths: Vec<Vec<usize>> = Vec::new();
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().unwrap();
                if last == t {
                    paths.push(path);
                    continue;
                }
                if path.len() > d {
                    continue;
                }
                for &u in &adj[last] {
                    if !path.contains(&u) {
                        let mut next = path.clone();
                        next.push(u);
                        stack.push(next);
                    }
                }
            }
            let shortest: Vec<_> = paths.into_iter().filter(|p| p.len() == d + 1).collect();
            for v in 0..n {
                if v == s || v == t {
                    continue;
                }
                let through = shortest.iter().filter(|p| p.contains(&v)).count();
                bc[v] += through as f64 / shortest.len() as f64;
            }
        }
    }
    bc
}

pub fn degrees(g: &Graph) -> Vec<usize> {
    let mut deg = vec![0; g.node_count()];
    for (u, v) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    deg
}

/// Core number: the largest k such that v survives repeated deletion of
/// nodes with fewer than k surviving neighbors.
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.node_count();
    let adj = adjacency(g);
    let mut core = vec![0; n];
    for k in 1..=n {
        let mut alive = vec![true; n];
        loop {
            let doomed: Vec<usize> = (0..n)
                .filter(|&v| alive[v] && adj[v].iter().filter(|&&u| alive[u]).count() < k)
                .collect();
            if doomed.is_empty() {
                break;
            }
            for v in doomed {
                alive[v] = false;
            }
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
    }
    core
}

pub fn h_index(g: &Graph) -> Vec<usize> {
    let deg = degrees(g);
    let adj = adjacency(g);
    (0..g.node_count())
        .map(|v| (0..=adj[v].len()).filter(|&h| adj[v].iter().filter(|&&u| deg[u] >= h).count() >= h).max().unwrap())
        .collect()
}

pub fn neighbor_degree_sum(g: &Graph) -> Vec<usize> {
    let deg = degrees(g);
    let mut nd = vec![0; g.node_count()];
    for (u, v) in g.edges() {
        nd[u] += deg[v];
        nd[v] += deg[u];
    }
    nd
}

/// Kendall pair counts by enumerating all pairs: (concordant − discordant,
/// pairs tied in a, pairs tied in b, total pairs).
pub fn kendall_pairs(a: &[f64], b: &[f64]) -> (i64, u64, u64, u64) {
    let n = a.len();
    let (mut net, mut ta, mut tb) = (0i64, 0u64, 0u64);
    for i in 0..n {
        for j in i + 1..n {
            let da = a[i].partial_cmp(&a[j]).unwrap() as i64;
            let db = b[i].partial_cmp(&b[j]).unwrap() as i64;
            net += da * db;
            ta += (da == 0) as u64;
            tb += (db == 0) as u64;
        }
    }
    (net, ta, tb, (n * n.saturating_sub(1) / 2) as u64)
}

pub fn kendall_tau_a(a: &[f64], b: &[f64]) -> f64 {
    let (net, _, _, pairs) = kendall_pairs(a, b);
    net as f64 / pairs as f64
}

pub fn kendall_tau_b(a: &[f64], b: &[f64]) -> f64 {
    let (net, ta, tb, pairs) = kendall_pairs(a, b);
    let denom = ((pairs as f64 - ta as f64) * (pairs as f64 - tb as f64)).sqrt();
    if denom == 0.0 {
        0.0
    } else {
        net as f64 / denom
    }
}

/// Expected outbreak size from `source` under SIR with recovery after one
/// step, computed as the expected cluster size of `source` when each edge is
/// kept independently with probability `mu` (every edge is tried at most once).
pub fn percolation_influence(g: &Graph, source: usize, mu: f64) -> f64 {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 20, "2^{m} edge subsets is too many");
    let n = g.node_count();
    let mut total = 0.0;
    for mask in 0u64..(1 << m) {
        let kept = mask.count_ones() as i32;
        let weight = mu.powi(kept) * (1.0 - mu).powi(m as i32 - kept);
        let mut reached = vec![false; n];
        reached[source] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for (e, &(u, v)) in edges.iter().enumerate() {
                if mask >> e & 1 == 1 && reached[u] != reached[v] {
                    reached[u] = true;
                    reached[v] = true;
                    changed = true;
                }
            }
        }
        total += weight * reached.iter().filter(|&&r| r).count() as f64;
    }
    total
}

/// Strict descending order of nodes by score, ties by ascending id.
pub fn ranking(scores: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..scores.len()).collect();
    idx.sort_by(|&i, &j| scores[j].partial_cmp(&scores[i]).unwrap().then(i.cmp(&j)));
    idx
}
