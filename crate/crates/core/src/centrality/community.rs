// SPDX-License-Identifier: Apache-2.0

//! Louvain modularity optimization and the V-community score built on it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{CentralityScores, Method};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Gains below this are treated as zero so equal-gain moves cannot cycle.
const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    /// Community of every node, contiguous from 0 in first-seen node order.
    pub labels: Vec<usize>,
    pub modularity: f64,
}

impl Partition {
    pub fn community_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m + 1)
    }
}

/// Newman modularity of `labels` on `g`.
pub fn modularity(g: &Graph, labels: &[usize]) -> f64 {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return 0.0;
    }
    let k = labels.iter().max().map_or(0, |&x| x + 1);
    let mut internal = vec![0.0; k];
    let mut degree_sum = vec![0.0; k];
    for v in 0..g.node_count() {
        degree_sum[labels[v]] += g.degree(v) as f64;
    }
    for (u, v) in g.edges() {
        if labels[u] == labels[v] {
            internal[labels[u]] += 1.0;
        }
    }
    internal
        .iter()
        .zip(&degree_sum)
        .map(|(&l, &d)| l / m - (d / (2.0 * m)).powi(2))
        .sum()
}

/// Weighted multigraph used between aggregation levels.
struct Level {
    /// Neighbor lists without self-loops, sorted by neighbor id.
    adj: Vec<Vec<(usize, f64)>>,
    /// Sum of adjacency weight inside each node (twice its internal edge weight).
    inner: Vec<f64>,
    strength: Vec<f64>,
    /// Twice the total edge weight.
    two_m: f64,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let adj: Vec<Vec<(usize, f64)>> = (0..n).map(|v| g.neighbors(v).iter().map(|&u| (u, 1.0)).collect()).collect();
        let strength: Vec<f64> = (0..n).map(|v| g.degree(v) as f64).collect();
        Level { adj, inner: vec![0.0; n], two_m: strength.iter().sum(), strength }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Local moving phase. Returns whether any node changed community.
    fn move_nodes(&self, community: &mut [usize]) -> bool {
        let n = self.len();
        let mut total = vec![0.0; n];
        for v in 0..n {
            total[community[v]] += self.strength[v];
        }
        let mut links: BTreeMap<usize, f64> = BTreeMap::new();
        let mut any_moved = false;
        loop {
            let mut moved = false;
            for v in 0..n {
                let own = community[v];
                let k = self.strength[v];
                total[own] -= k;
                links.clear();
                links.insert(own, 0.0);
                for &(u, w) in &self.adj[v] {
                    *links.entry(community[u]).or_insert(0.0) += w;
                }
                let gain = |c: usize, k_in: f64| k_in - total[c] * k / self.two_m;
                let stay = gain(own, links[&own]);
                let mut best = own;
                let mut best_gain = stay;
                // label order + strict improvement: ties keep the lowest label
                for (&c, &k_in) in &links {
                    let gc = gain(c, k_in);
                    if gc > best_gain + MIN_GAIN {
                        best = c;
                        best_gain = gc;
                    }
                }
                if best != own {
                    community[v] = best;
                    moved = true;
                    any_moved = true;
                }
                total[best] += k;
            }
            if !moved {
                return any_moved;
            }
        }
    }

    /// Collapses communities into nodes. `community` must be contiguous.
    fn aggregate(&self, community: &[usize], count: usize) -> Level {
        let mut inner = vec![0.0; count];
        let mut strength = vec![0.0; count];
        let mut maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); count];
        for v in 0..self.len() {
            let cv = community[v];
            inner[cv] += self.inner[v];
            strength[cv] += self.strength[v];
            for &(u, w) in &self.adj[v] {
                let cu = community[u];
                if cu == cv {
                    inner[cv] += w;
                } else {
                    *maps[cv].entry(cu).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
            inner,
            strength,
            two_m: self.two_m,
        }
    }
}

/// Relabels to 0.. in order of first appearance; returns the label count.
fn compact(labels: &mut [usize]) -> usize {
    let mut remap: BTreeMap<usize, usize> = BTreeMap::new();
    let mut next = 0;
    for l in labels.iter_mut() {
        let id = *remap.entry(*l).or_insert_with(|| {
            next += 1;
            next - 1
        });
        *l = id;
    }
    next
}

/// Two-phase Louvain (local moves, then aggregation) until no level improves.
///
/// Nodes are visited in id order and ties go to the lowest community label,
/// so the partition is a pure function of the graph.
pub fn louvain(g: &Graph) -> Result<Partition> {
    if g.edge_count() == 0 {
        return Err(Error::invalid("louvain needs at least one edge"));
    }
    let mut assignment: Vec<usize> = (0..g.node_count()).collect();
    let mut level = Level::from_graph(g);
    loop {
        let mut community: Vec<usize> = (0..level.len()).collect();
        if !level.move_nodes(&mut community) {
            break;
        }
        let count = compact(&mut community);
        for a in assignment.iter_mut() {
            *a = community[*a];
        }
        level = level.aggregate(&community, count);
    }
    compact(&mut assignment);
    let q = modularity(g, &assignment);
    Ok(Partition { labels: assignment, modularity: q })
}

/// Number of distinct communities among each node's neighbors.
pub fn v_community(g: &Graph, partition: &Partition) -> Result<CentralityScores> {
    if partition.labels.len() != g.node_count() {
        return Err(Error::Shape(format!(
            "partition covers {} nodes, graph has {}",
            partition.labels.len(),
            g.node_count()
        )));
    }
    let mut seen: Vec<usize> = Vec::new();
    let values = (0..g.node_count())
        .map(|v| {
            seen.clear();
            seen.extend(g.neighbors(v).iter().map(|&u| partition.labels[u]));
            seen.sort_unstable();
            seen.dedup();
            seen.len() as f64
        })
        .collect();
    Ok(CentralityScores::new(Method::Vc, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn splits_two_cliques() {
        let g = two_cliques();
        let p = louvain(&g).unwrap();
        assert_eq!(p.labels, vec![0, 0, 0, 0, 1, 1, 1, 1]);
        // two clique halves: 6/13 each internal, degree sums 13 each
        let expected = 2.0 * (6.0 / 13.0 - 0.25);
        assert!((p.modularity - expected).abs() < 1e-12);
    }

    #[test]
    fn single_clique_is_one_community() {
        let mut e = Vec::new();
        for i in 0..5 {
            for j in i + 1..5 {
                e.push((i, j));
            }
        }
        let p = louvain(&graph(5, &e)).unwrap();
        assert_eq!(p.community_count(), 1);
        assert!(p.modularity.abs() < 1e-12);
    }

    #[test]
    fn not_worse_than_singletons() {
        let g = crate::graph::generate_ba(400, 2, 12).unwrap();
        let p = louvain(&g).unwrap();
        let singletons: Vec<usize> = (0..400).collect();
        assert!(p.modularity >= modularity(&g, &singletons));
        assert!(p.modularity > 0.3, "modularity {}", p.modularity);
        assert!((-0.5..=1.0).contains(&p.modularity));
        assert_eq!(louvain(&g).unwrap(), p);
    }

    #[test]
    fn empty_graph_rejected() {
        assert!(louvain(&graph(3, &[])).is_err());
    }

    #[test]
    fn vc_scores() {
        let g = two_cliques();
        let p = louvain(&g).unwrap();
        let vc = v_community(&g, &p).unwrap().values;
        assert_eq!(vc[3], 2.0);
        assert_eq!(vc[4], 2.0);
        assert_eq!(vc[0], 1.0);

        let with_isolate = graph(4, &[(0, 1), (1, 2)]);
        let one = Partition { labels: vec![0; 4], modularity: 0.0 };
        assert_eq!(v_community(&with_isolate, &one).unwrap().values, vec![1.0, 1.0, 1.0, 0.0]);
        let short = Partition { labels: vec![0; 2], modularity: 0.0 };
        assert!(v_community(&with_isolate, &short).is_err());
    }
}
