// SPDX-License-Identifier: Apache-2.0

//! Immutable undirected simple graphs.
//!
//! Nodes are contiguous ids `0..n`. Adjacency is stored in CSR form with each
//! neighbor slice strictly increasing. The original token of every node is
//! kept so rankings can be reported in the labels of the input file.

mod ba;
mod features;

use std::collections::HashMap;
use std::io::{BufRead, Write};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub use ba::generate_ba;
pub use features::{average_neighbor_degree, feature_matrix, network_stats, FeatureMatrix, NetworkStats};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    labels: Vec<String>,
}

/// What [`load_edge_list`] had to discard.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

impl Graph {
    /// Builds a graph on nodes `0..n` with labels `"0".."n-1"`.
    ///
    /// Self-loops and repeated edges (in either orientation) are dropped and
    /// counted in the returned report.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<(Self, LoadReport)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::build(labels, edges)
    }

    fn build<I>(labels: Vec<String>, edges: I) -> Result<(Self, LoadReport)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut report = LoadReport::default();
        let mut lists: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range for {n} nodes")));
            }
            if u == v {
                report.self_loops += 1;
                continue;
            }
            lists[u].push(v);
            lists[v].push(u);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        let mut dup_endpoints = 0;
        for list in &mut lists {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            dup_endpoints += before - list.len();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        // every duplicate edge removed one entry from each endpoint's list
        report.duplicate_edges = dup_endpoints / 2;
        Ok((Graph { offsets, targets, labels }, report))
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    /// Original token of node `v`.
    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Map from original token back to node id.
    pub fn label_index(&self) -> HashMap<&str, NodeId> {
        self.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
    }

    /// Edges `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Checks symmetry, sortedness, absence of self-loops and the handshake identity.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        if self.offsets.len() != n + 1 || self.offsets[n] != self.targets.len() {
            return Err(Error::invalid("offset table inconsistent with target list"));
        }
        for u in 0..n {
            let nbrs = self.neighbors(u);
            for w in nbrs.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::invalid(format!("adjacency of {u} is not strictly increasing")));
                }
            }
            for &v in nbrs {
                if v == u {
                    return Err(Error::invalid(format!("self-loop at {u}")));
                }
                if v >= n || self.neighbors(v).binary_search(&u).is_err() {
                    return Err(Error::invalid(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        let degree_sum: usize = self.degrees().iter().sum();
        if degree_sum != 2 * self.edge_count() {
            return Err(Error::invalid("degree sum differs from twice the edge count"));
        }
        Ok(())
    }

    /// SHA-256 over the node count and the sorted edge set, hex encoded.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.node_count() as u64).to_le_bytes());
        for (u, v) in self.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Writes one `label_u label_v` line per edge.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", self.labels[u], self.labels[v])?;
        }
        Ok(())
    }

    /// Applies a node relabeling: node `v` becomes `perm[v]`. Labels travel with nodes.
    pub fn permuted(&self, perm: &[NodeId]) -> Result<Self> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::invalid("permutation length differs from node count"));
        }
        let mut labels = vec![String::new(); n];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Ok(Self::build(labels, edges)?.0)
    }
}

/// Parses a whitespace-separated edge list.
///
/// Lines that are blank or start with `#` or `%` are skipped. Node tokens are
/// assigned contiguous ids in first-seen order. Self-loops and duplicate
/// edges are dropped with a logged warning.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<(Graph, LoadReport)> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    let mut intern = |tok: &str| -> NodeId {
        if let Some(&id) = ids.get(tok) {
            return id;
        }
        let id = labels.len();
        labels.push(tok.to_string());
        ids.insert(tok.to_string(), id);
        id
    };
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: format!("expected 2 node tokens, found {}", tokens.len()),
            });
        }
        let u = intern(tokens[0]);
        let v = intern(tokens[1]);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    let (graph, report) = Graph::build(labels, edges)?;
    if report.duplicate_edges > 0 || report.self_loops > 0 {
        log::warn!(
            "dropped {} duplicate edge(s) and {} self-loop(s)",
            report.duplicate_edges,
            report.self_loops
        );
    }
    Ok((graph, report))
}

pub fn load_edge_list_file(path: impl AsRef<std::path::Path>) -> Result<(Graph, LoadReport)> {
    let file = std::fs::File::open(path)?;
    load_edge_list(std::io::BufReader::new(file))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str) -> Result<(Graph, LoadReport)> {
        load_edge_list(text.as_bytes())
    }

    #[test]
    fn loads_two_edge_path() {
        let (g, report) = load("0 1\n1 2").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(report, LoadReport::default());
    }

    #[test]
    fn drops_duplicates_and_self_loops() {
        let (g, report) = load("a b\nb a\na a").unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(report.self_loops, 1);
        assert_eq!(g.label(0), "a");
        g.validate().unwrap();
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let (g, _) = load("# header\n% konect\n\nx y\n  y z  \n").unwrap();
        assert_eq!(g.labels(), &["x", "y", "z"]);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn malformed_line_reports_line_number() {
        match load("0 1\n1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(load("0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(load(""), Err(Error::EmptyInput)));
        assert!(matches!(load("# only a comment\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn edge_list_round_trip_preserves_labels() {
        let (g, _) = load("p q\nq r\nr p\ns p").unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let (h, _) = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g.fingerprint(), h.fingerprint());
        assert_eq!(g.labels(), h.labels());
    }

    #[test]
    fn fingerprint_tracks_edge_set() {
        let a = fixtures::path3();
        let b = fixtures::triangle();
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.fingerprint(), fixtures::path3().fingerprint());
    }

    #[test]
    fn permuted_graph_is_valid() {
        let g = fixtures::triangle_pendant();
        let p = g.permuted(&[2, 3, 0, 1]).unwrap();
        p.validate().unwrap();
        assert_eq!(p.degree(2), 3);
        assert_eq!(p.label(2), "0");
    }
}
