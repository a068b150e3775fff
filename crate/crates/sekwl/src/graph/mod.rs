//! Immutable simple undirected graphs in compressed sparse row form.
//!
//! Layout:
//!   offsets   — length n+1, non-decreasing, offsets[n] == 2m
//!   neighbors — concatenated sorted adjacency lists, length 2m
//!
//! Every constructor enforces simplicity (no self-loops, no parallel
//! edges) and symmetry, so all algorithms in this crate can assume a
//! clean adjacency structure. Graphs are immutable after construction
//! and safe to share across worker threads.

mod generate;
mod graph6;

pub use generate::{disjoint_union, generate, GeneratorSpec};
pub use graph6::{from_graph6, to_graph6};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};

/// Dense node identifier in `0..n`.
pub type NodeId = u32;

/// Label and provenance for a graph in a working set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphId {
    pub label: String,
    /// File path or generator spec that produced the graph.
    pub source: String,
}

impl GraphId {
    pub fn new(label: impl Into<String>, source: impl Into<String>) -> Self {
        GraphId {
            label: label.into(),
            source: source.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, dropping duplicates and
    /// self-loops. Returns the counts of dropped items alongside.
    ///
    /// Panics if an endpoint is `>= n`; callers that accept external
    /// input must validate ids first.
    pub fn from_edges_counted(
        n: usize,
        edges: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> (Graph, usize, usize) {
        let mut list: Vec<(NodeId, NodeId)> = Vec::new();
        let mut self_loops = 0usize;
        for (u, v) in edges {
            assert!((u as usize) < n && (v as usize) < n, "endpoint out of range");
            if u == v {
                self_loops += 1;
            } else {
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        let before = list.len();
        list.dedup();
        let duplicates = before - list.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &list {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0usize;
        offsets.push(0);
        for d in &degree {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut neighbors = vec![0 as NodeId; acc];
        for &(u, v) in &list {
            neighbors[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        for v in 0..n {
            neighbors[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        (
            Graph {
                offsets,
                neighbors,
                m: list.len(),
            },
            duplicates,
            self_loops,
        )
    }

    /// Builds a graph from edges assumed clean (generators, decoders).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Graph {
        Graph::from_edges_counted(n, edges).0
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Undirected edge count.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    /// Neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Iterates every undirected edge once, as (u, v) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.n() as NodeId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n() as NodeId).map(|v| self.degree(v)).collect()
    }

    /// Relabels nodes: node v of `self` becomes `perm[v]` in the result.
    ///
    /// `perm` must be a permutation of `0..n`.
    pub fn permute(&self, perm: &[NodeId]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges: Vec<(NodeId, NodeId)> = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Graph::from_edges(self.n(), edges)
    }
}

/// Result of loading an edge list, with counts of dropped input lines.
#[derive(Debug)]
pub struct EdgeListLoad {
    pub graph: Graph,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Parses the edge-list format: UTF-8 lines, `#` starts a comment, an
/// optional first data line `n=<int>` fixes the node count, and every
/// other data line is `<u> <v>` with 0-indexed ids. Without a header,
/// n is one plus the largest id seen. Duplicate edges and self-loops
/// are dropped and counted rather than rejected.
pub fn from_edge_list(reader: impl BufRead) -> Result<EdgeListLoad> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut max_id: Option<NodeId> = None;
    let mut seen_pair = false;

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(Error::Io)?;
        let data = match line.find('#') {
            Some(pos) => &line[..pos],
            None => &line[..],
        };
        let data = data.trim();
        if data.is_empty() {
            continue;
        }
        if let Some(rest) = data.strip_prefix("n=") {
            if seen_pair || declared_n.is_some() {
                return Err(Error::parse(lineno, "n=<int> is only valid as the first data line"));
            }
            let n: usize = rest
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, format!("invalid node count {rest:?}")))?;
            declared_n = Some(n);
            continue;
        }
        let mut it = data.split_whitespace();
        let (a, b) = match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::parse(
                    lineno,
                    format!("expected two whitespace-separated node ids, got {data:?}"),
                ))
            }
        };
        let u: NodeId = a
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid node id {a:?}")))?;
        let v: NodeId = b
            .parse()
            .map_err(|_| Error::parse(lineno, format!("invalid node id {b:?}")))?;
        if let Some(n) = declared_n {
            if u as usize >= n || v as usize >= n {
                return Err(Error::parse(
                    lineno,
                    format!("node id {} exceeds declared n={n}", u.max(v)),
                ));
            }
        }
        seen_pair = true;
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u.max(v))));
        edges.push((u, v));
    }

    let n = declared_n.unwrap_or_else(|| max_id.map_or(0, |m| m as usize + 1));
    let (graph, duplicate_edges, self_loops) = Graph::from_edges_counted(n, edges);
    Ok(EdgeListLoad {
        graph,
        duplicate_edges,
        self_loops,
    })
}

/// Writes the edge-list format. The `n=<int>` header is emitted only
/// when the edges alone would not reproduce the node count (isolated
/// trailing nodes or an edgeless non-empty graph).
pub fn to_edge_list(g: &Graph, mut w: impl Write) -> std::io::Result<()> {
    let max_id = g.edges().map(|(_, v)| v).max();
    let needs_header = match max_id {
        Some(v) => (v as usize + 1) != g.n(),
        None => g.n() > 0,
    };
    if needs_header {
        writeln!(w, "n={}", g.n())?;
    }
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}
