//! K-hop neighborhoods, ego-networks, edge configurations, and
//! distance-regularity diagnostics.
//!
//! The distance metric throughout is BFS shortest-path distance.

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use serde::{Deserialize, Serialize};
use std::fmt;

pub const UNREACHABLE: u32 = u32::MAX;

/// BFS distances from `source`; unreachable nodes get `UNREACHABLE`.
pub fn bfs_distances(g: &Graph, source: NodeId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = du + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Nodes at exact shortest-path distance k for k = 1..=radius, each set
/// sorted ascending. The sets are disjoint and exclude `u`.
pub fn khop_neighbors(g: &Graph, u: NodeId, radius: usize) -> Vec<Vec<NodeId>> {
    let dist = bfs_distances(g, u);
    let mut hops = vec![Vec::new(); radius];
    for (v, &d) in dist.iter().enumerate() {
        if d != UNREACHABLE && d >= 1 && (d as usize) <= radius {
            hops[d as usize - 1].push(v as NodeId);
        }
    }
    hops
}

/// A K-hop ego-network: the subgraph induced by `root` and everything
/// within `radius` hops, with per-member hop distances.
///
/// `internal_edges` is `all_edges` minus every edge incident to the
/// root; it is the edge set whose structure K-hop neighbor multisets
/// cannot see.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgoNet {
    pub root: NodeId,
    pub radius: usize,
    /// (node, hop distance), sorted by (distance, id); the root is
    /// first with distance 0.
    pub members: Vec<(NodeId, u32)>,
    pub internal_edges: Vec<(NodeId, NodeId)>,
    pub all_edges: Vec<(NodeId, NodeId)>,
}

pub fn extract_egonet(g: &Graph, root: NodeId, radius: usize) -> EgoNet {
    let dist = bfs_distances(g, root);
    let mut members: Vec<(NodeId, u32)> = dist
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != UNREACHABLE && d as usize <= radius)
        .map(|(v, &d)| (v as NodeId, d))
        .collect();
    members.sort_unstable_by_key(|&(v, d)| (d, v));
    let in_ego = |v: NodeId| dist[v as usize] != UNREACHABLE && dist[v as usize] as usize <= radius;
    let mut all_edges = Vec::new();
    let mut internal_edges = Vec::new();
    for &(u, _) in &members {
        for &v in g.neighbors(u) {
            if u < v && in_ego(v) {
                all_edges.push((u, v));
                if u != root && v != root {
                    internal_edges.push((u, v));
                }
            }
        }
    }
    all_edges.sort_unstable();
    internal_edges.sort_unstable();
    EgoNet {
        root,
        radius,
        members,
        internal_edges,
        all_edges,
    }
}

impl EgoNet {
    /// Materializes the ego-network as a standalone graph with local
    /// ids in member order (root first). Returns the graph, the local
    /// id of the root, and the hop distance of each local node.
    pub fn induced_graph(&self) -> (Graph, NodeId, Vec<u32>) {
        let mut local = std::collections::HashMap::with_capacity(self.members.len());
        for (i, &(v, _)) in self.members.iter().enumerate() {
            local.insert(v, i as NodeId);
        }
        let edges: Vec<(NodeId, NodeId)> = self
            .all_edges
            .iter()
            .map(|&(u, v)| (local[&u], local[&v]))
            .collect();
        let g = Graph::from_edges(self.members.len(), edges);
        let dists = self.members.iter().map(|&(_, d)| d).collect();
        (g, local[&self.root], dists)
    }
}

/// Census of edges between consecutive hop layers around a root:
/// `counts[i-1]` is the number of nodes at distance hop+1 that have
/// exactly i edges back to the distance-hop layer. No trailing zeros,
/// so equal configurations compare equal structurally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeConfiguration {
    pub hop: usize,
    pub counts: Vec<usize>,
}

impl EdgeConfiguration {
    /// Total number of layer-crossing edge endpoints, i.e. the edge
    /// count between the two layers.
    pub fn crossing_edges(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &a)| (i + 1) * a)
            .sum()
    }
}

pub fn edge_configuration(g: &Graph, u: NodeId, hop: usize) -> EdgeConfiguration {
    let dist = bfs_distances(g, u);
    let this = hop as u32;
    let mut counts: Vec<usize> = Vec::new();
    for v in 0..g.n() as NodeId {
        if dist[v as usize] != this + 1 {
            continue;
        }
        let back = g
            .neighbors(v)
            .iter()
            .filter(|&&w| dist[w as usize] == this)
            .count();
        debug_assert!(back >= 1, "BFS layer node must touch the previous layer");
        if back > counts.len() {
            counts.resize(back, 0);
        }
        counts[back - 1] += 1;
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    EdgeConfiguration { hop, counts }
}

/// Intersection numbers {b0,...,b_{D-1}; c1,...,c_D} of a
/// distance-regular graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.b.iter().map(|x| x.to_string()).collect();
        let c: Vec<String> = self.c.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{};{}}}", b.join(","), c.join(","))
    }
}

/// Checks the distance-regularity predicate definitionally: for every
/// ordered node pair, the size of the intersection of the distance-i
/// sphere around one node with the distance-j sphere around the other
/// must depend only on (i, j, dis(u, v)). Returns the intersection
/// array when the predicate holds, `None` otherwise.
///
/// O(n^2 * (n + D^2)); fine at the graph sizes this crate targets, and
/// the definitional form doubles as its own oracle.
pub fn intersection_array(g: &Graph) -> Result<Option<IntersectionArray>> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Domain("intersection array of an empty graph".into()));
    }
    let dist: Vec<Vec<u32>> = (0..n as NodeId).map(|u| bfs_distances(g, u)).collect();
    let mut diameter = 0u32;
    for row in &dist {
        for &d in row {
            if d == UNREACHABLE {
                return Err(Error::Domain(
                    "intersection array requires a connected graph".into(),
                ));
            }
            diameter = diameter.max(d);
        }
    }
    let dd = diameter as usize + 1; // sphere indices 0..=D
    // table[(i, j, d)] = |N^i(u) ∩ N^j(v)| for dis(u,v) = d, or None if unseen
    let mut table: Vec<Option<usize>> = vec![None; dd * dd * dd];
    let mut counts = vec![0usize; dd * dd];
    for u in 0..n {
        for v in 0..n {
            let d = dist[u][v] as usize;
            counts.iter_mut().for_each(|c| *c = 0);
            for (&di, &dj) in dist[u].iter().zip(&dist[v]) {
                counts[di as usize * dd + dj as usize] += 1;
            }
            for ij in 0..dd * dd {
                let slot = &mut table[ij * dd + d];
                match slot {
                    None => *slot = Some(counts[ij]),
                    Some(expect) => {
                        if *expect != counts[ij] {
                            return Ok(None);
                        }
                    }
                }
            }
        }
    }
    let lookup = |i: usize, j: usize, d: usize| table[(i * dd + j) * dd + d].unwrap_or(0);
    let diameter = diameter as usize;
    let b: Vec<usize> = (0..diameter).map(|i| lookup(1, i + 1, i)).collect();
    let c: Vec<usize> = (1..=diameter).map(|i| lookup(1, i - 1, i)).collect();
    Ok(Some(IntersectionArray { b, c }))
}
