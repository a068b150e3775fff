//! Lazy random-walk landing probabilities and the per-node substructure
//! encoding built from them.
//!
//! The walk is on A+I with row normalization: a step from node u goes
//! to each of u's neighbors or stays put, each with probability
//! 1/(deg(u)+1). Landing rows are propagated one step at a time, so
//! only one live row per source is ever held.
//!
//! All floating-point accumulation in this module sorts addends by
//! value before summing. Addition order is then a function of the value
//! multiset alone, which makes every probability and every aggregate
//! bit-identical under node relabeling — the permutation-equivariance
//! tests assert exact equality, not closeness.

use crate::ego::{self, khop_neighbors};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// One node's probability distribution over all nodes after `steps`
/// lazy-walk steps.
#[derive(Debug, Clone, PartialEq)]
pub struct LandingProbRow {
    pub source: NodeId,
    pub steps: usize,
    pub probs: Vec<f64>,
}

/// Aggregation operator for the hop-indexed encoding blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agg {
    Mean,
    Sum,
}

impl std::fmt::Display for Agg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Agg::Mean => write!(f, "mean"),
            Agg::Sum => write!(f, "sum"),
        }
    }
}

/// Which graph the walk runs on.
///
/// `Graph` propagates over the whole input graph. `Ego` confines the
/// walk to the node-induced ego-network around the encoded node, where
/// the induced degrees expose the internal substructure that the
/// whole-graph walk averages away (on strongly regular graphs the
/// whole-graph statistics are parameter-determined and identical across
/// non-isomorphic graphs with the same parameters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkScope {
    Graph,
    Ego,
}

impl std::fmt::Display for WalkScope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WalkScope::Graph => write!(f, "graph"),
            WalkScope::Ego => write!(f, "ego"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EncodeParams {
    /// Hop radius K: f2/f3 carry one block per hop 1..=K, and with
    /// `WalkScope::Ego` it is also the ego-network radius.
    pub hops: usize,
    /// Walk length l: every block has one entry per step 1..=l.
    pub steps: usize,
    pub agg: Agg,
    pub scope: WalkScope,
}

impl EncodeParams {
    pub fn new(hops: usize, steps: usize) -> Self {
        EncodeParams {
            hops,
            steps,
            agg: Agg::Mean,
            scope: WalkScope::Graph,
        }
    }

    pub fn with_agg(mut self, agg: Agg) -> Self {
        self.agg = agg;
        self
    }

    pub fn with_scope(mut self, scope: WalkScope) -> Self {
        self.scope = scope;
        self
    }
}

/// Per-node output of the substructure encoding:
///   f1[t-1]       — self-return probability at step t
///   f2[k-1][t-1]  — aggregated landing probability from the node onto
///                   its hop-k set at step t
///   f3[k-1][t-1]  — aggregated landing probability between ordered
///                   pairs of distinct hop-k nodes at step t
/// Empty aggregation sets contribute 0 so the vector stays finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubstructureFeatures {
    pub node: NodeId,
    pub hops: usize,
    pub steps: usize,
    pub f1: Vec<f64>,
    pub f2: Vec<Vec<f64>>,
    pub f3: Vec<Vec<f64>>,
}

impl SubstructureFeatures {
    /// f1 ∥ flatten(f2) ∥ flatten(f3), length steps + 2*hops*steps.
    pub fn combined(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.steps * (1 + 2 * self.hops));
        out.extend_from_slice(&self.f1);
        for row in &self.f2 {
            out.extend_from_slice(row);
        }
        for row in &self.f3 {
            out.extend_from_slice(row);
        }
        out
    }
}

/// Sums values in sorted order; the result depends only on the value
/// multiset, never on iteration order. Folds from +0.0 so an empty
/// multiset gives positive zero (std's empty f64 sum is -0.0).
fn sorted_sum(vals: &mut [f64]) -> f64 {
    vals.sort_unstable_by(f64::total_cmp);
    vals.iter().fold(0.0, |acc, &x| acc + x)
}

fn aggregate(vals: &mut [f64], agg: Agg) -> f64 {
    if vals.is_empty() {
        return 0.0;
    }
    let s = sorted_sum(vals);
    match agg {
        Agg::Sum => s,
        Agg::Mean => s / vals.len() as f64,
    }
}

/// Single live landing-probability row, advanced one step at a time.
struct WalkRow<'a> {
    g: &'a Graph,
    inv_lazy_degree: Vec<f64>,
    cur: Vec<f64>,
    next: Vec<f64>,
    buf: Vec<f64>,
}

impl<'a> WalkRow<'a> {
    fn new(g: &'a Graph, source: NodeId) -> Self {
        let inv_lazy_degree = (0..g.n() as NodeId)
            .map(|v| 1.0 / (g.degree(v) as f64 + 1.0))
            .collect();
        let mut cur = vec![0.0; g.n()];
        cur[source as usize] = 1.0;
        WalkRow {
            g,
            inv_lazy_degree,
            cur,
            next: vec![0.0; g.n()],
            buf: Vec::new(),
        }
    }

    fn step(&mut self) {
        for v in 0..self.g.n() {
            self.buf.clear();
            let own = self.cur[v];
            if own != 0.0 {
                self.buf.push(own * self.inv_lazy_degree[v]);
            }
            for &u in self.g.neighbors(v as NodeId) {
                let p = self.cur[u as usize];
                if p != 0.0 {
                    self.buf.push(p * self.inv_lazy_degree[u as usize]);
                }
            }
            self.next[v] = sorted_sum(&mut self.buf);
        }
        std::mem::swap(&mut self.cur, &mut self.next);
    }

    fn probs(&self) -> &[f64] {
        &self.cur
    }
}

/// eᵤᵀ (D̃⁻¹Ã)ᵗ — the walk distribution from `u` after `t` steps.
/// t = 0 returns the indicator vector at u.
pub fn landing_prob_row(g: &Graph, u: NodeId, t: usize) -> LandingProbRow {
    let mut row = WalkRow::new(g, u);
    for _ in 0..t {
        row.step();
    }
    LandingProbRow {
        source: u,
        steps: t,
        probs: row.probs().to_vec(),
    }
}

/// Self-return probabilities (p_u^1, ..., p_u^l).
pub fn self_return_vector(g: &Graph, u: NodeId, l: usize) -> Vec<f64> {
    let mut row = WalkRow::new(g, u);
    let mut out = Vec::with_capacity(l);
    for _ in 0..l {
        row.step();
        out.push(row.probs()[u as usize]);
    }
    out
}

/// Computes the substructure encoding of one node.
pub fn encode_node(g: &Graph, u: NodeId, params: &EncodeParams) -> SubstructureFeatures {
    match params.scope {
        WalkScope::Graph => encode_on(g, u, params),
        WalkScope::Ego => {
            let ego = ego::extract_egonet(g, u, params.hops);
            let (local, root, _) = ego.induced_graph();
            let mut feats = encode_on(&local, root, params);
            feats.node = u;
            feats
        }
    }
}

fn encode_on(g: &Graph, u: NodeId, params: &EncodeParams) -> SubstructureFeatures {
    let (hops, steps) = (params.hops, params.steps);
    let hop_sets = khop_neighbors(g, u, hops);

    let mut f1 = Vec::with_capacity(steps);
    let mut f2: Vec<Vec<f64>> = vec![Vec::with_capacity(steps); hops];
    let mut row = WalkRow::new(g, u);
    let mut vals = Vec::new();
    for _ in 0..steps {
        row.step();
        let probs = row.probs();
        f1.push(probs[u as usize]);
        for (k, hop) in hop_sets.iter().enumerate() {
            vals.clear();
            vals.extend(hop.iter().map(|&i| probs[i as usize]));
            f2[k].push(aggregate(&mut vals, params.agg));
        }
    }

    // f3 needs one row per same-hop peer; values for the ordered pair
    // (i, j) are collected per (hop, step) and aggregated together.
    let mut f3: Vec<Vec<f64>> = Vec::with_capacity(hops);
    for hop in &hop_sets {
        if hop.len() < 2 {
            f3.push(vec![0.0; steps]);
            continue;
        }
        let mut pair_vals: Vec<Vec<f64>> = vec![Vec::new(); steps];
        for &i in hop {
            let mut row = WalkRow::new(g, i);
            for slot in pair_vals.iter_mut() {
                row.step();
                let probs = row.probs();
                slot.extend(hop.iter().filter(|&&j| j != i).map(|&j| probs[j as usize]));
            }
        }
        f3.push(
            pair_vals
                .iter_mut()
                .map(|v| aggregate(v, params.agg))
                .collect(),
        );
    }

    SubstructureFeatures {
        node: u,
        hops,
        steps,
        f1,
        f2,
        f3,
    }
}

/// Encodes every node, in parallel over sources.
pub fn encode_graph(g: &Graph, params: &EncodeParams) -> Vec<SubstructureFeatures> {
    (0..g.n() as NodeId)
        .into_par_iter()
        .map(|u| encode_node(g, u, params))
        .collect()
}

/// CSV header: node,f1_t1..f1_t{l},f2_k1_t1..f2_k{K}_t{l},f3_k1_t1..f3_k{K}_t{l}
pub fn features_csv_header(hops: usize, steps: usize) -> String {
    let mut cols = vec!["node".to_string()];
    for t in 1..=steps {
        cols.push(format!("f1_t{t}"));
    }
    for block in ["f2", "f3"] {
        for k in 1..=hops {
            for t in 1..=steps {
                cols.push(format!("{block}_k{k}_t{t}"));
            }
        }
    }
    cols.join(",")
}

/// Writes the feature table as CSV with 17 significant digits per value.
pub fn write_features_csv(
    features: &[SubstructureFeatures],
    hops: usize,
    steps: usize,
    mut w: impl Write,
) -> Result<()> {
    writeln!(w, "{}", features_csv_header(hops, steps))?;
    for f in features {
        if f.hops != hops || f.steps != steps {
            return Err(Error::Contract(format!(
                "feature row for node {} has shape ({}, {}), expected ({hops}, {steps})",
                f.node, f.hops, f.steps
            )));
        }
        let mut line = f.node.to_string();
        for v in f.combined() {
            line.push(',');
            line.push_str(&format!("{v:.16e}"));
        }
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// JSON sidecar describing an exported feature table.
pub fn features_sidecar(
    graph_label: &str,
    params: &EncodeParams,
) -> serde_json::Value {
    serde_json::json!({
        "format_version": crate::FORMAT_VERSION,
        "graph": graph_label,
        "hops": params.hops,
        "steps": params.steps,
        "agg": params.agg.to_string(),
        "scope": params.scope.to_string(),
    })
}
