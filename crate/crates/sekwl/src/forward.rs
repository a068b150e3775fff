//! Forward-only numeric realization of the substructure-enhanced K-hop
//! message-passing layer.
//!
//! MESSAGE and UPDATE carry no trainable parameters: a message is the
//! sum of (state ∥ feature) tuples over a hop's (optionally sampled)
//! members plus the node's own tuple, UPDATE is elementwise tanh, and
//! COMBINE merges hops by plain summation or by geometric weights
//! θ_k = α(1-α)^k. The layer certifies the information flow — hop
//! separation, substructure injection, permutation equivariance — not
//! any learned accuracy.
//!
//! Output width grows by the feature width every layer (tuples are
//! concatenations), so jumping-knowledge sum pooling applies only to
//! equal-width layer stacks; concat pooling always applies.

use crate::ego::khop_neighbors;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::mix::derive_seed;
use crate::walk::SubstructureFeatures;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Hidden state of one node within one layer.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState {
    pub h: Vec<f64>,
}

impl NodeState {
    pub fn constant(width: usize, value: f64) -> Self {
        NodeState {
            h: vec![value; width],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CombineMode {
    Sum,
    Geometric,
}

/// How per-hop states merge into the layer output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombineSpec {
    pub mode: CombineMode,
    /// Geometric decay parameter in (0, 1]; ignored for `Sum`.
    pub alpha: f64,
    /// Rescale geometric weights to sum to 1.
    pub normalize: bool,
}

impl CombineSpec {
    pub fn sum() -> Self {
        CombineSpec {
            mode: CombineMode::Sum,
            alpha: 1.0,
            normalize: false,
        }
    }

    pub fn geometric(alpha: f64, normalize: bool) -> Self {
        CombineSpec {
            mode: CombineMode::Geometric,
            alpha,
            normalize,
        }
    }
}

/// θ_k = α(1-α)^k for k = 1..=hops.
pub fn geometric_weights(alpha: f64, hops: usize) -> Vec<f64> {
    (1..=hops)
        .map(|k| alpha * (1.0 - alpha).powi(k as i32))
        .collect()
}

/// Per-hop uniform neighbor sampling: when a hop set exceeds the cap,
/// exactly `per_hop_cap` members are kept, chosen without replacement,
/// reproducibly under the seed. The per-(node, hop) subseed is
/// `derive_seed(derive_seed(seed, node), hop)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerSpec {
    pub per_hop_cap: usize,
    pub seed: u64,
}

impl SamplerSpec {
    fn sample(&self, members: &[NodeId], node: NodeId, hop: usize) -> Vec<NodeId> {
        if members.len() <= self.per_hop_cap {
            return members.to_vec();
        }
        let sub = derive_seed(derive_seed(self.seed, node as u64), hop as u64);
        let mut rng = ChaCha12Rng::seed_from_u64(sub);
        let picked = rand::seq::index::sample(&mut rng, members.len(), self.per_hop_cap);
        let mut out: Vec<NodeId> = picked.iter().map(|i| members[i]).collect();
        out.sort_unstable();
        out
    }
}

/// Sums each coordinate over the tuple multiset in value-sorted order,
/// so the result depends only on the multiset (exact permutation
/// equivariance), then adds the self tuple.
fn message(
    contributors: &[(&[f64], &[f64])],
    self_state: &[f64],
    self_feat: &[f64],
    width: usize,
) -> Vec<f64> {
    let state_w = self_state.len();
    let mut out = vec![0.0; width];
    let mut column: Vec<f64> = Vec::with_capacity(contributors.len());
    for c in 0..width {
        column.clear();
        for &(h, f) in contributors {
            column.push(if c < state_w { h[c] } else { f[c - state_w] });
        }
        column.sort_unstable_by(f64::total_cmp);
        let s = column.iter().fold(0.0, |acc, &x| acc + x);
        out[c] = s + if c < state_w {
            self_state[c]
        } else {
            self_feat[c - state_w]
        };
    }
    out
}

/// One message-passing layer. Output width is input width plus the
/// feature width.
pub fn forward_layer(
    g: &Graph,
    states: &[NodeState],
    features: &[SubstructureFeatures],
    hops: usize,
    combine: &CombineSpec,
    sampler: Option<&SamplerSpec>,
) -> Result<Vec<NodeState>> {
    let n = g.n();
    if states.len() != n || features.len() != n {
        return Err(Error::Contract(format!(
            "expected {n} states and features, got {} and {}",
            states.len(),
            features.len()
        )));
    }
    let state_w = states.first().map_or(0, |s| s.h.len());
    if states.iter().any(|s| s.h.len() != state_w) {
        return Err(Error::Contract("inconsistent state widths".into()));
    }
    let feats: Vec<Vec<f64>> = features.iter().map(|f| f.combined()).collect();
    let feat_w = feats.first().map_or(0, |f| f.len());
    if feats.iter().any(|f| f.len() != feat_w) {
        return Err(Error::Contract("inconsistent feature widths".into()));
    }
    if combine.mode == CombineMode::Geometric && !(combine.alpha > 0.0 && combine.alpha <= 1.0) {
        return Err(Error::Domain(format!(
            "geometric combine requires alpha in (0,1], got {}",
            combine.alpha
        )));
    }

    let width = state_w + feat_w;
    let weights = match combine.mode {
        CombineMode::Sum => vec![1.0; hops],
        CombineMode::Geometric => {
            let mut w = geometric_weights(combine.alpha, hops);
            if combine.normalize {
                let total: f64 = w.iter().sum();
                if total > 0.0 {
                    w.iter_mut().for_each(|x| *x /= total);
                }
            }
            w
        }
    };

    let next: Vec<NodeState> = (0..n as NodeId)
        .into_par_iter()
        .map(|v| {
            let hop_sets = khop_neighbors(g, v, hops);
            let mut out = vec![0.0; width];
            for (k, members) in hop_sets.iter().enumerate() {
                let chosen = match sampler {
                    Some(s) => s.sample(members, v, k + 1),
                    None => members.clone(),
                };
                let contributors: Vec<(&[f64], &[f64])> = chosen
                    .iter()
                    .map(|&u| {
                        (
                            states[u as usize].h.as_slice(),
                            feats[u as usize].as_slice(),
                        )
                    })
                    .collect();
                let m = message(
                    &contributors,
                    &states[v as usize].h,
                    &feats[v as usize],
                    width,
                );
                let w = weights[k];
                for (o, x) in out.iter_mut().zip(m) {
                    *o += w * x.tanh();
                }
            }
            NodeState { h: out }
        })
        .collect();
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JkPool {
    Sum,
    Concat,
}

/// Jumping-knowledge readout: pool each node's states across layers
/// (sum or concatenation in layer order), then sum the pooled vectors
/// over all nodes into one graph vector.
pub fn jk_readout(histories: &[Vec<NodeState>], pool: JkPool) -> Result<Vec<f64>> {
    if histories.is_empty() {
        return Err(Error::Contract("jk_readout needs at least one layer".into()));
    }
    let n = histories[0].len();
    if histories.iter().any(|layer| layer.len() != n) {
        return Err(Error::Contract("layers cover different node sets".into()));
    }
    for layer in histories {
        let w = layer.first().map_or(0, |s| s.h.len());
        if layer.iter().any(|s| s.h.len() != w) {
            return Err(Error::Contract("inconsistent state widths within a layer".into()));
        }
    }
    let widths: Vec<usize> = histories
        .iter()
        .map(|layer| layer.first().map_or(0, |s| s.h.len()))
        .collect();

    let pooled: Vec<Vec<f64>> = match pool {
        JkPool::Sum => {
            let w = widths[0];
            if widths.iter().any(|&x| x != w) {
                return Err(Error::Contract(format!(
                    "sum pooling requires equal layer widths, got {widths:?}"
                )));
            }
            (0..n)
                .map(|v| {
                    let mut acc = vec![0.0; w];
                    for layer in histories {
                        for (a, x) in acc.iter_mut().zip(&layer[v].h) {
                            *a += x;
                        }
                    }
                    acc
                })
                .collect()
        }
        JkPool::Concat => (0..n)
            .map(|v| {
                let mut acc = Vec::with_capacity(widths.iter().sum());
                for layer in histories {
                    acc.extend_from_slice(&layer[v].h);
                }
                acc
            })
            .collect(),
    };

    let width = pooled.first().map_or(0, |p| p.len());
    let mut out = vec![0.0; width];
    let mut column: Vec<f64> = Vec::with_capacity(n);
    for c in 0..width {
        column.clear();
        column.extend(pooled.iter().map(|p| p[c]));
        column.sort_unstable_by(f64::total_cmp);
        out[c] = column.iter().fold(0.0, |acc, &x| acc + x);
    }
    Ok(out)
}
