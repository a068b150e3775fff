//! Color refinement: plain 1-WL, K-hop refinement, subgraph refinement
//! in two realizations, and substructure-enhanced K-hop refinement
//! (SEK), plus whole-graph fingerprints.
//!
//! Colors are 64-bit values from the fixed mixer in [`crate::mix`], so
//! runs with identical parameters are comparable across graphs, runs,
//! and machines. Every multiset is sorted before hashing and every
//! variable-length block is length-framed.
//!
//! Stabilization is detected on the induced partition, not on raw hash
//! values (values change every round; the partition is the semantic
//! object). Each round's hash input contains the previous color, so
//! partitions only ever split: partition(t+1) refines partition(t).

use crate::ego::{self, khop_neighbors};
use crate::graph::{Graph, NodeId};
use crate::mix::Mixer;
use crate::walk::{encode_graph, Agg, EncodeParams, WalkScope};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

const ROUND_TAG: u64 = 0x1;
const INIT_TAG: u64 = 0x2;
const FINGERPRINT_TAG: u64 = 0x3;
const FEATURE_TAG: u64 = 0x4;
const SEK_CONTEXT_TAG: u64 = 0x5;
const SUBGRAPH_CONTEXT_TAG: u64 = 0x6;
const NESTED_INIT_TAG: u64 = 0x7;
const NESTED_POOL_TAG: u64 = 0x8;

/// No per-node context: plain and K-hop refinement absorb this constant
/// where the enhanced algorithms absorb a feature digest, which keeps
/// the hash inputs of the weaker algorithms a strict subset of the
/// stronger ones' at identical framing.
const NO_CONTEXT: u64 = 0;

/// Node colors after one refinement round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorAssignment {
    pub iteration: usize,
    pub colors: Vec<u64>,
}

impl ColorAssignment {
    /// Canonical class ids in order of first occurrence. Two
    /// assignments induce the same partition iff these vectors match.
    pub fn partition(&self) -> Vec<u32> {
        canonical_partition(&self.colors)
    }

    /// Sorted multiset of colors.
    pub fn sorted_colors(&self) -> Vec<u64> {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c
    }

    pub fn class_count(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }
}

fn canonical_partition(colors: &[u64]) -> Vec<u32> {
    let mut ids = std::collections::HashMap::new();
    colors
        .iter()
        .map(|c| {
            let next = ids.len() as u32;
            *ids.entry(*c).or_insert(next)
        })
        .collect()
}

/// Order-independent hash of a stable color multiset with the node
/// count mixed in. Unequal fingerprints certify non-isomorphism; equal
/// fingerprints certify nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphFingerprint(pub u64);

impl fmt::Display for GraphFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

/// Full refinement run: colorings for rounds 0..=stop, where stop is
/// either the first stable round or the round cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementResult {
    pub history: Vec<ColorAssignment>,
    /// First round whose partition was never refined afterwards;
    /// `None` when the round cap was reached while still refining.
    pub stable_at: Option<usize>,
    pub fingerprint: GraphFingerprint,
}

impl RefinementResult {
    pub fn stable_colors(&self) -> &[u64] {
        &self.history.last().expect("history is never empty").colors
    }

    /// Partition at round t, extended past the end of the run (a stable
    /// partition stays what it was).
    pub fn partition_at(&self, t: usize) -> Vec<u32> {
        let idx = t.min(self.history.len() - 1);
        self.history[idx].partition()
    }

    /// Sorted class sizes per recorded round, largest first.
    pub fn partition_sizes(&self) -> Vec<Vec<usize>> {
        self.history
            .iter()
            .map(|a| {
                let mut counts = std::collections::HashMap::new();
                for &c in &a.colors {
                    *counts.entry(c).or_insert(0usize) += 1;
                }
                let mut sizes: Vec<usize> = counts.into_values().collect();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                sizes
            })
            .collect()
    }
}

/// The stable-multiset fingerprint of a refinement run.
pub fn fingerprint(r: &RefinementResult) -> GraphFingerprint {
    r.fingerprint
}

/// Exportable trace of one refinement run.
#[derive(Debug, Serialize, Deserialize)]
pub struct RefinementTrace {
    pub format_version: String,
    pub algorithm: String,
    pub params: serde_json::Value,
    pub rounds_recorded: usize,
    pub partition_sizes: Vec<Vec<usize>>,
    pub stable_at: Option<usize>,
    pub fingerprint: String,
}

pub fn trace(r: &RefinementResult, algorithm: &str, params: serde_json::Value) -> RefinementTrace {
    RefinementTrace {
        format_version: crate::FORMAT_VERSION.to_string(),
        algorithm: algorithm.to_string(),
        params,
        rounds_recorded: r.history.len(),
        partition_sizes: r.partition_sizes(),
        stable_at: r.stable_at,
        fingerprint: r.fingerprint.to_string(),
    }
}

/// Shared round loop. `context[v]` is a per-node digest absorbed every
/// round (NO_CONTEXT when an algorithm carries none), `hop_sets[v]` the
/// ordered list of neighbor multisets whose colors are hashed.
fn run_rounds(
    init: Vec<u64>,
    context: &[u64],
    hop_sets: &[Vec<Vec<NodeId>>],
    max_rounds: usize,
) -> RefinementResult {
    assert!(max_rounds >= 1, "at least one refinement round is required");
    let n = init.len();
    let mut history = vec![ColorAssignment {
        iteration: 0,
        colors: init,
    }];
    let mut partition = history[0].partition();
    let mut stable_at = None;

    for t in 1..=max_rounds {
        let prev = &history.last().unwrap().colors;
        let colors: Vec<u64> = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut mx = Mixer::new(ROUND_TAG);
                mx.absorb(prev[v]);
                mx.absorb(context[v]);
                let sets = &hop_sets[v];
                mx.absorb(sets.len() as u64);
                let mut buf: Vec<u64> = Vec::new();
                for set in sets {
                    buf.clear();
                    buf.extend(set.iter().map(|&u| prev[u as usize]));
                    buf.sort_unstable();
                    mx.absorb_slice(&buf);
                }
                mx.finish()
            })
            .collect();
        let assignment = ColorAssignment {
            iteration: t,
            colors,
        };
        let next_partition = assignment.partition();
        let stabilized = next_partition == partition;
        partition = next_partition;
        history.push(assignment);
        if stabilized {
            // The confirming round stays in the history: its colors are
            // the stable colors (one hash deeper than the last split,
            // so equally-deep and therefore comparable across graphs).
            stable_at = Some(t - 1);
            break;
        }
    }

    let mut stable = history.last().unwrap().colors.clone();
    stable.sort_unstable();
    let mut mx = Mixer::new(FINGERPRINT_TAG);
    mx.absorb(n as u64);
    mx.absorb_slice(&stable);
    let fp = GraphFingerprint(mx.finish());

    RefinementResult {
        history,
        stable_at,
        fingerprint: fp,
    }
}

fn uniform_init(n: usize) -> Vec<u64> {
    vec![Mixer::new(INIT_TAG).finish(); n]
}

fn hop_sets_for(g: &Graph, radius: usize) -> Vec<Vec<Vec<NodeId>>> {
    (0..g.n() as NodeId)
        .into_par_iter()
        .map(|v| khop_neighbors(g, v, radius))
        .collect()
}

/// Classic 1-WL color refinement.
pub fn wl1(g: &Graph, max_rounds: usize) -> RefinementResult {
    khop_wl(g, 1, max_rounds)
}

/// K-hop refinement: one neighbor-color multiset per exact shortest-path
/// distance 1..=K, hop order significant. K = 1 is exactly [`wl1`].
pub fn khop_wl(g: &Graph, hops: usize, max_rounds: usize) -> RefinementResult {
    let sets = hop_sets_for(g, hops);
    run_rounds(
        uniform_init(g.n()),
        &vec![NO_CONTEXT; g.n()],
        &sets,
        max_rounds,
    )
}

/// Parameters of the substructure encoding consumed by the enhanced
/// refinements: ego radius and walk scope for the encoder, walk length,
/// aggregation, and the lattice resolution 10^-quant_digits used before
/// hashing real-valued features.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureParams {
    pub radius: usize,
    pub steps: usize,
    pub agg: Agg,
    pub scope: WalkScope,
    pub quant_digits: u32,
}

impl FeatureParams {
    /// Ego-scoped walk, mean aggregation, 9-digit quantization.
    pub fn new(radius: usize, steps: usize) -> Self {
        FeatureParams {
            radius,
            steps,
            agg: Agg::Mean,
            scope: WalkScope::Ego,
            quant_digits: 9,
        }
    }

    fn encode_params(&self) -> EncodeParams {
        EncodeParams::new(self.radius, self.steps)
            .with_agg(self.agg)
            .with_scope(self.scope)
    }
}

/// Rounds a feature vector onto the integer lattice with resolution
/// 10^-digits. Values closer than half a lattice cell round together.
pub fn quantize(values: &[f64], digits: u32) -> Vec<i64> {
    let scale = 10f64.powi(digits as i32);
    values.iter().map(|&x| (x * scale).round() as i64).collect()
}

fn feature_digests(g: &Graph, feat: &FeatureParams) -> Vec<u64> {
    encode_graph(g, &feat.encode_params())
        .iter()
        .map(|f| {
            let q = quantize(&f.combined(), feat.quant_digits);
            let mut mx = Mixer::new(FEATURE_TAG);
            mx.absorb(q.len() as u64);
            for v in q {
                mx.absorb(v as u64);
            }
            mx.finish()
        })
        .collect()
}

/// The two realizations of subgraph refinement.
#[derive(Debug, Clone, PartialEq)]
pub enum SubgraphVariant {
    /// Hash the node's substructure encoding together with its K-hop
    /// neighbor multisets — the reformulation of subgraph hashing as
    /// "K-hop neighbors plus internal substructure".
    Encoded(FeatureParams),
    /// Hash a digest of the ego-network itself: plain refinement run
    /// inside the extracted ego-net with hop distances as initial
    /// colors (root marked by distance 0), pooled by a sorted-multiset
    /// hash of the stable colors.
    Nested,
}

/// Subgraph refinement over ego-networks of the given radius.
pub fn subgraph_wl(
    g: &Graph,
    radius: usize,
    variant: &SubgraphVariant,
    max_rounds: usize,
) -> RefinementResult {
    match variant {
        SubgraphVariant::Encoded(feat) => {
            let digests = feature_digests(g, feat);
            let context: Vec<u64> = digests
                .iter()
                .map(|&d| {
                    let mut mx = Mixer::new(SUBGRAPH_CONTEXT_TAG);
                    mx.absorb(d);
                    mx.finish()
                })
                .collect();
            let sets = hop_sets_for(g, radius);
            run_rounds(uniform_init(g.n()), &context, &sets, max_rounds)
        }
        SubgraphVariant::Nested => {
            let context: Vec<u64> = (0..g.n() as NodeId)
                .into_par_iter()
                .map(|v| nested_subgraph_digest(g, v, radius))
                .collect();
            // Subgraph hashing consumes no neighbor multisets directly;
            // everything flows through the per-node subgraph digest.
            let sets = vec![Vec::new(); g.n()];
            run_rounds(uniform_init(g.n()), &context, &sets, max_rounds)
        }
    }
}

fn nested_subgraph_digest(g: &Graph, root: NodeId, radius: usize) -> u64 {
    let ego = ego::extract_egonet(g, root, radius);
    let (local, _, dists) = ego.induced_graph();
    let init: Vec<u64> = dists
        .iter()
        .map(|&d| {
            let mut mx = Mixer::new(NESTED_INIT_TAG);
            mx.absorb(d as u64);
            mx.finish()
        })
        .collect();
    let sets = hop_sets_for(&local, 1);
    let context = vec![NO_CONTEXT; local.n()];
    // Partitions refine at most n-1 times, so n+1 rounds always stabilize.
    let inner = run_rounds(init, &context, &sets, local.n() + 1);
    let mut stable = inner.stable_colors().to_vec();
    stable.sort_unstable();
    let mut mx = Mixer::new(NESTED_POOL_TAG);
    mx.absorb(local.n() as u64);
    mx.absorb_slice(&stable);
    mx.finish()
}

/// Substructure-enhanced K-hop refinement: K-hop neighbor multisets
/// plus the node's own substructure encoding plus the multiset of
/// encodings over its ego-network members. Encodings are computed once
/// and reused every round.
pub fn sek_wl(
    g: &Graph,
    hops: usize,
    feat: &FeatureParams,
    max_rounds: usize,
) -> RefinementResult {
    let digests = feature_digests(g, feat);
    let context: Vec<u64> = (0..g.n() as NodeId)
        .into_par_iter()
        .map(|v| {
            let ego = ego::extract_egonet(g, v, hops);
            let mut members: Vec<u64> = ego
                .members
                .iter()
                .filter(|&&(u, _)| u != v)
                .map(|&(u, _)| digests[u as usize])
                .collect();
            members.sort_unstable();
            let mut mx = Mixer::new(SEK_CONTEXT_TAG);
            mx.absorb(digests[v as usize]);
            mx.absorb_slice(&members);
            mx.finish()
        })
        .collect();
    let sets = hop_sets_for(g, hops);
    run_rounds(uniform_init(g.n()), &context, &sets, max_rounds)
}

/// True when `fine` refines `coarse`: equal colors in `fine` imply
/// equal colors in `coarse`.
pub fn refines(fine: &[u32], coarse: &[u32]) -> bool {
    let mut image = std::collections::HashMap::new();
    fine.iter().zip(coarse.iter()).all(|(&f, &c)| {
        *image.entry(f).or_insert(c) == c
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{disjoint_union, generate, GeneratorSpec, Graph};

    fn cycle(n: usize) -> Graph {
        generate(&GeneratorSpec::Cycle { n }).unwrap()
    }

    fn two_triangles() -> Graph {
        let c3 = cycle(3);
        disjoint_union(&c3, &c3)
    }

    fn feat(radius: usize, steps: usize) -> FeatureParams {
        FeatureParams::new(radius, steps)
    }

    #[test]
    fn wl1_cannot_separate_regular_graphs_with_equal_size() {
        for t in [1, 3, 5] {
            let a = wl1(&two_triangles(), t);
            let b = wl1(&cycle(6), t);
            assert_eq!(a.fingerprint, b.fingerprint, "T={t}");
        }
    }

    #[test]
    fn star_stabilizes_into_center_and_leaves() {
        let g = generate(&GeneratorSpec::Star { n: 4 }).unwrap();
        let r = wl1(&g, 10);
        assert_eq!(r.history.last().unwrap().class_count(), 2);
        assert_eq!(r.stable_at, Some(1));
    }

    #[test]
    fn path_three_splits_endpoints_from_middle() {
        let g = generate(&GeneratorSpec::Path { n: 3 }).unwrap();
        let r = wl1(&g, 10);
        assert_eq!(r.history.last().unwrap().class_count(), 2);
    }

    #[test]
    fn khop_with_one_hop_is_exactly_wl1() {
        for spec in [
            GeneratorSpec::Cycle { n: 6 },
            GeneratorSpec::Star { n: 5 },
            GeneratorSpec::ErdosRenyi { n: 12, p: 0.3, seed: 7 },
        ] {
            let g = generate(&spec).unwrap();
            let a = wl1(&g, 8);
            let b = khop_wl(&g, 1, 8);
            assert_eq!(a.history, b.history, "{spec}");
            assert_eq!(a.fingerprint, b.fingerprint);
        }
    }

    #[test]
    fn khop_separates_two_triangles_from_six_cycle() {
        let a = khop_wl(&two_triangles(), 2, 5);
        let b = khop_wl(&cycle(6), 2, 5);
        assert_ne!(a.fingerprint, b.fingerprint);
    }

    #[test]
    fn khop_cannot_separate_rook_from_shrikhande() {
        let rook = generate(&GeneratorSpec::Rook4x4).unwrap();
        let shri = generate(&GeneratorSpec::Shrikhande).unwrap();
        assert_eq!(
            khop_wl(&rook, 2, 10).fingerprint,
            khop_wl(&shri, 2, 10).fingerprint
        );
        assert_eq!(wl1(&rook, 10).fingerprint, wl1(&shri, 10).fingerprint);
    }

    #[test]
    fn subgraph_variants_separate_two_triangles_from_six_cycle() {
        for variant in [SubgraphVariant::Encoded(feat(2, 3)), SubgraphVariant::Nested] {
            let a = subgraph_wl(&two_triangles(), 2, &variant, 5);
            let b = subgraph_wl(&cycle(6), 2, &variant, 5);
            assert_ne!(a.fingerprint, b.fingerprint, "{variant:?}");
        }
    }

    #[test]
    fn vertex_transitive_graph_stays_monochrome_under_every_algorithm() {
        let g = generate(&GeneratorSpec::Rook4x4).unwrap();
        let runs = [
            wl1(&g, 5),
            khop_wl(&g, 2, 5),
            subgraph_wl(&g, 2, &SubgraphVariant::Nested, 5),
            subgraph_wl(&g, 2, &SubgraphVariant::Encoded(feat(1, 4)), 5),
            sek_wl(&g, 2, &feat(1, 4), 5),
        ];
        for r in &runs {
            for a in &r.history {
                assert_eq!(a.class_count(), 1);
            }
        }
    }

    /// Roots with identical hop profiles but different ego-net internal
    /// edges: a triangle with a pendant tail vs a 4-cycle. One round of
    /// 2-hop refinement sees the same (2, 1) hop sizes at the root,
    /// while the nested subgraph digest already differs.
    #[test]
    fn nested_subgraph_separates_roots_that_one_khop_round_cannot() {
        let tri_tail = Graph::from_edges(4, vec![(0, 1), (0, 2), (1, 2), (1, 3)]);
        let square = Graph::from_edges(4, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let ego_a = crate::ego::extract_egonet(&tri_tail, 0, 2);
        let ego_b = crate::ego::extract_egonet(&square, 0, 2);
        assert_ne!(ego_a.internal_edges, ego_b.internal_edges);

        let ka = khop_wl(&tri_tail, 2, 1);
        let kb = khop_wl(&square, 2, 1);
        assert_eq!(
            ka.history[1].colors[0], kb.history[1].colors[0],
            "one 2-hop round must not separate the roots"
        );

        let sa = subgraph_wl(&tri_tail, 2, &SubgraphVariant::Nested, 1);
        let sb = subgraph_wl(&square, 2, &SubgraphVariant::Nested, 1);
        assert_ne!(sa.history[1].colors[0], sb.history[1].colors[0]);
    }

    #[test]
    fn sek_separates_two_triangles_from_six_cycle() {
        let a = sek_wl(&two_triangles(), 2, &feat(1, 3), 5);
        let b = sek_wl(&cycle(6), 2, &feat(1, 3), 5);
        assert_ne!(a.fingerprint, b.fingerprint);
    }

    #[test]
    fn single_node_graph_is_stable_immediately() {
        let g = Graph::empty(1);
        let r = sek_wl(&g, 2, &feat(1, 3), 5);
        assert_eq!(r.stable_at, Some(0));
        assert_eq!(r.history.len(), 2, "initial colors plus the confirming round");
    }

    #[test]
    fn partitions_refine_monotonically() {
        let g = generate(&GeneratorSpec::ErdosRenyi { n: 14, p: 0.25, seed: 3 }).unwrap();
        for r in [
            wl1(&g, 10),
            khop_wl(&g, 3, 10),
            sek_wl(&g, 2, &feat(1, 4), 10),
        ] {
            for w in r.history.windows(2) {
                assert!(refines(&w[1].partition(), &w[0].partition()));
            }
        }
    }

    #[test]
    fn fingerprints_are_invariant_under_relabeling() {
        let g = generate(&GeneratorSpec::ErdosRenyi { n: 11, p: 0.35, seed: 5 }).unwrap();
        let perm: Vec<NodeId> = vec![4, 7, 0, 10, 2, 9, 1, 8, 3, 6, 5];
        let pg = g.permute(&perm);
        assert_eq!(wl1(&g, 8).fingerprint, wl1(&pg, 8).fingerprint);
        assert_eq!(khop_wl(&g, 2, 8).fingerprint, khop_wl(&pg, 2, 8).fingerprint);
        assert_eq!(
            subgraph_wl(&g, 2, &SubgraphVariant::Nested, 8).fingerprint,
            subgraph_wl(&pg, 2, &SubgraphVariant::Nested, 8).fingerprint
        );
        assert_eq!(
            sek_wl(&g, 2, &feat(1, 3), 8).fingerprint,
            sek_wl(&pg, 2, &feat(1, 3), 8).fingerprint
        );
    }

    #[test]
    fn colors_do_not_depend_on_edge_input_order() {
        let edges = vec![(0u32, 1u32), (1, 2), (2, 3), (3, 0), (1, 3)];
        let mut shuffled = edges.clone();
        shuffled.reverse();
        let g1 = Graph::from_edges(4, edges);
        let g2 = Graph::from_edges(4, shuffled.into_iter().map(|(u, v)| (v, u)));
        assert_eq!(wl1(&g1, 5).history, wl1(&g2, 5).history);
    }

    #[test]
    fn dominance_holds_per_round_on_a_mixed_graph() {
        let g = generate(&GeneratorSpec::ErdosRenyi { n: 13, p: 0.3, seed: 9 }).unwrap();
        let t = 8;
        let rw = wl1(&g, t);
        let rk = khop_wl(&g, 2, t);
        let rs = sek_wl(&g, 2, &feat(1, 3), t);
        let rounds = rw.history.len().max(rk.history.len()).max(rs.history.len());
        for round in 0..rounds {
            assert!(refines(&rk.partition_at(round), &rw.partition_at(round)));
            assert!(refines(&rs.partition_at(round), &rk.partition_at(round)));
        }
    }

    #[test]
    fn quantization_rounds_to_the_lattice() {
        let q = quantize(&[0.1234567894, 0.1234567896, 1.0], 9);
        assert_eq!(q, vec![123456789, 123456790, 1_000_000_000]);
    }
}
