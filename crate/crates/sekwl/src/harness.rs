//! Experiment drivers: pairwise discrimination across the refinement
//! family, the random-regular walk-separation experiment, exact
//! substructure counting with two independent routes, and the
//! feature-vs-count separation check.

use crate::ego::edge_configuration;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, GraphId, NodeId};
use crate::mix::derive_seed;
use crate::refine::{
    khop_wl, sek_wl, subgraph_wl, wl1, FeatureParams, RefinementResult, SubgraphVariant,
};
use crate::walk::{self_return_vector, SubstructureFeatures};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;

/// One algorithm + parameter choice in a discrimination suite.
///
/// String grammar (CLI `--suite` entries):
///   wl1 | khop:K=<int> | subgraph:K=<int>,variant=<encoded|nested>[,l=<int>,radius=<int>]
///   | sek:K=<int>,l=<int>[,radius=<int>]
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmSpec {
    Wl1,
    Khop { hops: usize },
    Subgraph { hops: usize, nested: bool, feat: FeatureParams },
    Sek { hops: usize, feat: FeatureParams },
}

impl AlgorithmSpec {
    pub fn parse(s: &str) -> Result<AlgorithmSpec> {
        let usage = |msg: String| {
            Error::Usage(format!(
                "{msg}; suite grammar: wl1 | khop:K=<int> | \
                 subgraph:K=<int>,variant=<encoded|nested>[,l=<int>,radius=<int>] | \
                 sek:K=<int>,l=<int>[,radius=<int>]"
            ))
        };
        let (name, args) = match s.split_once(':') {
            Some((n, a)) => (n, a),
            None => (s, ""),
        };
        let mut kv = std::collections::BTreeMap::new();
        if !args.is_empty() {
            for item in args.split(',') {
                let (k, v) = item
                    .split_once('=')
                    .ok_or_else(|| usage(format!("expected key=value, got {item:?}")))?;
                kv.insert(k.trim().to_lowercase(), v.trim().to_string());
            }
        }
        let get_usize = |kv: &std::collections::BTreeMap<String, String>, key: &str| -> Result<usize> {
            kv.get(key)
                .ok_or_else(|| usage(format!("{name} requires {key}=<int>")))?
                .parse()
                .map_err(|_| usage(format!("invalid {key} in {s:?}")))
        };
        match name.trim() {
            "wl1" => {
                if !kv.is_empty() {
                    return Err(usage("wl1 takes no parameters".into()));
                }
                Ok(AlgorithmSpec::Wl1)
            }
            "khop" => Ok(AlgorithmSpec::Khop { hops: get_usize(&kv, "k")? }),
            "sek" => {
                let hops = get_usize(&kv, "k")?;
                let steps = get_usize(&kv, "l")?;
                let radius = match kv.get("radius") {
                    Some(v) => v.parse().map_err(|_| usage(format!("invalid radius in {s:?}")))?,
                    None => 1,
                };
                Ok(AlgorithmSpec::Sek { hops, feat: FeatureParams::new(radius, steps) })
            }
            "subgraph" => {
                let hops = get_usize(&kv, "k")?;
                let variant = kv
                    .get("variant")
                    .map(|v| v.as_str())
                    .unwrap_or("nested");
                let nested = match variant {
                    "nested" => true,
                    "encoded" => false,
                    other => return Err(usage(format!("unknown variant {other:?}"))),
                };
                let steps = match kv.get("l") {
                    Some(v) => v.parse().map_err(|_| usage(format!("invalid l in {s:?}")))?,
                    None => 4,
                };
                let radius = match kv.get("radius") {
                    Some(v) => v.parse().map_err(|_| usage(format!("invalid radius in {s:?}")))?,
                    None => 1,
                };
                Ok(AlgorithmSpec::Subgraph { hops, nested, feat: FeatureParams::new(radius, steps) })
            }
            other => Err(usage(format!("unknown algorithm {other:?}"))),
        }
    }

    pub fn parse_suite(s: &str) -> Result<Vec<AlgorithmSpec>> {
        let specs = s
            .split(',')
            .collect::<Vec<_>>();
        // entries themselves contain commas in their key=value lists, so
        // split on entry boundaries: an entry starts at "wl1", "khop",
        // "subgraph", or "sek".
        let mut entries: Vec<String> = Vec::new();
        for piece in specs {
            let p = piece.trim();
            let starts_entry = p == "wl1"
                || p.starts_with("khop")
                || p.starts_with("subgraph")
                || p.starts_with("sek");
            if starts_entry || entries.is_empty() {
                entries.push(p.to_string());
            } else {
                let last = entries.last_mut().unwrap();
                last.push(',');
                last.push_str(p);
            }
        }
        if entries.is_empty() {
            return Err(Error::Usage("empty suite".into()));
        }
        entries.iter().map(|e| AlgorithmSpec::parse(e)).collect()
    }

    pub fn run(&self, g: &Graph, rounds: usize) -> RefinementResult {
        match self {
            AlgorithmSpec::Wl1 => wl1(g, rounds),
            AlgorithmSpec::Khop { hops } => khop_wl(g, *hops, rounds),
            AlgorithmSpec::Subgraph { hops, nested, feat } => {
                let variant = if *nested {
                    SubgraphVariant::Nested
                } else {
                    SubgraphVariant::Encoded(*feat)
                };
                subgraph_wl(g, *hops, &variant, rounds)
            }
            AlgorithmSpec::Sek { hops, feat } => sek_wl(g, *hops, feat, rounds),
        }
    }

    /// Rank in the refinement-power partial order, comparable at equal
    /// hop radius: wl1 < khop < sek.
    fn dominance_rank(&self) -> Option<(usize, usize)> {
        match self {
            AlgorithmSpec::Wl1 => Some((0, 1)),
            AlgorithmSpec::Khop { hops } => Some((1, *hops)),
            AlgorithmSpec::Sek { hops, .. } => Some((2, *hops)),
            AlgorithmSpec::Subgraph { .. } => None,
        }
    }
}

impl fmt::Display for AlgorithmSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgorithmSpec::Wl1 => write!(f, "wl1"),
            AlgorithmSpec::Khop { hops } => write!(f, "khop:K={hops}"),
            AlgorithmSpec::Subgraph { hops, nested, feat } => {
                if *nested {
                    write!(f, "subgraph:K={hops},variant=nested")
                } else {
                    write!(
                        f,
                        "subgraph:K={hops},variant=encoded,l={},radius={}",
                        feat.steps, feat.radius
                    )
                }
            }
            AlgorithmSpec::Sek { hops, feat } => {
                write!(f, "sek:K={hops},l={},radius={}", feat.steps, feat.radius)
            }
        }
    }
}

/// Witness that two runs differ: the first round whose color multisets
/// disagree and one color class whose sizes differ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub iteration: usize,
    pub color: String,
    pub count_left: usize,
    pub count_right: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgorithmVerdict {
    pub algorithm: String,
    pub distinguished: bool,
    pub fingerprint_left: String,
    pub fingerprint_right: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscriminationReport {
    pub format_version: String,
    pub pair: (String, String),
    pub rounds: usize,
    pub verdicts: Vec<AlgorithmVerdict>,
}

impl DiscriminationReport {
    pub fn verdict(&self, algorithm: &str) -> Option<&AlgorithmVerdict> {
        self.verdicts.iter().find(|v| v.algorithm == algorithm)
    }
}

fn find_certificate(left: &RefinementResult, right: &RefinementResult) -> Option<Certificate> {
    let rounds = left.history.len().min(right.history.len());
    for t in 0..rounds {
        let a = left.history[t].sorted_colors();
        let b = right.history[t].sorted_colors();
        if a == b {
            continue;
        }
        let count = |sorted: &[u64], c: u64| {
            let lo = sorted.partition_point(|&x| x < c);
            let hi = sorted.partition_point(|&x| x <= c);
            hi - lo
        };
        let witness = a
            .iter()
            .chain(b.iter())
            .copied()
            .find(|&c| count(&a, c) != count(&b, c))
            .expect("differing multisets have a differing class");
        return Some(Certificate {
            iteration: t,
            color: format!("{witness:016x}"),
            count_left: count(&a, witness),
            count_right: count(&b, witness),
        });
    }
    None
}

/// Runs every suite algorithm on both graphs with identical parameters
/// and compares fingerprints.
pub fn discriminate(
    left: (&GraphId, &Graph),
    right: (&GraphId, &Graph),
    suite: &[AlgorithmSpec],
    rounds: usize,
) -> Result<DiscriminationReport> {
    if suite.is_empty() {
        return Err(Error::Contract("empty algorithm suite".into()));
    }
    let verdicts: Vec<AlgorithmVerdict> = suite
        .iter()
        .map(|spec| {
            let rl = spec.run(left.1, rounds);
            let rr = spec.run(right.1, rounds);
            let distinguished = rl.fingerprint != rr.fingerprint;
            let certificate = if distinguished {
                find_certificate(&rl, &rr)
            } else {
                None
            };
            AlgorithmVerdict {
                algorithm: spec.to_string(),
                distinguished,
                fingerprint_left: rl.fingerprint.to_string(),
                fingerprint_right: rr.fingerprint.to_string(),
                certificate,
            }
        })
        .collect();
    let report = DiscriminationReport {
        format_version: crate::FORMAT_VERSION.to_string(),
        pair: (left.0.label.clone(), right.0.label.clone()),
        rounds,
        verdicts,
    };
    if let Some(violation) = dominance_violations(suite, &report).into_iter().next() {
        return Err(Error::Contract(format!(
            "dominance violation on pair ({}, {}): {violation}",
            report.pair.0, report.pair.1
        )));
    }
    Ok(report)
}

/// Checks the power partial order on a finished report: at equal hop
/// radius, whenever a weaker algorithm distinguishes a pair, every
/// stronger one must as well.
pub fn dominance_violations(suite: &[AlgorithmSpec], report: &DiscriminationReport) -> Vec<String> {
    let mut out = Vec::new();
    for (i, a) in suite.iter().enumerate() {
        for (j, b) in suite.iter().enumerate() {
            let (Some((ra, ka)), Some((rb, kb))) = (a.dominance_rank(), b.dominance_rank()) else {
                continue;
            };
            // a strictly weaker than b
            let weaker = ra < rb && ka <= kb;
            if !weaker {
                continue;
            }
            let va = &report.verdicts[i];
            let vb = &report.verdicts[j];
            if va.distinguished && !vb.distinguished {
                out.push(format!(
                    "{} distinguished but {} did not",
                    va.algorithm, vb.algorithm
                ));
            }
        }
    }
    out
}

/// Configuration of the random-regular walk-separation experiment.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SeparationConfig {
    pub n: usize,
    pub r: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
}

/// One trial: two independently sampled r-regular graphs, one root
/// each; records where their layer edge configurations first differ and
/// whether the 2K-step self-return vectors separate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationTrial {
    pub trial: usize,
    pub seed: u64,
    pub k_bound: usize,
    pub root_left: NodeId,
    pub root_right: NodeId,
    /// First hop k < k_bound where the two roots' edge configurations
    /// differ, if any.
    pub config_differs_at: Option<usize>,
    /// True when the configurations differ component-wise at that hop
    /// but carry the same total number of layer-crossing edges — the
    /// case where walk counts can coincide.
    pub edge_count_collision: bool,
    pub separated: bool,
    pub max_gap: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeparationSummary {
    pub format_version: String,
    pub n: usize,
    pub r: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub seed: u64,
    pub k_bound: usize,
    pub walk_steps: usize,
    pub config_differing: usize,
    pub separated: usize,
    pub separation_rate: f64,
    pub collisions: usize,
    pub collision_rate: f64,
}

/// K = ceil((1/2 + ε) · ln(2n)/ln(r-1) + 1); with (n, r, ε) =
/// (100, 3, 0.1) this is 6.
pub fn separation_k_bound(n: usize, r: usize, epsilon: f64) -> usize {
    let bound = (0.5 + epsilon) * ((2 * n) as f64).ln() / ((r - 1) as f64).ln() + 1.0;
    bound.ceil() as usize
}

const SEPARATION_TOLERANCE: f64 = 1e-12;

/// Samples pairs of uniform r-regular graphs and measures how often
/// roots with differing layer edge configurations are separated by
/// their 2K-step self-return vectors.
pub fn walk_separation_experiment(
    cfg: &SeparationConfig,
) -> Result<(Vec<SeparationTrial>, SeparationSummary)> {
    let max_r = (2.0 * ((2 * cfg.n) as f64).ln()).sqrt();
    if cfg.r < 3 || (cfg.r as f64) >= max_r {
        return Err(Error::Domain(format!(
            "requires 3 <= r < sqrt(2 ln 2n) = {max_r:.3}, got r={}",
            cfg.r
        )));
    }
    if !(cfg.n * cfg.r).is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "n*r must be even, got n={}, r={}",
            cfg.n, cfg.r
        )));
    }
    let k_bound = separation_k_bound(cfg.n, cfg.r, cfg.epsilon);
    let steps = 2 * k_bound;

    let trials: Vec<SeparationTrial> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = derive_seed(cfg.seed, trial as u64);
            let g1 = graph::generate(&graph::GeneratorSpec::RandomRegular {
                n: cfg.n,
                r: cfg.r,
                seed: derive_seed(seed, 0),
            })
            .expect("validated parameters");
            let g2 = graph::generate(&graph::GeneratorSpec::RandomRegular {
                n: cfg.n,
                r: cfg.r,
                seed: derive_seed(seed, 1),
            })
            .expect("validated parameters");
            let mut rng = ChaCha12Rng::seed_from_u64(derive_seed(seed, 2));
            let u = rng.random_range(0..cfg.n) as NodeId;
            let v = rng.random_range(0..cfg.n) as NodeId;

            let mut config_differs_at = None;
            let mut edge_count_collision = false;
            for k in 0..k_bound {
                let ca = edge_configuration(&g1, u, k);
                let cb = edge_configuration(&g2, v, k);
                if ca != cb {
                    config_differs_at = Some(k);
                    edge_count_collision = ca.crossing_edges() == cb.crossing_edges();
                    break;
                }
            }

            let sa = self_return_vector(&g1, u, steps);
            let sb = self_return_vector(&g2, v, steps);
            let max_gap = sa
                .iter()
                .zip(&sb)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            SeparationTrial {
                trial,
                seed,
                k_bound,
                root_left: u,
                root_right: v,
                config_differs_at,
                edge_count_collision,
                separated: max_gap > SEPARATION_TOLERANCE,
                max_gap,
            }
        })
        .collect();

    let config_differing = trials.iter().filter(|t| t.config_differs_at.is_some()).count();
    let separated = trials
        .iter()
        .filter(|t| t.config_differs_at.is_some() && t.separated)
        .count();
    let collisions = trials.iter().filter(|t| t.edge_count_collision).count();
    let summary = SeparationSummary {
        format_version: crate::FORMAT_VERSION.to_string(),
        n: cfg.n,
        r: cfg.r,
        epsilon: cfg.epsilon,
        trials: cfg.trials,
        seed: cfg.seed,
        k_bound,
        walk_steps: steps,
        config_differing,
        separated,
        separation_rate: if config_differing == 0 {
            0.0
        } else {
            separated as f64 / config_differing as f64
        },
        collisions,
        collision_rate: if config_differing == 0 {
            0.0
        } else {
            collisions as f64 / config_differing as f64
        },
    };
    Ok((trials, summary))
}

/// Counts of the four small substructures used as regression targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubstructureCounts {
    pub triangles: u64,
    pub tailed_triangles: u64,
    pub three_stars: u64,
    pub four_cycles: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    /// Sparse evaluation of the trace/degree identities.
    ClosedForm,
    /// Brute force over all 3- and 4-subsets; the independent oracle.
    Enumerate,
}

const ENUMERATE_MAX_N: usize = 64;

pub fn count_substructures(g: &Graph, method: CountMethod) -> Result<SubstructureCounts> {
    match method {
        CountMethod::ClosedForm => Ok(count_closed_form(g)),
        CountMethod::Enumerate => {
            if g.n() > ENUMERATE_MAX_N {
                return Err(Error::Capability(format!(
                    "enumeration is guarded to n <= {ENUMERATE_MAX_N}, got n={}",
                    g.n()
                )));
            }
            Ok(count_enumerate(g))
        }
    }
}

fn count_closed_form(g: &Graph) -> SubstructureCounts {
    let n = g.n();
    // Local triangle counts via sorted-adjacency intersection.
    let mut per_node = vec![0u64; n];
    let mut triangles = 0u64;
    for (u, v) in g.edges() {
        let (mut a, mut b) = (g.neighbors(u), g.neighbors(v));
        while let (Some(&x), Some(&y)) = (a.first(), b.first()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => a = &a[1..],
                std::cmp::Ordering::Greater => b = &b[1..],
                std::cmp::Ordering::Equal => {
                    per_node[x as usize] += 1;
                    if x > v {
                        triangles += 1;
                    }
                    a = &a[1..];
                    b = &b[1..];
                }
            }
        }
    }
    // per_node[w] counted one increment per edge of each triangle at w's
    // two partners; each triangle contributes exactly once to each corner.

    let tailed_triangles: u64 = (0..n)
        .map(|v| per_node[v] * (g.degree(v as NodeId).saturating_sub(2)) as u64)
        .sum();

    let choose3 = |d: u64| if d >= 3 { d * (d - 1) * (d - 2) / 6 } else { 0 };
    let three_stars: u64 = (0..n as NodeId).map(|v| choose3(g.degree(v) as u64)).sum();

    // trace(A^4) = sum over u of sum_w (A^2)_{uw}^2, via two-step counts.
    let mut trace4: u128 = 0;
    let mut two_walks = vec![0u64; n];
    for u in 0..n as NodeId {
        let mut touched: Vec<usize> = Vec::new();
        for &x in g.neighbors(u) {
            for &w in g.neighbors(x) {
                if two_walks[w as usize] == 0 {
                    touched.push(w as usize);
                }
                two_walks[w as usize] += 1;
            }
        }
        for &w in &touched {
            trace4 += (two_walks[w] as u128) * (two_walks[w] as u128);
            two_walks[w] = 0;
        }
    }
    let m = g.m() as u128;
    let deg_pairs: u128 = (0..n as NodeId)
        .map(|v| {
            let d = g.degree(v) as u128;
            d * d.saturating_sub(1)
        })
        .sum();
    let four_cycles = ((trace4 - 2 * m - 2 * deg_pairs) / 8) as u64;

    SubstructureCounts {
        triangles,
        tailed_triangles,
        three_stars,
        four_cycles,
    }
}

fn count_enumerate(g: &Graph) -> SubstructureCounts {
    let n = g.n() as NodeId;
    let mut triangles = 0u64;
    let mut tailed = 0u64;
    let mut stars = 0u64;
    let mut cycles = 0u64;

    // K_{1,3} subgraphs: a center plus any 3-subset of other nodes all
    // adjacent to it.
    for c in 0..n {
        for a in 0..n {
            if a == c || !g.has_edge(c, a) {
                continue;
            }
            for b in (a + 1)..n {
                if b == c || !g.has_edge(c, b) {
                    continue;
                }
                for d in (b + 1)..n {
                    if d == c || !g.has_edge(c, d) {
                        continue;
                    }
                    stars += 1;
                }
            }
        }
    }

    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    triangles += 1;
                    // a tail is any edge from one corner to an outside node
                    for d in 0..n {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        for corner in [a, b, c] {
                            if g.has_edge(corner, d) {
                                tailed += 1;
                            }
                        }
                    }
                }
            }
        }
    }

    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                for d in (c + 1)..n {
                    // the three pairings of {a,b,c,d} into a 4-cycle
                    let orders = [[a, b, c, d], [a, b, d, c], [a, c, b, d]];
                    for o in orders {
                        if g.has_edge(o[0], o[1])
                            && g.has_edge(o[1], o[2])
                            && g.has_edge(o[2], o[3])
                            && g.has_edge(o[3], o[0])
                        {
                            cycles += 1;
                        }
                    }
                }
            }
        }
    }

    SubstructureCounts {
        triangles,
        tailed_triangles: tailed,
        three_stars: stars,
        four_cycles: cycles,
    }
}

/// Result of checking substructure-count separation over a corpus:
/// among pairs with unequal counts, the fraction whose enhanced-
/// refinement fingerprints differ.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountingSeparation {
    pub format_version: String,
    pub graphs: usize,
    pub pairs: usize,
    pub count_distinct_pairs: usize,
    pub separated: usize,
    pub rate: f64,
}

pub fn counting_separation_check(
    corpus: &[Graph],
    hops: usize,
    feat: &FeatureParams,
    rounds: usize,
) -> Result<CountingSeparation> {
    for g in corpus {
        if g.n() > 20 {
            return Err(Error::Domain(format!(
                "corpus graphs must have n <= 20, got n={}",
                g.n()
            )));
        }
    }
    let counts: Vec<SubstructureCounts> = corpus
        .par_iter()
        .map(count_closed_form)
        .collect();
    let prints: Vec<_> = corpus
        .par_iter()
        .map(|g| sek_wl(g, hops, feat, rounds).fingerprint)
        .collect();
    let mut pairs = 0usize;
    let mut distinct = 0usize;
    let mut separated = 0usize;
    for i in 0..corpus.len() {
        for j in (i + 1)..corpus.len() {
            pairs += 1;
            if counts[i] != counts[j] {
                distinct += 1;
                if prints[i] != prints[j] {
                    separated += 1;
                }
            }
        }
    }
    Ok(CountingSeparation {
        format_version: crate::FORMAT_VERSION.to_string(),
        graphs: corpus.len(),
        pairs,
        count_distinct_pairs: distinct,
        separated,
        rate: if distinct == 0 {
            1.0
        } else {
            separated as f64 / distinct as f64
        },
    })
}

/// Seeded corpus of Erdős–Rényi graphs.
pub fn er_corpus(count: usize, n: usize, p: f64, seed: u64) -> Result<Vec<Graph>> {
    (0..count)
        .map(|i| {
            graph::generate(&graph::GeneratorSpec::ErdosRenyi {
                n,
                p,
                seed: derive_seed(seed, i as u64),
            })
        })
        .collect()
}

/// The fixed mixed-structure corpus used by property and invariance
/// tests: named small graphs plus a few seeded random ones.
pub fn standard_corpus() -> Vec<(GraphId, Graph)> {
    use graph::GeneratorSpec as GS;
    let mut out = Vec::new();
    let mut push_spec = |label: &str, spec: GS| {
        let g = graph::generate(&spec).expect("standard corpus specs are valid");
        out.push((GraphId::new(label, spec.to_string()), g));
    };
    push_spec("two-triangles", GS::Union(vec![GS::Cycle { n: 3 }, GS::Cycle { n: 3 }]));
    push_spec("c6", GS::Cycle { n: 6 });
    push_spec("k4", GS::Complete { n: 4 });
    push_spec("star5", GS::Star { n: 5 });
    push_spec("path4", GS::Path { n: 4 });
    push_spec("rook4x4", GS::Rook4x4);
    push_spec("shrikhande", GS::Shrikhande);
    push_spec("regular-10-3", GS::RandomRegular { n: 10, r: 3, seed: 7 });
    push_spec("er-12-a", GS::ErdosRenyi { n: 12, p: 0.3, seed: 11 });
    push_spec("er-12-b", GS::ErdosRenyi { n: 12, p: 0.3, seed: 12 });
    out
}

/// Smallest gap between genuinely distinct feature values in a
/// collection. Values closer than `noise_floor` are round-off images
/// of the same mathematical value (different summation histories) and
/// are coalesced first; the returned gap is between the coalesced
/// clusters. Validates that the quantization lattice separates what is
/// mathematically distinct.
pub fn min_feature_separation(
    features: &[SubstructureFeatures],
    noise_floor: f64,
) -> Option<f64> {
    let mut values: Vec<f64> = features.iter().flat_map(|f| f.combined()).collect();
    values.sort_unstable_by(f64::total_cmp);
    values.dedup();
    let mut clusters: Vec<f64> = Vec::new();
    for v in values {
        match clusters.last() {
            Some(&last) if v - last <= noise_floor => {}
            _ => clusters.push(v),
        }
    }
    clusters
        .windows(2)
        .map(|w| w[1] - w[0])
        .min_by(f64::total_cmp)
}
