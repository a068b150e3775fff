//! Deterministic graph generators.
//!
//! Spec grammar (used by the CLI and by experiment records):
//!   cycle:n=6 | complete:n=4 | star:n=5 | path:n=4 | rook4x4 | shrikhande
//!   | random_regular:n=100,r=3,seed=7 | erdos_renyi:n=12,p=0.3,seed=5
//! Specs can be joined with '+' for a disjoint union, e.g.
//! `cycle:n=3+cycle:n=3`. Omitted seeds default to the caller-supplied
//! default seed.

use super::{Graph, NodeId};
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use std::collections::HashSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Cycle { n: usize },
    Complete { n: usize },
    Star { n: usize },
    Path { n: usize },
    Rook4x4,
    Shrikhande,
    RandomRegular { n: usize, r: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    Union(Vec<GeneratorSpec>),
}

impl GeneratorSpec {
    /// Parses the spec grammar; seeds omitted in the string fall back
    /// to `default_seed`.
    pub fn parse(s: &str, default_seed: u64) -> Result<GeneratorSpec> {
        let parts: Vec<&str> = s.split('+').collect();
        if parts.len() > 1 {
            let specs = parts
                .iter()
                .map(|p| Self::parse_atom(p.trim(), default_seed))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GeneratorSpec::Union(specs));
        }
        Self::parse_atom(s.trim(), default_seed)
    }

    fn parse_atom(s: &str, default_seed: u64) -> Result<GeneratorSpec> {
        let usage = |msg: String| Error::Usage(format!("{msg}; grammar: {GRAMMAR}"));
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
                kv.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let take_usize = |kv: &std::collections::BTreeMap<String, String>, key: &str| {
            kv.get(key)
                .ok_or_else(|| usage(format!("{name} requires {key}=<int>")))?
                .parse::<usize>()
                .map_err(|_| usage(format!("invalid {key} in {s:?}")))
        };
        let take_seed = |kv: &std::collections::BTreeMap<String, String>| match kv.get("seed") {
            Some(v) => v
                .parse::<u64>()
                .map_err(|_| usage(format!("invalid seed in {s:?}"))),
            None => Ok(default_seed),
        };
        let expect_keys = |kv: &std::collections::BTreeMap<String, String>, allowed: &[&str]| {
            for k in kv.keys() {
                if !allowed.contains(&k.as_str()) {
                    return Err(usage(format!("unknown key {k:?} for {name}")));
                }
            }
            Ok(())
        };
        match name {
            "cycle" => {
                expect_keys(&kv, &["n"])?;
                Ok(GeneratorSpec::Cycle { n: take_usize(&kv, "n")? })
            }
            "complete" => {
                expect_keys(&kv, &["n"])?;
                Ok(GeneratorSpec::Complete { n: take_usize(&kv, "n")? })
            }
            "star" => {
                expect_keys(&kv, &["n"])?;
                Ok(GeneratorSpec::Star { n: take_usize(&kv, "n")? })
            }
            "path" => {
                expect_keys(&kv, &["n"])?;
                Ok(GeneratorSpec::Path { n: take_usize(&kv, "n")? })
            }
            "rook4x4" => {
                expect_keys(&kv, &[])?;
                Ok(GeneratorSpec::Rook4x4)
            }
            "shrikhande" => {
                expect_keys(&kv, &[])?;
                Ok(GeneratorSpec::Shrikhande)
            }
            "random_regular" => {
                expect_keys(&kv, &["n", "r", "seed"])?;
                Ok(GeneratorSpec::RandomRegular {
                    n: take_usize(&kv, "n")?,
                    r: take_usize(&kv, "r")?,
                    seed: take_seed(&kv)?,
                })
            }
            "erdos_renyi" => {
                expect_keys(&kv, &["n", "p", "seed"])?;
                let p = kv
                    .get("p")
                    .ok_or_else(|| usage("erdos_renyi requires p=<float>".into()))?
                    .parse::<f64>()
                    .map_err(|_| usage(format!("invalid p in {s:?}")))?;
                Ok(GeneratorSpec::ErdosRenyi {
                    n: take_usize(&kv, "n")?,
                    p,
                    seed: take_seed(&kv)?,
                })
            }
            other => Err(usage(format!("unknown generator {other:?}"))),
        }
    }
}

pub const GRAMMAR: &str = "cycle:n=<int> | complete:n=<int> | star:n=<int> | path:n=<int> | \
rook4x4 | shrikhande | random_regular:n=<int>,r=<int>[,seed=<int>] | \
erdos_renyi:n=<int>,p=<float>[,seed=<int>] — join with '+' for disjoint unions";

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Cycle { n } => write!(f, "cycle:n={n}"),
            GeneratorSpec::Complete { n } => write!(f, "complete:n={n}"),
            GeneratorSpec::Star { n } => write!(f, "star:n={n}"),
            GeneratorSpec::Path { n } => write!(f, "path:n={n}"),
            GeneratorSpec::Rook4x4 => write!(f, "rook4x4"),
            GeneratorSpec::Shrikhande => write!(f, "shrikhande"),
            GeneratorSpec::RandomRegular { n, r, seed } => {
                write!(f, "random_regular:n={n},r={r},seed={seed}")
            }
            GeneratorSpec::ErdosRenyi { n, p, seed } => {
                write!(f, "erdos_renyi:n={n},p={p},seed={seed}")
            }
            GeneratorSpec::Union(parts) => {
                let joined: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", joined.join("+"))
            }
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec {
        GeneratorSpec::Cycle { n } => cycle(*n),
        GeneratorSpec::Complete { n } => Ok(complete(*n)),
        GeneratorSpec::Star { n } => Ok(star(*n)),
        GeneratorSpec::Path { n } => Ok(path(*n)),
        GeneratorSpec::Rook4x4 => Ok(rook4x4()),
        GeneratorSpec::Shrikhande => Ok(shrikhande()),
        GeneratorSpec::RandomRegular { n, r, seed } => random_regular(*n, *r, *seed),
        GeneratorSpec::ErdosRenyi { n, p, seed } => erdos_renyi(*n, *p, *seed),
        GeneratorSpec::Union(parts) => {
            let graphs = parts.iter().map(generate).collect::<Result<Vec<_>>>()?;
            Ok(graphs
                .into_iter()
                .reduce(|a, b| disjoint_union(&a, &b))
                .unwrap_or_else(|| Graph::empty(0)))
        }
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Domain(format!("cycle requires n >= 3, got {n}")));
    }
    let edges = (0..n as NodeId).map(|v| (v, ((v as usize + 1) % n) as NodeId));
    Ok(Graph::from_edges(n, edges))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n as NodeId).flat_map(|u| ((u + 1)..n as NodeId).map(move |v| (u, v)));
    Graph::from_edges(n, edges)
}

/// Node 0 is the center; nodes 1..n are leaves.
pub fn star(n: usize) -> Graph {
    let edges = (1..n as NodeId).map(|v| (0, v));
    Graph::from_edges(n, edges)
}

pub fn path(n: usize) -> Graph {
    let edges = (1..n as NodeId).map(|v| (v - 1, v));
    Graph::from_edges(n, edges)
}

/// Vertices are Z4 x Z4 (node 4*row + col); cells are adjacent iff they
/// share a row or a column. 16 nodes, 6-regular, 48 edges.
pub fn rook4x4() -> Graph {
    let mut edges = Vec::new();
    for a in 0..16u32 {
        for b in (a + 1)..16u32 {
            let (r1, c1) = (a / 4, a % 4);
            let (r2, c2) = (b / 4, b % 4);
            if r1 == r2 || c1 == c2 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(16, edges)
}

/// Cayley graph on Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}.
/// 16 nodes, 6-regular, 48 edges; same degree sequence and intersection
/// array as the 4x4 rook's graph but not isomorphic to it.
pub fn shrikhande() -> Graph {
    let diffs: [(u32, u32); 6] = [(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)];
    let mut edges = Vec::new();
    for a in 0..16u32 {
        for b in (a + 1)..16u32 {
            let (r1, c1) = (a / 4, a % 4);
            let (r2, c2) = (b / 4, b % 4);
            let d = ((r1 + 4 - r2) % 4, (c1 + 4 - c2) % 4);
            if diffs.contains(&d) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(16, edges)
}

/// Uniform r-regular graph via the pairing model: r points per node are
/// matched by a seeded shuffle, and the whole attempt restarts when the
/// matching produces a self-loop or parallel edge. Exact uniformity over
/// simple r-regular graphs, at the cost of a restart probability that is
/// acceptable for the small r used here.
pub fn random_regular(n: usize, r: usize, seed: u64) -> Result<Graph> {
    if !(n * r).is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "random_regular requires n*r even, got n={n}, r={r}"
        )));
    }
    if r >= n {
        return Err(Error::Domain(format!(
            "random_regular requires r < n, got n={n}, r={r}"
        )));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut points: Vec<NodeId> = (0..n * r).map(|p| (p / r) as NodeId).collect();
    'attempt: loop {
        points.shuffle(&mut rng);
        let mut seen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(n * r / 2);
        let mut edges: Vec<(NodeId, NodeId)> = Vec::with_capacity(n * r / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
            edges.push((u, v));
        }
        return Ok(Graph::from_edges(n, edges));
    }
}

/// G(n, p) with every unordered pair included independently.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("erdos_renyi requires p in [0,1], got {p}")));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, edges))
}

/// Disjoint union; nodes of `b` are shifted by `a.n()`.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n() as NodeId;
    let edges: Vec<(NodeId, NodeId)> = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + shift, v + shift)))
        .collect();
    Graph::from_edges(a.n() + b.n(), edges)
}
