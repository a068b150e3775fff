//! Shared test oracles, implemented independently of the library's
//! computation paths: a dense matrix-power route for walk
//! probabilities and a bit-vector route for graph6.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use sekwl::graph::{Graph, NodeId};

/// Dense lazy transition matrix P = D̃^{-1}(A + I) as row-major n x n.
pub fn dense_lazy_transition(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut p = vec![vec![0.0; n]; n];
    for u in 0..n {
        let d = 1.0 / (g.degree(u as NodeId) as f64 + 1.0);
        p[u][u] = d;
        for &v in g.neighbors(u as NodeId) {
            p[u][v as usize] = d;
        }
    }
    p
}

pub fn dense_matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

/// P^t by repeated dense multiplication.
pub fn dense_power(g: &Graph, t: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut acc = vec![vec![0.0; n]; n];
    for i in 0..n {
        acc[i][i] = 1.0;
    }
    let p = dense_lazy_transition(g);
    for _ in 0..t {
        acc = dense_matmul(&acc, &p);
    }
    acc
}

/// Decodes one graph6 record by materializing the whole bit string
/// first — a deliberately different structure from the library's
/// streaming decoder.
pub fn graph6_decode_oracle(record: &[u8]) -> (usize, Vec<bool>) {
    let (n, body) = if record[0] == 126 {
        let n = ((record[1] - 63) as usize) << 12
            | ((record[2] - 63) as usize) << 6
            | (record[3] - 63) as usize;
        (n, &record[4..])
    } else {
        ((record[0] - 63) as usize, &record[1..])
    };
    let mut bits = Vec::with_capacity(body.len() * 6);
    for &b in body {
        assert!((63..=126).contains(&b), "byte {b} out of range");
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    bits.truncate(n * n.saturating_sub(1) / 2);
    (n, bits)
}

/// The column-major upper-triangle pair order used by graph6.
pub fn graph6_pair_order(n: usize) -> Vec<(NodeId, NodeId)> {
    let mut pairs = Vec::new();
    for col in 1..n as NodeId {
        for row in 0..col {
            pairs.push((row, col));
        }
    }
    pairs
}

/// Encodes via the oracle bit route.
pub fn graph6_encode_oracle(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3F) as u8 + 63);
        out.push(((n >> 6) & 0x3F) as u8 + 63);
        out.push((n & 0x3F) as u8 + 63);
    }
    let mut bits: Vec<bool> = graph6_pair_order(n)
        .into_iter()
        .map(|(u, v)| g.has_edge(u, v))
        .collect();
    while !bits.len().is_multiple_of(6) {
        bits.push(false);
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for &b in chunk {
            v = (v << 1) | b as u8;
        }
        out.push(v + 63);
    }
    out
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let edges: Vec<(NodeId, NodeId)> = graph6_pair_order(n)
        .into_iter()
        .zip(bits)
        .filter(|(_, &b)| b)
        .map(|(pair, _)| pair)
        .collect();
    Graph::from_edges(n, edges)
}

pub fn random_graph(rng: &mut ChaCha12Rng, max_n: usize) -> Graph {
    let n = rng.random_range(0..=max_n);
    let mut edges = Vec::new();
    for u in 0..n as NodeId {
        for v in (u + 1)..n as NodeId {
            if rng.random::<f64>() < 0.4 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn random_permutation(rng: &mut ChaCha12Rng, n: usize) -> Vec<NodeId> {
    let mut perm: Vec<NodeId> = (0..n as NodeId).collect();
    perm.shuffle(rng);
    perm
}

pub fn seeded(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}
