//! graph6 interchange format, bit-exact.
//!
//! Record layout:
//!   N(n)  — one byte n+63 for n <= 62, else 126 followed by three
//!           bytes carrying n in big-endian 6-bit chunks (each +63);
//!           this covers n < 2^18, the limit this crate supports.
//!   R(x)  — the upper triangle of the adjacency matrix in column-major
//!           order (x01, x02, x12, x03, x13, x23, ...), packed MSB-first
//!           into 6-bit groups, zero-padded, each group +63.
//!
//! All record bytes lie in [63, 126]. One record per line.

use super::{Graph, NodeId};
use crate::error::{Error, Result};

const OFFSET: u8 = 63;
const EXTENDED: u8 = 126;
const MAX_N: usize = 1 << 18;

/// Decodes one graph per input line. Blank lines are skipped; record
/// indices in errors are 1-based.
pub fn from_graph6(input: &[u8]) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut record = 0usize;
    for raw in input.split(|&b| b == b'\n') {
        let line = match raw.split_last() {
            Some((&b'\r', head)) => head,
            _ => raw,
        };
        if line.is_empty() {
            continue;
        }
        record += 1;
        graphs.push(decode_record(line, record)?);
    }
    Ok(graphs)
}

/// Encodes a single canonical record, without a trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    if g.n() >= MAX_N {
        return Err(Error::Capability(format!(
            "graph6 encoding supports n < {MAX_N}, got n={}",
            g.n()
        )));
    }
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else {
        out.push(EXTENDED);
        out.push(((n >> 12) & 0x3F) as u8 + OFFSET);
        out.push(((n >> 6) & 0x3F) as u8 + OFFSET);
        out.push((n & 0x3F) as u8 + OFFSET);
    }
    let mut group = 0u8;
    let mut filled = 0u8;
    for col in 1..n as NodeId {
        for row in 0..col {
            group <<= 1;
            if g.has_edge(row, col) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(group + OFFSET);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(group + OFFSET);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

fn decode_record(line: &[u8], record: usize) -> Result<Graph> {
    let bad_byte = |b: u8| {
        Error::format(
            record,
            format!("byte {b} outside the graph6 range [63, 126]"),
        )
    };
    let (n, body) = if line[0] == EXTENDED {
        if line.len() >= 2 && line[1] == EXTENDED {
            return Err(Error::Capability(format!(
                "graph6 record {record} declares n >= 2^18, which is unsupported"
            )));
        }
        if line.len() < 4 {
            return Err(Error::format(record, "truncated size header"));
        }
        let mut n = 0usize;
        for &b in &line[1..4] {
            if !(OFFSET..=EXTENDED).contains(&b) {
                return Err(bad_byte(b));
            }
            n = (n << 6) | (b - OFFSET) as usize;
        }
        (n, &line[4..])
    } else {
        let b = line[0];
        if !(OFFSET..=EXTENDED).contains(&b) {
            return Err(bad_byte(b));
        }
        ((b - OFFSET) as usize, &line[1..])
    };

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if body.len() < nbytes {
        return Err(Error::format(
            record,
            format!("truncated record: need {nbytes} body bytes, got {}", body.len()),
        ));
    }
    if body.len() > nbytes {
        return Err(Error::format(
            record,
            format!("trailing bytes: need {nbytes} body bytes, got {}", body.len()),
        ));
    }

    let mut edges: Vec<(NodeId, NodeId)> = Vec::new();
    let mut bit_index = 0usize;
    let mut pairs = (1..n as NodeId).flat_map(|col| (0..col).map(move |row| (row, col)));
    for &b in body {
        if !(OFFSET..=EXTENDED).contains(&b) {
            return Err(bad_byte(b));
        }
        let group = b - OFFSET;
        for shift in (0..6).rev() {
            let bit = (group >> shift) & 1;
            if bit_index < nbits {
                let (row, col) = pairs.next().expect("pair iterator covers nbits");
                if bit == 1 {
                    edges.push((row, col));
                }
            } else if bit == 1 {
                return Err(Error::format(record, "nonzero padding bits"));
            }
            bit_index += 1;
        }
    }
    Ok(Graph::from_edges(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_encodes_to_the_golden_record() {
        // Hand-derived: header 'B' = 63+3; bits 111 padded to 111000 = 56 -> 'w'.
        let c3 = Graph::from_edges(3, vec![(0, 1), (1, 2), (0, 2)]);
        assert_eq!(to_graph6(&c3).unwrap(), "Bw");
    }

    #[test]
    fn empty_graph_is_a_lone_header() {
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
        let gs = from_graph6(b"?").unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].n(), 0);
    }

    #[test]
    fn five_node_record_decodes_to_a_star() {
        // 'D' = n=5; body "?{" = 000000 111100; the ten used bits set
        // exactly the pairs (0,4) (1,4) (2,4) (3,4) in column-major order.
        let gs = from_graph6(b"D?{").unwrap();
        assert_eq!(gs.len(), 1);
        let g = &gs[0];
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 4);
        for v in 0..4 {
            assert!(g.has_edge(v, 4));
        }
        assert_eq!(to_graph6(g).unwrap(), "D?{");
    }

    #[test]
    fn multiple_records_per_file() {
        let gs = from_graph6(b"Bw\nD?{\n\n?").unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[0].n(), 3);
        assert_eq!(gs[1].n(), 5);
        assert_eq!(gs[2].n(), 0);
    }

    #[test]
    fn out_of_range_byte_is_a_format_error() {
        let err = from_graph6(b"B\x20").unwrap_err();
        assert!(err.to_string().contains("outside the graph6 range"));
    }

    #[test]
    fn truncated_record_reports_its_index() {
        let err = from_graph6(b"Bw\nD?").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("record 2") && msg.contains("truncated"), "{msg}");
    }

    #[test]
    fn nonzero_padding_is_rejected() {
        // n=3 needs 3 bits; '~' = 111111 has nonzero padding.
        let err = from_graph6(b"B~").unwrap_err();
        assert!(err.to_string().contains("padding"));
    }

    #[test]
    fn extended_header_round_trips() {
        let n = 70usize;
        let edges: Vec<(NodeId, NodeId)> = (0..n as NodeId - 1).map(|v| (v, v + 1)).collect();
        let g = Graph::from_edges(n, edges);
        let enc = to_graph6(&g).unwrap();
        assert_eq!(enc.as_bytes()[0], 126);
        let back = from_graph6(enc.as_bytes()).unwrap();
        assert_eq!(back[0], g);
    }

    #[test]
    fn oversized_graph_is_a_capability_error() {
        let g = Graph::empty(1 << 18);
        assert!(matches!(to_graph6(&g), Err(Error::Capability(_))));
    }
}
