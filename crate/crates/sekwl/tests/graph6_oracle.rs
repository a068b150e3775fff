//! graph6 codec cross-checked against the independent bit-vector
//! oracle, including the golden records.

mod common;

use common::{
    graph6_decode_oracle, graph6_encode_oracle, graph_from_bits, random_graph, seeded,
};
use sekwl::graph::{from_graph6, to_graph6};

#[test]
fn decoder_agrees_with_the_bit_oracle_on_golden_records() {
    for record in ["Bw", "D?{", "E?~o", "?", "DQc"] {
        let (n, bits) = graph6_decode_oracle(record.as_bytes());
        let expect = graph_from_bits(n, &bits);
        let got = from_graph6(record.as_bytes()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0], expect, "record {record}");
        assert_eq!(to_graph6(&got[0]).unwrap(), record, "re-encode {record}");
    }
}

#[test]
fn decoded_edge_count_is_the_popcount_of_the_body_bits() {
    let records = ["E?~o", "Bw", "D?{"];
    for record in records {
        let (_, bits) = graph6_decode_oracle(record.as_bytes());
        let popcount = bits.iter().filter(|&&b| b).count();
        let g = &from_graph6(record.as_bytes()).unwrap()[0];
        assert_eq!(g.m(), popcount, "record {record}");
    }
}

#[test]
fn encoder_matches_the_oracle_encoder_on_random_graphs() {
    let mut rng = seeded(0x6E1);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 30);
        let lib = to_graph6(&g).unwrap();
        let oracle = graph6_encode_oracle(&g);
        assert_eq!(lib.as_bytes(), oracle.as_slice());
    }
}

#[test]
fn round_trip_is_the_identity_on_random_graphs() {
    let mut rng = seeded(0x60D);
    for case in 0..100 {
        let g = random_graph(&mut rng, 40);
        let encoded = to_graph6(&g).unwrap();
        let decoded = from_graph6(encoded.as_bytes()).unwrap();
        assert_eq!(decoded.len(), 1);
        assert_eq!(decoded[0], g, "case {case}");
    }
}

#[test]
fn multi_record_files_round_trip() {
    let mut rng = seeded(0x11F);
    let graphs: Vec<_> = (0..20).map(|_| random_graph(&mut rng, 25)).collect();
    let file: String = graphs
        .iter()
        .map(|g| to_graph6(g).unwrap())
        .collect::<Vec<_>>()
        .join("\n");
    let decoded = from_graph6(file.as_bytes()).unwrap();
    assert_eq!(decoded, graphs);
}
