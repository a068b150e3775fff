//! Cross-checks of the sparse walk engine against the independent
//! dense matrix-power oracle, plus oracle-derived encoding values.

mod common;

use common::{dense_power, random_graph, seeded};
use sekwl::graph::{generate, GeneratorSpec, NodeId};
use sekwl::walk::{encode_node, landing_prob_row, self_return_vector, EncodeParams};

#[test]
fn landing_rows_match_the_dense_oracle_on_random_graphs() {
    let mut rng = seeded(0xACC4);
    for case in 0..50 {
        let g = random_graph(&mut rng, 12);
        for t in 0..=6 {
            let dense = dense_power(&g, t);
            for u in 0..g.n() as NodeId {
                let row = landing_prob_row(&g, u, t);
                for v in 0..g.n() {
                    let gap = (row.probs[v] - dense[u as usize][v]).abs();
                    assert!(
                        gap <= 1e-10,
                        "case {case}: row ({u}, t={t}) differs from oracle at {v} by {gap}"
                    );
                }
            }
        }
    }
}

#[test]
fn six_cycle_pinned_values_come_from_the_oracle() {
    let g = generate(&GeneratorSpec::Cycle { n: 6 }).unwrap();
    let dense3 = dense_power(&g, 3);
    assert!((dense3[0][0] - 7.0 / 27.0).abs() < 1e-15, "oracle confirms 7/27");
    let row = landing_prob_row(&g, 0, 3);
    assert!((row.probs[0] - dense3[0][0]).abs() <= 1e-12);

    let srv = self_return_vector(&g, 0, 3);
    for (t, &p) in srv.iter().enumerate() {
        let dense = dense_power(&g, t + 1);
        assert!((p - dense[0][0]).abs() <= 1e-12);
    }
}

#[test]
fn encoding_blocks_match_oracle_aggregates() {
    let mut rng = seeded(0xE11C);
    for _ in 0..10 {
        let g = random_graph(&mut rng, 10);
        let params = EncodeParams::new(2, 4);
        for u in 0..g.n() as NodeId {
            let f = encode_node(&g, u, &params);
            let hops = sekwl::ego::khop_neighbors(&g, u, 2);
            for t in 1..=4usize {
                let dense = dense_power(&g, t);
                assert!((f.f1[t - 1] - dense[u as usize][u as usize]).abs() <= 1e-12);
                for k in 0..2usize {
                    let hop = &hops[k];
                    let expect_f2 = if hop.is_empty() {
                        0.0
                    } else {
                        hop.iter().map(|&i| dense[u as usize][i as usize]).sum::<f64>()
                            / hop.len() as f64
                    };
                    assert!(
                        (f.f2[k][t - 1] - expect_f2).abs() <= 1e-12,
                        "f2 mismatch at hop {k} step {t}"
                    );
                    let mut pair_sum = 0.0;
                    let mut pairs = 0usize;
                    for &i in hop {
                        for &j in hop {
                            if i != j {
                                pair_sum += dense[i as usize][j as usize];
                                pairs += 1;
                            }
                        }
                    }
                    let expect_f3 = if pairs == 0 { 0.0 } else { pair_sum / pairs as f64 };
                    assert!(
                        (f.f3[k][t - 1] - expect_f3).abs() <= 1e-12,
                        "f3 mismatch at hop {k} step {t}"
                    );
                }
            }
        }
    }
}

#[test]
fn star_center_f2_value_from_the_oracle() {
    let g = generate(&GeneratorSpec::Star { n: 5 }).unwrap();
    let dense = dense_power(&g, 1);
    let leaves = [1usize, 2, 3, 4];
    let mean: f64 = leaves.iter().map(|&v| dense[0][v]).sum::<f64>() / 4.0;
    assert!((mean - 0.2).abs() < 1e-15, "center spreads 1/5 to each leaf");
    let f = encode_node(&g, 0, &EncodeParams::new(1, 1));
    assert!((f.f2[0][0] - mean).abs() <= 1e-12);
}
