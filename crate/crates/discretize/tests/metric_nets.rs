//! Weighted shortest paths on chain nets and small graphs: closed-form
//! values, disconnection, and the metric axioms on the graph.

use discretize::{graph_d_omega, interval_net, MetricGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use space_core::Point;

fn node_at(g: &MetricGraph, x: f64) -> usize {
    g.find_node(&Point::new("interval", vec![x]), 5e-5)
        .unwrap_or_else(|| panic!("no node near {x}"))
}

#[test]
fn golden_unit_weight_net_measures_plain_distance() {
    let g = interval_net(0.05, 0.95, 1e-3, |_| 1.0).unwrap();
    let (v, path) = graph_d_omega(&g, node_at(&g, 0.2), node_at(&g, 0.7));
    assert!((v - 0.5).abs() < 1e-9, "unit-weight distance was {v}, want 0.5");
    assert_eq!(path.len(), 501, "the chain path visits every node between");
}

/// Weight 1/min(x, 1-x): the graph distance reproduces the logarithmic
/// integral. The chain sum is a lower Riemann sum of the increasing
/// integrand, so the error is about half a step times the slope change.
#[test]
fn golden_reciprocal_weight_net_hits_ln2() {
    let g = interval_net(1e-4, 1.0 - 1e-4, 1e-4, |x| 1.0 / x.min(1.0 - x)).unwrap();
    let (v, _) = graph_d_omega(&g, node_at(&g, 0.25), node_at(&g, 0.5));
    let want = std::f64::consts::LN_2;
    assert!((v - want).abs() < 1e-3, "net distance was {v}, want ln 2 = {want}");
}

#[test]
fn disconnected_queries_report_infinity() {
    let nodes: Vec<Point> = (0..4).map(|i| Point::new("synthetic", vec![i as f64])).collect();
    let g = MetricGraph::new(nodes, vec![1.0; 4], &[(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
    let (v, path) = graph_d_omega(&g, 0, 3);
    assert!(v.is_infinite(), "cross-component distance was {v}");
    assert!(path.is_empty());
    assert!(!g.same_component(0, 3));
}

#[test]
fn symmetry_and_triangle_hold_on_random_graphs() {
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(5..12);
        let nodes: Vec<Point> = (0..n).map(|i| Point::new("synthetic", vec![i as f64])).collect();
        let omega: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..2.0)).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.gen_bool(0.6) {
                    edges.push((u, v, rng.gen_range(0.1..1.5)));
                }
            }
        }
        let g = match MetricGraph::new(nodes, omega, &edges) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let mut dist = vec![vec![0.0; n]; n];
        for u in 0..n {
            for v in 0..n {
                dist[u][v] = graph_d_omega(&g, u, v).0;
            }
        }
        for u in 0..n {
            assert_eq!(dist[u][u], 0.0);
            for v in 0..n {
                let gap = (dist[u][v] - dist[v][u]).abs();
                assert!(
                    gap.is_nan() || gap < 1e-12,
                    "seed {seed}: asymmetry {gap} on ({u}, {v})"
                );
                for w in 0..n {
                    assert!(
                        dist[u][w] <= dist[u][v] + dist[v][w] + 1e-12,
                        "seed {seed}: triangle broke on ({u}, {v}, {w})"
                    );
                }
            }
        }
    }
}
