use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::causal_graph::CausalGraph;
use crate::error::GraphError;
use crate::metric_graph::MetricGraph;

/// Including both endpoints, how many nodes the brute-force oracle will
/// enumerate over before refusing.
const BRUTE_FORCE_CAP: usize = 14;

/// Heaviest-path value from `p` to `q` with edge weight
/// `max(w(u), w(v)) * tau(u, v)`, by dynamic programming in index order.
/// Returns the value and one optimal node path; ties always keep the
/// smallest predecessor index, so the path is deterministic. An
/// unreachable target scores 0 with an empty path.
pub fn dag_tau_omega(graph: &CausalGraph, p: usize, q: usize) -> (f64, Vec<usize>) {
    let n = graph.len();
    assert!(p < n && q < n, "query ({p}, {q}) out of range for {n} nodes");
    if p == q {
        return (0.0, vec![p]);
    }
    let mut best = vec![f64::NEG_INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    best[p] = 0.0;
    for u in p..n {
        if best[u] == f64::NEG_INFINITY {
            continue;
        }
        for &v in graph.successors(u) {
            let cand = best[u] + graph.edge_weight(u, v);
            if cand > best[v] {
                best[v] = cand;
                pred[v] = u;
            }
        }
    }
    if best[q] == f64::NEG_INFINITY {
        return (0.0, Vec::new());
    }
    let mut path = vec![q];
    let mut at = q;
    while at != p {
        at = pred[at];
        path.push(at);
    }
    path.reverse();
    (best[q], path)
}

/// Exhaustive oracle for `dag_tau_omega`: the maximum, over every directed
/// edge path from `p` to `q` and every vertex subset of that path keeping
/// the endpoints, of the pairwise-weighted sum along the subset. Subset
/// pairs are scored through the time-separation table, so entries beyond
/// the edge set (a sprinkling caches all related pairs) join the search;
/// a subset hitting an absent entry is skipped.
pub fn brute_force_tau_omega(
    graph: &CausalGraph,
    p: usize,
    q: usize,
) -> Result<f64, GraphError> {
    let n = graph.len();
    assert!(p < n && q < n, "query ({p}, {q}) out of range for {n} nodes");
    if p == q {
        return Ok(0.0);
    }
    let mut fwd = vec![false; n];
    fwd[p] = true;
    for u in p..n {
        if fwd[u] {
            for &v in graph.successors(u) {
                fwd[v] = true;
            }
        }
    }
    if !fwd[q] {
        return Ok(0.0);
    }
    let mut back = vec![false; n];
    back[q] = true;
    for u in (0..=q).rev() {
        if !back[u] {
            back[u] = graph.successors(u).iter().any(|&v| back[v]);
        }
    }
    let live: Vec<usize> = (0..n).filter(|&v| fwd[v] && back[v]).collect();
    if live.len() > BRUTE_FORCE_CAP {
        return Err(GraphError::SizeCapExceeded {
            reachable: live.len(),
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut best = 0.0f64;
    let mut stack = vec![p];
    descend(graph, q, &back, &mut stack, &mut best);
    Ok(best)
}

fn descend(graph: &CausalGraph, q: usize, back: &[bool], stack: &mut Vec<usize>, best: &mut f64) {
    let u = *stack.last().unwrap();
    if u == q {
        score_subsets(graph, stack, best);
        return;
    }
    for &v in graph.successors(u) {
        if back[v] {
            stack.push(v);
            descend(graph, q, back, stack, best);
            stack.pop();
        }
    }
}

fn score_subsets(graph: &CausalGraph, path: &[usize], best: &mut f64) {
    let interior = path.len() - 2;
    for mask in 0..(1u32 << interior) {
        let mut prev = path[0];
        let mut total = 0.0;
        let mut valid = true;
        for (bit, &node) in path[1..].iter().enumerate() {
            let keep = bit == interior || mask & (1 << bit) != 0;
            if !keep {
                continue;
            }
            match graph.tau_entry(prev, node) {
                Some(t) => total += graph.omega(prev).max(graph.omega(node)) * t,
                None => {
                    valid = false;
                    break;
                }
            }
            prev = node;
        }
        if valid && total > *best {
            *best = total;
        }
    }
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed so the binary max-heap pops the smallest distance.
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Cheapest-path value from `p` to `q` with edge weight
/// `min(w(u), w(v)) * d(u, v)`, by Dijkstra's algorithm. Disconnected
/// queries return infinity with an empty path.
pub fn graph_d_omega(graph: &MetricGraph, p: usize, q: usize) -> (f64, Vec<usize>) {
    let n = graph.len();
    assert!(p < n && q < n, "query ({p}, {q}) out of range for {n} nodes");
    let mut dist = vec![f64::INFINITY; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[p] = 0.0;
    heap.push(HeapItem { dist: 0.0, node: p });
    while let Some(HeapItem { dist: d, node: u }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == q {
            break;
        }
        for &(v, length) in graph.neighbors(u) {
            let w = graph.omega(u).min(graph.omega(v)) * length;
            assert!(w >= 0.0, "negative edge weight {w} on ({u}, {v})");
            let cand = d + w;
            if cand < dist[v] {
                dist[v] = cand;
                pred[v] = u;
                heap.push(HeapItem { dist: cand, node: v });
            }
        }
    }
    if dist[q].is_infinite() {
        return (f64::INFINITY, Vec::new());
    }
    let mut path = vec![q];
    let mut at = q;
    while at != p {
        at = pred[at];
        path.push(at);
    }
    path.reverse();
    (dist[q], path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use space_core::Point;

    fn d1(x: f64) -> Point {
        Point::new("synthetic", vec![x])
    }

    #[test]
    fn two_node_weight_and_disconnection() {
        let g = CausalGraph::from_tables(
            vec![d1(0.0), d1(1.0)],
            vec![1.0, 3.0],
            &[(0, 1, 1.0)],
            &[(0, 1)],
        )
        .unwrap();
        let (v, path) = dag_tau_omega(&g, 0, 1);
        assert_eq!(v, 3.0, "two-node value must be max-weight times tau");
        assert_eq!(path, vec![0, 1]);
        assert_eq!(brute_force_tau_omega(&g, 0, 1).unwrap(), 3.0);
        let (v, path) = dag_tau_omega(&g, 1, 0);
        assert_eq!((v, path.len()), (0.0, 0), "wrong-way query must score 0");
        assert_eq!(brute_force_tau_omega(&g, 1, 0).unwrap(), 0.0);
    }

    #[test]
    fn golden_three_node_chain_beats_direct_edge() {
        let g = CausalGraph::from_tables(
            vec![d1(0.0), d1(1.0), d1(2.0)],
            vec![1.0, 2.0, 1.0],
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)],
            &[(0, 1), (1, 2), (0, 2)],
        )
        .unwrap();
        let (v, path) = dag_tau_omega(&g, 0, 2);
        assert_eq!(v, 4.0, "chain through the heavy node must win, got {v}");
        assert_eq!(path, vec![0, 1, 2]);
        assert_eq!(brute_force_tau_omega(&g, 0, 2).unwrap(), 4.0);
    }

    #[test]
    fn brute_force_cap_refuses_large_interiors() {
        let n = 17;
        let nodes: Vec<Point> = (0..n).map(|i| d1(i as f64)).collect();
        let mut tau = Vec::new();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                tau.push((u, v, 1.0));
                edges.push((u, v));
            }
        }
        let g = CausalGraph::from_tables(nodes, vec![1.0; n], &tau, &edges).unwrap();
        assert!(matches!(
            brute_force_tau_omega(&g, 0, n - 1),
            Err(GraphError::SizeCapExceeded { .. })
        ));
    }
}
