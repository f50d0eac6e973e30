use space_core::{LorentzianPreLengthSpace, Point};

use crate::error::GraphError;

/// An undirected weighted graph with one positive weight per node, the
/// metric counterpart of `CausalGraph`. Edge lengths come from the ambient
/// distance (or are given explicitly); connected components are computed
/// at build time.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    nodes: Vec<Point>,
    omega: Vec<f64>,
    adj: Vec<Vec<(usize, f64)>>,
    component: Vec<usize>,
}

impl MetricGraph {
    /// Builds from explicit symmetric edges `(u, v, length)`.
    pub fn new(
        nodes: Vec<Point>,
        omega: Vec<f64>,
        edges: &[(usize, usize, f64)],
    ) -> Result<MetricGraph, GraphError> {
        let n = nodes.len();
        if omega.len() != n {
            return Err(GraphError::MismatchedLengths(format!(
                "{n} nodes but {} weights",
                omega.len()
            )));
        }
        for (idx, &value) in omega.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(GraphError::NonPositiveOmega { idx, value });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v, length) in edges {
            if u >= n || v >= n {
                return Err(GraphError::BadIndex { idx: u.max(v), n });
            }
            if !(length >= 0.0) || !length.is_finite() {
                return Err(GraphError::MismatchedLengths(format!(
                    "edge ({u}, {v}) has bad length {length}"
                )));
            }
            adj[u].push((v, length));
            adj[v].push((u, length));
        }
        let component = label_components(&adj);
        Ok(MetricGraph {
            nodes,
            omega,
            adj,
            component,
        })
    }

    /// Builds with edge lengths taken from the space's distance. All
    /// weights start at 1.
    pub fn from_space(
        space: &LorentzianPreLengthSpace,
        points: Vec<Point>,
        edge_pairs: &[(usize, usize)],
    ) -> Result<MetricGraph, GraphError> {
        let n = points.len();
        let edges: Vec<(usize, usize, f64)> = edge_pairs
            .iter()
            .map(|&(u, v)| {
                if u >= n || v >= n {
                    return Err(GraphError::BadIndex { idx: u.max(v), n });
                }
                Ok((u, v, space.dist(&points[u], &points[v])))
            })
            .collect::<Result<_, _>>()?;
        let omega = vec![1.0; n];
        MetricGraph::new(points, omega, &edges)
    }

    /// Replaces the node weights by `f` evaluated at each node.
    pub fn with_omega(mut self, f: impl Fn(&Point) -> f64) -> Result<MetricGraph, GraphError> {
        self.omega = self.nodes.iter().map(&f).collect();
        for (idx, &value) in self.omega.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(GraphError::NonPositiveOmega { idx, value });
            }
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &Point {
        &self.nodes[i]
    }

    pub fn omega(&self, i: usize) -> f64 {
        self.omega[i]
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[u]
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.component[u] == self.component[v]
    }

    pub fn component_count(&self) -> usize {
        self.component.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Index of the node matching `p` coordinatewise within `tol`.
    pub fn find_node(&self, p: &Point, tol: f64) -> Option<usize> {
        self.nodes.iter().position(|q| {
            q.coords.len() == p.coords.len()
                && q.coords
                    .iter()
                    .zip(&p.coords)
                    .all(|(a, b)| (a - b).abs() <= tol)
        })
    }
}

fn label_components(adj: &[Vec<(usize, f64)>]) -> Vec<usize> {
    let n = adj.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    let mut stack = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        stack.push(start);
        label[start] = next;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adj[u] {
                if label[v] == usize::MAX {
                    label[v] = next;
                    stack.push(v);
                }
            }
        }
        next += 1;
    }
    label
}

/// A chain net over `[a, b]` with the given step: evenly spaced 1-d nodes,
/// consecutive-neighbor edges of exact gap length, weights from `omega`.
pub fn interval_net(
    a: f64,
    b: f64,
    step: f64,
    omega: impl Fn(f64) -> f64,
) -> Result<MetricGraph, GraphError> {
    if !(a < b) || !(step > 0.0) || !step.is_finite() {
        return Err(GraphError::RegionInvalid(format!(
            "bad interval net [{a}, {b}] step {step}"
        )));
    }
    let n = ((b - a) / step).round().max(1.0) as usize;
    let xs: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    let nodes: Vec<Point> = xs.iter().map(|&x| Point::new("interval", vec![x])).collect();
    let weights: Vec<f64> = xs.iter().map(|&x| omega(x)).collect();
    let edges: Vec<(usize, usize, f64)> =
        (0..n).map(|i| (i, i + 1, xs[i + 1] - xs[i])).collect();
    MetricGraph::new(nodes, weights, &edges)
}
