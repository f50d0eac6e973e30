use space_core::{ExtReal, LorentzianPreLengthSpace, Point};

use crate::error::GraphError;

/// How a point cloud's causal relation is turned into DAG edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkRule {
    /// One edge per causally related ordered pair.
    AllCausalPairs,
    /// Only covering pairs: related with no related node strictly between.
    TransitiveReduction,
    /// Each node links to its `k` nearest (by distance) causal successors.
    NearestCausal(usize),
}

/// A finite causal model: topologically indexed nodes, DAG edges, a cached
/// table of time separations, and one positive weight per node.
///
/// Node indices are the topological order; every edge and every table
/// entry goes strictly forward in index. The table may hold entries for
/// non-edge pairs (a sprinkling caches every related pair), which is what
/// lets partition-style optima look past the edge set.
#[derive(Clone, Debug)]
pub struct CausalGraph {
    nodes: Vec<Point>,
    omega: Vec<f64>,
    succ: Vec<Vec<usize>>,
    /// Dense row-major table; NaN marks an absent entry.
    tau: Vec<f64>,
}

impl CausalGraph {
    /// Builds a graph from explicit tables. `tau_entries` must cover every
    /// edge; extra entries for non-edge pairs are kept. Indices must run
    /// strictly forward, which is what makes the edge set acyclic.
    pub fn from_tables(
        nodes: Vec<Point>,
        omega: Vec<f64>,
        tau_entries: &[(usize, usize, f64)],
        edges: &[(usize, usize)],
    ) -> Result<CausalGraph, GraphError> {
        let n = nodes.len();
        if omega.len() != n {
            return Err(GraphError::MismatchedLengths(format!(
                "{n} nodes but {} weights",
                omega.len()
            )));
        }
        check_omega(&omega)?;
        let mut tau = vec![f64::NAN; n * n];
        for &(u, v, value) in tau_entries {
            check_index(u, n)?;
            check_index(v, n)?;
            if u >= v {
                return Err(GraphError::EdgeOrder { u, v });
            }
            tau[u * n + v] = value;
        }
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in edges {
            check_index(u, n)?;
            check_index(v, n)?;
            if u >= v {
                return Err(GraphError::EdgeOrder { u, v });
            }
            if tau[u * n + v].is_nan() {
                return Err(GraphError::MissingTau { u, v });
            }
            succ[u].push(v);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Ok(CausalGraph {
            nodes,
            omega,
            succ,
            tau,
        })
    }

    /// Builds the causal model of a point cloud in a space: points are
    /// sorted by coordinates (which is a topological order on every
    /// catalog space), exact duplicates dropped, the time separation
    /// cached for every related ordered pair, and edges laid per
    /// `link_rule`. All weights start at 1.
    pub fn from_space(
        space: &LorentzianPreLengthSpace,
        mut points: Vec<Point>,
        link_rule: LinkRule,
    ) -> Result<CausalGraph, GraphError> {
        points.sort_by(|p, q| {
            p.coords
                .iter()
                .zip(&q.coords)
                .map(|(a, b)| a.total_cmp(b))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        points.dedup_by(|p, q| p.coords == q.coords);
        let n = points.len();
        let mut related = vec![false; n * n];
        let mut tau = vec![f64::NAN; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                if space.causally_related(&points[u], &points[v]) {
                    related[u * n + v] = true;
                    tau[u * n + v] = match space.tau(&points[u], &points[v]) {
                        ExtReal::Finite(t) => t,
                        ExtReal::Infinite => f64::INFINITY,
                    };
                }
            }
        }
        let mut succ = vec![Vec::new(); n];
        for u in 0..n {
            if let LinkRule::NearestCausal(k) = link_rule {
                let mut cands: Vec<(f64, usize)> = ((u + 1)..n)
                    .filter(|&v| related[u * n + v])
                    .map(|v| (space.dist(&points[u], &points[v]), v))
                    .collect();
                cands.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                succ[u] = cands.into_iter().take(k).map(|(_, v)| v).collect();
                succ[u].sort_unstable();
                continue;
            }
            for v in (u + 1)..n {
                if !related[u * n + v] {
                    continue;
                }
                let covered = match link_rule {
                    LinkRule::AllCausalPairs => false,
                    LinkRule::TransitiveReduction => ((u + 1)..v)
                        .any(|w| related[u * n + w] && related[w * n + v]),
                    LinkRule::NearestCausal(_) => unreachable!(),
                };
                if !covered {
                    succ[u].push(v);
                }
            }
        }
        Ok(CausalGraph {
            omega: vec![1.0; n],
            nodes: points,
            succ,
            tau,
        })
    }

    /// Replaces the node weights by `f` evaluated at each node.
    pub fn with_omega(mut self, f: impl Fn(&Point) -> f64) -> Result<CausalGraph, GraphError> {
        self.omega = self.nodes.iter().map(&f).collect();
        check_omega(&self.omega)?;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Point {
        &self.nodes[i]
    }

    pub fn omega_values(&self) -> &[f64] {
        &self.omega
    }

    pub fn omega(&self, i: usize) -> f64 {
        self.omega[i]
    }

    /// Successor indices of `u`, ascending.
    pub fn successors(&self, u: usize) -> &[usize] {
        &self.succ[u]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Cached time separation of the ordered pair, if present.
    pub fn tau_entry(&self, u: usize, v: usize) -> Option<f64> {
        let t = self.tau[u * self.len() + v];
        (!t.is_nan()).then_some(t)
    }

    /// Path weight of one ordered pair: `max(w(u), w(v)) * tau(u, v)`.
    /// The pair must have a table entry.
    pub fn edge_weight(&self, u: usize, v: usize) -> f64 {
        let t = self
            .tau_entry(u, v)
            .unwrap_or_else(|| panic!("pair ({u}, {v}) has no time-separation entry"));
        self.omega[u].max(self.omega[v]) * t
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

fn check_index(idx: usize, n: usize) -> Result<(), GraphError> {
    if idx >= n {
        return Err(GraphError::BadIndex { idx, n });
    }
    Ok(())
}

fn check_omega(omega: &[f64]) -> Result<(), GraphError> {
    for (idx, &value) in omega.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(GraphError::NonPositiveOmega { idx, value });
        }
    }
    Ok(())
}
