#![doc = r#"Finite causal-graph and metric-graph models with exact path solvers.

A `CausalGraph` is a topologically indexed point cloud with a cached table
of time separations and per-node weights; `dag_tau_omega` solves the
weighted longest-path problem by dynamic programming and
`brute_force_tau_omega` is the exponential oracle it is checked against.
A `MetricGraph` is the undirected counterpart solved by Dijkstra's
algorithm with weight `min(w(u), w(v)) * d(u, v)`.

Graphs are immutable after construction; queries borrow them and are safe
to run from many threads.
"#]

mod causal_graph;
mod error;
mod json;
mod metric_graph;
mod solvers;
mod sprinkle;

pub use causal_graph::{CausalGraph, LinkRule};
pub use error::GraphError;
pub use json::{causal_graph_from_json, causal_graph_to_json};
pub use metric_graph::{interval_net, MetricGraph};
pub use solvers::{brute_force_tau_omega, dag_tau_omega, graph_d_omega};
pub use sprinkle::{sprinkle, sprinkle_anchored, BoxRegion};
