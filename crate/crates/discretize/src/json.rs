use serde_json::{json, Value};
use space_core::Point;

use crate::causal_graph::CausalGraph;
use crate::error::GraphError;

/// Serializes a causal graph as
/// `{"space", "nodes", "omega", "edges", "tau"}` with `tau` holding
/// `[u, v, value]` triples (every cached pair, edge or not; infinite
/// values as the string "inf").
pub fn causal_graph_to_json(graph: &CausalGraph) -> Value {
    let n = graph.len();
    let space = graph.nodes().first().map_or("synthetic", |p| p.space_id);
    let nodes: Vec<Value> = graph.nodes().iter().map(|p| json!(p.coords)).collect();
    let edges: Vec<Value> = (0..n)
        .flat_map(|u| graph.successors(u).iter().map(move |&v| json!([u, v])))
        .collect();
    let mut tau = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if let Some(t) = graph.tau_entry(u, v) {
                let encoded = if t.is_infinite() { json!("inf") } else { json!(t) };
                tau.push(json!([u, v, encoded]));
            }
        }
    }
    json!({
        "space": space,
        "nodes": nodes,
        "omega": graph.omega_values(),
        "edges": edges,
        "tau": tau,
    })
}

/// Inverse of `causal_graph_to_json`. The space name is matched against
/// the catalog so round-tripped nodes keep their identity; unknown names
/// fall back to the label "synthetic".
pub fn causal_graph_from_json(v: &Value) -> Result<CausalGraph, GraphError> {
    let obj = v
        .as_object()
        .ok_or_else(|| GraphError::BadJson("graph must be an object".into()))?;
    let space_name = obj
        .get("space")
        .and_then(Value::as_str)
        .unwrap_or("synthetic");
    let space_id: &'static str = space_core::catalog_names()
        .iter()
        .copied()
        .find(|&n| n == space_name)
        .unwrap_or("synthetic");
    let nodes: Vec<Point> = obj
        .get("nodes")
        .and_then(Value::as_array)
        .ok_or_else(|| GraphError::BadJson("missing `nodes` array".into()))?
        .iter()
        .map(|row| {
            let coords: Vec<f64> = row
                .as_array()
                .ok_or_else(|| GraphError::BadJson("node must be a number array".into()))?
                .iter()
                .map(|c| c.as_f64().ok_or_else(|| GraphError::BadJson("bad coordinate".into())))
                .collect::<Result<_, _>>()?;
            Ok(Point::new(space_id, coords))
        })
        .collect::<Result<_, GraphError>>()?;
    let omega: Vec<f64> = obj
        .get("omega")
        .and_then(Value::as_array)
        .ok_or_else(|| GraphError::BadJson("missing `omega` array".into()))?
        .iter()
        .map(|w| w.as_f64().ok_or_else(|| GraphError::BadJson("bad weight".into())))
        .collect::<Result<_, _>>()?;
    let edges: Vec<(usize, usize)> = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| GraphError::BadJson("missing `edges` array".into()))?
        .iter()
        .map(|pair| {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| GraphError::BadJson("edge must be [u, v]".into()))?;
            let u = pair[0].as_u64().ok_or_else(|| GraphError::BadJson("bad edge index".into()))?;
            let v = pair[1].as_u64().ok_or_else(|| GraphError::BadJson("bad edge index".into()))?;
            Ok((u as usize, v as usize))
        })
        .collect::<Result<_, GraphError>>()?;
    let tau: Vec<(usize, usize, f64)> = obj
        .get("tau")
        .and_then(Value::as_array)
        .ok_or_else(|| GraphError::BadJson("missing `tau` array".into()))?
        .iter()
        .map(|row| {
            let row = row
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| GraphError::BadJson("tau entry must be [u, v, value]".into()))?;
            let u = row[0].as_u64().ok_or_else(|| GraphError::BadJson("bad tau index".into()))?;
            let v = row[1].as_u64().ok_or_else(|| GraphError::BadJson("bad tau index".into()))?;
            let value = match &row[2] {
                Value::String(s) if s == "inf" => f64::INFINITY,
                other => other
                    .as_f64()
                    .ok_or_else(|| GraphError::BadJson("bad tau value".into()))?,
            };
            Ok((u as usize, v as usize, value))
        })
        .collect::<Result<_, GraphError>>()?;
    CausalGraph::from_tables(nodes, omega, &tau, &edges)
}
