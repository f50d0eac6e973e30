use curves::{Curve, CurveKind};
use discretize::{graph_d_omega, MetricGraph};
use serde::{Deserialize, Serialize};
use space_core::num::adaptive_simpson;
use space_core::{BoundKind, ConformalFactor, ExtReal, Point};

use crate::bundle::LengthSpaceBundle;
use crate::error::MetricConformalError;
use crate::length::metric_conformal_length;

/// Dyadic depth cap for per-curve lengths inside the distance search.
const FAMILY_DEPTH: usize = 22;
/// Vertices in a reported witness polyline.
const WITNESS_POINTS: usize = 65;

/// How to compute the conformal distance between two points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "strategy")]
pub enum DOmegaStrategy {
    /// Weighted-length integral of the monotone segment; 1-d bundles only.
    ClosedForm,
    /// Minimum over the segment and kinked detours; labeled upper bound.
    CurveFamily { offsets: usize },
    /// Shortest path on a component-spanning net; 1-d bundles only.
    Graph { step: f64 },
}

/// A conformal distance value with the curve or node path realizing it.
#[derive(Clone, Debug)]
pub struct DOmegaResult {
    pub value: ExtReal,
    pub bound: BoundKind,
    /// Polyline through the realizing curve; empty when the value is
    /// infinite.
    pub witness: Vec<Point>,
}

fn monotone_segment(bundle: &LengthSpaceBundle, p: f64, q: f64) -> Curve {
    let id = bundle.id;
    let (a, b) = (p.min(q), p.max(q));
    Curve::from_fn(id, a, b, CurveKind::Unrestricted, move |t| Point::d1(id, t))
        .expect("segment over distinct endpoints")
}

fn sample_witness(curve: &Curve) -> Vec<Point> {
    (0..WITNESS_POINTS)
        .map(|i| {
            let t = curve.a + (curve.b - curve.a) * i as f64 / (WITNESS_POINTS - 1) as f64;
            curve.eval(t)
        })
        .collect()
}

/// The conformal distance `d_Omega(p, q)` under the chosen strategy.
///
/// `closed_form` integrates the factor over the straight parameter range,
/// exact for 1-d bundles up to quadrature `tol`; same-component pairs
/// only, disconnected pairs are infinite. `curve_family` minimizes the
/// dyadic conformal length over the segment and kinked detours and is an
/// upper bound within the per-curve tolerance. `graph` snaps the
/// endpoints to a fixed component-spanning net and runs the discrete
/// shortest path, so repeated queries share one geometry and the graph
/// triangle inequality is exact.
pub fn d_omega(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    strategy: DOmegaStrategy,
    tol: f64,
) -> Result<DOmegaResult, MetricConformalError> {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive, got {tol}");
    bundle.validate_point(p)?;
    bundle.validate_point(q)?;
    match strategy {
        DOmegaStrategy::ClosedForm => closed_form(bundle, omega, p, q, tol),
        DOmegaStrategy::CurveFamily { offsets } => {
            curve_family(bundle, omega, p, q, offsets, tol)
        }
        DOmegaStrategy::Graph { step } => graph(bundle, omega, p, q, step),
    }
}

fn same_component(bundle: &LengthSpaceBundle, x: f64, y: f64) -> bool {
    match (bundle.component_of(x), bundle.component_of(y)) {
        (Some(a), Some(b)) => std::ptr::eq(a, b),
        _ => false,
    }
}

fn closed_form(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    tol: f64,
) -> Result<DOmegaResult, MetricConformalError> {
    if bundle.dim != 1 {
        return Err(MetricConformalError::StrategyInapplicable {
            strategy: "closed_form",
            bundle: bundle.id,
        });
    }
    let (x, y) = (p.coords[0], q.coords[0]);
    if x == y {
        return Ok(DOmegaResult {
            value: ExtReal::ZERO,
            bound: BoundKind::Exact,
            witness: vec![p.clone()],
        });
    }
    if !same_component(bundle, x, y) {
        return Ok(DOmegaResult {
            value: ExtReal::Infinite,
            bound: BoundKind::Exact,
            witness: Vec::new(),
        });
    }
    let id = bundle.id;
    let f = |t: f64| omega.eval(&Point::d1(id, t));
    let value = adaptive_simpson(&f, x.min(y), x.max(y), tol);
    let segment = monotone_segment(bundle, x, y);
    Ok(DOmegaResult {
        value: ExtReal::finite(value),
        bound: BoundKind::Exact,
        witness: sample_witness(&segment),
    })
}

/// Candidate curves joining `p` to `q`: the straight segment, and on 2-d
/// bundles kinked two-leg polylines through offset midpoints.
fn connecting_family(
    bundle: &LengthSpaceBundle,
    p: &Point,
    q: &Point,
    offsets: usize,
) -> Vec<Curve> {
    let id = bundle.id;
    if bundle.dim == 1 {
        let (x, y) = (p.coords[0], q.coords[0]);
        if x == y || !same_component(bundle, x, y) {
            return Vec::new();
        }
        return vec![monotone_segment(bundle, x, y)];
    }
    let (px, py) = (p.coords[0], p.coords[1]);
    let (qx, qy) = (q.coords[0], q.coords[1]);
    let chord = ((qx - px).powi(2) + (qy - py).powi(2)).sqrt();
    if chord == 0.0 {
        return Vec::new();
    }
    let mut curves = Vec::new();
    let line = Curve::from_fn(id, 0.0, 1.0, CurveKind::Unrestricted, move |s| {
        Point::d2(id, px + s * (qx - px), py + s * (qy - py))
    })
    .expect("unit-parameter chord");
    curves.push(line);
    // Unit normal to the chord scales the kink offsets.
    let (nx, ny) = (-(qy - py) / chord, (qx - px) / chord);
    for k in 1..=offsets {
        for sign in [-1.0, 1.0] {
            let off = sign * 0.3 * chord * k as f64 / offsets as f64;
            let (mx, my) = (
                0.5 * (px + qx) + off * nx,
                0.5 * (py + qy) + off * ny,
            );
            let kinked = Curve::from_fn(id, 0.0, 1.0, CurveKind::Unrestricted, move |s| {
                if s <= 0.5 {
                    let u = 2.0 * s;
                    Point::d2(id, px + u * (mx - px), py + u * (my - py))
                } else {
                    let u = 2.0 * (s - 0.5);
                    Point::d2(id, mx + u * (qx - mx), my + u * (qy - my))
                }
            })
            .expect("kinked two-leg polyline");
            curves.push(kinked);
        }
    }
    curves
}

fn curve_family(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    offsets: usize,
    tol: f64,
) -> Result<DOmegaResult, MetricConformalError> {
    if p.coords == q.coords {
        return Ok(DOmegaResult {
            value: ExtReal::ZERO,
            bound: BoundKind::UpperBound,
            witness: vec![p.clone()],
        });
    }
    let family = connecting_family(bundle, p, q, offsets);
    if family.is_empty() {
        return Ok(DOmegaResult {
            value: ExtReal::Infinite,
            bound: BoundKind::UpperBound,
            witness: Vec::new(),
        });
    }
    let mut best: Option<(f64, &Curve)> = None;
    for curve in &family {
        let len = metric_conformal_length(bundle, omega, curve, tol, FAMILY_DEPTH)?;
        if best.as_ref().is_none_or(|(v, _)| len.value < *v) {
            best = Some((len.value, curve));
        }
    }
    let (value, curve) = best.expect("nonempty family scored");
    Ok(DOmegaResult {
        value: ExtReal::finite(value),
        bound: BoundKind::UpperBound,
        witness: sample_witness(curve),
    })
}

/// Component-spanning chain net with nodes anchored on multiples of the
/// step, so every query against the same bundle, factor, and step shares
/// one graph.
fn component_net(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    step: f64,
) -> Result<(MetricGraph, Vec<(f64, f64, usize)>), MetricConformalError> {
    let id = bundle.id;
    let mut nodes: Vec<Point> = Vec::new();
    let mut weights: Vec<f64> = Vec::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    // Per component: net start, actual step, node index offset.
    let mut layout = Vec::new();
    for c in bundle.components() {
        let (lo, hi) = if c.closed {
            (c.lo, c.hi)
        } else {
            (c.lo + step, c.hi - step)
        };
        if !(lo < hi) || step <= 0.0 || !step.is_finite() {
            return Err(MetricConformalError::BadStep(step));
        }
        let n = ((hi - lo) / step).round().max(1.0) as usize;
        let actual = (hi - lo) / n as f64;
        let offset = nodes.len();
        layout.push((lo, actual, offset));
        for i in 0..=n {
            let x = lo + actual * i as f64;
            let pt = Point::d1(id, x);
            weights.push(omega.eval(&pt));
            nodes.push(pt);
            if i > 0 {
                edges.push((offset + i - 1, offset + i, actual));
            }
        }
    }
    if nodes.is_empty() {
        return Err(MetricConformalError::StrategyInapplicable {
            strategy: "graph",
            bundle: bundle.id,
        });
    }
    let graph = MetricGraph::new(nodes, weights, &edges)?;
    Ok((graph, layout))
}

fn snap(
    bundle: &LengthSpaceBundle,
    layout: &[(f64, f64, usize)],
    graph: &MetricGraph,
    x: f64,
) -> Result<usize, MetricConformalError> {
    let comp_idx = bundle
        .components()
        .iter()
        .position(|c| c.hull_contains(x))
        .ok_or(MetricConformalError::OutsideDomain { coords: vec![x] })?;
    let (lo, actual, offset) = layout[comp_idx];
    let next_offset = layout
        .get(comp_idx + 1)
        .map_or(graph.len(), |&(_, _, o)| o);
    let count = next_offset - offset;
    let i = (((x - lo) / actual).round().max(0.0) as usize).min(count - 1);
    Ok(offset + i)
}

fn graph(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    step: f64,
) -> Result<DOmegaResult, MetricConformalError> {
    if bundle.dim != 1 {
        return Err(MetricConformalError::StrategyInapplicable {
            strategy: "graph",
            bundle: bundle.id,
        });
    }
    let (graph, layout) = component_net(bundle, omega, step)?;
    let ip = snap(bundle, &layout, &graph, p.coords[0])?;
    let iq = snap(bundle, &layout, &graph, q.coords[0])?;
    let (value, path) = graph_d_omega(&graph, ip, iq);
    if value.is_infinite() {
        return Ok(DOmegaResult {
            value: ExtReal::Infinite,
            bound: BoundKind::UpperBound,
            witness: Vec::new(),
        });
    }
    Ok(DOmegaResult {
        value: ExtReal::finite(value),
        bound: BoundKind::UpperBound,
        witness: path.into_iter().map(|i| graph.node(i).clone()).collect(),
    })
}
