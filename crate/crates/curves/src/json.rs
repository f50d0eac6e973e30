use serde_json::Value;
use space_core::LorentzianPreLengthSpace;

use crate::curve::{Curve, CurveKind};
use crate::error::CurveError;

/// Parses a curve description against a space.
///
/// Waypoint form: `{"type": "waypoints", "kind": "causal", "points": [[...], ...]}`
/// with points as coordinate arrays of the space's dimension, parametrized
/// and strictly increasing in coordinate 0. Each waypoint is validated
/// against the space's domain.
///
/// Named forms: `{"type": "named", "name": ..., ...}` with
/// `vertical {x, t0, t1}`, `sloped {x0, slope, t0, t1}`,
/// `null {x0, dir, t0, t1}` on the 2-d Minkowski-like spaces, and
/// `imprison_spiral {s0, s1}` on `imprison_W`.
pub fn curve_from_json(
    space: &LorentzianPreLengthSpace,
    v: &Value,
) -> Result<Curve, CurveError> {
    let obj = v
        .as_object()
        .ok_or_else(|| CurveError::BadJson("curve must be an object".into()))?;
    let ty = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| CurveError::BadJson("curve needs a string `type`".into()))?;
    match ty {
        "waypoints" => waypoints_curve(space, obj),
        "named" => named_curve(space, obj),
        other => Err(CurveError::BadJson(format!("unknown curve type `{other}`"))),
    }
}

fn parse_kind(obj: &serde_json::Map<String, Value>) -> Result<CurveKind, CurveError> {
    match obj.get("kind").and_then(Value::as_str) {
        None | Some("causal") => Ok(CurveKind::Causal),
        Some("timelike") => Ok(CurveKind::Timelike),
        Some("unrestricted") => Ok(CurveKind::Unrestricted),
        Some(other) => Err(CurveError::BadJson(format!("unknown curve kind `{other}`"))),
    }
}

fn waypoints_curve(
    space: &LorentzianPreLengthSpace,
    obj: &serde_json::Map<String, Value>,
) -> Result<Curve, CurveError> {
    let kind = parse_kind(obj)?;
    let pts = obj
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| CurveError::BadJson("waypoints need a `points` array".into()))?;
    let mut samples = Vec::with_capacity(pts.len());
    for p in pts {
        let coords: Vec<f64> = p
            .as_array()
            .ok_or_else(|| CurveError::BadJson("each waypoint must be a number array".into()))?
            .iter()
            .map(|c| {
                c.as_f64()
                    .ok_or_else(|| CurveError::BadJson("waypoint coordinates must be numbers".into()))
            })
            .collect::<Result<_, _>>()?;
        let point = space_core::Point::new(space.id, coords.clone());
        space.validate_point(&point)?;
        samples.push((coords[0], coords));
    }
    Curve::polyline(space.id, kind, samples)
}

fn get_f64(obj: &serde_json::Map<String, Value>, key: &str) -> Result<f64, CurveError> {
    obj.get(key)
        .and_then(Value::as_f64)
        .ok_or_else(|| CurveError::BadJson(format!("missing numeric field `{key}`")))
}

fn named_curve(
    space: &LorentzianPreLengthSpace,
    obj: &serde_json::Map<String, Value>,
) -> Result<Curve, CurveError> {
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| CurveError::BadJson("named curve needs a string `name`".into()))?;
    let planar = space.dimension == 2;
    match name {
        "vertical" if planar => {
            Curve::vertical(space.id, get_f64(obj, "x")?, get_f64(obj, "t0")?, get_f64(obj, "t1")?)
        }
        "sloped" if planar => Curve::sloped(
            space.id,
            get_f64(obj, "x0")?,
            get_f64(obj, "slope")?,
            get_f64(obj, "t0")?,
            get_f64(obj, "t1")?,
        ),
        "null" if planar => Curve::null_line(
            space.id,
            get_f64(obj, "x0")?,
            get_f64(obj, "dir")?,
            get_f64(obj, "t0")?,
            get_f64(obj, "t1")?,
        ),
        "imprison_spiral" if space.id == "imprison_W" => {
            Curve::imprison_spiral(get_f64(obj, "s0")?, get_f64(obj, "s1")?)
        }
        _ => Err(CurveError::WrongSpaceForNamed {
            name: name.to_string(),
            space: space.id,
        }),
    }
}
