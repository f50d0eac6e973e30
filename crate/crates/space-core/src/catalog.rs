//! The built-in spaces. Relations and time separations are exact closed
//! forms; no numerics beyond floating-point arithmetic.
//!
//! 2-d spaces use coordinates `(t, x)`:
//!
//! * `minkowski2`: the full plane, `tau = sqrt(dt^2 - dx^2)` on causal pairs;
//! * `minkowski_strip`: the same formulas restricted to `0 < t < 1`;
//! * `funnel_X`: two null arms `x = 1 - |t|` with the peak removed, plus a
//!   shrinking family of null V-notches ("tents") accumulating at the missing
//!   peak; relations hold iff a causal plane curve joins the points inside
//!   the set, which forces `tau = 0` everywhere and an empty chronology;
//! * `funnel_Y`: `funnel_X` plus the open segment `{(t, 0): -2 < t < -1}`,
//!   whose points lie beneath everything; `tau` is the Minkowski length of
//!   the segment portion of any connecting causal curve;
//! * `imprison_W`: the graph of `t * sin(1/t)` glued to a flat segment,
//!   ordered by the `t` coordinate alone, `tau = max(dt, 0)`.
//!
//! 1-d spaces use a single coordinate:
//!
//! * `infinity_line`: `tau = inf` whenever `x < y`;
//! * `tau_log_line`: `tau = integral of 1/|s|` over `[x, y]`, infinite as
//!   soon as the interval touches 0.
//!
//! The metric on the plane-embedded spaces is the restricted Euclidean
//! (chordal) one; on the lines it is `|x - y|`.

use serde_json::Value;

use crate::error::SpaceError;
use crate::ext::ExtReal;
use crate::num::unit_pair;
use crate::point::Point;
use crate::structures::{
    CausalStructure, LorentzianPreLengthSpace, MetricStructure, SpaceFlags, TimeSeparation,
};

/// Geometric membership tolerance for the plane-embedded branch spaces.
const GEOM_TOL: f64 = 1e-9;

/// Largest tent index the funnel classifier recognizes.
const MAX_TENT: f64 = 1e7;

pub const MINKOWSKI2: &str = "minkowski2";
pub const MINKOWSKI_STRIP: &str = "minkowski_strip";
pub const INFINITY_LINE: &str = "infinity_line";
pub const TAU_LOG_LINE: &str = "tau_log_line";
pub const FUNNEL_X: &str = "funnel_X";
pub const FUNNEL_Y: &str = "funnel_Y";
pub const IMPRISON_W: &str = "imprison_W";

/// Names accepted by `catalog_space`, in catalog order.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        MINKOWSKI2,
        MINKOWSKI_STRIP,
        INFINITY_LINE,
        TAU_LOG_LINE,
        FUNNEL_X,
        FUNNEL_Y,
        IMPRISON_W,
    ]
}

/// Builds a catalog space. `params` is reserved; every catalog space takes
/// an empty parameter map, and unknown entries are an error.
pub fn catalog_space(
    name: &str,
    params: &serde_json::Map<String, Value>,
) -> Result<LorentzianPreLengthSpace, SpaceError> {
    if let Some(key) = params.keys().next() {
        return Err(SpaceError::UnexpectedParam {
            space: name.to_string(),
            param: key.clone(),
        });
    }
    match name {
        MINKOWSKI2 => Ok(minkowski2()),
        MINKOWSKI_STRIP => Ok(minkowski_strip()),
        INFINITY_LINE => Ok(infinity_line()),
        TAU_LOG_LINE => Ok(tau_log_line()),
        FUNNEL_X => Ok(funnel_x()),
        FUNNEL_Y => Ok(funnel_y()),
        IMPRISON_W => Ok(imprison_w()),
        other => Err(SpaceError::UnknownSpace(other.to_string())),
    }
}

/// Parses a space selection `{"name": ..., "params": {...}}`.
pub fn space_from_json(v: &Value) -> Result<LorentzianPreLengthSpace, SpaceError> {
    let obj = v
        .as_object()
        .ok_or_else(|| SpaceError::BadJson("space selection must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| SpaceError::BadJson("space selection needs a string `name`".into()))?;
    let empty = serde_json::Map::new();
    let params = match obj.get("params") {
        None => &empty,
        Some(Value::Object(m)) => m,
        Some(_) => return Err(SpaceError::BadJson("`params` must be an object".into())),
    };
    for key in obj.keys() {
        if key != "name" && key != "params" {
            return Err(SpaceError::BadJson(format!("unknown field `{key}`")));
        }
    }
    catalog_space(name, params)
}

fn euclid2(x: &Point, y: &Point) -> f64 {
    let dt = y.t() - x.t();
    let dx = y.x() - x.x();
    (dt * dt + dx * dx).sqrt()
}

// ---------------------------------------------------------------- minkowski

fn minkowski_tau(x: &Point, y: &Point) -> ExtReal {
    let dt = y.t() - x.t();
    let dx = (y.x() - x.x()).abs();
    if dt >= dx {
        ExtReal::finite((dt * dt - dx * dx).max(0.0).sqrt())
    } else {
        ExtReal::ZERO
    }
}

fn minkowski2() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: true,
        quasi_strongly_causal: true,
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        MINKOWSKI2,
        2,
        MetricStructure::new(euclid2),
        CausalStructure::new(
            |x, y| y.t() - x.t() > (y.x() - x.x()).abs(),
            |x, y| y.t() - x.t() >= (y.x() - x.x()).abs(),
        ),
        TimeSeparation::new(minkowski_tau),
        flags,
        |_| true,
        |k| {
            let (u, v) = unit_pair(0x4D31, k);
            Point::d2(MINKOWSKI2, 6.0 * u - 3.0, 6.0 * v - 3.0)
        },
    )
}

fn minkowski_strip() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: true,
        quasi_strongly_causal: true,
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        MINKOWSKI_STRIP,
        2,
        MetricStructure::new(euclid2),
        CausalStructure::new(
            |x, y| y.t() - x.t() > (y.x() - x.x()).abs(),
            |x, y| y.t() - x.t() >= (y.x() - x.x()).abs(),
        ),
        TimeSeparation::new(minkowski_tau),
        flags,
        |p: &Point| p.t() > 0.0 && p.t() < 1.0,
        |k| {
            let (u, v) = unit_pair(0x5791, k);
            Point::d2(MINKOWSKI_STRIP, 0.001 + 0.998 * u, 6.0 * v - 3.0)
        },
    )
}

// -------------------------------------------------------------------- lines

fn infinity_line() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: true,
        quasi_strongly_causal: true,
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        INFINITY_LINE,
        1,
        MetricStructure::new(|x: &Point, y: &Point| (y.t() - x.t()).abs()),
        CausalStructure::new(|x, y| x.t() < y.t(), |x, y| x.t() <= y.t()),
        TimeSeparation::new(|x, y| {
            if x.t() < y.t() {
                ExtReal::Infinite
            } else {
                ExtReal::ZERO
            }
        }),
        flags,
        |_| true,
        |k| {
            let (u, _) = unit_pair(0x1F1E, k);
            Point::d1(INFINITY_LINE, 6.0 * u - 3.0)
        },
    )
}

/// `integral of 1/|s| ds` over `[x, y]` for `x < y`: infinite when the
/// interval touches 0, else `ln` of the endpoint ratio.
fn log_line_tau(x: &Point, y: &Point) -> ExtReal {
    let (a, b) = (x.t(), y.t());
    if a >= b {
        return ExtReal::ZERO;
    }
    if a <= 0.0 && b >= 0.0 {
        return ExtReal::Infinite;
    }
    if b < 0.0 {
        ExtReal::finite((a / b).ln())
    } else {
        ExtReal::finite((b / a).ln())
    }
}

fn tau_log_line() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: true,
        quasi_strongly_causal: true,
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        TAU_LOG_LINE,
        1,
        MetricStructure::new(|x: &Point, y: &Point| (y.t() - x.t()).abs()),
        CausalStructure::new(|x, y| x.t() < y.t(), |x, y| x.t() <= y.t()),
        TimeSeparation::new(log_line_tau),
        flags,
        |_| true,
        |k| {
            let (u, _) = unit_pair(0x709A, k);
            Point::d1(TAU_LOG_LINE, 6.0 * u - 3.0)
        },
    )
}

// ------------------------------------------------------------------ funnels

/// Branch of `funnel_X`: the two null arms `x = 1 - |t|`, or tent `n`, the
/// V-notch `x = |t| + 1 - 1/n` over `|t| < 1/(2n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum XBranch {
    LeftArm(f64),
    RightArm(f64),
    Tent { n: f64, t: f64 },
}

fn classify_x(t: f64, x: f64) -> Option<XBranch> {
    if (-1.0..0.0).contains(&t) && (x - (1.0 + t)).abs() <= GEOM_TOL {
        return Some(XBranch::LeftArm(t));
    }
    if t > 0.0 && t <= 1.0 && (x - (1.0 - t)).abs() <= GEOM_TOL {
        return Some(XBranch::RightArm(t));
    }
    // Tents satisfy x - |t| = 1 - 1/n; junctions (|t| = 1/(2n)) are excluded
    // and classify as arm points above.
    let gap = 1.0 - (x - t.abs());
    if gap <= 0.0 {
        return None;
    }
    let n = (1.0 / gap).round();
    if !(1.0..=MAX_TENT).contains(&n) {
        return None;
    }
    if t.abs() < 1.0 / (2.0 * n) && (x - (t.abs() + 1.0 - 1.0 / n)).abs() <= GEOM_TOL {
        return Some(XBranch::Tent { n, t });
    }
    None
}

/// Causal reachability inside `X`. All branches are null lines, so a causal
/// curve is forced along them; tents are entered at their left tip (passed
/// on the way up the left arm) and exited at their right tip onto the right
/// arm. Tent indices are unbounded, so every left-arm point reaches every
/// right-arm point through a sufficiently late tent.
fn le_x(p: XBranch, q: XBranch) -> bool {
    use XBranch::*;
    match (p, q) {
        (LeftArm(a), LeftArm(b)) => a <= b,
        (LeftArm(a), Tent { n, .. }) => a <= -1.0 / (2.0 * n) + GEOM_TOL,
        (LeftArm(_), RightArm(_)) => true,
        (Tent { n: n1, t: a }, Tent { n: n2, t: b }) => n1 == n2 && a <= b,
        (Tent { n, .. }, RightArm(b)) => b >= 1.0 / (2.0 * n) - GEOM_TOL,
        (RightArm(a), RightArm(b)) => a <= b,
        _ => false,
    }
}

fn x_causal(p: &Point, q: &Point) -> bool {
    if p.coords == q.coords {
        return true;
    }
    match (classify_x(p.t(), p.x()), classify_x(q.t(), q.x())) {
        (Some(a), Some(b)) => le_x(a, b),
        _ => false,
    }
}

fn funnel_x() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        // Chordal metric: path lengths inside X exceed chordal distances.
        intrinsic: false,
        quasi_strongly_causal: true,
        // Vacuous: the chronology is empty; the causal relation is defined
        // by in-set causal curves.
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        FUNNEL_X,
        2,
        MetricStructure::new(euclid2),
        CausalStructure::new(|_, _| false, x_causal),
        TimeSeparation::new(|_, _| ExtReal::ZERO),
        flags,
        |p: &Point| classify_x(p.t(), p.x()).is_some(),
        sample_x,
    )
}

fn sample_x(k: u64) -> Point {
    let (u, v) = unit_pair(0xF41, k);
    let (t, x) = sample_x_coords(u, v);
    Point::d2(FUNNEL_X, t, x)
}

fn sample_x_coords(u: f64, v: f64) -> (f64, f64) {
    if u < 0.35 {
        let t = -1.0 + (u / 0.35) * 0.999_999;
        (t, 1.0 + t)
    } else if u < 0.7 {
        let t = 1e-6 + ((u - 0.35) / 0.35) * 0.999_998;
        (t, 1.0 - t)
    } else {
        let n = (1.0 + (v * 6.0).floor()).min(6.0);
        let half = 1.0 / (2.0 * n);
        let t = (2.0 * ((u - 0.7) / 0.3) - 1.0) * half * 0.999;
        (t, t.abs() + 1.0 - 1.0 / n)
    }
}

/// Branch of `funnel_Y`: the added open segment or a branch of `X`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum YBranch {
    Segment(f64),
    InX(XBranch),
}

fn classify_y(t: f64, x: f64) -> Option<YBranch> {
    if t > -2.0 && t < -1.0 && x.abs() <= GEOM_TOL {
        return Some(YBranch::Segment(t));
    }
    classify_x(t, x).map(YBranch::InX)
}

fn y_causal(p: &Point, q: &Point) -> bool {
    if p.coords == q.coords {
        return true;
    }
    match (classify_y(p.t(), p.x()), classify_y(q.t(), q.x())) {
        (Some(YBranch::Segment(a)), Some(YBranch::Segment(b))) => a <= b,
        // The segment climbs to (-1, 0), the bottom of the left arm, which
        // reaches all of X.
        (Some(YBranch::Segment(_)), Some(YBranch::InX(_))) => true,
        (Some(YBranch::InX(a)), Some(YBranch::InX(b))) => le_x(a, b),
        _ => false,
    }
}

fn y_chron(p: &Point, q: &Point) -> bool {
    matches!(classify_y(p.t(), p.x()), Some(YBranch::Segment(_)))
        && p.coords != q.coords
        && y_causal(p, q)
}

/// Minkowski length of the segment portion of a connecting causal curve:
/// `dt` inside the segment, `-1 - t_p` from the segment into `X`, else 0.
fn y_tau(p: &Point, q: &Point) -> ExtReal {
    match (classify_y(p.t(), p.x()), classify_y(q.t(), q.x())) {
        (Some(YBranch::Segment(a)), Some(YBranch::Segment(b))) => {
            ExtReal::finite((b - a).max(0.0))
        }
        (Some(YBranch::Segment(a)), Some(YBranch::InX(_))) => ExtReal::finite(-1.0 - a),
        _ => ExtReal::ZERO,
    }
}

fn funnel_y() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: false,
        quasi_strongly_causal: true,
        // Segment points chronologically precede all of X, but no timelike
        // curve leaves the segment.
        causally_path_connected: false,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        FUNNEL_Y,
        2,
        MetricStructure::new(euclid2),
        CausalStructure::new(y_chron, y_causal),
        TimeSeparation::new(y_tau),
        flags,
        |p: &Point| classify_y(p.t(), p.x()).is_some(),
        |k| {
            let (u, v) = unit_pair(0xF42, k);
            if u < 0.25 {
                let t = -2.0 + 1e-6 + (u / 0.25) * (1.0 - 2e-6);
                Point::d2(FUNNEL_Y, t, 0.0)
            } else {
                let (t, x) = sample_x_coords((u - 0.25) / 0.75, v);
                Point::d2(FUNNEL_Y, t, x)
            }
        },
    )
}

// --------------------------------------------------------------- imprison_W

/// Height of the `W` graph over `t`.
fn w_profile(t: f64) -> f64 {
    if t < 0.0 {
        t * (1.0 / t).sin()
    } else {
        0.0
    }
}

fn w_contains(p: &Point) -> bool {
    let t = p.t();
    let bound = 1.0 / std::f64::consts::PI;
    t > -bound && t < bound && (p.x() - w_profile(t)).abs() <= GEOM_TOL
}

fn imprison_w() -> LorentzianPreLengthSpace {
    let flags = SpaceFlags {
        intrinsic: false,
        quasi_strongly_causal: true,
        causally_path_connected: true,
        locally_causally_closed: true,
    };
    LorentzianPreLengthSpace::new(
        IMPRISON_W,
        2,
        MetricStructure::new(euclid2),
        CausalStructure::new(|x, y| x.t() < y.t(), |x, y| x.t() <= y.t()),
        TimeSeparation::new(|x: &Point, y: &Point| ExtReal::finite((y.t() - x.t()).max(0.0))),
        flags,
        w_contains,
        |k| {
            let (u, _) = unit_pair(0xA11, k);
            let bound = 1.0 / std::f64::consts::PI;
            let t = (2.0 * u - 1.0) * bound * 0.9999;
            Point::d2(IMPRISON_W, t, w_profile(t))
        },
    )
}
