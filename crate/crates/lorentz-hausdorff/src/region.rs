use crate::cover::null_coords;
use crate::error::HausdorffError;
use serde_json::{json, Value};
use space_core::{LorentzianPreLengthSpace, Point};

/// A plane region premeasures are taken over: a coordinate box or a causal
/// diamond. Regions must sit inside the space's domain; covers are built
/// from diamonds slightly larger than the region, so leave an interior
/// margin of at least one delta on bounded domains.
#[derive(Clone, Debug)]
pub enum Region {
    /// `[t0, t1] x [x0, x1]` in the space's coordinates; empty when either
    /// range is reversed.
    Box { t0: f64, t1: f64, x0: f64, x1: f64 },
    /// The causal diamond `J(p, q)`; empty when `q` is not in the causal
    /// future of `p`.
    Diamond { p: Point, q: Point },
}

impl Region {
    /// Checks coordinate sanity and, for nonempty regions, that the
    /// region's corners lie in the space's domain.
    pub fn validate(&self, space: &LorentzianPreLengthSpace) -> Result<(), HausdorffError> {
        match self {
            Region::Box { t0, t1, x0, x1 } => {
                for c in [t0, t1, x0, x1] {
                    if !c.is_finite() {
                        return Err(HausdorffError::BadRegion(format!(
                            "box bound {c} is not finite"
                        )));
                    }
                }
                if self.is_empty(space) {
                    return Ok(());
                }
                for (t, x) in [(t0, x0), (t0, x1), (t1, x0), (t1, x1)] {
                    space.validate_point(&Point::d2(space.id, *t, *x))?;
                }
                Ok(())
            }
            Region::Diamond { p, q } => {
                space.validate_point(p)?;
                space.validate_point(q)?;
                Ok(())
            }
        }
    }

    pub fn is_empty(&self, space: &LorentzianPreLengthSpace) -> bool {
        match self {
            Region::Box { t0, t1, x0, x1 } => t0 > t1 || x0 > x1,
            Region::Diamond { p, q } => !space.causally_related(p, q),
        }
    }

    pub fn contains(&self, space: &LorentzianPreLengthSpace, t: f64, x: f64) -> bool {
        match self {
            Region::Box { t0, t1, x0, x1 } => {
                (*t0..=*t1).contains(&t) && (*x0..=*x1).contains(&x)
            }
            Region::Diamond { p, q } => {
                let r = Point::d2(space.id, t, x);
                space.causally_related(p, &r) && space.causally_related(&r, q)
            }
        }
    }

    /// Bounding rectangle in null coordinates, `None` for empty regions.
    pub fn bounds_uv(&self, space: &LorentzianPreLengthSpace) -> Option<(f64, f64, f64, f64)> {
        if self.is_empty(space) {
            return None;
        }
        match self {
            Region::Box { t0, t1, x0, x1 } => Some((t0 - x1, t0 + x0, t1 - x0, t1 + x1)),
            Region::Diamond { p, q } => {
                let (up, vp) = null_coords(p);
                let (uq, vq) = null_coords(q);
                Some((up, vp, uq, vq))
            }
        }
    }

    /// Whether the closed null-coordinate rectangle `[u0,u1] x [v0,v1]`
    /// meets the region. Exact for both shapes: a diamond region is itself
    /// such a rectangle, and a box region is separated from one, if at
    /// all, along a `u`, `v`, `t`, or `x` axis.
    pub fn intersects_uv(&self, u0: f64, v0: f64, u1: f64, v1: f64) -> bool {
        match self {
            Region::Box { t0, t1, x0, x1 } => {
                let (ru0, rv0, ru1, rv1) = (t0 - x1, t0 + x0, t1 - x0, t1 + x1);
                if u1 < ru0 || ru1 < u0 || v1 < rv0 || rv1 < v0 {
                    return false;
                }
                let (ct0, ct1) = ((u0 + v0) / 2.0, (u1 + v1) / 2.0);
                let (cx0, cx1) = ((v0 - u1) / 2.0, (v1 - u0) / 2.0);
                ct1 >= *t0 && *t1 >= ct0 && cx1 >= *x0 && *x1 >= cx0
            }
            Region::Diamond { p, q } => {
                let (up, vp) = null_coords(p);
                let (uq, vq) = null_coords(q);
                u1 >= up && uq >= u0 && v1 >= vp && vq >= v0
            }
        }
    }

    /// Deterministic dense sample of the region: a `per_axis` by `per_axis`
    /// null-coordinate grid over the bounding rectangle, filtered by
    /// membership. Empty regions sample to nothing.
    pub fn sample_points(
        &self,
        space: &LorentzianPreLengthSpace,
        per_axis: usize,
    ) -> Vec<Point> {
        let Some((u0, v0, u1, v1)) = self.bounds_uv(space) else {
            return Vec::new();
        };
        assert!(per_axis >= 2, "need at least two samples per axis");
        let steps = (per_axis - 1) as f64;
        let mut out = Vec::new();
        for i in 0..per_axis {
            let u = u0 + (u1 - u0) * i as f64 / steps;
            for j in 0..per_axis {
                let v = v0 + (v1 - v0) * j as f64 / steps;
                let (t, x) = ((u + v) / 2.0, (v - u) / 2.0);
                if self.contains(space, t, x) {
                    out.push(Point::d2(space.id, t, x));
                }
            }
        }
        out
    }
}

/// Parses `{"type": "box", "t": [t0,t1], "x": [x0,x1]}` or
/// `{"type": "diamond", "p": [t,x], "q": [t,x]}`.
pub fn region_from_json(
    space: &LorentzianPreLengthSpace,
    v: &Value,
) -> Result<Region, HausdorffError> {
    let obj = v
        .as_object()
        .ok_or_else(|| HausdorffError::BadJson("region must be an object".into()))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| HausdorffError::BadJson("missing string field `type`".into()))?;
    let pair = |key: &str| -> Result<(f64, f64), HausdorffError> {
        let arr = obj
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| HausdorffError::BadJson(format!("missing array field `{key}`")))?;
        if arr.len() != 2 {
            return Err(HausdorffError::BadJson(format!(
                "field `{key}` must hold exactly two numbers"
            )));
        }
        let a = arr[0]
            .as_f64()
            .ok_or_else(|| HausdorffError::BadJson(format!("`{key}[0]` is not a number")))?;
        let b = arr[1]
            .as_f64()
            .ok_or_else(|| HausdorffError::BadJson(format!("`{key}[1]` is not a number")))?;
        Ok((a, b))
    };
    let region = match kind {
        "box" => {
            let (t0, t1) = pair("t")?;
            let (x0, x1) = pair("x")?;
            Region::Box { t0, t1, x0, x1 }
        }
        "diamond" => {
            let (pt, px) = pair("p")?;
            let (qt, qx) = pair("q")?;
            Region::Diamond {
                p: Point::d2(space.id, pt, px),
                q: Point::d2(space.id, qt, qx),
            }
        }
        other => {
            return Err(HausdorffError::BadJson(format!(
                "unknown region type `{other}`"
            )))
        }
    };
    region.validate(space)?;
    Ok(region)
}

pub fn region_to_json(region: &Region) -> Value {
    match region {
        Region::Box { t0, t1, x0, x1 } => json!({"type": "box", "t": [t0, t1], "x": [x0, x1]}),
        Region::Diamond { p, q } => {
            json!({"type": "diamond", "p": [p.t(), p.x()], "q": [q.t(), q.x()]})
        }
    }
}
