use std::sync::Arc;

use space_core::Point;

use crate::error::CurveError;

/// Declared character of a curve, used by checks and length preconditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// Consecutive points are causally related (weakly before).
    Causal,
    /// Consecutive points are chronologically related (strictly before).
    Timelike,
    /// No causal claim; metric-side curves.
    Unrestricted,
}

/// A parametrized curve `[a, b] -> X`, evaluated through a closure.
#[derive(Clone)]
pub struct Curve {
    pub space_id: &'static str,
    pub a: f64,
    pub b: f64,
    pub kind: CurveKind,
    eval: Arc<dyn Fn(f64) -> Point + Send + Sync>,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Curve")
            .field("space_id", &self.space_id)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("kind", &self.kind)
            .finish_non_exhaustive()
    }
}

/// Slack for parameter-domain membership checks, relative to the span.
const PARAM_SLACK: f64 = 1e-9;

impl Curve {
    pub fn from_fn(
        space_id: &'static str,
        a: f64,
        b: f64,
        kind: CurveKind,
        f: impl Fn(f64) -> Point + Send + Sync + 'static,
    ) -> Result<Curve, CurveError> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(CurveError::BadDomain(a, b));
        }
        Ok(Curve {
            space_id,
            a,
            b,
            kind,
            eval: Arc::new(f),
        })
    }

    /// Evaluates the curve. Parameters are clamped to the domain after a
    /// slack check; stepping further outside is a programming error.
    pub fn eval(&self, t: f64) -> Point {
        let slack = PARAM_SLACK * (self.b - self.a);
        assert!(
            t >= self.a - slack && t <= self.b + slack,
            "parameter {t} outside curve domain [{}, {}]",
            self.a,
            self.b
        );
        (self.eval)(t.clamp(self.a, self.b))
    }

    /// Linear interpolation through `samples = [(param, point coords)]`.
    /// Parameters must be strictly increasing.
    pub fn polyline(
        space_id: &'static str,
        kind: CurveKind,
        samples: Vec<(f64, Vec<f64>)>,
    ) -> Result<Curve, CurveError> {
        if samples.len() < 2 {
            return Err(CurveError::BadWaypoints);
        }
        if samples.windows(2).any(|w| !(w[0].0 < w[1].0)) {
            return Err(CurveError::BadWaypoints);
        }
        let dim = samples[0].1.len();
        if samples.iter().any(|(_, c)| c.len() != dim) {
            return Err(CurveError::BadWaypoints);
        }
        let a = samples[0].0;
        let b = samples[samples.len() - 1].0;
        let params: Vec<f64> = samples.iter().map(|(p, _)| *p).collect();
        let coords: Vec<Vec<f64>> = samples.into_iter().map(|(_, c)| c).collect();
        Curve::from_fn(space_id, a, b, kind, move |t| {
            let i = match params.binary_search_by(|p| p.total_cmp(&t)) {
                Ok(i) => i.min(params.len() - 2),
                Err(0) => 0,
                Err(i) => (i - 1).min(params.len() - 2),
            };
            let (p0, p1) = (params[i], params[i + 1]);
            let w = ((t - p0) / (p1 - p0)).clamp(0.0, 1.0);
            let c: Vec<f64> = coords[i]
                .iter()
                .zip(&coords[i + 1])
                .map(|(u, v)| u + w * (v - u))
                .collect();
            Point::new(space_id, c)
        })
    }

    /// 2-d polyline through `(t, x)` waypoints, parametrized by `t`.
    pub fn polyline_tx(
        space_id: &'static str,
        kind: CurveKind,
        pts: &[(f64, f64)],
    ) -> Result<Curve, CurveError> {
        Curve::polyline(
            space_id,
            kind,
            pts.iter().map(|&(t, x)| (t, vec![t, x])).collect(),
        )
    }

    /// The vertical timelike line `t -> (t, x)`.
    pub fn vertical(space_id: &'static str, x: f64, t0: f64, t1: f64) -> Result<Curve, CurveError> {
        Curve::from_fn(space_id, t0, t1, CurveKind::Timelike, move |t| {
            Point::d2(space_id, t, x)
        })
    }

    /// The line `t -> (t, x0 + slope * (t - t0))`. Kind is timelike for
    /// `|slope| < 1`, causal for `|slope| = 1`, unrestricted otherwise.
    pub fn sloped(
        space_id: &'static str,
        x0: f64,
        slope: f64,
        t0: f64,
        t1: f64,
    ) -> Result<Curve, CurveError> {
        let kind = if slope.abs() < 1.0 {
            CurveKind::Timelike
        } else if slope.abs() == 1.0 {
            CurveKind::Causal
        } else {
            CurveKind::Unrestricted
        };
        Curve::from_fn(space_id, t0, t1, kind, move |t| {
            Point::d2(space_id, t, x0 + slope * (t - t0))
        })
    }

    /// The null line of direction `dir = +-1` from `(t0, x0)`.
    pub fn null_line(
        space_id: &'static str,
        x0: f64,
        dir: f64,
        t0: f64,
        t1: f64,
    ) -> Result<Curve, CurveError> {
        Curve::sloped(space_id, x0, dir.signum(), t0, t1)
    }

    /// The spiral branch of `imprison_W`: `s -> (s, s sin(1/s))`, `s < 0`.
    pub fn imprison_spiral(s0: f64, s1: f64) -> Result<Curve, CurveError> {
        let bound = 1.0 / std::f64::consts::PI;
        if !(s0 < s1) || s0 <= -bound || s1 > 0.0 {
            return Err(CurveError::BadDomain(s0, s1));
        }
        Curve::from_fn("imprison_W", s0, s1, CurveKind::Causal, |s| {
            let x = if s < 0.0 { s * (1.0 / s).sin() } else { 0.0 };
            Point::d2("imprison_W", s, x)
        })
    }

    /// The subcurve over `[a2, b2]`, which must lie inside the domain.
    pub fn restrict(&self, a2: f64, b2: f64) -> Result<Curve, CurveError> {
        let slack = PARAM_SLACK * (self.b - self.a);
        if !(a2 < b2) || a2 < self.a - slack || b2 > self.b + slack {
            return Err(CurveError::BadRestriction(a2, b2));
        }
        let inner = Arc::clone(&self.eval);
        let (lo, hi) = (self.a, self.b);
        Curve::from_fn(self.space_id, a2.max(lo), b2.min(hi), self.kind, move |t| {
            inner(t.clamp(lo, hi))
        })
    }

    /// Precomposition with a strictly increasing `phi: [c, d] -> [a, b]`.
    /// Monotonicity and endpoint matching are validated on a sample grid.
    pub fn reparametrize(
        &self,
        new_domain: (f64, f64),
        phi: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Curve, CurveError> {
        let (c, d) = new_domain;
        if !(c < d) {
            return Err(CurveError::BadDomain(c, d));
        }
        let tol = 1e-9 * (self.b - self.a).abs().max(1.0);
        let (pa, pb) = (phi(c), phi(d));
        if (pa - self.a).abs() > tol || (pb - self.b).abs() > tol {
            return Err(CurveError::BadEndpointMap(pa, pb));
        }
        let grid = 64;
        let mut prev = phi(c);
        for i in 1..=grid {
            let s = c + (d - c) * i as f64 / grid as f64;
            let v = phi(s);
            if v <= prev {
                return Err(CurveError::NonMonotonic(s));
            }
            prev = v;
        }
        let inner = Arc::clone(&self.eval);
        let (lo, hi) = (self.a, self.b);
        Curve::from_fn(self.space_id, c, d, self.kind, move |s| {
            inner(phi(s).clamp(lo, hi))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polyline_interpolates_linearly() {
        let c = Curve::polyline_tx("minkowski2", CurveKind::Causal, &[
            (0.0, 0.0),
            (0.5, 0.25),
            (1.0, 0.0),
        ])
        .unwrap();
        let p = c.eval(0.25);
        assert!((p.t() - 0.25).abs() < 1e-15);
        assert!((p.x() - 0.125).abs() < 1e-15);
        let p = c.eval(1.0);
        assert!((p.x() - 0.0).abs() < 1e-15);
    }

    #[test]
    fn restrict_and_reparametrize_agree() {
        let c = Curve::vertical("minkowski2", 0.5, 0.0, 1.0).unwrap();
        let half = c.restrict(0.25, 0.75).unwrap();
        assert_eq!(half.eval(0.3).t(), 0.3);
        let warped = c.reparametrize((0.0, 1.0), |s| s * s).unwrap();
        assert!((warped.eval(0.5).t() - 0.25).abs() < 1e-15);
        assert!(c.reparametrize((0.0, 1.0), |s| 0.5 + 0.0 * s).is_err());
        assert!(c.reparametrize((0.0, 1.0), |s| 2.0 * s).is_err());
    }

    #[test]
    fn spiral_stays_on_the_graph() {
        let c = Curve::imprison_spiral(-0.3, -0.01).unwrap();
        let p = c.eval(-0.2);
        assert!((p.x() - (-0.2 * (1.0 / -0.2_f64).sin())).abs() < 1e-15);
        assert!(Curve::imprison_spiral(-0.5, 0.2).is_err());
    }
}
