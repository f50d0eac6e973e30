use curves::Curve;
use space_core::num::aitken_limit;
use space_core::ConformalFactor;

use crate::bundle::LengthSpaceBundle;
use crate::distance::{d_omega, DOmegaStrategy};
use crate::error::MetricConformalError;

/// Default shrinking half-widths for speed quotients.
pub const DEFAULT_H_SCHEDULE: [f64; 4] = [0.02, 0.01, 0.005, 0.0025];
/// Relative flatness below which a quotient tail counts as settled.
const FLAT_TOL: f64 = 1e-9;

/// A metric speed estimate with its raw difference quotients.
#[derive(Clone, Debug)]
pub struct SpeedEstimate {
    pub value: f64,
    pub converged: bool,
    /// One symmetric quotient per schedule entry, coarsest first.
    pub quotients: Vec<f64>,
}

/// Comparison of the conformal speed against the pointwise scaling law.
#[derive(Clone, Debug)]
pub struct SpeedCheck {
    /// Speed of the curve measured in the conformal distance.
    pub v_omega: f64,
    /// The factor at the point times the plain metric speed.
    pub law: f64,
    /// Absolute difference between the two.
    pub gap: f64,
}

fn quotient_window(
    curve: &Curve,
    t: f64,
    h: f64,
) -> Result<(f64, f64), MetricConformalError> {
    let lo = (t - h).max(curve.a);
    let hi = (t + h).min(curve.b);
    if !(lo < hi) {
        return Err(MetricConformalError::BadQuotientWindow {
            t,
            h,
            a: curve.a,
            b: curve.b,
        });
    }
    Ok((lo, hi))
}

/// The metric speed of `curve` at parameter `t`, from symmetric
/// difference quotients `d(curve(t-h), curve(t+h)) / (2h)` over the
/// shrinking `h_schedule`, extrapolated across the tail. Windows are
/// clipped at the parameter ends, so boundary points use one-sided
/// quotients. `converged` reports whether the quotient tail settled:
/// either flat to relative `1e-9` or still contracting at the last step.
pub fn metric_speed(
    bundle: &LengthSpaceBundle,
    curve: &Curve,
    t: f64,
    h_schedule: &[f64],
) -> Result<SpeedEstimate, MetricConformalError> {
    if curve.space_id != bundle.id {
        return Err(MetricConformalError::WrongSpace {
            expected: bundle.id,
            got: curve.space_id,
        });
    }
    if h_schedule.len() < 2
        || h_schedule.windows(2).any(|w| w[1] >= w[0])
        || h_schedule.iter().any(|&h| !(h > 0.0) || !h.is_finite())
    {
        return Err(MetricConformalError::BadSpeedSchedule(h_schedule.to_vec()));
    }
    assert!(
        curve.a <= t && t <= curve.b,
        "speed point {t} outside the parameter range [{}, {}]",
        curve.a,
        curve.b
    );
    let mut quotients = Vec::with_capacity(h_schedule.len());
    for &h in h_schedule {
        let (lo, hi) = quotient_window(curve, t, h)?;
        let p = curve.eval(lo);
        let q = curve.eval(hi);
        bundle.validate_point(&p)?;
        bundle.validate_point(&q)?;
        quotients.push(bundle.dist(&p, &q) / (hi - lo));
    }
    let value = aitken_limit(&quotients);
    let scale = quotients.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let converged = if quotients.len() == 2 {
        (quotients[1] - quotients[0]).abs() <= FLAT_TOL * scale
    } else {
        let tail = &quotients[quotients.len() - 3..];
        let d1 = tail[1] - tail[0];
        let d2 = tail[2] - tail[1];
        let flat = d1.abs() <= FLAT_TOL * scale && d2.abs() <= FLAT_TOL * scale;
        flat || d2.abs() < d1.abs()
    };
    Ok(SpeedEstimate {
        value,
        converged,
        quotients,
    })
}

/// Checks the conformal speed law `v_Omega = Omega(curve(t)) * v` at one
/// parameter. The left side is measured with quotients of the conformal
/// distance (closed form on 1-d bundles, curve family on the plane), the
/// right side multiplies the factor at the point by the plain metric
/// speed.
pub fn conformal_speed_check(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    curve: &Curve,
    t: f64,
) -> Result<SpeedCheck, MetricConformalError> {
    let plain = metric_speed(bundle, curve, t, &DEFAULT_H_SCHEDULE)?;
    let (strategy, dtol) = if bundle.dim == 1 {
        (DOmegaStrategy::ClosedForm, 1e-10)
    } else {
        (DOmegaStrategy::CurveFamily { offsets: 2 }, 1e-6)
    };
    let mut quotients = Vec::with_capacity(DEFAULT_H_SCHEDULE.len());
    for &h in &DEFAULT_H_SCHEDULE {
        let (lo, hi) = quotient_window(curve, t, h)?;
        let p = curve.eval(lo);
        let q = curve.eval(hi);
        let d = d_omega(bundle, omega, &p, &q, strategy, dtol)?
            .value
            .as_finite()
            .expect("conformal quotient over a window inside one component");
        quotients.push(d / (hi - lo));
    }
    let v_omega = aitken_limit(&quotients);
    let law = omega.eval(&curve.eval(t)) * plain.value;
    Ok(SpeedCheck {
        v_omega,
        law,
        gap: (v_omega - law).abs(),
    })
}
