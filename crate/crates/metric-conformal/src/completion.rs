use std::sync::Arc;

use serde::{Deserialize, Serialize};
use space_core::{ConformalFactor, ExtReal, Point};

use crate::bundle::LengthSpaceBundle;
use crate::distance::{d_omega, DOmegaStrategy};
use crate::error::MetricConformalError;

/// Probe radius standing in for "arbitrarily large".
const HUGE_RADIUS: f64 = 1e6;
/// Spot radii for checking that the ball oracle is monotone in r.
const ORACLE_SPOT_RADII: [f64; 3] = [1e-3, 1.0, 1e3];
/// Smallest initial bracket radius for the bisection.
const BRACKET_SEED: f64 = 1e-6;
/// Bisection iterations; enough to pin the radius to f64 resolution.
const BISECT_ITERS: usize = 100;
/// Distance tolerance inside the completeness probe.
const PROBE_TOL: f64 = 1e-9;

/// The rescaling data attached to a bundle: the boundary-distance-like
/// radius function and the factor that divides it away.
#[derive(Clone)]
pub struct CompletionFactor {
    bundle: LengthSpaceBundle,
    rho: Arc<dyn Fn(&Point) -> ExtReal + Send + Sync>,
}

impl std::fmt::Debug for CompletionFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CompletionFactor")
            .field("bundle", &self.bundle.id)
            .finish()
    }
}

impl CompletionFactor {
    /// The supremal compact-ball radius at `p`; infinite when every ball
    /// is compact.
    pub fn rho(&self, p: &Point) -> ExtReal {
        (self.rho)(p)
    }

    /// The conformal factor `1 / rho(p)`, taken as 1 where `rho` is
    /// infinite so that already-complete spaces are left unchanged.
    pub fn omega(&self, p: &Point) -> f64 {
        match (self.rho)(p) {
            ExtReal::Infinite => 1.0,
            ExtReal::Finite(r) => {
                assert!(r > 0.0, "compact-ball radius must be positive at {:?}", p.coords);
                1.0 / r
            }
        }
    }

    /// Packages `omega` as a factor usable by the length and distance
    /// routines. 1-d bundles get a time-profile form so the closed-form
    /// distance strategy applies.
    pub fn as_conformal_factor(&self) -> ConformalFactor {
        let rho = Arc::clone(&self.rho);
        let id = self.bundle.id;
        if self.bundle.dim == 1 {
            ConformalFactor::time_only("1/rho", move |t| {
                match rho(&Point::d1(id, t)) {
                    ExtReal::Infinite => 1.0,
                    ExtReal::Finite(r) => 1.0 / r,
                }
            })
        } else {
            ConformalFactor::from_fn("1/rho", move |p| match rho(p) {
                ExtReal::Infinite => 1.0,
                ExtReal::Finite(r) => 1.0 / r,
            })
        }
    }
}

/// The supremal radius with compact closed ball at `p`, found by probing
/// the bundle's ball oracle. A huge compact ball short-circuits to
/// infinity after monotonicity spot checks; otherwise the radius is
/// bracketed by doubling and pinned by bisection.
///
/// # Errors
/// `InconsistentOracle` when the oracle claims a compact ball at some
/// radius but rejects a smaller one.
pub fn nomizu_ozeki_rho(
    bundle: &LengthSpaceBundle,
    p: &Point,
) -> Result<ExtReal, MetricConformalError> {
    bundle.validate_point(p)?;
    if bundle.compact_ball(p, HUGE_RADIUS) {
        let mut held = 0.0f64;
        for &r in &ORACLE_SPOT_RADII {
            if bundle.compact_ball(p, r) {
                held = held.max(r);
            } else if held > 0.0 {
                return Err(MetricConformalError::InconsistentOracle { radius: r });
            }
        }
        return Ok(ExtReal::Infinite);
    }
    let mut lo = 0.0;
    let mut hi = BRACKET_SEED;
    while bundle.compact_ball(p, hi) {
        lo = hi;
        hi *= 2.0;
        if hi > HUGE_RADIUS {
            return Ok(ExtReal::Infinite);
        }
    }
    if lo == 0.0 && !bundle.compact_ball(p, BRACKET_SEED / 2.0) {
        // Nothing below the seed either; resolve from an even smaller
        // bracket so tiny radii are still pinned.
        hi = BRACKET_SEED / 2.0;
    }
    for _ in 0..BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        if bundle.compact_ball(p, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let rho = 0.5 * (lo + hi);
    if !bundle.compact_ball(p, rho * 0.5) {
        return Err(MetricConformalError::InconsistentOracle { radius: rho * 0.5 });
    }
    if bundle.compact_ball(p, rho * 1.5 + BRACKET_SEED) {
        return Err(MetricConformalError::InconsistentOracle {
            radius: rho * 1.5 + BRACKET_SEED,
        });
    }
    Ok(ExtReal::finite(rho))
}

/// Builds the completion rescaling for `bundle` from its ball oracle.
pub fn completion_factor(
    bundle: &LengthSpaceBundle,
) -> Result<CompletionFactor, MetricConformalError> {
    // Fail at construction on a broken oracle rather than at first use.
    for p in bundle.probe_points() {
        nomizu_ozeki_rho(bundle, &p)?;
    }
    let captured = bundle.clone();
    Ok(CompletionFactor {
        bundle: bundle.clone(),
        rho: Arc::new(move |p: &Point| {
            nomizu_ozeki_rho(&captured, p).expect("oracle validated at construction")
        }),
    })
}

/// Outcome of chasing a sequence toward the edge of the space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Consecutive conformal distances stay bounded below: the sequence
    /// cannot be Cauchy, escape to the edge is blocked.
    EscapeBlocked,
    /// Consecutive conformal distances shrink under the threshold; the
    /// rescaled space does not obstruct this sequence.
    StillCauchy,
}

/// Report from [`completeness_probe`]: the verdict plus the consecutive
/// conformal distances that produced it.
#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub verdict: ProbeVerdict,
    /// `d_Omega(x_k, x_{k+1})` for each consecutive pair.
    pub steps: Vec<f64>,
    /// Smallest step over the inspected tail.
    pub tail_floor: f64,
}

/// Decides whether the rescaled distance blocks a sequence from escaping:
/// the tail of consecutive `d_Omega` steps must stay at or above
/// `threshold`. The tail is the trailing half of the steps, so early
/// transients do not mask eventual behavior. Infinite steps (component
/// changes) block trivially.
pub fn completeness_probe(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    sequence: &[Point],
    threshold: f64,
) -> Result<ProbeReport, MetricConformalError> {
    assert!(
        threshold > 0.0 && threshold.is_finite(),
        "threshold must be positive, got {threshold}"
    );
    if sequence.len() < 2 {
        return Ok(ProbeReport {
            verdict: ProbeVerdict::StillCauchy,
            steps: Vec::new(),
            tail_floor: 0.0,
        });
    }
    let strategy = if bundle.dim == 1 {
        DOmegaStrategy::ClosedForm
    } else {
        DOmegaStrategy::CurveFamily { offsets: 2 }
    };
    let mut steps = Vec::with_capacity(sequence.len() - 1);
    for pair in sequence.windows(2) {
        let d = d_omega(bundle, omega, &pair[0], &pair[1], strategy, PROBE_TOL)?;
        steps.push(match d.value {
            ExtReal::Infinite => f64::INFINITY,
            ExtReal::Finite(v) => v,
        });
    }
    let tail_len = steps.len().div_ceil(2);
    let tail = &steps[steps.len() - tail_len..];
    let tail_floor = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let verdict = if tail_floor >= threshold {
        ProbeVerdict::EscapeBlocked
    } else {
        ProbeVerdict::StillCauchy
    };
    Ok(ProbeReport {
        verdict,
        steps,
        tail_floor,
    })
}
