use crate::cover::{tiling_candidates, CoverStrategy, DiamondCover};
use crate::error::HausdorffError;
use crate::region::Region;
use conformal_lorentz::{tau_omega_value, BoundKind};
use rayon::prelude::*;
use space_core::num::aitken_limit;
use space_core::{
    ConformalFactor, ExtReal, LorentzianPreLengthSpace, Point, MINKOWSKI2, MINKOWSKI_STRIP,
};
use std::f64::consts::PI;

/// Grid density per axis of the dense sample behind cover validation.
pub const COVER_SAMPLES_PER_AXIS: usize = 33;
/// Relative slack absorbing float jitter in the quality flag's
/// monotonicity check.
pub const MONOTONE_SLACK: f64 = 1e-9;
/// Quadrature tolerance for conformal time separations on diamond tips.
const GAUGE_QUAD_TOL: f64 = 1e-9;

/// Normalization constant of the s-dimensional measure:
/// `pi^((s-1)/2) / (s * Gamma((s+1)/2) * 2^(s-1))`.
pub fn omega_s(s: f64) -> Result<f64, HausdorffError> {
    if !s.is_finite() || s <= 0.0 {
        return Err(HausdorffError::BadExponent(s));
    }
    let gamma = statrs::function::gamma::gamma((s + 1.0) / 2.0);
    Ok(PI.powf((s - 1.0) / 2.0) / (s * gamma * 2.0_f64.powf(s - 1.0)))
}

/// One premeasure evaluation: the cheapest generated cover and its value.
/// The value sits at or above the true infimum (a finite cover family
/// cannot certify it), hence the fixed `UpperBound` label.
#[derive(Clone, Debug)]
pub struct PremeasureResult {
    pub value: f64,
    pub bound: BoundKind,
    pub cover: DiamondCover,
}

/// A measure estimate over a shrinking delta schedule. `quality` is true
/// when the premeasures were monotone nondecreasing as delta shrank, the
/// signature of a cover family that attains each delta's infimum; a false
/// flag signals cover-strategy failure, not a wrong limit.
#[derive(Clone, Debug)]
pub struct HausdorffEstimate {
    pub s: f64,
    pub delta_schedule: Vec<f64>,
    pub premeasures: Vec<f64>,
    pub value: f64,
    pub quality: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ConformalMeasureCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Relative gap between the sides, zero when both vanish.
    pub gap: f64,
}

type Gauge<'a> = &'a (dyn Fn(&Point, &Point) -> Result<f64, HausdorffError> + Sync);

fn require_flat_planar(space: &LorentzianPreLengthSpace) -> Result<(), HausdorffError> {
    if space.id == MINKOWSKI2 || space.id == MINKOWSKI_STRIP {
        Ok(())
    } else {
        Err(HausdorffError::UnsupportedSpace(space.id))
    }
}

fn premeasure_with_gauge(
    space: &LorentzianPreLengthSpace,
    region: &Region,
    s: f64,
    delta: f64,
    strategy: &CoverStrategy,
    budget: usize,
    gauge: Gauge,
) -> Result<PremeasureResult, HausdorffError> {
    require_flat_planar(space)?;
    region.validate(space)?;
    let w = omega_s(s)?;
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(HausdorffError::BadDelta(delta));
    }
    if region.is_empty(space) {
        return Ok(PremeasureResult {
            value: 0.0,
            bound: BoundKind::UpperBound,
            cover: DiamondCover {
                diamonds: Vec::new(),
                delta,
            },
        });
    }
    let mut candidates = tiling_candidates(space, region, delta, strategy, budget)?;
    let scores: Vec<f64> = candidates
        .par_iter()
        .map(|cand| {
            let mut sum = 0.0;
            for (p, q) in &cand.cells {
                sum += w * gauge(p, q)?.powf(s);
            }
            Ok(sum)
        })
        .collect::<Result<_, HausdorffError>>()?;
    let mut best = 0;
    for i in 1..scores.len() {
        if scores[i] < scores[best] {
            best = i;
        }
    }
    let cover = DiamondCover {
        diamonds: candidates.swap_remove(best).cells,
        delta,
    };
    cover.validate(space, region, COVER_SAMPLES_PER_AXIS)?;
    Ok(PremeasureResult {
        value: scores[best],
        bound: BoundKind::UpperBound,
        cover,
    })
}

fn plain_gauge(
    space: &LorentzianPreLengthSpace,
) -> impl Fn(&Point, &Point) -> Result<f64, HausdorffError> + Sync + '_ {
    move |p, q| match space.tau(p, q) {
        ExtReal::Finite(v) => Ok(v),
        ExtReal::Infinite => unreachable!("flat planar time separation is always finite"),
    }
}

fn conformal_gauge<'a>(
    space: &'a LorentzianPreLengthSpace,
    omega: &'a ConformalFactor,
) -> impl Fn(&Point, &Point) -> Result<f64, HausdorffError> + Sync + 'a {
    move |p, q| match tau_omega_value(space, omega, p, q, GAUGE_QUAD_TOL)? {
        ExtReal::Finite(v) => Ok(v),
        ExtReal::Infinite => unreachable!("closed-form time separation is always finite"),
    }
}

/// Premeasure at scale `delta`: the infimum of `omega_s * tau(p,q)^s` sums
/// over generated diamond covers of diameter under `delta`, approached
/// from above through the strategy's tiling family.
pub fn hausdorff_premeasure(
    space: &LorentzianPreLengthSpace,
    region: &Region,
    s: f64,
    delta: f64,
    strategy: &CoverStrategy,
    budget: usize,
) -> Result<PremeasureResult, HausdorffError> {
    premeasure_with_gauge(space, region, s, delta, strategy, budget, &plain_gauge(space))
}

/// Premeasure in the conformal gauge: diamonds are scored by the
/// closed-form conformal time separation of their tips, so the factor must
/// depend on time alone.
pub fn conformal_premeasure(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    region: &Region,
    s: f64,
    delta: f64,
    strategy: &CoverStrategy,
    budget: usize,
) -> Result<PremeasureResult, HausdorffError> {
    premeasure_with_gauge(
        space,
        region,
        s,
        delta,
        strategy,
        budget,
        &conformal_gauge(space, omega),
    )
}

fn check_schedule(schedule: &[f64]) -> Result<(), HausdorffError> {
    let bad = || HausdorffError::BadSchedule(schedule.to_vec());
    if schedule.is_empty() || schedule.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
        return Err(bad());
    }
    if schedule.windows(2).any(|w| w[1] >= w[0]) {
        return Err(bad());
    }
    Ok(())
}

/// One Aitken step on the last three premeasures: exact for geometric
/// convergence, which is what both the overhang error (linear in delta)
/// and the dimension-overshoot decay (geometric in delta) produce under a
/// halving schedule. Expanding difference sequences are reported as the
/// last premeasure: the limit is not visible at schedule resolution.
fn extrapolate(premeasures: &[f64]) -> f64 {
    aitken_limit(premeasures)
}

fn measure_with_gauge(
    space: &LorentzianPreLengthSpace,
    region: &Region,
    s: f64,
    schedule: &[f64],
    strategy: &CoverStrategy,
    budget: usize,
    gauge: Gauge,
) -> Result<HausdorffEstimate, HausdorffError> {
    check_schedule(schedule)?;
    let mut premeasures = Vec::with_capacity(schedule.len());
    for &delta in schedule {
        premeasures
            .push(premeasure_with_gauge(space, region, s, delta, strategy, budget, gauge)?.value);
    }
    let quality = premeasures.windows(2).all(|w| {
        let slack = MONOTONE_SLACK * w[0].abs().max(1.0);
        w[1] >= w[0] - slack
    });
    Ok(HausdorffEstimate {
        s,
        delta_schedule: schedule.to_vec(),
        premeasures: premeasures.clone(),
        value: extrapolate(&premeasures),
        quality,
    })
}

/// Measure estimate: premeasures over the strictly decreasing schedule,
/// extrapolated to the vanishing-delta limit.
pub fn hausdorff_measure(
    space: &LorentzianPreLengthSpace,
    region: &Region,
    s: f64,
    schedule: &[f64],
    strategy: &CoverStrategy,
    budget: usize,
) -> Result<HausdorffEstimate, HausdorffError> {
    measure_with_gauge(space, region, s, schedule, strategy, budget, &plain_gauge(space))
}

/// Change-of-measure check: the conformally gauged measure against the
/// cell quadrature of `omega^s` with respect to the plain measure, over a
/// `quad_n` by `quad_n` null-coordinate grid.
pub fn conformal_measure_check(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    region: &Region,
    s: f64,
    schedule: &[f64],
    strategy: &CoverStrategy,
    budget: usize,
    quad_n: usize,
) -> Result<ConformalMeasureCheck, HausdorffError> {
    assert!(quad_n >= 1, "need at least one quadrature cell per axis");
    require_flat_planar(space)?;
    region.validate(space)?;
    check_schedule(schedule)?;
    let w = omega_s(s)?;
    if region.is_empty(space) {
        return Ok(ConformalMeasureCheck {
            lhs: 0.0,
            rhs: 0.0,
            gap: 0.0,
        });
    }
    let lhs = measure_with_gauge(
        space,
        region,
        s,
        schedule,
        strategy,
        budget,
        &conformal_gauge(space, omega),
    )?
    .value;
    let (u0, v0, u1, v1) = region.bounds_uv(space).expect("region is nonempty");
    let du = (u1 - u0) / quad_n as f64;
    let dv = (v1 - v0) / quad_n as f64;
    let cell_measure = w * (du * dv).powf(s / 2.0);
    let mut rhs = 0.0;
    for i in 0..quad_n {
        let u = u0 + du * (i as f64 + 0.5);
        for j in 0..quad_n {
            let v = v0 + dv * (j as f64 + 0.5);
            let (t, x) = ((u + v) / 2.0, (v - u) / 2.0);
            if region.contains(space, t, x) {
                rhs += omega.eval(&Point::d2(space.id, t, x)).powf(s) * cell_measure;
            }
        }
    }
    let gap = if lhs == 0.0 && rhs == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / lhs.abs().max(rhs.abs())
    };
    Ok(ConformalMeasureCheck { lhs, rhs, gap })
}
