use space_core::{ExtReal, LorentzianPreLengthSpace};

use crate::curve::{Curve, CurveKind};
use crate::error::CurveError;
use crate::partition::Partition;

/// Sum of time separations over one partition. Every consecutive pair must
/// be causally related; the first unrelated pair is an error with its
/// parameter interval as witness.
pub fn tau_variation(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    partition: &Partition,
) -> Result<ExtReal, CurveError> {
    check_space(space, curve)?;
    partition.validate_for(curve)?;
    let mut total = ExtReal::ZERO;
    let mut prev_t = partition.points()[0];
    let mut prev = curve.eval(prev_t);
    for &t in &partition.points()[1..] {
        let next = curve.eval(t);
        if !space.causally_related(&prev, &next) {
            return Err(CurveError::NotCausalBetween(prev_t, t));
        }
        total = total + space.tau(&prev, &next);
        prev = next;
        prev_t = t;
    }
    Ok(total)
}

/// Sum of metric distances over one partition (the inscribed polygon
/// length). No causal precondition.
pub fn d_variation(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    partition: &Partition,
) -> Result<f64, CurveError> {
    check_space(space, curve)?;
    partition.validate_for(curve)?;
    let mut total = 0.0;
    let mut prev = curve.eval(partition.points()[0]);
    for &t in &partition.points()[1..] {
        let next = curve.eval(t);
        total += space.dist(&prev, &next);
        prev = next;
    }
    Ok(total)
}

/// Result of a causality scan along a curve.
#[derive(Clone, Debug)]
pub struct CausalCheck {
    pub samples: usize,
    /// First parameter pair whose points violate the required relation.
    pub first_violation: Option<(f64, f64)>,
}

impl CausalCheck {
    pub fn ok(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Scans `samples` uniform steps of the curve and checks the relation its
/// kind demands between consecutive points (causal for `Causal`, strict
/// chronology for `Timelike`; `Unrestricted` curves never fail).
pub fn causal_check(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    samples: usize,
) -> Result<CausalCheck, CurveError> {
    check_space(space, curve)?;
    let n = samples.max(1);
    let mut first_violation = None;
    if curve.kind != CurveKind::Unrestricted {
        let mut prev_t = curve.a;
        let mut prev = curve.eval(prev_t);
        for i in 1..=n {
            let t = curve.a + (curve.b - curve.a) * i as f64 / n as f64;
            let next = curve.eval(t);
            let ok = match curve.kind {
                CurveKind::Causal => space.causally_related(&prev, &next),
                CurveKind::Timelike => space.chronologically_related(&prev, &next),
                CurveKind::Unrestricted => true,
            };
            if !ok {
                first_violation = Some((prev_t, t));
                break;
            }
            prev = next;
            prev_t = t;
        }
    }
    Ok(CausalCheck {
        samples: n,
        first_violation,
    })
}

/// Convenience wrapper: does the sampled scan find no violation?
pub fn is_causal(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    samples: usize,
) -> Result<bool, CurveError> {
    Ok(causal_check(space, curve, samples)?.ok())
}

pub(crate) fn check_space(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
) -> Result<(), CurveError> {
    if space.id != curve.space_id {
        return Err(CurveError::SpaceMismatch {
            curve: curve.space_id,
            space: space.id,
        });
    }
    Ok(())
}
