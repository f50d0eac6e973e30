use curves::{Curve, CurveKind, Partition};
use space_core::{ConformalFactor, ExtReal, LorentzianPreLengthSpace};

use crate::error::ConformalError;
use crate::segmax::segment_max;

/// Weighted variation of a causal curve over one partition: each segment
/// contributes its maximum of `omega` along the curve times the time
/// separation of its endpoints. The segment maximum is scanned with
/// `seg_samples` points and polished; a declared Lipschitz bound on the
/// factor certifies the scan error, and the certified slack is folded
/// into nothing here, only reported by higher layers.
pub fn conformal_variation(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    curve: &Curve,
    partition: &Partition,
    seg_samples: usize,
) -> Result<ExtReal, ConformalError> {
    if curve.kind == CurveKind::Unrestricted {
        return Err(ConformalError::WrongCurveKind);
    }
    if space.id != curve.space_id {
        return Err(ConformalError::Curve(curves::CurveError::SpaceMismatch {
            curve: curve.space_id,
            space: space.id,
        }));
    }
    partition.validate_for(curve)?;
    let profile = |t: f64| omega.eval(&curve.eval(t));
    let mut total = ExtReal::ZERO;
    let mut prev_t = partition.points()[0];
    let mut prev = curve.eval(prev_t);
    for &t in &partition.points()[1..] {
        let next = curve.eval(t);
        if !space.causally_related(&prev, &next) {
            return Err(ConformalError::NotCausal(prev_t, t));
        }
        let (seg_max, _) = match omega.constant_value() {
            Some(c) => (c, None),
            None => segment_max(&profile, prev_t, t, seg_samples, omega.lipschitz),
        };
        let tau = space.tau(&prev, &next);
        total = total
            + tau
                .scale(seg_max)
                .expect("segment maximum of a positive factor is positive and finite");
        prev = next;
        prev_t = t;
    }
    Ok(total)
}
