use serde::Serialize;

use crate::ext::ExtReal;
use crate::point::Point;
use crate::structures::LorentzianPreLengthSpace;

/// The causal bookkeeping laws probed by `push_up_check`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CausalLaw {
    /// `x <= y << z` implies `x << z`.
    PushUpLeft,
    /// `x << y <= z` implies `x << z`.
    PushUpRight,
    /// `x << y` iff `tau(x, y) > 0`.
    TauSignMatchesChronology,
    /// not `x <= y` implies `tau(x, y) = 0`.
    TauZeroWhenUnrelated,
    /// `x << y` implies `x <= y`.
    ChronologyImpliesCausality,
    /// `x <= y <= z` implies `tau(x, z) >= tau(x, y) + tau(y, z)`.
    ReverseTriangle,
}

/// A concrete law violation found by sampling.
#[derive(Clone, Debug, Serialize)]
pub struct PushUpViolation {
    pub law: CausalLaw,
    pub points: Vec<Point>,
    pub detail: String,
}

/// Result of a `push_up_check` run.
#[derive(Clone, Debug, Serialize)]
pub struct PushUpReport {
    pub space_id: &'static str,
    pub triples_checked: usize,
    pub violations: Vec<PushUpViolation>,
}

impl PushUpReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reverse-triangle slack for floating-point evaluators.
const RT_SLACK: f64 = 1e-9;

/// Samples `triples` point triples from the space's deterministic stream
/// (offset by `seed`) and checks the causal bookkeeping laws on them.
/// Violations are collected with witnesses, capped at 32.
pub fn push_up_check(
    space: &LorentzianPreLengthSpace,
    triples: usize,
    seed: u64,
) -> PushUpReport {
    let mut violations = Vec::new();
    let mut push = |law, pts: &[&Point], detail: String| {
        if violations.len() < 32 {
            violations.push(PushUpViolation {
                law,
                points: pts.iter().map(|p| (*p).clone()).collect(),
                detail,
            });
        }
    };
    for i in 0..triples {
        let base = seed.wrapping_add(3 * i as u64);
        let x = space.sample_point(base);
        let y = space.sample_point(base + 1);
        let z = space.sample_point(base + 2);
        for (a, b) in [(&x, &y), (&y, &z), (&x, &z), (&y, &x)] {
            let chron = space.chronologically_related(a, b);
            let causal = space.causally_related(a, b);
            let tau = space.tau(a, b);
            if chron && !causal {
                push(
                    CausalLaw::ChronologyImpliesCausality,
                    &[a, b],
                    "chronologically but not causally related".into(),
                );
            }
            if chron != tau.is_positive() {
                push(
                    CausalLaw::TauSignMatchesChronology,
                    &[a, b],
                    format!("chron = {chron}, tau = {tau}"),
                );
            }
            if !causal && tau != ExtReal::ZERO {
                push(
                    CausalLaw::TauZeroWhenUnrelated,
                    &[a, b],
                    format!("unrelated pair has tau = {tau}"),
                );
            }
        }
        if space.causally_related(&x, &y)
            && space.chronologically_related(&y, &z)
            && !space.chronologically_related(&x, &z)
        {
            push(CausalLaw::PushUpLeft, &[&x, &y, &z], "x <= y << z but not x << z".into());
        }
        if space.chronologically_related(&x, &y)
            && space.causally_related(&y, &z)
            && !space.chronologically_related(&x, &z)
        {
            push(CausalLaw::PushUpRight, &[&x, &y, &z], "x << y <= z but not x << z".into());
        }
        if space.causally_related(&x, &y) && space.causally_related(&y, &z) {
            let through = space.tau(&x, &y) + space.tau(&y, &z);
            let direct = space.tau(&x, &z);
            let slackened = match through {
                ExtReal::Finite(v) => ExtReal::Finite(v - RT_SLACK),
                ExtReal::Infinite => ExtReal::Infinite,
            };
            if !(direct >= slackened) {
                push(
                    CausalLaw::ReverseTriangle,
                    &[&x, &y, &z],
                    format!("tau(x,z) = {direct} < {through} = tau(x,y) + tau(y,z)"),
                );
            }
        }
    }
    PushUpReport {
        space_id: space.id,
        triples_checked: triples,
        violations,
    }
}
