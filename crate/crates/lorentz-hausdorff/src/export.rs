use crate::measure::HausdorffEstimate;
use space_core::num::fmt_sig9;

/// Renders an estimate as CSV rows `s,delta,value`, one row per schedule
/// entry, at nine significant digits.
pub fn estimate_csv(estimate: &HausdorffEstimate) -> String {
    let mut out = String::from("s,delta,value\n");
    for (delta, value) in estimate
        .delta_schedule
        .iter()
        .zip(estimate.premeasures.iter())
    {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_sig9(estimate.s),
            fmt_sig9(*delta),
            fmt_sig9(*value)
        ));
    }
    out
}
